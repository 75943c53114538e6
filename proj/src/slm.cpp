#include "holo/slm.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace holo {
namespace {

void check_levels(int levels) {
    if (levels < 2) {
        throw std::invalid_argument("modulation scheme needs at least 2 levels, got " +
                                    std::to_string(levels));
    }
}

int parse_levels(std::string_view text, std::string_view full) {
    int n = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), n);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw std::invalid_argument("bad level count in scheme '" + std::string(full) + "'");
    }
    check_levels(n);
    return n;
}

}  // namespace

ModulationScheme ModulationScheme::phase(int levels) {
    check_levels(levels);
    return {ModulationKind::Phase, levels};
}

ModulationScheme ModulationScheme::continuous_phase() {
    return {ModulationKind::Phase, std::nullopt};
}

ModulationScheme ModulationScheme::amplitude(int levels) {
    check_levels(levels);
    return {ModulationKind::Amplitude, levels};
}

ModulationScheme ModulationScheme::continuous_amplitude() {
    return {ModulationKind::Amplitude, std::nullopt};
}

ModulationScheme ModulationScheme::parse(std::string_view name) {
    if (name == "binary-phase") return phase(2);
    if (name == "binary-amplitude") return amplitude(2);
    const auto colon = name.find(':');
    if (colon != std::string_view::npos) {
        const auto head = name.substr(0, colon);
        const auto tail = name.substr(colon + 1);
        if (head == "phase") {
            return tail == "cont" ? continuous_phase() : phase(parse_levels(tail, name));
        }
        if (head == "amplitude") {
            return tail == "cont" ? continuous_amplitude() : amplitude(parse_levels(tail, name));
        }
    }
    throw std::invalid_argument("unknown modulation scheme '" + std::string(name) + "'");
}

Complex ModulationScheme::level(int k) const {
    if (!levels_ || k < 0 || k >= *levels_) {
        throw std::out_of_range("level " + std::to_string(k) + " not in scheme " + name());
    }
    const int n = *levels_;
    if (kind_ == ModulationKind::Amplitude) {
        return {static_cast<double>(k) / static_cast<double>(n - 1), 0.0};
    }
    if ((4 * k) % n == 0) {
        static constexpr Complex axis[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
        return axis[(4 * k) / n];
    }
    const double angle = 2.0 * std::numbers::pi * k / n;
    return {std::cos(angle), std::sin(angle)};
}

bool ModulationScheme::allows(Complex z, double tol) const noexcept {
    if (levels_) return std::abs(z - level(nearest_level(z, *this))) <= tol;
    if (kind_ == ModulationKind::Phase) return std::abs(std::abs(z) - 1.0) <= tol;
    return std::abs(z.imag()) <= tol && z.real() >= -tol && z.real() <= 1.0 + tol;
}

std::string ModulationScheme::name() const {
    if (levels_ == 2) return kind_ == ModulationKind::Phase ? "binary-phase" : "binary-amplitude";
    std::string out = kind_ == ModulationKind::Phase ? "phase:" : "amplitude:";
    return out + (levels_ ? std::to_string(*levels_) : std::string("cont"));
}

int nearest_level(Complex z, const ModulationScheme& s) {
    const auto n = s.levels();
    if (!n) throw std::invalid_argument("nearest_level needs a discrete scheme");
    int best = 0;
    if (s.kind() == ModulationKind::Amplitude) {
        const double r = std::clamp(z.real(), 0.0, 1.0);
        double best_d = std::abs(r - s.level(0).real());
        for (int k = 1; k < *n; ++k) {
            const double d = std::abs(r - s.level(k).real());
            if (d < best_d) {
                best_d = d;
                best = k;
            }
        }
        return best;
    }
    double best_d = std::norm(z - s.level(0));
    for (int k = 1; k < *n; ++k) {
        const double d = std::norm(z - s.level(k));
        if (d < best_d) {
            best_d = d;
            best = k;
        }
    }
    return best;
}

Complex quantise_value(Complex z, const ModulationScheme& s) {
    if (s.levels()) return s.level(nearest_level(z, s));
    if (s.kind() == ModulationKind::Amplitude) return {std::clamp(z.real(), 0.0, 1.0), 0.0};
    const double r = std::abs(z);
    if (r == 0.0) return {1.0, 0.0};
    // Already on the unit circle up to rounding: keep it, so quantising twice is a no-op.
    if (std::abs(r - 1.0) <= 4 * std::numeric_limits<double>::epsilon()) return z;
    return z / r;
}

ComplexField quantise(const ComplexField& f, const ModulationScheme& s) {
    ComplexField out(f.width(), f.height());
    for (std::size_t i = 0; i < f.size(); ++i) out[i] = quantise_value(f[i], s);
    return out;
}

ChangeMap change_map(const ComplexField& original, const ComplexField& quantised) {
    if (!original.same_shape(quantised)) {
        throw std::invalid_argument("change_map: field shapes differ");
    }
    ChangeMap cm{RealGrid(original.width(), original.height())};
    for (std::size_t i = 0; i < original.size(); ++i) {
        cm.delta[i] = std::abs(quantised[i] - original[i]);
    }
    return cm;
}

Complex propose_value(Complex current, const ModulationScheme& s, SplitMix64& rng) {
    if (const auto n = s.levels()) {
        const int k = nearest_level(current, s);
        if (*n == 2) return s.level(1 - k);
        auto j = static_cast<int>(rng.below(static_cast<std::uint64_t>(*n - 1)));
        if (j >= k) ++j;
        return s.level(j);
    }
    Complex candidate;
    do {
        if (s.kind() == ModulationKind::Phase) {
            const double angle = 2.0 * std::numbers::pi * rng.uniform();
            candidate = {std::cos(angle), std::sin(angle)};
        } else {
            candidate = {rng.uniform(), 0.0};
        }
    } while (std::abs(candidate - current) <= 1e-12);
    return candidate;
}

}  // namespace holo

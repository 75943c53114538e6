#pragma once

// Independent reference implementations used only by the tests.

#include "holo/field.hpp"
#include "holo/target.hpp"

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <string_view>

namespace holo::testing {

/// Direct quadruple-loop DFT with unitary scaling. sign = -1 forward, +1 inverse.
inline ComplexField brute_force_dft(const ComplexField& f, int sign) {
    const std::size_t nx = f.width();
    const std::size_t ny = f.height();
    const double scale = 1.0 / std::sqrt(static_cast<double>(nx * ny));
    ComplexField out(nx, ny);
    for (std::size_t v = 0; v < ny; ++v) {
        for (std::size_t u = 0; u < nx; ++u) {
            Complex acc{0.0, 0.0};
            for (std::size_t y = 0; y < ny; ++y) {
                for (std::size_t x = 0; x < nx; ++x) {
                    const double phase = sign * 2.0 * std::numbers::pi *
                                         (static_cast<double>(u * x) / static_cast<double>(nx) +
                                          static_cast<double>(v * y) / static_cast<double>(ny));
                    acc += f(x, y) * Complex(std::cos(phase), std::sin(phase));
                }
            }
            out(u, v) = acc * scale;
        }
    }
    return out;
}

inline ComplexField random_field(std::size_t nx, std::size_t ny, std::uint64_t seed,
                                 double spread = 1.0) {
    std::mt19937_64 gen(seed);
    std::normal_distribution<double> normal(0.0, spread);
    ComplexField f(nx, ny);
    for (auto& z : f.values()) z = Complex(normal(gen), normal(gen));
    return f;
}

inline TargetImage random_target(std::size_t nx, std::size_t ny, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    RealGrid g(nx, ny);
    for (auto& v : g.values()) v = uni(gen);
    return TargetImage(std::move(g));
}

inline double max_abs_diff(const ComplexField& a, const ComplexField& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

/// 64-bit FNV-1a, for golden-file fingerprints.
inline std::uint64_t fnv1a(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

template <typename T>
std::uint64_t fnv1a_of(std::span<const T> values) {
    return fnv1a(std::string_view(reinterpret_cast<const char*>(values.data()),
                                  values.size_bytes()));
}

}  // namespace holo::testing

#include "holo/synthetic.hpp"

#include "holo/pgm.hpp"
#include "holo/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace holo {
namespace {

// Lattice value in [-1, 1) from a hash of (octave, ix, iy).
double lattice(std::uint64_t octave, std::int64_t ix, std::int64_t iy) {
    std::uint64_t h = SplitMix64::mix(octave * 0x9E3779B97F4A7C15ULL ^ 0x6D616E6472696C6CULL);
    h = SplitMix64::mix(h ^ static_cast<std::uint64_t>(ix));
    h = SplitMix64::mix(h ^ (static_cast<std::uint64_t>(iy) << 1));
    return static_cast<double>(h >> 11) * 0x1.0p-52 - 1.0;
}

double smooth(double t) { return t * t * (3.0 - 2.0 * t); }

// Bilinear value noise with `cells` lattice cells across the unit square.
double value_noise(std::uint64_t octave, double cells, double u, double v) {
    const double x = u * cells;
    const double y = v * cells;
    const double fx = std::floor(x);
    const double fy = std::floor(y);
    const auto ix = static_cast<std::int64_t>(fx);
    const auto iy = static_cast<std::int64_t>(fy);
    const double tx = smooth(x - fx);
    const double ty = smooth(y - fy);
    const double a = lattice(octave, ix, iy);
    const double b = lattice(octave, ix + 1, iy);
    const double c = lattice(octave, ix, iy + 1);
    const double d = lattice(octave, ix + 1, iy + 1);
    return (a * (1 - tx) + b * tx) * (1 - ty) + (c * (1 - tx) + d * tx) * ty;
}

double fbm(double u, double v, std::uint64_t salt) {
    double sum = 0.0;
    double norm = 0.0;
    double cells = 4.0;
    for (std::uint64_t o = 0; o < 7; ++o, cells *= 2.0) {
        const double amp = 1.0 / std::pow(cells, 0.8);
        sum += amp * value_noise(o + 16 * salt, cells, u, v);
        norm += amp;
    }
    return sum / norm;
}

double blob(double u, double v, double cu, double cv, double ru, double rv) {
    const double du = (u - cu) / ru;
    const double dv = (v - cv) / rv;
    return std::exp(-(du * du + dv * dv));
}

// Affine map to the given mean and standard deviation, then clip to [0, 1].
void standardize(RealGrid& g, double mean, double stddev) {
    const auto n = static_cast<double>(g.size());
    double m = 0.0;
    for (const double x : g.values()) m += x;
    m /= n;
    double var = 0.0;
    for (const double x : g.values()) var += (x - m) * (x - m);
    const double sd = std::sqrt(var / n);
    for (double& x : g.values()) {
        x = sd > 0.0 ? std::clamp(mean + (x - m) * stddev / sd, 0.0, 1.0) : mean;
    }
}

}  // namespace

TargetImage synthetic_mandrill(std::size_t size) {
    RealGrid img(size, size);
    const auto n = static_cast<double>(size);
    for (std::size_t y = 0; y < size; ++y) {
        const double v = (static_cast<double>(y) + 0.5) / n;
        for (std::size_t x = 0; x < size; ++x) {
            const double u = (static_cast<double>(x) + 0.5) / n;
            const double base = fbm(u, v, 0);
            // Fur: fine stripes whose orientation follows a slow noise field.
            const double theta = std::numbers::pi * (0.5 + 1.2 * value_noise(101, 3.0, u, v));
            const double stripe =
                std::sin(2.0 * std::numbers::pi * 48.0 * (u * std::cos(theta) + v * std::sin(theta)) +
                         6.0 * fbm(u, v, 1));
            const double fur = 0.25 * stripe * (0.5 + 0.5 * value_noise(102, 12.0, u, v));
            // Bright eyes, a long nose ridge and darker cheeks.
            const double face = 0.8 * blob(u, v, 0.33, 0.3, 0.06, 0.05) +
                                0.8 * blob(u, v, 0.67, 0.3, 0.06, 0.05) +
                                0.6 * blob(u, v, 0.5, 0.55, 0.07, 0.25) -
                                0.4 * blob(u, v, 0.25, 0.65, 0.12, 0.18) -
                                0.4 * blob(u, v, 0.75, 0.65, 0.12, 0.18);
            img(x, y) = 0.5 + 0.6 * base + fur + 0.5 * face;
        }
    }
    // First and second moments of the 8-bit grey Mandrill (about 129/255 and 42/255).
    standardize(img, 0.51, 0.165);
    return TargetImage(std::move(img));
}

TargetImage synthetic_usaf(std::size_t size) {
    RealGrid img(size, size, 0.0);
    const auto n = static_cast<double>(size);
    auto fill = [&](double u0, double v0, double u1, double v1) {
        const auto x0 = static_cast<std::size_t>(std::clamp(std::floor(u0 * n), 0.0, n));
        const auto x1 = static_cast<std::size_t>(std::clamp(std::ceil(u1 * n), 0.0, n));
        const auto y0 = static_cast<std::size_t>(std::clamp(std::floor(v0 * n), 0.0, n));
        const auto y1 = static_cast<std::size_t>(std::clamp(std::ceil(v1 * n), 0.0, n));
        for (std::size_t y = y0; y < y1; ++y)
            for (std::size_t x = x0; x < x1; ++x) img(x, y) = 1.0;
    };
    // Six elements down a left column and six down a right column at half scale.
    double bar = 0.03;
    for (int column = 0; column < 2; ++column) {
        double top = 0.06;
        const double left = column == 0 ? 0.06 : 0.56;
        for (int e = 0; e < 6; ++e) {
            for (int k = 0; k < 3; ++k) {
                // Horizontal bars on the left, vertical bars on the right of each element.
                fill(left, top + 2 * k * bar, left + 5 * bar, top + (2 * k + 1) * bar);
                const double vx = left + 6 * bar + 2 * k * bar;
                fill(vx, top, vx + bar, top + 5 * bar);
            }
            top += 6 * bar;
            bar /= std::numbers::sqrt2;
        }
    }
    return TargetImage(std::move(img));
}

TargetImage load_image(std::string_view source, std::size_t size) {
    if (source == "synthetic:mandrill") return synthetic_mandrill(size);
    if (source == "synthetic:usaf") return synthetic_usaf(size);
    if (source.starts_with("synthetic:")) {
        throw std::invalid_argument("unknown synthetic image: " + std::string(source));
    }
    return resample_nearest(load_pgm(std::filesystem::path(std::string(source))), size, size);
}

}  // namespace holo

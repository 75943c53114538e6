#include "holo/target.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace holo {

TargetImage::TargetImage(RealGrid m) : mag(std::move(m)) {
    for (const double v : mag.values()) {
        if (!(v >= 0.0) || !std::isfinite(v)) {
            throw std::invalid_argument("target magnitudes must be finite and non-negative");
        }
    }
}

TargetImage induce_symmetry(const TargetImage& img) {
    const std::size_t w = img.width();
    const std::size_t h = img.height();
    RealGrid out(w, h);
    for (std::size_t y = 0; y < h; ++y) {
        for (std::size_t x = 0; x < w; ++x) {
            out(x, y) = std::max(img.mag(x, y), img.mag(w - 1 - x, h - 1 - y));
        }
    }
    return TargetImage(std::move(out));
}

TargetImage normalize_energy(const TargetImage& img) {
    double sum = 0.0;
    for (const double v : img.mag.values()) sum += v * v;
    if (sum == 0.0) throw std::invalid_argument("cannot energy-normalise an all-zero image");
    const double scale = std::sqrt(static_cast<double>(img.size()) / sum);
    RealGrid out = img.mag;
    for (double& v : out.values()) v *= scale;
    return TargetImage(std::move(out));
}

TargetImage resample_nearest(const TargetImage& img, std::size_t width, std::size_t height) {
    if (img.mag.same_shape(width, height)) return img;
    RealGrid out(width, height);
    for (std::size_t y = 0; y < height; ++y) {
        const std::size_t sy = y * img.height() / height;
        for (std::size_t x = 0; x < width; ++x) {
            out(x, y) = img.mag(x * img.width() / width, sy);
        }
    }
    return TargetImage(std::move(out));
}

}  // namespace holo

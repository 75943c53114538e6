#pragma once

#include "holo/field.hpp"

namespace holo {

/// Target replay magnitudes |T|, all non-negative.
struct TargetImage {
    RealGrid mag;

    TargetImage() = default;
    explicit TargetImage(RealGrid m);
    TargetImage(std::size_t width, std::size_t height, double fill = 0.0)
        : TargetImage(RealGrid(width, height, fill)) {}

    std::size_t width() const noexcept { return mag.width(); }
    std::size_t height() const noexcept { return mag.height(); }
    std::size_t size() const noexcept { return mag.size(); }
    double operator[](std::size_t i) const noexcept { return mag[i]; }

    friend bool operator==(const TargetImage&, const TargetImage&) = default;
};

/// out(x, y) = max(img(x, y), img(Nx-1-x, Ny-1-y)); the result is exactly
/// invariant under 180-degree rotation, matching the twin-image symmetry of
/// binary devices.
TargetImage induce_symmetry(const TargetImage& img);

/// Scales so the sum of squared magnitudes equals Nx*Ny, the energy of a
/// unit-magnitude phase-only aperture. Throws on an all-zero image.
TargetImage normalize_energy(const TargetImage& img);

/// Nearest-neighbour resample to width x height.
TargetImage resample_nearest(const TargetImage& img, std::size_t width, std::size_t height);

}  // namespace holo

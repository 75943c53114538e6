#pragma once

#include <complex>
#include <cstddef>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace holo {

using Complex = std::complex<double>;

/// Dense row-major 2D grid. Element (x, y) lives at index y * width + x.
/// MinDim is the smallest side length the grid type accepts.
template <typename T, std::size_t MinDim = 1>
class Grid {
public:
    Grid() = default;

    Grid(std::size_t width, std::size_t height, T fill = T{})
        : width_(width), height_(height) {
        check_dims(width, height);
        data_.assign(width * height, fill);
    }

    Grid(std::size_t width, std::size_t height, std::vector<T> data)
        : width_(width), height_(height), data_(std::move(data)) {
        check_dims(width, height);
        if (data_.size() != width * height) {
            throw std::invalid_argument("grid data length " + std::to_string(data_.size()) +
                                        " does not match " + std::to_string(width) + "x" +
                                        std::to_string(height));
        }
    }

    std::size_t width() const noexcept { return width_; }
    std::size_t height() const noexcept { return height_; }
    std::size_t size() const noexcept { return data_.size(); }
    bool empty() const noexcept { return data_.empty(); }

    T& operator()(std::size_t x, std::size_t y) noexcept { return data_[y * width_ + x]; }
    const T& operator()(std::size_t x, std::size_t y) const noexcept { return data_[y * width_ + x]; }
    T& operator[](std::size_t i) noexcept { return data_[i]; }
    const T& operator[](std::size_t i) const noexcept { return data_[i]; }

    T& at(std::size_t x, std::size_t y) {
        if (x >= width_ || y >= height_) {
            throw std::out_of_range("pixel (" + std::to_string(x) + ", " + std::to_string(y) +
                                    ") outside " + std::to_string(width_) + "x" +
                                    std::to_string(height_) + " grid");
        }
        return (*this)(x, y);
    }
    const T& at(std::size_t x, std::size_t y) const {
        return const_cast<Grid&>(*this).at(x, y);
    }

    std::span<T> values() noexcept { return data_; }
    std::span<const T> values() const noexcept { return data_; }

    bool same_shape(std::size_t w, std::size_t h) const noexcept {
        return width_ == w && height_ == h;
    }
    template <typename U, std::size_t M>
    bool same_shape(const Grid<U, M>& other) const noexcept {
        return same_shape(other.width(), other.height());
    }

    friend bool operator==(const Grid&, const Grid&) = default;

private:
    static void check_dims(std::size_t width, std::size_t height) {
        if (width < MinDim || height < MinDim) {
            throw std::invalid_argument("grid dimensions " + std::to_string(width) + "x" +
                                        std::to_string(height) + " below minimum side " +
                                        std::to_string(MinDim));
        }
        if (width > std::numeric_limits<std::size_t>::max() / sizeof(T) / height) {
            throw std::length_error("grid dimensions " + std::to_string(width) + "x" +
                                    std::to_string(height) + " exceed addressable size");
        }
    }

    std::size_t width_ = 0;
    std::size_t height_ = 0;
    std::vector<T> data_;
};

/// Aperture functions and replay fields. Sides below 2 are rejected.
using ComplexField = Grid<Complex, 2>;
using RealGrid = Grid<double>;

struct PixelIndex {
    std::size_t x = 0;
    std::size_t y = 0;
    friend bool operator==(const PixelIndex&, const PixelIndex&) = default;
};

/// Forward 2D DFT with unitary 1/sqrt(Nx*Ny) scaling and exp(-2*pi*i(ux/Nx + vy/Ny)) kernel.
ComplexField dft2(const ComplexField& f);

/// Inverse of dft2: conjugate kernel, same 1/sqrt(Nx*Ny) scaling.
ComplexField idft2(const ComplexField& F);

struct FresnelParams {
    double wavelength = 0.0;  ///< metres
    double distance = 0.0;    ///< metres, non-zero
    double pixel_pitch = 0.0; ///< metres

    void validate() const;
};

/// Multiplies each pixel by exp(i*pi*(x^2 + y^2) / (wavelength * distance)).
/// x and y are physical coordinates centred on pixel (Nx/2, Ny/2), unlike the
/// uncentred grid indices used by the DFT kernel.
ComplexField fresnel_premultiply(const ComplexField& f, const FresnelParams& p);

/// Table of the N-th roots of unity exp(-2*pi*i*k/N), used to evaluate the
/// single-pixel DFT kernel without calling exp per element.
class TwiddleTable {
public:
    explicit TwiddleTable(std::size_t n);
    std::size_t size() const noexcept { return roots_.size(); }
    const Complex& operator[](std::size_t k) const noexcept { return roots_[k]; }

private:
    std::vector<Complex> roots_;
};

/// Rank-one replay update for a single aperture pixel change.
///
/// A change dH at aperture pixel (x, y) moves every replay value by
/// dH / sqrt(Nx*Ny) * exp(-2*pi*i(ux/Nx + vy/Ny)). The kernel factorises into a
/// row term and a column term; `row` and `col` hold those for the pixel.
class PixelKernel {
public:
    PixelKernel(std::size_t width, std::size_t height);

    /// Rebuild the factors for aperture pixel p and change dH.
    void bind(PixelIndex p, Complex dH);

    std::span<const Complex> row() const noexcept { return row_; }
    std::span<const Complex> col() const noexcept { return col_; }
    std::size_t width() const noexcept { return row_.size(); }
    std::size_t height() const noexcept { return col_.size(); }

    /// Replay increment at (u, v) for the bound pixel.
    Complex at(std::size_t u, std::size_t v) const noexcept { return row_[u] * col_[v]; }

private:
    TwiddleTable wx_;
    TwiddleTable wy_;
    double scale_;
    std::vector<Complex> row_;
    std::vector<Complex> col_;
};

/// In-place replay update for a change dH at aperture pixel (x, y). O(Nx*Ny).
/// Throws std::out_of_range when (x, y) is outside the field.
void delta_update(ComplexField& replay, std::size_t x, std::size_t y, Complex dH);

/// Same as above with a caller-owned kernel, avoiding per-call table builds.
void delta_update(ComplexField& replay, PixelKernel& kernel, PixelIndex p, Complex dH);

/// Sum of squared magnitudes.
double energy(std::span<const Complex> values) noexcept;

}  // namespace holo

#include "holo/field.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <tuple>

namespace holo {
namespace {

struct FftwBuffer {
    explicit FftwBuffer(std::size_t n)
        : ptr(static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n))) {
        if (!ptr) throw std::bad_alloc();
    }
    ~FftwBuffer() { fftw_free(ptr); }
    FftwBuffer(const FftwBuffer&) = delete;
    FftwBuffer& operator=(const FftwBuffer&) = delete;

    fftw_complex* ptr;
};

// The FFTW planner is not thread safe; execution with new-array execute is.
// Plans are cached per (width, height, sign) and only ever used on
// fftw_malloc'd buffers so the chosen codelets stay fixed between calls.
class PlanCache {
public:
    static PlanCache& instance() {
        static PlanCache cache;
        return cache;
    }

    fftw_plan get(std::size_t width, std::size_t height, int sign) {
        std::lock_guard lock(mutex_);
        const auto key = std::make_tuple(width, height, sign);
        if (auto it = plans_.find(key); it != plans_.end()) return it->second;
        FftwBuffer in(width * height);
        FftwBuffer out(width * height);
        // FFTW uses row-major n0 x n1 with n1 varying fastest, i.e. (height, width).
        fftw_plan plan = fftw_plan_dft_2d(static_cast<int>(height), static_cast<int>(width),
                                          in.ptr, out.ptr, sign, FFTW_ESTIMATE);
        if (!plan) throw std::runtime_error("fftw planner failed");
        plans_.emplace(key, plan);
        return plan;
    }

    ~PlanCache() {
        for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
    }

private:
    std::mutex mutex_;
    std::map<std::tuple<std::size_t, std::size_t, int>, fftw_plan> plans_;
};

ComplexField transform(const ComplexField& in, int sign) {
    const std::size_t n = in.size();
    if (in.width() > static_cast<std::size_t>(std::numeric_limits<int>::max()) ||
        in.height() > static_cast<std::size_t>(std::numeric_limits<int>::max())) {
        throw std::length_error("field too large for the FFT backend");
    }
    fftw_plan plan = PlanCache::instance().get(in.width(), in.height(), sign);

    FftwBuffer src(n);
    FftwBuffer dst(n);
    for (std::size_t i = 0; i < n; ++i) {
        src.ptr[i][0] = in[i].real();
        src.ptr[i][1] = in[i].imag();
    }
    fftw_execute_dft(plan, src.ptr, dst.ptr);

    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    ComplexField out(in.width(), in.height());
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = Complex(dst.ptr[i][0] * scale, dst.ptr[i][1] * scale);
    }
    return out;
}

}  // namespace

ComplexField dft2(const ComplexField& f) { return transform(f, FFTW_FORWARD); }

ComplexField idft2(const ComplexField& F) { return transform(F, FFTW_BACKWARD); }

void FresnelParams::validate() const {
    if (!(wavelength > 0.0)) throw std::invalid_argument("fresnel wavelength must be positive");
    if (distance == 0.0 || !std::isfinite(distance)) {
        throw std::invalid_argument("fresnel distance must be finite and non-zero");
    }
    if (!(pixel_pitch > 0.0)) throw std::invalid_argument("fresnel pixel pitch must be positive");
}

ComplexField fresnel_premultiply(const ComplexField& f, const FresnelParams& p) {
    p.validate();
    const double k = std::numbers::pi / (p.wavelength * p.distance);
    const auto cx = static_cast<double>(f.width() / 2);
    const auto cy = static_cast<double>(f.height() / 2);
    ComplexField out(f.width(), f.height());
    for (std::size_t iy = 0; iy < f.height(); ++iy) {
        const double y = (static_cast<double>(iy) - cy) * p.pixel_pitch;
        for (std::size_t ix = 0; ix < f.width(); ++ix) {
            const double x = (static_cast<double>(ix) - cx) * p.pixel_pitch;
            const double phase = k * (x * x + y * y);
            out(ix, iy) = f(ix, iy) * Complex(std::cos(phase), std::sin(phase));
        }
    }
    return out;
}

TwiddleTable::TwiddleTable(std::size_t n) : roots_(n) {
    // Exact values on the axes keep e.g. the binary-phase kernel free of 1e-16 noise.
    for (std::size_t k = 0; k < n; ++k) {
        if ((4 * k) % n == 0) {
            static constexpr Complex axis[4] = {{1, 0}, {0, -1}, {-1, 0}, {0, 1}};
            roots_[k] = axis[(4 * k) / n];
        } else {
            const double angle = -2.0 * std::numbers::pi * static_cast<double>(k) /
                                 static_cast<double>(n);
            roots_[k] = Complex(std::cos(angle), std::sin(angle));
        }
    }
}

PixelKernel::PixelKernel(std::size_t width, std::size_t height)
    : wx_(width),
      wy_(height),
      scale_(1.0 / std::sqrt(static_cast<double>(width) * static_cast<double>(height))),
      row_(width),
      col_(height) {}

void PixelKernel::bind(PixelIndex p, Complex dH) {
    const Complex s = dH * scale_;
    const std::size_t w = row_.size();
    const std::size_t h = col_.size();
    std::size_t k = 0;
    for (std::size_t u = 0; u < w; ++u) {
        row_[u] = s * wx_[k];
        k += p.x;
        if (k >= w) k %= w;
    }
    k = 0;
    for (std::size_t v = 0; v < h; ++v) {
        col_[v] = wy_[k];
        k += p.y;
        if (k >= h) k %= h;
    }
}

void delta_update(ComplexField& replay, PixelKernel& kernel, PixelIndex p, Complex dH) {
    if (p.x >= replay.width() || p.y >= replay.height()) {
        throw std::out_of_range("delta_update pixel (" + std::to_string(p.x) + ", " +
                                std::to_string(p.y) + ") outside field");
    }
    if (kernel.width() != replay.width() || kernel.height() != replay.height()) {
        throw std::invalid_argument("delta_update kernel shape does not match replay field");
    }
    kernel.bind(p, dH);
    const auto row = kernel.row();
    const auto col = kernel.col();
    const std::size_t w = replay.width();
    for (std::size_t v = 0; v < replay.height(); ++v) {
        Complex* line = &replay[v * w];
        const double cr = col[v].real();
        const double ci = col[v].imag();
        for (std::size_t u = 0; u < w; ++u) {
            const double rr = row[u].real();
            const double ri = row[u].imag();
            line[u] = Complex(line[u].real() + (rr * cr - ri * ci),
                              line[u].imag() + (rr * ci + ri * cr));
        }
    }
}

void delta_update(ComplexField& replay, std::size_t x, std::size_t y, Complex dH) {
    PixelKernel kernel(replay.width(), replay.height());
    delta_update(replay, kernel, PixelIndex{x, y}, dH);
}

double energy(std::span<const Complex> values) noexcept {
    double sum = 0.0;
    for (const auto& z : values) sum += std::norm(z);
    return sum;
}

}  // namespace holo

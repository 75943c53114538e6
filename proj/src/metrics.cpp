#include "holo/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace holo {

double squared_error_sum(const TargetImage& target, const ComplexField& replay) {
    if (!target.mag.same_shape(replay)) {
        throw std::invalid_argument("mse: target " + std::to_string(target.width()) + "x" +
                                    std::to_string(target.height()) + " vs replay " +
                                    std::to_string(replay.width()) + "x" +
                                    std::to_string(replay.height()));
    }
    // Row-wise partial sums, grouped like squared_error_sum_with_update.
    const std::size_t w = replay.width();
    double sum = 0.0;
    for (std::size_t v = 0; v < replay.height(); ++v) {
        const Complex* line = &replay[v * w];
        const double* t = &target.mag[v * w];
        double line_sum = 0.0;
        for (std::size_t u = 0; u < w; ++u) {
            const double re = line[u].real();
            const double im = line[u].imag();
            const double d = t[u] - std::sqrt(re * re + im * im);
            line_sum += d * d;
        }
        sum += line_sum;
    }
    return sum;
}

double squared_error_sum_with_update(const TargetImage& target, const ComplexField& replay,
                                     const PixelKernel& kernel) {
    if (!target.mag.same_shape(replay) ||
        !replay.same_shape(kernel.width(), kernel.height())) {
        throw std::invalid_argument("squared_error_sum_with_update: shape mismatch");
    }
    const auto row = kernel.row();
    const auto col = kernel.col();
    const std::size_t w = replay.width();
    double sum = 0.0;
    for (std::size_t v = 0; v < replay.height(); ++v) {
        const Complex* line = &replay[v * w];
        const double* t = &target.mag[v * w];
        const double cr = col[v].real();
        const double ci = col[v].imag();
        double line_sum = 0.0;
        for (std::size_t u = 0; u < w; ++u) {
            const double rr = row[u].real();
            const double ri = row[u].imag();
            const double re = line[u].real() + (rr * cr - ri * ci);
            const double im = line[u].imag() + (rr * ci + ri * cr);
            const double d = t[u] - std::sqrt(re * re + im * im);
            line_sum += d * d;
        }
        sum += line_sum;
    }
    return sum;
}

double mse(const TargetImage& target, const ComplexField& replay) {
    return squared_error_sum(target, replay) / static_cast<double>(replay.size());
}

double pearson(std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size()) throw std::invalid_argument("pearson: length mismatch");
    if (xs.size() < 2) throw std::invalid_argument("pearson: need at least 2 samples");
    const auto n = static_cast<double>(xs.size());
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0;
    double syy = 0.0;
    double sxy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double dx = xs[i] - mx;
        const double dy = ys[i] - my;
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    if (sxx == 0.0 || syy == 0.0) throw UndefinedStatistic("pearson: zero variance");
    return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

void ConvergenceTrace::push(TraceSample s) {
    if (!samples_.empty()) {
        if (s.iteration <= samples_.back().iteration) {
            throw std::invalid_argument("trace iterations must strictly increase");
        }
        if (s.accepted < samples_.back().accepted) {
            throw std::invalid_argument("trace accepted count must not decrease");
        }
    }
    samples_.push_back(s);
}

namespace {

void check_comparable(const ConvergenceTrace& baseline, const ConvergenceTrace& variant) {
    if (baseline.empty() || variant.empty()) throw std::invalid_argument("empty trace");
    const double e0 = baseline.initial_mse();
    const double tol = 1e-9 * std::max(std::abs(e0), std::abs(variant.initial_mse()));
    if (std::abs(e0 - variant.initial_mse()) > tol) {
        throw std::invalid_argument("traces start from different initial errors");
    }
    if (baseline.back().iteration != variant.back().iteration) {
        throw std::invalid_argument("traces end on different iterations");
    }
}

}  // namespace

double relative_improvement(const ConvergenceTrace& baseline, const ConvergenceTrace& variant) {
    check_comparable(baseline, variant);
    const double e0 = baseline.initial_mse();
    const double base_reduction = e0 - baseline.final_mse();
    const double variant_reduction = e0 - variant.final_mse();
    if (!(base_reduction > 0.0)) {
        throw UndefinedStatistic("baseline error reduction is not positive");
    }
    return (variant_reduction - base_reduction) / base_reduction;
}

double final_error_improvement(const ConvergenceTrace& baseline, const ConvergenceTrace& variant) {
    check_comparable(baseline, variant);
    if (!(baseline.final_mse() > 0.0)) {
        throw UndefinedStatistic("baseline final error is zero");
    }
    return (baseline.final_mse() - variant.final_mse()) / baseline.final_mse();
}

}  // namespace holo

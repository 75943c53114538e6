#pragma once

#include "holo/field.hpp"
#include "holo/target.hpp"

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace holo {

/// Phase-insensitive mean squared error: mean over pixels of (|T| - |R|)^2.
/// Throws std::invalid_argument on shape mismatch.
double mse(const TargetImage& target, const ComplexField& replay);

/// Sum (not mean) of (|T| - |R|)^2.
double squared_error_sum(const TargetImage& target, const ComplexField& replay);

/// squared_error_sum of `replay` plus the kernel's bound single-pixel change,
/// computed without modifying `replay`. The per-element arithmetic matches
/// delta_update, so after committing the change squared_error_sum returns the
/// same bits.
double squared_error_sum_with_update(const TargetImage& target, const ComplexField& replay,
                                     const PixelKernel& kernel);

/// Thrown when a statistic is mathematically undefined for its input.
class UndefinedStatistic : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Sample Pearson correlation. Needs equal lengths >= 2 and non-zero variance.
double pearson(std::span<const double> xs, std::span<const double> ys);

struct TraceSample {
    std::uint64_t iteration = 0;
    double mse = 0.0;
    std::uint64_t accepted = 0;

    friend bool operator==(const TraceSample&, const TraceSample&) = default;
};

/// Sampled convergence history. Iterations strictly increase and the accepted
/// count never decreases; push() enforces both.
class ConvergenceTrace {
public:
    void push(TraceSample s);

    const std::vector<TraceSample>& samples() const noexcept { return samples_; }
    bool empty() const noexcept { return samples_.empty(); }
    std::size_t size() const noexcept { return samples_.size(); }
    const TraceSample& front() const { return samples_.front(); }
    const TraceSample& back() const { return samples_.back(); }

    double initial_mse() const { return front().mse; }
    double final_mse() const { return back().mse; }

    friend bool operator==(const ConvergenceTrace&, const ConvergenceTrace&) = default;

private:
    std::vector<TraceSample> samples_;
};

/// Relative gain in error reduction of `variant` over `baseline`:
///
///     ((E0 - E_variant) - (E0 - E_baseline)) / (E0 - E_baseline)
///
/// Both traces must start at the same E0 (1e-9 relative) and end on the same
/// iteration. Throws UndefinedStatistic when the baseline reduced nothing.
double relative_improvement(const ConvergenceTrace& baseline, const ConvergenceTrace& variant);

/// Relative gain in final error: (E_baseline - E_variant) / E_baseline.
double final_error_improvement(const ConvergenceTrace& baseline, const ConvergenceTrace& variant);

}  // namespace holo

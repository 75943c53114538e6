#pragma once

#include "holo/metrics.hpp"
#include "holo/search.hpp"
#include "holo/slm.hpp"
#include "holo/target.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace holo {

struct ExperimentConfig {
    std::string image = "synthetic:mandrill";
    std::size_t resolution = 128;
    ModulationScheme scheme = ModulationScheme::phase(2);
    Algorithm algorithm = Algorithm::DirectSearchFast;
    Selection selection = Selection::Sorted;
    std::uint64_t iterations = 20'000;
    std::uint64_t seed = 1;
    bool symmetry = false;
    std::optional<double> t_coeff;
    double t_0 = 6.0;
    std::uint64_t trace_stride = 100;
    std::uint64_t recompute_interval = 50'000;
    /// Scatter experiment sample size; the full sweep when >= pixel count.
    std::size_t samples = 10'000;
    std::size_t bins = 64;
    /// Empty: nothing is written.
    std::filesystem::path out_dir;

    /// Resolution must be one of 64, 128, ..., 2048.
    void validate() const;
    SearchConfig search_config() const;
};

/// Loads (or generates) the image, applies symmetry if configured, and
/// energy-normalises it.
TargetImage prepare_target(const ExperimentConfig& config);

/// Back-projection shared by every run of a seed.
ComplexField seeded_back_projection(const TargetImage& target, std::uint64_t seed);

struct AbReport {
    double initial_mse = 0.0;
    double final_mse_random = 0.0;
    double final_mse_sps = 0.0;
    std::uint64_t accepted_random = 0;
    std::uint64_t accepted_sps = 0;
    /// Relative gain in error reduction; nullopt when undefined.
    std::optional<double> improvement_reduction;
    /// Relative gain in final error; nullopt when undefined.
    std::optional<double> improvement_final;
    ConvergenceTrace trace_random;
    ConvergenceTrace trace_sps;
    double wall_seconds = 0.0;
};

/// Runs the configured algorithm with random and with sorted selection from
/// one back-projection. Writes trace_random.csv, trace_sps.csv, target.pgm,
/// replay_random.pgm, replay_sps.pgm and summary.txt when out_dir is set.
AbReport run_convergence_ab(const ExperimentConfig& config);
AbReport run_convergence_ab(const ExperimentConfig& config, const TargetImage& target);

struct ScatterRow {
    std::size_t pixel_index = 0;
    double delta = 0.0;
    double mse_change = 0.0;
};

struct ScatterReport {
    std::vector<ScatterRow> rows;
    /// Least-squares a in mse_change ~ a * delta^2.
    double square_law_coefficient = 0.0;
    /// Pearson between a * delta^2 and the observed MSE changes; nullopt when
    /// either side has zero variance.
    std::optional<double> correlation;
    double wall_seconds = 0.0;
};

/// Quantises one back-projected pixel at a time and records the resulting
/// replay MSE change against the unquantised baseline. Writes scatter.csv and
/// summary.txt when out_dir is set.
ScatterReport run_scatter_experiment(const ExperimentConfig& config);
ScatterReport run_scatter_experiment(const ExperimentConfig& config, const TargetImage& target);

struct Histogram {
    double lower = 0.0;
    double upper = 0.0;
    std::vector<std::uint64_t> counts;

    double bin_width() const { return (upper - lower) / static_cast<double>(counts.size()); }
    std::uint64_t total() const;
};

/// Equal-width bins over [lower, upper]; values at `upper` land in the last
/// bin and a zero-width range puts everything in bin 0.
Histogram make_histogram(std::span<const double> values, double lower, double upper,
                         std::size_t bins);

struct HistogramReport {
    Histogram magnitude;
    Histogram angle;  ///< over [-pi, pi); +pi wraps to the first bin
    Histogram change;
};

/// Histograms of the back-projection's magnitudes and angles and of the
/// quantisation change. Writes hist_magnitude.csv, hist_angle.csv and
/// hist_change.csv when out_dir is set.
HistogramReport run_histograms(const ExperimentConfig& config);
HistogramReport run_histograms(const ExperimentConfig& config, const TargetImage& target);

/// Single search with the configured selection. Writes target.pgm,
/// hologram.pgm, replay.pgm, trace.csv and summary.txt when out_dir is set.
SearchResult run_render(const ExperimentConfig& config);

/// Decimal form used in every CSV: 17 significant digits.
std::string format_real(double v);

std::string trace_csv(const ConvergenceTrace& trace);
std::string scatter_csv(std::span<const ScatterRow> rows);
std::string histogram_csv(const Histogram& h);

}  // namespace holo

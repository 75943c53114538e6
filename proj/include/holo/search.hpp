#pragma once

#include "holo/field.hpp"
#include "holo/metrics.hpp"
#include "holo/rng.hpp"
#include "holo/slm.hpp"
#include "holo/target.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace holo {

/// Initial hologram guess: inverse DFT of T * exp(i*phi), phi i.i.d. on [0, 2*pi).
/// One uniform draw per pixel in row-major order.
ComplexField back_project(const TargetImage& target, SplitMix64& rng);

/// Test-pixel selection state.
///
/// Random draws uniformly over all pixels. Sorted walks a fixed permutation
/// from a cursor and wraps to the start after the last entry; the list is
/// never re-sorted.
class PixelOrder {
public:
    enum class Mode { Random, Sorted };

    static PixelOrder random(std::size_t width, std::size_t height);
    /// `order` must be a permutation of 0..width*height-1.
    static PixelOrder sorted(std::vector<std::size_t> order, std::size_t width,
                             std::size_t height);

    Mode mode() const noexcept { return mode_; }
    std::size_t width() const noexcept { return width_; }
    std::size_t height() const noexcept { return height_; }
    std::span<const std::size_t> order() const noexcept { return order_; }
    std::size_t cursor() const noexcept { return cursor_; }
    void set_cursor(std::size_t c);

    /// Random mode consumes one draw from rng; Sorted mode ignores it.
    PixelIndex next(SplitMix64& rng);

private:
    PixelOrder(Mode mode, std::size_t width, std::size_t height)
        : mode_(mode), width_(width), height_(height) {}

    Mode mode_;
    std::size_t width_;
    std::size_t height_;
    std::vector<std::size_t> order_;
    std::size_t cursor_ = 0;
};

/// Sorted Pixel Selection order: pixel indices by non-increasing quantisation
/// change, ties by ascending row-major index, cursor at 0.
PixelOrder sps_order(const ChangeMap& cm);

inline PixelIndex next_pixel(PixelOrder& order, SplitMix64& rng) { return order.next(rng); }

/// T(n) = t_coeff * exp(-t_0 * n / total_n).
struct AnnealingSchedule {
    double t_coeff = 1.0;
    double t_0 = 6.0;
    std::uint64_t total_n = 1;

    void validate() const;
    double temperature(std::uint64_t n) const;
};

/// Boltzmann acceptance of a worsening move: one uniform draw u, accept iff
/// u < exp(-delta_e / temperature).
bool accept_worsening(double delta_e, double temperature, SplitMix64& rng);

enum class Algorithm { DirectSearchNaive, DirectSearchFast, SimulatedAnnealing };
enum class Selection { Random, Sorted };

Algorithm parse_algorithm(std::string_view name);
std::string_view algorithm_name(Algorithm a) noexcept;
Selection parse_selection(std::string_view name);
std::string_view selection_name(Selection s) noexcept;

struct SearchConfig {
    std::uint64_t iterations = 0;
    ModulationScheme scheme = ModulationScheme::phase(2);
    Selection selection = Selection::Random;
    Algorithm algorithm = Algorithm::DirectSearchFast;
    /// Annealing only. Unset t_coeff means initial MSE / (Nx*Ny), the scale of
    /// a single-pixel error change.
    std::optional<double> t_coeff;
    double t_0 = 6.0;
    /// Accepted updates between full-DFT refreshes of the incremental replay.
    std::uint64_t recompute_interval = 50'000;
    std::uint64_t trace_stride = 100;
    /// Keep the per-iteration accept/reject sequence in the result.
    bool record_decisions = false;

    void validate() const;
};

/// State at iteration 0: the back-projection, its quantised hologram, and the
/// quantisation change that drives the sorted order.
struct InitialGuess {
    ComplexField back_projection;
    ComplexField hologram;
    ChangeMap changes;
};

InitialGuess prepare_initial_guess(const ComplexField& back_projection,
                                   const ModulationScheme& scheme);

struct SearchResult {
    ComplexField hologram;
    ComplexField replay;
    ConvergenceTrace trace;
    std::uint64_t accepted = 0;
    double final_mse = 0.0;
    /// Set for annealing runs.
    std::optional<AnnealingSchedule> schedule;
    /// One entry per iteration (1 = accepted) when record_decisions is set.
    std::vector<std::uint8_t> decisions;
};

/// Greedy search: accept a candidate pixel change iff it strictly lowers the MSE.
/// The fast variant scores candidates with the rank-one replay update instead
/// of a full DFT. Seed drives phase randomisation, proposals and selection
/// through separate sub-streams.
SearchResult direct_search(const TargetImage& target, const SearchConfig& config,
                           std::uint64_t seed);

/// As direct_search, but worsening candidates pass with probability
/// exp(-dE / T(n)). Non-worsening candidates always pass.
SearchResult simulated_annealing(const TargetImage& target, const SearchConfig& config,
                                 std::uint64_t seed);

/// Dispatches on config.algorithm.
SearchResult run_search(const TargetImage& target, const SearchConfig& config,
                        std::uint64_t seed);

/// Runs from a caller-supplied back-projection; `seed` still feeds the
/// proposal, selection and acceptance streams.
SearchResult run_search(const TargetImage& target, const SearchConfig& config,
                        std::uint64_t seed, const ComplexField& back_projection);

}  // namespace holo

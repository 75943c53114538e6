#include "holo/search.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>

namespace holo {

ComplexField back_project(const TargetImage& target, SplitMix64& rng) {
    ComplexField spectrum(target.width(), target.height());
    for (std::size_t i = 0; i < spectrum.size(); ++i) {
        const double phi = 2.0 * std::numbers::pi * rng.uniform();
        spectrum[i] = std::polar(target[i], phi);
    }
    return idft2(spectrum);
}

PixelOrder PixelOrder::random(std::size_t width, std::size_t height) {
    if (width == 0 || height == 0) throw std::invalid_argument("empty pixel grid");
    return PixelOrder(Mode::Random, width, height);
}

PixelOrder PixelOrder::sorted(std::vector<std::size_t> order, std::size_t width,
                              std::size_t height) {
    const std::size_t n = width * height;
    if (n == 0 || order.size() != n) {
        throw std::invalid_argument("sorted order length does not match the pixel count");
    }
    std::vector<bool> seen(n, false);
    for (const auto i : order) {
        if (i >= n || seen[i]) throw std::invalid_argument("sorted order is not a permutation");
        seen[i] = true;
    }
    PixelOrder po(Mode::Sorted, width, height);
    po.order_ = std::move(order);
    return po;
}

void PixelOrder::set_cursor(std::size_t c) {
    if (mode_ != Mode::Sorted) throw std::logic_error("cursor only exists in sorted mode");
    cursor_ = c % order_.size();
}

PixelIndex PixelOrder::next(SplitMix64& rng) {
    std::size_t flat = 0;
    if (mode_ == Mode::Random) {
        flat = static_cast<std::size_t>(rng.below(width_ * height_));
    } else {
        flat = order_[cursor_];
        if (++cursor_ == order_.size()) cursor_ = 0;
    }
    return {flat % width_, flat / width_};
}

PixelOrder sps_order(const ChangeMap& cm) {
    std::vector<std::size_t> order(cm.delta.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    const auto& d = cm.delta;
    std::stable_sort(order.begin(), order.end(),
                     [&d](std::size_t a, std::size_t b) { return d[a] > d[b]; });
    return PixelOrder::sorted(std::move(order), cm.width(), cm.height());
}

void AnnealingSchedule::validate() const {
    if (!(t_coeff > 0.0) || !std::isfinite(t_coeff)) {
        throw std::invalid_argument("annealing t_coeff must be positive and finite");
    }
    if (!(t_0 > 0.0) || !std::isfinite(t_0)) {
        throw std::invalid_argument("annealing t_0 must be positive and finite");
    }
    if (total_n == 0) throw std::invalid_argument("annealing total_n must be positive");
}

double AnnealingSchedule::temperature(std::uint64_t n) const {
    return t_coeff * std::exp(-t_0 * static_cast<double>(n) / static_cast<double>(total_n));
}

bool accept_worsening(double delta_e, double temperature, SplitMix64& rng) {
    const double u = rng.uniform();
    return u < std::exp(-delta_e / temperature);
}

Algorithm parse_algorithm(std::string_view name) {
    if (name == "ds-naive") return Algorithm::DirectSearchNaive;
    if (name == "ds-fast") return Algorithm::DirectSearchFast;
    if (name == "sa") return Algorithm::SimulatedAnnealing;
    throw std::invalid_argument("unknown algorithm '" + std::string(name) + "'");
}

std::string_view algorithm_name(Algorithm a) noexcept {
    switch (a) {
        case Algorithm::DirectSearchNaive: return "ds-naive";
        case Algorithm::DirectSearchFast: return "ds-fast";
        case Algorithm::SimulatedAnnealing: return "sa";
    }
    return "?";
}

Selection parse_selection(std::string_view name) {
    if (name == "random") return Selection::Random;
    if (name == "sps") return Selection::Sorted;
    throw std::invalid_argument("unknown selection '" + std::string(name) + "'");
}

std::string_view selection_name(Selection s) noexcept {
    return s == Selection::Random ? "random" : "sps";
}

void SearchConfig::validate() const {
    if (recompute_interval == 0) throw std::invalid_argument("recompute_interval must be >= 1");
    if (trace_stride == 0) throw std::invalid_argument("trace_stride must be >= 1");
    if (algorithm == Algorithm::SimulatedAnnealing) {
        if (t_coeff && (!(*t_coeff > 0.0) || !std::isfinite(*t_coeff))) {
            throw std::invalid_argument("t_coeff must be positive and finite");
        }
        if (!(t_0 > 0.0) || !std::isfinite(t_0)) throw std::invalid_argument("t_0 must be positive");
    }
}

InitialGuess prepare_initial_guess(const ComplexField& back_projection,
                                   const ModulationScheme& scheme) {
    ComplexField hologram = quantise(back_projection, scheme);
    ChangeMap changes = change_map(back_projection, hologram);
    return {back_projection, std::move(hologram), std::move(changes)};
}

namespace {

SearchResult search(const TargetImage& target, const SearchConfig& config, std::uint64_t seed,
                    const ComplexField& back_projection) {
    config.validate();
    if (!target.mag.same_shape(back_projection)) {
        throw std::invalid_argument("back-projection shape does not match the target");
    }
    const std::size_t width = target.width();
    const std::size_t height = target.height();
    const auto pixels = static_cast<double>(target.size());

    InitialGuess guess = prepare_initial_guess(back_projection, config.scheme);
    PixelOrder order = config.selection == Selection::Sorted ? sps_order(guess.changes)
                                                             : PixelOrder::random(width, height);
    SplitMix64 proposal_rng = substream(seed, Stream::Proposal);
    SplitMix64 selection_rng = substream(seed, Stream::Selection);
    SplitMix64 acceptance_rng = substream(seed, Stream::Acceptance);

    SearchResult result;
    result.hologram = std::move(guess.hologram);
    result.replay = dft2(result.hologram);
    double error = squared_error_sum(target, result.replay) / pixels;

    const bool naive = config.algorithm == Algorithm::DirectSearchNaive;
    const bool annealing = config.algorithm == Algorithm::SimulatedAnnealing;
    if (annealing) {
        AnnealingSchedule schedule{config.t_coeff.value_or(error / pixels), config.t_0,
                                   std::max<std::uint64_t>(config.iterations, 1)};
        schedule.validate();
        result.schedule = schedule;
    }
    if (config.record_decisions) result.decisions.reserve(config.iterations);

    PixelKernel kernel(width, height);
    std::uint64_t accepted = 0;
    result.trace.push({0, error, 0});

    for (std::uint64_t n = 0; n < config.iterations; ++n) {
        const PixelIndex p = order.next(selection_rng);
        Complex& pixel = result.hologram(p.x, p.y);
        const Complex candidate = propose_value(pixel, config.scheme, proposal_rng);
        const Complex dH = candidate - pixel;

        double candidate_error = 0.0;
        ComplexField naive_replay;
        if (naive) {
            ComplexField trial = result.hologram;
            trial(p.x, p.y) = candidate;
            naive_replay = dft2(trial);
            candidate_error = squared_error_sum(target, naive_replay) / pixels;
        } else {
            kernel.bind(p, dH);
            candidate_error = squared_error_sum_with_update(target, result.replay, kernel) / pixels;
        }

        const double delta_e = candidate_error - error;
        bool accept = delta_e < 0.0;
        if (annealing && !accept) {
            accept = delta_e <= 0.0 ||
                     accept_worsening(delta_e, result.schedule->temperature(n), acceptance_rng);
        }

        if (accept) {
            pixel = candidate;
            ++accepted;
            if (naive) {
                result.replay = std::move(naive_replay);
                error = candidate_error;
            } else if (accepted % config.recompute_interval == 0) {
                result.replay = dft2(result.hologram);
                error = squared_error_sum(target, result.replay) / pixels;
            } else {
                delta_update(result.replay, kernel, p, dH);
                error = candidate_error;
            }
        }
        if (config.record_decisions) result.decisions.push_back(accept ? 1 : 0);

        const std::uint64_t done = n + 1;
        if (done % config.trace_stride == 0 || done == config.iterations) {
            result.trace.push({done, error, accepted});
        }
    }

    result.accepted = accepted;
    result.final_mse = error;
    return result;
}

}  // namespace

SearchResult run_search(const TargetImage& target, const SearchConfig& config,
                        std::uint64_t seed, const ComplexField& back_projection) {
    return search(target, config, seed, back_projection);
}

SearchResult run_search(const TargetImage& target, const SearchConfig& config,
                        std::uint64_t seed) {
    SplitMix64 phase_rng = substream(seed, Stream::PhaseRandomization);
    return search(target, config, seed, back_project(target, phase_rng));
}

SearchResult direct_search(const TargetImage& target, const SearchConfig& config,
                           std::uint64_t seed) {
    if (config.algorithm == Algorithm::SimulatedAnnealing) {
        throw std::invalid_argument("direct_search needs a direct-search algorithm");
    }
    return run_search(target, config, seed);
}

SearchResult simulated_annealing(const TargetImage& target, const SearchConfig& config,
                                 std::uint64_t seed) {
    if (config.algorithm != Algorithm::SimulatedAnnealing) {
        throw std::invalid_argument("simulated_annealing needs the annealing algorithm");
    }
    return run_search(target, config, seed);
}

}  // namespace holo

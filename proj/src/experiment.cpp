#include "holo/experiment.hpp"

#include "holo/pgm.hpp"
#include "holo/synthetic.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace holo {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << text;
    if (!out) throw std::runtime_error("write failed for " + path.string());
}

bool writes(const ExperimentConfig& c) { return !c.out_dir.empty(); }

void ensure_out_dir(const ExperimentConfig& c) {
    if (writes(c)) std::filesystem::create_directories(c.out_dir);
}

std::string optional_real(const std::optional<double>& v) {
    return v ? format_real(*v) : std::string("undefined");
}

std::string config_lines(const ExperimentConfig& c) {
    std::string s;
    s += fmt::format("image = {}\n", c.image);
    s += fmt::format("resolution = {}\n", c.resolution);
    s += fmt::format("scheme = {}\n", c.scheme.name());
    s += fmt::format("algorithm = {}\n", algorithm_name(c.algorithm));
    s += fmt::format("iterations = {}\n", c.iterations);
    s += fmt::format("seed = {}\n", c.seed);
    s += fmt::format("symmetry = {}\n", c.symmetry ? "true" : "false");
    if (c.algorithm == Algorithm::SimulatedAnnealing) {
        s += fmt::format("t_coeff = {}\n", c.t_coeff ? format_real(*c.t_coeff) : "initial-mse/pixels");
        s += fmt::format("t0 = {}\n", format_real(c.t_0));
    }
    return s;
}

// Displayable hologram: phase mapped from [-pi, pi] to [0, 1], amplitude as is.
RealGrid hologram_image(const ComplexField& h, const ModulationScheme& s) {
    RealGrid img(h.width(), h.height());
    for (std::size_t i = 0; i < h.size(); ++i) {
        img[i] = s.kind() == ModulationKind::Phase
                     ? (std::arg(h[i]) + std::numbers::pi) / (2.0 * std::numbers::pi)
                     : h[i].real();
    }
    return img;
}

}  // namespace

void ExperimentConfig::validate() const {
    static constexpr std::size_t allowed[] = {64, 128, 256, 512, 1024, 2048};
    if (std::find(std::begin(allowed), std::end(allowed), resolution) == std::end(allowed)) {
        throw std::invalid_argument("resolution must be one of 64, 128, 256, 512, 1024, 2048; got " +
                                    std::to_string(resolution));
    }
    if (bins == 0) throw std::invalid_argument("bins must be positive");
    if (samples == 0) throw std::invalid_argument("samples must be positive");
    search_config().validate();
}

SearchConfig ExperimentConfig::search_config() const {
    SearchConfig s;
    s.iterations = iterations;
    s.scheme = scheme;
    s.selection = selection;
    s.algorithm = algorithm;
    s.t_coeff = t_coeff;
    s.t_0 = t_0;
    s.recompute_interval = recompute_interval;
    s.trace_stride = trace_stride;
    return s;
}

TargetImage prepare_target(const ExperimentConfig& config) {
    config.validate();
    TargetImage img = load_image(config.image, config.resolution);
    if (config.symmetry) img = induce_symmetry(img);
    return normalize_energy(img);
}

ComplexField seeded_back_projection(const TargetImage& target, std::uint64_t seed) {
    SplitMix64 rng = substream(seed, Stream::PhaseRandomization);
    return back_project(target, rng);
}

AbReport run_convergence_ab(const ExperimentConfig& config) {
    return run_convergence_ab(config, prepare_target(config));
}

AbReport run_convergence_ab(const ExperimentConfig& config, const TargetImage& target) {
    const auto start = Clock::now();
    const ComplexField bp = seeded_back_projection(target, config.seed);

    SearchConfig sc = config.search_config();
    sc.selection = Selection::Random;
    const SearchResult random = run_search(target, sc, config.seed, bp);
    sc.selection = Selection::Sorted;
    const SearchResult sorted = run_search(target, sc, config.seed, bp);

    AbReport r;
    r.initial_mse = random.trace.initial_mse();
    r.final_mse_random = random.final_mse;
    r.final_mse_sps = sorted.final_mse;
    r.accepted_random = random.accepted;
    r.accepted_sps = sorted.accepted;
    r.trace_random = random.trace;
    r.trace_sps = sorted.trace;
    const double base_reduction = r.initial_mse - r.final_mse_random;
    const double sps_reduction = r.initial_mse - r.final_mse_sps;
    if (base_reduction > 0.0) {
        r.improvement_reduction = relative_improvement(r.trace_random, r.trace_sps);
    } else if (base_reduction == 0.0 && sps_reduction == 0.0) {
        // Neither run moved (e.g. zero iterations): no gain either way.
        r.improvement_reduction = 0.0;
    }
    if (r.final_mse_random > 0.0) {
        r.improvement_final = final_error_improvement(r.trace_random, r.trace_sps);
    }
    r.wall_seconds = seconds_since(start);

    if (writes(config)) {
        ensure_out_dir(config);
        write_text(config.out_dir / "trace_random.csv", trace_csv(r.trace_random));
        write_text(config.out_dir / "trace_sps.csv", trace_csv(r.trace_sps));
        save_pgm(target, config.out_dir / "target.pgm", PgmScaling::LinearMax);
        save_pgm(random.replay, config.out_dir / "replay_random.pgm", PgmScaling::LinearMax);
        save_pgm(sorted.replay, config.out_dir / "replay_sps.pgm", PgmScaling::LinearMax);
        std::string s = "experiment = run-ab\n" + config_lines(config);
        s += fmt::format("initial_mse = {}\n", format_real(r.initial_mse));
        s += fmt::format("final_mse_random = {}\n", format_real(r.final_mse_random));
        s += fmt::format("final_mse_sps = {}\n", format_real(r.final_mse_sps));
        s += fmt::format("improvement_error_reduction = {}\n", optional_real(r.improvement_reduction));
        s += fmt::format("improvement_final_error = {}\n", optional_real(r.improvement_final));
        s += fmt::format("accepted_random = {}\n", r.accepted_random);
        s += fmt::format("accepted_sps = {}\n", r.accepted_sps);
        s += fmt::format("wall_seconds = {:.3f}\n", r.wall_seconds);
        write_text(config.out_dir / "summary.txt", s);
    }
    return r;
}

ScatterReport run_scatter_experiment(const ExperimentConfig& config) {
    return run_scatter_experiment(config, prepare_target(config));
}

ScatterReport run_scatter_experiment(const ExperimentConfig& config, const TargetImage& target) {
    const auto start = Clock::now();
    const ComplexField bp = seeded_back_projection(target, config.seed);
    const ComplexField baseline_replay = dft2(bp);
    const double pixels = static_cast<double>(target.size());
    const double baseline = squared_error_sum(target, baseline_replay);

    // Uniform sample without replacement: the head of a partial Fisher-Yates shuffle.
    std::vector<std::size_t> indices(target.size());
    std::iota(indices.begin(), indices.end(), std::size_t{0});
    const std::size_t count = std::min(config.samples, indices.size());
    if (count < indices.size()) {
        SplitMix64 rng = substream(config.seed, Stream::Selection);
        for (std::size_t i = 0; i < count; ++i) {
            const auto j = i + static_cast<std::size_t>(rng.below(indices.size() - i));
            std::swap(indices[i], indices[j]);
        }
        indices.resize(count);
    }

    ScatterReport r;
    r.rows.reserve(count);
    PixelKernel kernel(target.width(), target.height());
    for (const std::size_t i : indices) {
        const Complex change = quantise_value(bp[i], config.scheme) - bp[i];
        kernel.bind({i % target.width(), i / target.width()}, change);
        const double after = squared_error_sum_with_update(target, baseline_replay, kernel);
        r.rows.push_back({i, std::abs(change), (after - baseline) / pixels});
    }

    double num = 0.0;
    double den = 0.0;
    for (const auto& row : r.rows) {
        const double d2 = row.delta * row.delta;
        num += d2 * row.mse_change;
        den += d2 * d2;
    }
    r.square_law_coefficient = den > 0.0 ? num / den : 0.0;
    std::vector<double> fitted;
    std::vector<double> observed;
    fitted.reserve(r.rows.size());
    observed.reserve(r.rows.size());
    for (const auto& row : r.rows) {
        fitted.push_back(r.square_law_coefficient * row.delta * row.delta);
        observed.push_back(row.mse_change);
    }
    try {
        r.correlation = pearson(fitted, observed);
    } catch (const UndefinedStatistic&) {
        r.correlation.reset();
    }
    r.wall_seconds = seconds_since(start);

    if (writes(config)) {
        ensure_out_dir(config);
        write_text(config.out_dir / "scatter.csv", scatter_csv(r.rows));
        std::string s = "experiment = scatter\n" + config_lines(config);
        s += fmt::format("samples = {}\n", r.rows.size());
        s += fmt::format("square_law_coefficient = {}\n", format_real(r.square_law_coefficient));
        s += fmt::format("pearson = {}\n", optional_real(r.correlation));
        s += fmt::format("wall_seconds = {:.3f}\n", r.wall_seconds);
        write_text(config.out_dir / "summary.txt", s);
    }
    return r;
}

std::uint64_t Histogram::total() const {
    return std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
}

Histogram make_histogram(std::span<const double> values, double lower, double upper,
                         std::size_t bins) {
    if (bins == 0) throw std::invalid_argument("histogram needs at least one bin");
    if (!(upper >= lower)) throw std::invalid_argument("histogram range is inverted");
    Histogram h{lower, upper, std::vector<std::uint64_t>(bins, 0)};
    const double width = upper - lower;
    for (const double v : values) {
        std::size_t bin = 0;
        if (width > 0.0) {
            const double pos = (v - lower) / width * static_cast<double>(bins);
            bin = pos <= 0.0 ? 0 : std::min(static_cast<std::size_t>(pos), bins - 1);
        }
        ++h.counts[bin];
    }
    return h;
}

HistogramReport run_histograms(const ExperimentConfig& config) {
    return run_histograms(config, prepare_target(config));
}

HistogramReport run_histograms(const ExperimentConfig& config, const TargetImage& target) {
    const ComplexField bp = seeded_back_projection(target, config.seed);
    const InitialGuess guess = prepare_initial_guess(bp, config.scheme);

    std::vector<double> mags(bp.size());
    std::vector<double> angles(bp.size());
    for (std::size_t i = 0; i < bp.size(); ++i) {
        mags[i] = std::abs(bp[i]);
        double a = std::arg(bp[i]);
        if (a >= std::numbers::pi) a -= 2.0 * std::numbers::pi;
        angles[i] = a;
    }
    const auto changes = guess.changes.delta.values();
    const auto max_of = [](std::span<const double> v) {
        return v.empty() ? 0.0 : *std::max_element(v.begin(), v.end());
    };

    HistogramReport r;
    r.magnitude = make_histogram(mags, 0.0, max_of(mags), config.bins);
    r.angle = make_histogram(angles, -std::numbers::pi, std::numbers::pi, config.bins);
    r.change = make_histogram(changes, 0.0, max_of(changes), config.bins);

    if (writes(config)) {
        ensure_out_dir(config);
        write_text(config.out_dir / "hist_magnitude.csv", histogram_csv(r.magnitude));
        write_text(config.out_dir / "hist_angle.csv", histogram_csv(r.angle));
        write_text(config.out_dir / "hist_change.csv", histogram_csv(r.change));
    }
    return r;
}

SearchResult run_render(const ExperimentConfig& config) {
    const auto start = Clock::now();
    const TargetImage target = prepare_target(config);
    SearchResult result = run_search(target, config.search_config(), config.seed);
    if (writes(config)) {
        ensure_out_dir(config);
        save_pgm(target, config.out_dir / "target.pgm", PgmScaling::LinearMax);
        save_pgm(hologram_image(result.hologram, config.scheme), config.out_dir / "hologram.pgm",
                 PgmScaling::ClampUnit);
        save_pgm(result.replay, config.out_dir / "replay.pgm", PgmScaling::LinearMax);
        write_text(config.out_dir / "trace.csv", trace_csv(result.trace));
        std::string s = "experiment = render\n" + config_lines(config);
        s += fmt::format("selection = {}\n", selection_name(config.selection));
        s += fmt::format("initial_mse = {}\n", format_real(result.trace.initial_mse()));
        s += fmt::format("final_mse = {}\n", format_real(result.final_mse));
        s += fmt::format("accepted = {}\n", result.accepted);
        s += fmt::format("wall_seconds = {:.3f}\n", seconds_since(start));
        write_text(config.out_dir / "summary.txt", s);
    }
    return result;
}

std::string format_real(double v) { return fmt::format("{:.17g}", v); }

std::string trace_csv(const ConvergenceTrace& trace) {
    std::string out = "iteration,mse,accepted\n";
    for (const auto& s : trace.samples()) {
        out += fmt::format("{},{},{}\n", s.iteration, format_real(s.mse), s.accepted);
    }
    return out;
}

std::string scatter_csv(std::span<const ScatterRow> rows) {
    std::string out = "pixel_index,delta,mse_change\n";
    for (const auto& r : rows) {
        out += fmt::format("{},{},{}\n", r.pixel_index, format_real(r.delta),
                           format_real(r.mse_change));
    }
    return out;
}

std::string histogram_csv(const Histogram& h) {
    std::string out = "bin,lower,upper,count\n";
    const double w = h.bin_width();
    for (std::size_t i = 0; i < h.counts.size(); ++i) {
        out += fmt::format("{},{},{},{}\n", i, format_real(h.lower + w * static_cast<double>(i)),
                           format_real(h.lower + w * static_cast<double>(i + 1)), h.counts[i]);
    }
    return out;
}

}  // namespace holo

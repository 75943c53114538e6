// holo: command-line harness for the hologram search experiments.

#include "holo/experiment.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <cstdlib>
#include <exception>
#include <iostream>
#include <string>

namespace {

struct Options {
    std::string image = "synthetic:mandrill";
    std::size_t resolution = 128;
    std::string scheme = "binary-phase";
    std::string algorithm = "ds-fast";
    std::string selection = "sps";
    std::uint64_t iterations = 20'000;
    std::uint64_t seed = 1;
    bool symmetry = false;
    double t_coeff = 0.0;
    double t0 = 6.0;
    std::string out_dir = "out";
    std::uint64_t trace_stride = 100;
    std::uint64_t recompute_interval = 50'000;
    std::size_t samples = 10'000;
    std::size_t bins = 64;
};

void add_common(CLI::App& cmd, Options& o) {
    cmd.add_option("--image", o.image, "PGM path, or synthetic:mandrill / synthetic:usaf")
        ->capture_default_str();
    cmd.add_option("--resolution", o.resolution, "Target side length in pixels")
        ->check(CLI::IsMember({64, 128, 256, 512, 1024, 2048}))
        ->capture_default_str();
    cmd.add_option("--scheme", o.scheme,
                   "binary-phase, phase:<n>, phase:cont, binary-amplitude, amplitude:<n>, "
                   "amplitude:cont")
        ->capture_default_str();
    cmd.add_option("--algorithm", o.algorithm, "Search algorithm")
        ->check(CLI::IsMember({"ds-naive", "ds-fast", "sa"}))
        ->capture_default_str();
    cmd.add_option("--selection", o.selection, "Pixel selection (render only)")
        ->check(CLI::IsMember({"random", "sps"}))
        ->capture_default_str();
    cmd.add_option("--iterations", o.iterations, "Search iterations")->capture_default_str();
    cmd.add_option("--seed", o.seed, "Master RNG seed")->capture_default_str();
    cmd.add_flag("--symmetry", o.symmetry, "Induce 180-degree rotational symmetry in the target");
    cmd.add_option("--t-coeff", o.t_coeff,
                   "Annealing temperature scale (default: initial MSE / pixel count)")
        ->check(CLI::PositiveNumber);
    cmd.add_option("--t0", o.t0, "Annealing decay constant")->capture_default_str();
    cmd.add_option("--out-dir", o.out_dir, "Output directory")->capture_default_str();
    cmd.add_option("--trace-stride", o.trace_stride, "Iterations between trace samples")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd.add_option("--recompute-interval", o.recompute_interval,
                   "Accepted updates between full-DFT refreshes")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd.add_option("--samples", o.samples, "Scatter experiment sample size")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd.add_option("--bins", o.bins, "Histogram bin count")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
}

holo::ExperimentConfig to_config(const Options& o, bool t_coeff_given) {
    holo::ExperimentConfig c;
    c.image = o.image;
    c.resolution = o.resolution;
    c.scheme = holo::ModulationScheme::parse(o.scheme);
    c.algorithm = holo::parse_algorithm(o.algorithm);
    c.selection = holo::parse_selection(o.selection);
    c.iterations = o.iterations;
    c.seed = o.seed;
    c.symmetry = o.symmetry;
    if (t_coeff_given) c.t_coeff = o.t_coeff;
    c.t_0 = o.t0;
    c.trace_stride = o.trace_stride;
    c.recompute_interval = o.recompute_interval;
    c.samples = o.samples;
    c.bins = o.bins;
    c.out_dir = o.out_dir;
    c.validate();
    return c;
}

std::string optional_percent(const std::optional<double>& v) {
    return v ? fmt::format("{:.2f}%", 100.0 * *v) : std::string("undefined");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hologram search experiments: direct search and simulated annealing with "
                 "random or sorted pixel selection"};
    app.require_subcommand(1);
    app.set_config("--config", "", "Flat key = value file; command-line flags take precedence");

    Options opts;
    add_common(app, opts);
    auto* run_ab = app.add_subcommand("run-ab", "Random vs sorted selection from one back-projection");
    auto* scatter = app.add_subcommand("scatter", "Per-pixel quantisation change vs MSE change");
    auto* hist = app.add_subcommand("hist", "Histograms of the back-projection and quantisation change");
    auto* render = app.add_subcommand("render", "Single search; writes target, hologram and replay images");
    // Options live on the top-level app so a flat config file can set them;
    // fallthrough lets them follow the subcommand name too.
    for (auto* cmd : {run_ab, scatter, hist, render}) cmd->fallthrough();

    CLI11_PARSE(app, argc, argv);

    try {
        const bool t_coeff_given = app.count("--t-coeff") > 0;
        if (*run_ab) {
            const auto config = to_config(opts, t_coeff_given);
            const auto r = holo::run_convergence_ab(config);
            fmt::print("initial mse        {:.6g}\n", r.initial_mse);
            fmt::print("final mse random   {:.6g}  (accepted {})\n", r.final_mse_random, r.accepted_random);
            fmt::print("final mse sps      {:.6g}  (accepted {})\n", r.final_mse_sps, r.accepted_sps);
            fmt::print("improvement (error reduction) {}\n", optional_percent(r.improvement_reduction));
            fmt::print("improvement (final error)     {}\n", optional_percent(r.improvement_final));
            fmt::print("wrote {}\n", config.out_dir.string());
        } else if (*scatter) {
            const auto config = to_config(opts, t_coeff_given);
            const auto r = holo::run_scatter_experiment(config);
            fmt::print("samples {}  a = {:.6g}  pearson = {}\n", r.rows.size(),
                       r.square_law_coefficient,
                       r.correlation ? fmt::format("{:.6f}", *r.correlation) : "undefined");
            fmt::print("wrote {}\n", config.out_dir.string());
        } else if (*hist) {
            const auto config = to_config(opts, t_coeff_given);
            holo::run_histograms(config);
            fmt::print("wrote {}\n", config.out_dir.string());
        } else if (*render) {
            const auto config = to_config(opts, t_coeff_given);
            const auto r = holo::run_render(config);
            fmt::print("initial mse {:.6g}  final mse {:.6g}  accepted {}\n", r.trace.initial_mse(),
                       r.final_mse, r.accepted);
            fmt::print("wrote {}\n", config.out_dir.string());
        }
    } catch (const std::exception& e) {
        std::cerr << "holo: " << e.what() << '\n';
        return EXIT_FAILURE;
    }
    return EXIT_SUCCESS;
}

// cyclegsp command-line driver.
//
// Exit codes: 0 success, 1 usage, parse or I/O error, 2 no cycle cover,
// 3 size cap exceeded.

#include <cstdio>
#include <exception>

#include <CLI11.hpp>
#include <fmt/core.h>

#include "commands.hpp"
#include "cyclegsp/error.hpp"
#include "run_config.hpp"

using namespace cyclegsp;
using cyclegsp::cli::RunConfig;

namespace {

void add_weight_flags(CLI::App* cmd, RunConfig& c)
{
    cmd->add_option("--weights", c.weights, "Lattice edge weights")
        ->check(CLI::IsMember({"expdiff", "absdiff", "binary", "unit"}));
    cmd->add_option("--scale", c.scale, "ExpDiff scale s in exp(|dx| / s)")->check(CLI::PositiveNumber);
    cmd->add_option("--edge-map", c.edge_map, "Edge-map PGM for binary weights (nonzero = edge)");
    cmd->add_option("--threshold", c.threshold, "Gradient threshold when no edge map is given")
        ->check(CLI::NonNegativeNumber);
}

void add_cover_flags(CLI::App* cmd, RunConfig& c)
{
    cmd->add_option("--quantize", c.quantize, "Rank quantization before matching (default: dense for images, none "
                                              "for edge lists)")
        ->check(CLI::IsMember({"dense", "ordinal", "none"}));
    cmd->add_flag("--fallback", c.fallback, "Add random penalty edges when no cover exists");
    cmd->add_option("--seed", c.seed, "Seed for every random choice");
    cmd->add_option("--max-rounds", c.max_rounds, "Fallback batches before giving up")->check(CLI::PositiveNumber);
    cmd->add_option("--penalty", c.penalty, "Fallback edge weight (default 1 + total weight)");
}

void add_config_flag(CLI::App* cmd, RunConfig& c)
{
    cmd->add_option("--config-out", c.config_out, "Where to write the resolved run configuration");
}

int exit_code(ErrorCode code)
{
    switch (code) {
    case ErrorCode::NoCycleCover:
        return 2;
    case ErrorCode::TooLarge:
        return 3;
    default:
        return 1;
    }
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Minimum-weight vertex-disjoint cycle covers and per-cycle graph filtering"};
    app.require_subcommand(1);
    RunConfig c;

    auto* vcc = app.add_subcommand("vcc", "Compute a minimum-weight cycle cover of an image lattice or edge list");
    auto* vcc_in = vcc->add_option_group("input");
    vcc_in->add_option("--image", c.image, "Grayscale PGM");
    vcc_in->add_option("--graph", c.graph, "Edge-list file");
    vcc_in->require_option(1);
    add_weight_flags(vcc, c);
    add_cover_flags(vcc, c);
    vcc->add_option("--out", c.out, "Cover file")->required();
    vcc->add_option("--stats", c.stats, "Statistics CSV (default <out>.stats.csv)");
    vcc->add_option("--render", c.render, "PPM rendering of the cover (images only)");
    add_config_flag(vcc, c);

    auto* den = app.add_subcommand("denoise", "Tikhonov denoising per cover cycle or on the whole lattice");
    den->add_option("--image", c.image, "Noisy PGM")->required();
    den->add_option("--mode", c.mode, "vcc-gft or gft")->check(CLI::IsMember({"vcc-gft", "gft"}));
    den->add_option("--cover", c.cover, "Precomputed cover of the image (vcc-gft; computed when absent)");
    den->add_option("--clean", c.clean, "Clean reference for PSNR");
    auto* gamma = den->add_option("--gamma", c.gamma, "Regularisation strength")->check(CLI::NonNegativeNumber);
    den->add_option("--gamma-sweep", c.gamma_sweep, "Comma-separated gammas; keeps the best PSNR (needs --clean)")
        ->delimiter(',')
        ->check(CLI::NonNegativeNumber)
        ->excludes(gamma);
    den->add_option("--cap", c.cap, "Vertex cap for the dense eigensolver (gft)")->check(CLI::PositiveNumber);
    add_weight_flags(den, c);
    add_cover_flags(den, c);
    den->add_option("--out", c.out, "Denoised PGM")->required();
    den->add_option("--report", c.report, "CSV of gamma against PSNR");
    add_config_flag(den, c);

    auto* spec = app.add_subcommand("spectrum", "Spectra of the longest cover cycle, its shuffles, and the unit cover");
    spec->add_option("--image", c.image, "PGM the cover was computed on")->required();
    spec->add_option("--cover", c.cover, "Cover file")->required();
    spec->add_option("--trials", c.trials, "Number of random permutations")->check(CLI::PositiveNumber);
    spec->add_option("--seed", c.seed, "Permutation seed");
    spec->add_option("--cutoff", c.cutoff, "High band is cutoff*n <= k <= (1-cutoff)*n")
        ->check(CLI::Range(0.0, 0.5));
    spec->add_option("--out", c.out, "Output prefix for the CSV files")->required();
    add_config_flag(spec, c);

    auto* reo = app.add_subcommand("reorder", "Order vertices cycle by cycle and compare adjacency entropy");
    reo->add_option("--graph", c.graph, "Edge-list file")->required();
    reo->add_option("--cover", c.cover, "Cover file (computed when absent)");
    add_cover_flags(reo, c);
    reo->add_option("--out", c.out, "Permutation file, one vertex id per line")->required();
    reo->add_option("--reordered", c.reordered, "Edge list relabelled by the permutation");
    add_config_flag(reo, c);

    auto* ren = app.add_subcommand("render", "Colour every cover cycle with its own jet colour");
    ren->add_option("--cover", c.cover, "Cover file")->required();
    auto* ren_dims = ren->add_option_group("raster");
    ren_dims->add_option("--image", c.image, "Take the raster size from this PGM");
    auto* w = ren_dims->add_option("--width", c.width)->check(CLI::PositiveNumber);
    auto* h = ren_dims->add_option("--height", c.height)->check(CLI::PositiveNumber);
    w->needs(h);
    h->needs(w);
    ren_dims->require_option(1, 2);
    ren->add_option("--out", c.out, "PPM file")->required();
    add_config_flag(ren, c);

    auto* noi = app.add_subcommand("noise", "Add seeded Gaussian noise to an image");
    noi->add_option("--image", c.image, "Clean PGM")->required();
    noi->add_option("--sigma", c.sigma, "Standard deviation")->check(CLI::NonNegativeNumber);
    noi->add_option("--seed", c.seed, "Noise seed");
    noi->add_option("--out", c.out, "Noisy PGM")->required();
    add_config_flag(noi, c);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    for (auto* sub : app.get_subcommands())
        c.subcommand = sub->get_name();
    try {
        return cli::run(c);
    } catch (const Error& e) {
        fmt::print(stderr, "error: {}\n", e.what());
        return exit_code(e.code());
    } catch (const cli::UsageError& e) {
        fmt::print(stderr, "usage error: {}\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        fmt::print(stderr, "error: {}\n", e.what());
        return 1;
    }
}

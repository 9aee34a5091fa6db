#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <optional>
#include <sstream>
#include <string>

#include <fmt/core.h>

#include "cyclegsp/analysis.hpp"
#include "cyclegsp/cycle_cover.hpp"
#include "cyclegsp/error.hpp"
#include "cyclegsp/image.hpp"
#include "cyclegsp/spectral.hpp"

namespace cyclegsp::cli {

namespace {

std::ofstream open_out(const std::string& path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw Error(ErrorCode::FileNotFound, path);
    return out;
}

// Shortest round-trip form so reruns give byte-identical files.
std::string num(double x)
{
    if (std::isinf(x))
        return x > 0 ? "inf" : "-inf";
    return fmt::format("{}", x);
}

Quantize quantize_mode(const RunConfig& c)
{
    if (c.quantize == "dense")
        return Quantize::Dense;
    if (c.quantize == "ordinal")
        return Quantize::Ordinal;
    return Quantize::None;
}

WeightScheme plain(WeightKind kind)
{
    WeightScheme s;
    s.kind = kind;
    return s;
}

WeightScheme weight_scheme(const RunConfig& c, const ImageSignal& img)
{
    WeightScheme s;
    s.scale = c.scale;
    if (c.weights == "expdiff") {
        s.kind = WeightKind::ExpDiff;
    } else if (c.weights == "absdiff") {
        s.kind = WeightKind::AbsDiff;
    } else if (c.weights == "unit") {
        s.kind = WeightKind::Unit;
    } else {
        s.kind = WeightKind::Binary;
        s.edge_map = c.edge_map.empty() ? gradient_edge_map(img, c.threshold) : load_edge_map(c.edge_map);
    }
    return s;
}

CycleCover compute_cover(const RunConfig& c, const Graph& g)
{
    if (c.fallback) {
        FallbackOptions f;
        f.penalty = c.penalty;
        f.seed = c.seed;
        f.max_rounds = c.max_rounds;
        f.quantize = quantize_mode(c);
        return cover_with_fallback(g, f);
    }
    return min_weight_cycle_cover(g, {quantize_mode(c)});
}

void write_spectrum_csv(const std::string& path, const Spectrum& s, const std::vector<double>* magnitude = nullptr)
{
    auto out = open_out(path);
    out << "bin,re,im,magnitude\n";
    for (std::size_t k = 0; k < s.size(); ++k) {
        const double mag = magnitude ? (*magnitude)[k] : std::abs(s[k]);
        out << k << ',' << num(s[k].real()) << ',' << num(s[k].imag()) << ',' << num(mag) << '\n';
    }
}

int cmd_vcc(const RunConfig& c)
{
    Graph g;
    Graph stats_graph;
    std::optional<ImageSignal> img;
    if (!c.image.empty()) {
        img = load_pgm(c.image);
        g = build_8lattice(*img, weight_scheme(c, *img));
        // Variation statistics are always measured as intensity differences.
        stats_graph = build_8lattice(*img, plain(WeightKind::AbsDiff));
    } else {
        g = load_edge_list(c.graph);
        stats_graph = g;
    }

    const auto cover = compute_cover(c, g);
    {
        auto out = open_out(c.out);
        write_cover(cover, out);
    }
    const auto stats = cover_stats(stats_graph, cover);
    {
        auto out = open_out(c.stats);
        write_stats_csv(stats, out);
    }
    if (!c.render.empty()) {
        if (!img)
            throw UsageError("--render needs --image");
        save_cover_rendering(img->width, img->height, cover, c.render);
    }

    fmt::print("vertices {} edges {} cycles {} chains {} uncovered {}\n", g.vertex_count(), g.edge_count(),
               cover.cycles.size(), cover.chains.size(), cover.uncovered.size());
    fmt::print("cover weight {}\n", num(cover.total_weight));
    std::ostringstream table;
    write_stats_table(stats, table);
    fmt::print("{}", table.str());
    return 0;
}

int cmd_denoise(const RunConfig& c)
{
    const auto noisy = load_pgm(c.image);
    std::optional<ImageSignal> clean;
    if (!c.clean.empty()) {
        clean = load_pgm(c.clean);
        if (clean->width != noisy.width || clean->height != noisy.height)
            throw Error(ErrorCode::DimensionMismatch, "clean and noisy images differ in size");
    }
    std::vector<double> gammas = c.gamma_sweep.empty() ? std::vector<double>{c.gamma} : c.gamma_sweep;
    if (gammas.size() > 1 && !clean)
        throw UsageError("--gamma-sweep needs --clean to pick the best gamma");

    std::function<ImageSignal(double)> filter;
    CycleCover cover;
    GftBasis basis;
    if (c.mode == "vcc-gft") {
        if (!c.cover.empty()) {
            cover = load_cover(c.cover);
        } else {
            cover = compute_cover(c, build_8lattice(noisy, weight_scheme(c, noisy)));
        }
        filter = [&](double gamma) { return denoise_image_vcc(noisy, cover, gamma); };
    } else {
        basis = gft_basis(build_8lattice(noisy, weight_scheme(c, noisy)), c.cap);
        filter = [&](double gamma) { return denoise_image_gft(noisy, basis, gamma); };
    }

    std::optional<ImageSignal> best;
    double best_psnr = -std::numeric_limits<double>::infinity();
    double best_gamma = gammas.front();
    std::string report = "gamma,psnr\n";
    if (clean)
        fmt::print("psnr noisy {}\n", num(psnr(noisy, *clean)));
    for (double gamma : gammas) {
        auto out = filter(gamma);
        if (clean) {
            const double p = psnr(out, *clean);
            fmt::print("gamma {} psnr {}\n", num(gamma), num(p));
            report += num(gamma) + "," + num(p) + "\n";
            if (!best || p > best_psnr) {
                best_psnr = p;
                best_gamma = gamma;
                best = std::move(out);
            }
        } else {
            best = std::move(out);
        }
    }
    save_pgm(*best, c.out);
    if (clean)
        fmt::print("best gamma {} psnr {}\n", num(best_gamma), num(best_psnr));
    if (!c.report.empty()) {
        if (!clean)
            throw UsageError("--report needs --clean");
        auto out = open_out(c.report);
        out << report;
    }
    return 0;
}

int cmd_spectrum(const RunConfig& c)
{
    const auto img = load_pgm(c.image);
    const auto cover = load_cover(c.cover);
    const auto signal = cycle_signal(img, cover.cycles.at(longest_cycle(cover)));
    const auto report = spectrum_comparison(signal, c.trials, c.seed, c.cutoff);

    const auto unit = min_weight_cycle_cover(build_8lattice(img, plain(WeightKind::Unit)));
    const auto unit_signal = cycle_signal(img, unit.cycles.at(longest_cycle(unit)));
    const auto unit_spec = dft(unit_signal);

    write_spectrum_csv(c.out + "_cover.csv", report.original);
    write_spectrum_csv(c.out + "_permuted.csv", report.permuted_mean, &report.permuted_mean_magnitude);
    write_spectrum_csv(c.out + "_unit.csv", unit_spec);

    const double unit_fraction = high_bin_fraction(unit_spec, c.cutoff);
    auto out = open_out(c.out + "_summary.csv");
    out << "series,length,high_bin_fraction\n";
    out << "cover," << signal.size() << ',' << num(report.original_fraction) << '\n';
    out << "permuted," << signal.size() << ',' << num(report.permuted_fraction_mean) << '\n';
    out << "unit," << unit_signal.size() << ',' << num(unit_fraction) << '\n';

    fmt::print("longest cycle {} samples\n", signal.size());
    fmt::print("high-bin fraction cover {} permuted {} (se {}) unit {}\n", num(report.original_fraction),
               num(report.permuted_fraction_mean), num(report.permuted_fraction_stderr), num(unit_fraction));
    return 0;
}

int cmd_reorder(const RunConfig& c)
{
    const auto g = load_edge_list(c.graph);
    const auto cover = c.cover.empty() ? compute_cover(c, g) : load_cover(c.cover);
    const auto order = reorder_adjacency(g, cover);
    std::vector<VertexId> identity(order.size());
    for (std::size_t i = 0; i < identity.size(); ++i)
        identity[i] = static_cast<VertexId>(i);
    {
        auto out = open_out(c.out);
        for (VertexId v : order)
            out << v << '\n';
    }
    if (!c.reordered.empty())
        save_edge_list(apply_order(g, order), c.reordered);
    fmt::print("entropy identity {} bits\n", num(adjacency_entropy(g, identity)));
    fmt::print("entropy cover order {} bits\n", num(adjacency_entropy(g, order)));
    return 0;
}

int cmd_render(RunConfig& c)
{
    if (!c.image.empty()) {
        const auto img = load_pgm(c.image);
        c.width = img.width;
        c.height = img.height;
    }
    save_cover_rendering(c.width, c.height, load_cover(c.cover), c.out);
    return 0;
}

int cmd_noise(const RunConfig& c)
{
    save_pgm(add_gaussian_noise(load_pgm(c.image), c.sigma, c.seed), c.out);
    return 0;
}

void resolve(RunConfig& c)
{
    if (c.quantize.empty())
        c.quantize = c.graph.empty() ? "dense" : "none";
    if (c.weights.empty() && !c.image.empty() && (c.subcommand == "vcc" || c.subcommand == "denoise"))
        c.weights = c.subcommand == "denoise" && c.mode == "gft" ? "unit" : "expdiff";
    if (c.subcommand == "vcc" && c.stats.empty())
        c.stats = c.out + ".stats.csv";
    if (c.config_out.empty())
        c.config_out = c.out + ".config.json";
}

}  // namespace

int run(RunConfig& c)
{
    resolve(c);
    {
        // Written first so a failed run still records what was attempted.
        nlohmann::ordered_json j = c;
        auto out = open_out(c.config_out);
        out << j.dump(2) << '\n';
    }
    if (c.subcommand == "vcc")
        return cmd_vcc(c);
    if (c.subcommand == "denoise")
        return cmd_denoise(c);
    if (c.subcommand == "spectrum")
        return cmd_spectrum(c);
    if (c.subcommand == "reorder")
        return cmd_reorder(c);
    if (c.subcommand == "render")
        return cmd_render(c);
    if (c.subcommand == "noise")
        return cmd_noise(c);
    throw UsageError("unknown subcommand " + c.subcommand);
}

}  // namespace cyclegsp::cli

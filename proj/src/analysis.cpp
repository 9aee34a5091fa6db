#include "cyclegsp/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <ostream>
#include <stdexcept>

#include "cyclegsp/error.hpp"
#include "cyclegsp/random.hpp"
#include "text_util.hpp"

namespace cyclegsp {

CoverStats cover_stats(const Graph& g, const CycleCover& c)
{
    CoverStats s;
    s.edge_count = g.edge_count();
    s.cover_edge_count = c.cover_edges.size();
    double in_sum = 0.0;
    for (const auto& [u, v] : c.cover_edges) {
        const auto id = g.find_edge(u, v);
        if (!id)
            throw Error(ErrorCode::CoverMismatch,
                        "cover edge (" + std::to_string(u) + "," + std::to_string(v) + ") not in graph");
        in_sum += g.edge(*id).w;
    }
    const double total = g.total_weight();
    const std::size_t out_count = s.edge_count - s.cover_edge_count;
    if (s.edge_count > 0) {
        s.mean_weight_all = total / static_cast<double>(s.edge_count);
        s.edge_fraction = static_cast<double>(s.cover_edge_count) / static_cast<double>(s.edge_count);
    }
    if (s.cover_edge_count > 0)
        s.mean_weight_in_cover = in_sum / static_cast<double>(s.cover_edge_count);
    if (out_count > 0)
        s.mean_weight_out_of_cover = (total - in_sum) / static_cast<double>(out_count);
    if (total > 0.0)
        s.weight_fraction = in_sum / total;
    for (const auto& cyc : c.cycles)
        ++s.cycle_length_histogram[cyc.size()];
    s.chain_count = c.chains.size();
    return s;
}

void write_stats_csv(const CoverStats& s, std::ostream& out)
{
    out << "statistic,value\n";
    out << "edges," << s.edge_count << '\n';
    out << "cover_edges," << s.cover_edge_count << '\n';
    out << "mean_weight_all," << format_double(s.mean_weight_all) << '\n';
    out << "mean_weight_in_cover," << format_double(s.mean_weight_in_cover) << '\n';
    out << "mean_weight_out_of_cover," << format_double(s.mean_weight_out_of_cover) << '\n';
    out << "edge_fraction," << format_double(s.edge_fraction) << '\n';
    out << "weight_fraction," << format_double(s.weight_fraction) << '\n';
    out << "chains," << s.chain_count << '\n';
    for (const auto& [len, count] : s.cycle_length_histogram)
        out << "cycles_of_length_" << len << ',' << count << '\n';
}

void write_stats_table(const CoverStats& s, std::ostream& out)
{
    std::size_t cycles = 0;
    for (const auto& [len, count] : s.cycle_length_histogram)
        cycles += count;
    char buf[160];
    auto row = [&](const char* name, double v) {
        std::snprintf(buf, sizeof buf, "  %-26s %12.6g\n", name, v);
        out << buf;
    };
    out << "cover statistics\n";
    row("edges", static_cast<double>(s.edge_count));
    row("cover edges", static_cast<double>(s.cover_edge_count));
    row("cycles", static_cast<double>(cycles));
    row("chains", static_cast<double>(s.chain_count));
    row("mean weight (all)", s.mean_weight_all);
    row("mean weight (in cover)", s.mean_weight_in_cover);
    row("mean weight (out of cover)", s.mean_weight_out_of_cover);
    row("edge fraction", s.edge_fraction);
    row("weight fraction", s.weight_fraction);
}

double high_bin_fraction(const Spectrum& s, double cutoff)
{
    const double n = static_cast<double>(s.size());
    double band = 0.0;
    double total = 0.0;
    const double all = s.empty() ? 0.0 : std::norm(s[0]);
    for (std::size_t k = 1; k < s.size(); ++k) {
        const double e = std::norm(s[k]);
        total += e;
        const double kk = static_cast<double>(k);
        if (kk >= cutoff * n && kk <= (1.0 - cutoff) * n)
            band += e;
    }
    // Round-off leaves about 1e-32 relative energy in the bins of a constant
    // signal; that must not count as content.
    if (total <= 1e-24 * (all + total))
        return 0.0;
    return band / total;
}

SpectrumReport spectrum_comparison(std::span<const double> signal, int trials, std::uint64_t seed, double cutoff)
{
    if (signal.size() < 8)
        throw Error(ErrorCode::TooShort, "signal of length " + std::to_string(signal.size()));
    if (trials < 1)
        throw std::invalid_argument("need at least one permutation trial");

    SpectrumReport r;
    r.original = dft(signal);
    r.original_fraction = high_bin_fraction(r.original, cutoff);
    const std::size_t n = signal.size();
    r.permuted_mean.assign(n, 0.0);
    r.permuted_mean_magnitude.assign(n, 0.0);

    Rng rng(seed);
    std::vector<double> shuffled(signal.begin(), signal.end());
    std::vector<double> fractions;
    for (int t = 0; t < trials; ++t) {
        std::copy(signal.begin(), signal.end(), shuffled.begin());
        rng.shuffle(std::span<double>(shuffled));
        const auto spec = dft(shuffled);
        fractions.push_back(high_bin_fraction(spec, cutoff));
        for (std::size_t k = 0; k < n; ++k) {
            r.permuted_mean[k] += spec[k];
            r.permuted_mean_magnitude[k] += std::abs(spec[k]);
        }
    }
    for (std::size_t k = 0; k < n; ++k) {
        r.permuted_mean[k] /= static_cast<double>(trials);
        r.permuted_mean_magnitude[k] /= trials;
    }
    double mean = 0.0;
    for (double f : fractions)
        mean += f;
    mean /= trials;
    r.permuted_fraction_mean = mean;
    if (trials > 1) {
        double ss = 0.0;
        for (double f : fractions)
            ss += (f - mean) * (f - mean);
        r.permuted_fraction_stderr = std::sqrt(ss / (trials - 1) / trials);
    }
    return r;
}

std::vector<double> cycle_signal(const ImageSignal& img, std::span<const VertexId> cycle)
{
    std::vector<double> out;
    out.reserve(cycle.size());
    for (VertexId v : cycle) {
        if (v < 0 || static_cast<std::size_t>(v) >= img.size())
            throw Error(ErrorCode::CoverMismatch, "vertex " + std::to_string(v) + " outside the image");
        out.push_back(img.pixels[v]);
    }
    return out;
}

std::size_t longest_cycle(const CycleCover& c)
{
    if (c.cycles.empty())
        throw Error(ErrorCode::NoCycleCover, "cover has no cycles");
    std::size_t best = 0;
    for (std::size_t i = 1; i < c.cycles.size(); ++i)
        if (c.cycles[i].size() > c.cycles[best].size())
            best = i;
    return best;
}

std::array<std::uint8_t, 3> jet_color(double t)
{
    static constexpr std::array<std::array<int, 3>, 7> anchors{{
        {0, 0, 128},
        {0, 43, 255},
        {0, 213, 255},
        {128, 255, 128},
        {255, 213, 0},
        {255, 43, 0},
        {128, 0, 0},
    }};
    t = std::clamp(t, 0.0, 1.0) * 6.0;
    const int i = std::min(static_cast<int>(t), 5);
    const double f = t - i;
    std::array<std::uint8_t, 3> out{};
    for (int ch = 0; ch < 3; ++ch) {
        const double v = anchors[i][ch] + f * (anchors[i + 1][ch] - anchors[i][ch]);
        out[ch] = static_cast<std::uint8_t>(std::lround(v));
    }
    return out;
}

std::vector<std::uint8_t> render_cover(int width, int height, const CycleCover& c)
{
    if (width < 0 || height < 0)
        throw Error(ErrorCode::DimensionMismatch, "negative raster size");
    const std::size_t n = static_cast<std::size_t>(width) * height;
    std::vector<std::uint8_t> rgb(3 * n, 0);
    std::vector<char> seen(n, 0);
    auto paint = [&](VertexId v, std::array<std::uint8_t, 3> color) {
        if (v < 0 || static_cast<std::size_t>(v) >= n)
            throw Error(ErrorCode::CoverMismatch, "vertex " + std::to_string(v) + " outside the raster");
        if (seen[v]++)
            throw Error(ErrorCode::CoverMismatch, "vertex " + std::to_string(v) + " listed twice");
        std::copy(color.begin(), color.end(), rgb.begin() + 3 * static_cast<std::ptrdiff_t>(v));
    };
    const std::size_t k = c.cycles.size();
    for (std::size_t i = 0; i < k; ++i) {
        const double t = k == 1 ? 0.5 : static_cast<double>(i) / static_cast<double>(k - 1);
        const auto color = jet_color(t);
        for (VertexId v : c.cycles[i])
            paint(v, color);
    }
    // Gray levels 96..224 keep chains visible against black.
    const std::size_t m = c.chains.size();
    for (std::size_t j = 0; j < m; ++j) {
        const double t = m == 1 ? 0.5 : static_cast<double>(j) / static_cast<double>(m - 1);
        const auto level = static_cast<std::uint8_t>(std::lround(96.0 + 128.0 * t));
        for (VertexId v : c.chains[j])
            paint(v, {level, level, level});
    }
    return rgb;
}

void save_cover_rendering(int width, int height, const CycleCover& c, const std::string& path)
{
    save_ppm(width, height, render_cover(width, height, c), path);
}

std::vector<VertexId> reorder_adjacency(const Graph& g, const CycleCover& c)
{
    const int n = g.vertex_count();
    std::vector<VertexId> order;
    order.reserve(n);
    std::vector<char> seen(n, 0);
    auto place = [&](VertexId v) {
        if (v < 0 || v >= n)
            throw Error(ErrorCode::CoverMismatch, "vertex " + std::to_string(v) + " not in graph");
        if (seen[v]++)
            throw Error(ErrorCode::CoverMismatch, "vertex " + std::to_string(v) + " listed twice");
        order.push_back(v);
    };
    for (const auto& cyc : c.cycles)
        for (VertexId v : cyc)
            place(v);
    for (const auto& ch : c.chains)
        for (VertexId v : ch)
            place(v);
    auto rest = c.uncovered;
    std::sort(rest.begin(), rest.end());
    for (VertexId v : rest)
        place(v);
    if (static_cast<int>(order.size()) != n)
        throw Error(ErrorCode::CoverMismatch, "cover misses " + std::to_string(n - order.size()) + " vertices");
    return order;
}

namespace {

std::vector<VertexId> inverse_order(int n, std::span<const VertexId> order)
{
    if (static_cast<int>(order.size()) != n)
        throw Error(ErrorCode::BadPermutation,
                    "order has " + std::to_string(order.size()) + " entries for " + std::to_string(n) + " vertices");
    std::vector<VertexId> pos(n, -1);
    for (std::size_t i = 0; i < order.size(); ++i) {
        const VertexId v = order[i];
        if (v < 0 || v >= n || pos[v] != -1)
            throw Error(ErrorCode::BadPermutation, "order is not a bijection at position " + std::to_string(i));
        pos[v] = static_cast<VertexId>(i);
    }
    return pos;
}

}  // namespace

Graph apply_order(const Graph& g, std::span<const VertexId> order)
{
    const auto pos = inverse_order(g.vertex_count(), order);
    Graph out(g.vertex_count());
    for (const auto& e : g.edges())
        out.add_edge(pos[e.u], pos[e.v], e.w);
    if (g.has_labels())
        for (VertexId v = 0; v < g.vertex_count(); ++v)
            out.set_label(pos[v], g.label(v));
    return out;
}

double adjacency_entropy(const Graph& g, std::span<const VertexId> order)
{
    const auto pos = inverse_order(g.vertex_count(), order);
    if (g.edge_count() == 0)
        return 0.0;
    std::map<int, std::size_t> counts;
    for (const auto& e : g.edges())
        ++counts[std::abs(pos[e.u] - pos[e.v])];
    const double m = static_cast<double>(g.edge_count());
    double h = 0.0;
    for (const auto& [offset, count] : counts) {
        const double p = static_cast<double>(count) / m;
        h -= p * std::log2(p);
    }
    return h;
}

}  // namespace cyclegsp

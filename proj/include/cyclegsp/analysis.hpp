#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "cyclegsp/cycle_cover.hpp"
#include "cyclegsp/graph.hpp"
#include "cyclegsp/image.hpp"
#include "cyclegsp/spectral.hpp"

namespace cyclegsp {

struct CoverStats {
    std::size_t edge_count = 0;
    std::size_t cover_edge_count = 0;
    double mean_weight_all = 0.0;
    double mean_weight_in_cover = 0.0;
    /// 0 when every edge is in the cover.
    double mean_weight_out_of_cover = 0.0;
    double edge_fraction = 0.0;
    /// 0 when the graph has zero total weight.
    double weight_fraction = 0.0;
    /// Cycle length to number of cycles.
    std::map<std::size_t, std::size_t> cycle_length_histogram;
    std::size_t chain_count = 0;
};

/// Statistics of the cover edges measured with g's weights. Throws
/// CoverMismatch if a cover edge is missing from g.
CoverStats cover_stats(const Graph& g, const CycleCover& c);

void write_stats_csv(const CoverStats& s, std::ostream& out);
void write_stats_table(const CoverStats& s, std::ostream& out);

inline constexpr double kDefaultHighCutoff = 0.25;

/// Share of the non-DC energy in bins cutoff*n <= k <= (1-cutoff)*n. Zero
/// for a signal without non-DC energy.
double high_bin_fraction(const Spectrum& s, double cutoff = kDefaultHighCutoff);

struct SpectrumReport {
    Spectrum original;
    /// Bin-wise mean over the permutation trials.
    Spectrum permuted_mean;
    std::vector<double> permuted_mean_magnitude;
    double original_fraction = 0.0;
    double permuted_fraction_mean = 0.0;
    /// Standard error of permuted_fraction_mean (0 for one trial).
    double permuted_fraction_stderr = 0.0;
};

/// Compares the signal's high-bin fraction with that of `trials` seeded
/// shuffles of its samples. Throws TooShort below 8 samples.
SpectrumReport spectrum_comparison(std::span<const double> signal, int trials, std::uint64_t seed,
                                   double cutoff = kDefaultHighCutoff);

/// Pixel intensities in traversal order.
std::vector<double> cycle_signal(const ImageSignal& img, std::span<const VertexId> cycle);

/// Index of the first longest cycle; throws NoCycleCover when there is none.
std::size_t longest_cycle(const CycleCover& c);

/// Piecewise-linear jet through 7 anchors at t = k/6, t clamped to [0, 1].
std::array<std::uint8_t, 3> jet_color(double t);

/// RGB raster: cycle i of K gets jet_color(i / (K - 1)) (0.5 for a single
/// cycle), chains are gray, everything else black. Throws CoverMismatch
/// for out-of-range or repeated vertices.
std::vector<std::uint8_t> render_cover(int width, int height, const CycleCover& c);
void save_cover_rendering(int width, int height, const CycleCover& c, const std::string& path);

/// order[i] is the vertex placed at position i: cycles, then chains, then
/// uncovered vertices ascending. Throws CoverMismatch unless these
/// partition g's vertices.
std::vector<VertexId> reorder_adjacency(const Graph& g, const CycleCover& c);

/// The graph with vertex order[i] renamed to i.
Graph apply_order(const Graph& g, std::span<const VertexId> order);

/// Shannon entropy in bits of the distribution of |pos(u) - pos(v)| over
/// g's edges, where pos inverts order. Throws BadPermutation.
double adjacency_entropy(const Graph& g, std::span<const VertexId> order);

}  // namespace cyclegsp

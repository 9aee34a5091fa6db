#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cyclegsp/graph.hpp"

namespace cyclegsp {

/// Grayscale raster whose pixel (r, c) is graph vertex r * width + c.
///
/// Intensities are kept as doubles so that noise and filtering stay
/// unrounded until an image is written out.
struct ImageSignal {
    int width = 0;
    int height = 0;
    std::vector<double> pixels;

    ImageSignal() = default;
    ImageSignal(int w, int h, double fill = 0.0);

    std::size_t size() const noexcept { return pixels.size(); }
    VertexId vertex(int r, int c) const noexcept { return r * width + c; }
    int row(VertexId v) const noexcept { return v / width; }
    int col(VertexId v) const noexcept { return v % width; }
    double& at(int r, int c) { return pixels[static_cast<std::size_t>(vertex(r, c))]; }
    double at(int r, int c) const { return pixels[static_cast<std::size_t>(vertex(r, c))]; }
};

/// 1 marks an edge pixel.
struct EdgeMap {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> mask;

    EdgeMap() = default;
    EdgeMap(int w, int h) : width(w), height(h), mask(static_cast<std::size_t>(w) * h, 0) {}
};

/// Reads P2 or P5 with maxval <= 255. Sample values are kept as stored.
/// Throws ParseError, UnsupportedFormat (other netpbm kinds, 16-bit).
ImageSignal read_pgm(std::istream& in);
ImageSignal load_pgm(const std::string& path);

/// Values are clamped to [0, 255] and rounded to the nearest integer.
void write_pgm(const ImageSignal& img, std::ostream& out, bool ascii = false);
void save_pgm(const ImageSignal& img, const std::string& path, bool ascii = false);

/// Any nonzero sample is an edge pixel.
EdgeMap load_edge_map(const std::string& path);
void save_edge_map(const EdgeMap& em, const std::string& path);

/// Binary P6 from interleaved RGB bytes.
void save_ppm(int width, int height, const std::vector<std::uint8_t>& rgb, const std::string& path);

enum class WeightKind {
    ExpDiff,  ///< exp(|x_u - x_v| / scale)
    AbsDiff,  ///< |x_u - x_v|
    Binary,   ///< 5 across an edge-map boundary, 1 elsewhere
    Unit,     ///< every edge weight 1
};

inline constexpr double kDefaultExpScale = 255.0 / 8.0;

struct WeightScheme {
    WeightKind kind = WeightKind::ExpDiff;
    double scale = kDefaultExpScale;
    /// Required for Binary.
    std::optional<EdgeMap> edge_map;
};

/// |E| of the 8-connected w x h lattice.
constexpr long long lattice_edge_count(long long w, long long h) { return 4 * w * h - 3 * w - 3 * h + 2; }

/// 8-connected pixel lattice. Per pixel, edges go right, down-left, down,
/// down-right, in row-major pixel order. Throws TooSmall below 2 x 2 and
/// DimensionMismatch when a Binary edge map has the wrong size.
Graph build_8lattice(const ImageSignal& img, const WeightScheme& scheme = {});

Graph binary_edge_weights(const ImageSignal& img, const EdgeMap& em);

/// Marks pixels whose largest absolute difference to an 8-neighbour
/// exceeds threshold.
EdgeMap gradient_edge_map(const ImageSignal& img, double threshold);

/// Adds independent N(0, sigma^2) draws, then clamps to [0, 255]. No
/// rounding happens here.
ImageSignal add_gaussian_noise(const ImageSignal& img, double sigma, std::uint64_t seed);

}  // namespace cyclegsp

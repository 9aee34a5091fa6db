#include "cyclegsp/image.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>

#include "cyclegsp/error.hpp"
#include "cyclegsp/random.hpp"
#include "text_util.hpp"

namespace cyclegsp {

ImageSignal::ImageSignal(int w, int h, double fill) : width(w), height(h)
{
    if (w < 0 || h < 0)
        throw Error(ErrorCode::DimensionMismatch, "negative image size");
    pixels.assign(static_cast<std::size_t>(w) * h, fill);
}

namespace {

// Next whitespace-delimited header token, skipping '#' comments.
std::string header_token(std::istream& in)
{
    std::string tok;
    int ch;
    while ((ch = in.get()) != EOF) {
        if (ch == '#') {
            while ((ch = in.get()) != EOF && ch != '\n')
                ;
            continue;
        }
        if (!std::isspace(ch)) {
            tok.push_back(static_cast<char>(ch));
            break;
        }
    }
    while ((ch = in.peek()) != EOF && !std::isspace(ch) && ch != '#')
        tok.push_back(static_cast<char>(in.get()));
    return tok;
}

int header_int(std::istream& in, const char* what)
{
    const auto tok = header_token(in);
    int value = 0;
    if (tok.empty() || !parse_number(std::string_view(tok), value) || value < 0)
        throw Error(ErrorCode::ParseError, std::string("bad PGM ") + what + " \"" + tok + "\"");
    return value;
}

std::uint8_t to_byte(double x)
{
    return static_cast<std::uint8_t>(std::lround(std::clamp(x, 0.0, 255.0)));
}

std::ofstream open_out(const std::string& path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw Error(ErrorCode::FileNotFound, path);
    return out;
}

}  // namespace

ImageSignal read_pgm(std::istream& in)
{
    const auto magic = header_token(in);
    if (magic == "P1" || magic == "P3" || magic == "P4" || magic == "P6" || magic == "P7")
        throw Error(ErrorCode::UnsupportedFormat, "netpbm " + magic + " is not a grayscale PGM");
    if (magic != "P2" && magic != "P5")
        throw Error(ErrorCode::ParseError, "not a PGM file");
    const int w = header_int(in, "width");
    const int h = header_int(in, "height");
    const int maxval = header_int(in, "maxval");
    if (maxval == 0)
        throw Error(ErrorCode::ParseError, "PGM maxval 0");
    if (maxval > 255)
        throw Error(ErrorCode::UnsupportedFormat, "16-bit PGM (maxval " + std::to_string(maxval) + ")");

    ImageSignal img(w, h);
    if (magic == "P5") {
        in.get();  // single whitespace after maxval
        std::vector<char> raw(img.size());
        in.read(raw.data(), static_cast<std::streamsize>(raw.size()));
        if (static_cast<std::size_t>(in.gcount()) != raw.size())
            throw Error(ErrorCode::ParseError, "truncated PGM raster");
        for (std::size_t i = 0; i < raw.size(); ++i) {
            const auto v = static_cast<unsigned char>(raw[i]);
            if (v > maxval)
                throw Error(ErrorCode::ParseError, "sample above maxval");
            img.pixels[i] = v;
        }
    } else {
        for (auto& px : img.pixels) {
            const auto tok = header_token(in);
            int v = 0;
            if (tok.empty())
                throw Error(ErrorCode::ParseError, "truncated PGM raster");
            if (!parse_number(std::string_view(tok), v) || v < 0 || v > maxval)
                throw Error(ErrorCode::ParseError, "bad PGM sample \"" + tok + "\"");
            px = v;
        }
    }
    return img;
}

ImageSignal load_pgm(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error(ErrorCode::FileNotFound, path);
    return read_pgm(in);
}

void write_pgm(const ImageSignal& img, std::ostream& out, bool ascii)
{
    out << (ascii ? "P2\n" : "P5\n") << img.width << ' ' << img.height << "\n255\n";
    if (ascii) {
        for (int r = 0; r < img.height; ++r) {
            for (int c = 0; c < img.width; ++c)
                out << (c ? " " : "") << static_cast<int>(to_byte(img.at(r, c)));
            out << '\n';
        }
        return;
    }
    std::vector<char> raw(img.size());
    for (std::size_t i = 0; i < raw.size(); ++i)
        raw[i] = static_cast<char>(to_byte(img.pixels[i]));
    out.write(raw.data(), static_cast<std::streamsize>(raw.size()));
}

void save_pgm(const ImageSignal& img, const std::string& path, bool ascii)
{
    auto out = open_out(path);
    write_pgm(img, out, ascii);
}

EdgeMap load_edge_map(const std::string& path)
{
    const auto img = load_pgm(path);
    EdgeMap em(img.width, img.height);
    for (std::size_t i = 0; i < img.size(); ++i)
        em.mask[i] = img.pixels[i] != 0.0;
    return em;
}

void save_edge_map(const EdgeMap& em, const std::string& path)
{
    ImageSignal img(em.width, em.height);
    for (std::size_t i = 0; i < em.mask.size(); ++i)
        img.pixels[i] = em.mask[i] ? 255.0 : 0.0;
    save_pgm(img, path);
}

void save_ppm(int width, int height, const std::vector<std::uint8_t>& rgb, const std::string& path)
{
    if (rgb.size() != 3 * static_cast<std::size_t>(width) * height)
        throw Error(ErrorCode::DimensionMismatch, "RGB buffer does not match " + std::to_string(width) + "x" +
                                                      std::to_string(height));
    auto out = open_out(path);
    out << "P6\n" << width << ' ' << height << "\n255\n";
    out.write(reinterpret_cast<const char*>(rgb.data()), static_cast<std::streamsize>(rgb.size()));
}

namespace {

template <class F>
Graph lattice(const ImageSignal& img, F weight)
{
    const int w = img.width;
    const int h = img.height;
    if (w < 2 || h < 2)
        throw Error(ErrorCode::TooSmall, std::to_string(w) + "x" + std::to_string(h) + " image");
    Graph g(w * h);
    for (int r = 0; r < h; ++r) {
        for (int c = 0; c < w; ++c) {
            const VertexId u = img.vertex(r, c);
            if (c + 1 < w)
                g.add_edge(u, u + 1, weight(u, u + 1));
            if (r + 1 < h) {
                const VertexId d = img.vertex(r + 1, c);
                if (c > 0)
                    g.add_edge(u, d - 1, weight(u, d - 1));
                g.add_edge(u, d, weight(u, d));
                if (c + 1 < w)
                    g.add_edge(u, d + 1, weight(u, d + 1));
            }
        }
    }
    return g;
}

void check_dims(const ImageSignal& img, const EdgeMap& em)
{
    if (img.width != em.width || img.height != em.height)
        throw Error(ErrorCode::DimensionMismatch,
                    "edge map " + std::to_string(em.width) + "x" + std::to_string(em.height) + " vs image " +
                        std::to_string(img.width) + "x" + std::to_string(img.height));
}

}  // namespace

Graph build_8lattice(const ImageSignal& img, const WeightScheme& scheme)
{
    const auto& x = img.pixels;
    switch (scheme.kind) {
    case WeightKind::ExpDiff:
        if (!(scheme.scale > 0.0))
            throw std::invalid_argument("ExpDiff scale must be positive");
        return lattice(img, [&](VertexId u, VertexId v) { return std::exp(std::abs(x[u] - x[v]) / scheme.scale); });
    case WeightKind::AbsDiff:
        return lattice(img, [&](VertexId u, VertexId v) { return std::abs(x[u] - x[v]); });
    case WeightKind::Binary:
        if (!scheme.edge_map)
            throw std::invalid_argument("Binary weights need an edge map");
        return binary_edge_weights(img, *scheme.edge_map);
    case WeightKind::Unit:
        return lattice(img, [](VertexId, VertexId) { return 1.0; });
    }
    throw std::invalid_argument("unknown weight scheme");
}

Graph binary_edge_weights(const ImageSignal& img, const EdgeMap& em)
{
    check_dims(img, em);
    return lattice(img, [&](VertexId u, VertexId v) { return em.mask[u] != em.mask[v] ? 5.0 : 1.0; });
}

EdgeMap gradient_edge_map(const ImageSignal& img, double threshold)
{
    if (!(threshold >= 0.0))
        throw std::invalid_argument("threshold must be non-negative");
    EdgeMap em(img.width, img.height);
    for (int r = 0; r < img.height; ++r) {
        for (int c = 0; c < img.width; ++c) {
            double biggest = 0.0;
            for (int dr = -1; dr <= 1; ++dr) {
                for (int dc = -1; dc <= 1; ++dc) {
                    const int rr = r + dr;
                    const int cc = c + dc;
                    if ((dr || dc) && rr >= 0 && rr < img.height && cc >= 0 && cc < img.width)
                        biggest = std::max(biggest, std::abs(img.at(r, c) - img.at(rr, cc)));
                }
            }
            em.mask[img.vertex(r, c)] = biggest > threshold;
        }
    }
    return em;
}

ImageSignal add_gaussian_noise(const ImageSignal& img, double sigma, std::uint64_t seed)
{
    if (!(sigma >= 0.0))
        throw std::invalid_argument("sigma must be non-negative");
    ImageSignal out = img;
    if (sigma == 0.0)
        return out;
    Rng rng(seed);
    for (auto& px : out.pixels)
        px = std::clamp(px + sigma * rng.normal(), 0.0, 255.0);
    return out;
}

}  // namespace cyclegsp

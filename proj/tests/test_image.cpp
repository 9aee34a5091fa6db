#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <set>
#include <sstream>

#include "cyclegsp/error.hpp"
#include "cyclegsp/image.hpp"
#include "support.hpp"

using namespace cyclegsp;

namespace {

ErrorCode image_error(auto&& fn)
{
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    return ErrorCode::BadVertex;
}

ImageSignal random_image(int w, int h, Rng& rng)
{
    ImageSignal img(w, h);
    for (auto& px : img.pixels)
        px = static_cast<double>(rng.below(256));
    return img;
}

std::filesystem::path temp_file(const std::string& name)
{
    return std::filesystem::temp_directory_path() / ("cyclegsp_test_" + name);
}

}  // namespace

TEST_CASE("PGM parsing")
{
    std::istringstream p2("P2 2 2 255\n0 0 0 100\n");
    const auto img = read_pgm(p2);
    CHECK(img.width == 2);
    CHECK(img.height == 2);
    CHECK(img.pixels == std::vector<double>{0, 0, 0, 100});

    std::istringstream commented("P2\n# made by hand\n3 1\n# max\n9\n1 2 # trailing\n3\n");
    CHECK(read_pgm(commented).pixels == std::vector<double>{1, 2, 3});

    std::istringstream p6("P6 1 1 255\nabc");
    CHECK(image_error([&] { read_pgm(p6); }) == ErrorCode::UnsupportedFormat);
    std::istringstream wide("P2 1 1 65535\n5\n");
    CHECK(image_error([&] { read_pgm(wide); }) == ErrorCode::UnsupportedFormat);
    std::istringstream junk("hello");
    CHECK(image_error([&] { read_pgm(junk); }) == ErrorCode::ParseError);
    std::istringstream short_raster("P2 2 2 255\n1 2 3\n");
    CHECK(image_error([&] { read_pgm(short_raster); }) == ErrorCode::ParseError);
    std::istringstream above("P2 1 1 10\n11\n");
    CHECK(image_error([&] { read_pgm(above); }) == ErrorCode::ParseError);
    std::string raw = "P5 2 1 255\n";
    raw.push_back('\x07');
    std::istringstream truncated(raw);
    CHECK(image_error([&] { read_pgm(truncated); }) == ErrorCode::ParseError);
    CHECK(image_error([] { load_pgm("/nonexistent/x.pgm"); }) == ErrorCode::FileNotFound);
}

TEST_CASE("PGM round trips")
{
    Rng rng(1);
    for (bool ascii : {false, true}) {
        const auto img = random_image(7, 5, rng);
        std::stringstream io;
        write_pgm(img, io, ascii);
        const auto back = read_pgm(io);
        CHECK(back.width == 7);
        CHECK(back.height == 5);
        CHECK(back.pixels == img.pixels);
    }
    // P5 samples that look like whitespace or '#' must survive.
    ImageSignal tricky(4, 1);
    tricky.pixels = {'#', ' ', '\n', 0};
    std::stringstream io;
    write_pgm(tricky, io);
    CHECK(read_pgm(io).pixels == tricky.pixels);

    const auto path = temp_file("roundtrip.pgm");
    const auto img = random_image(16, 3, rng);
    save_pgm(img, path.string());
    CHECK(load_pgm(path.string()).pixels == img.pixels);
    std::filesystem::remove(path);
}

TEST_CASE("writing rounds and clamps")
{
    ImageSignal img(4, 1);
    img.pixels = {-3.0, 12.4, 12.6, 300.0};
    std::stringstream io;
    write_pgm(img, io);
    CHECK(read_pgm(io).pixels == std::vector<double>{0, 12, 13, 255});
}

TEST_CASE("edge maps are read as nonzero masks")
{
    EdgeMap em(3, 2);
    em.mask = {0, 1, 0, 1, 1, 0};
    const auto path = temp_file("edges.pgm");
    save_edge_map(em, path.string());
    const auto back = load_edge_map(path.string());
    CHECK(back.mask == em.mask);
    std::filesystem::remove(path);
}

TEST_CASE("lattice structure")
{
    const ImageSignal k4img(2, 2);
    const auto k4 = build_8lattice(k4img);
    CHECK(k4.vertex_count() == 4);
    CHECK(k4.edge_count() == 6);

    const auto g3 = build_8lattice(ImageSignal(3, 3));
    CHECK(g3.edge_count() == 20);
    CHECK(g3.degree(4) == 8);

    CHECK(image_error([] { build_8lattice(ImageSignal(1, 5)); }) == ErrorCode::TooSmall);
    CHECK(image_error([] { build_8lattice(ImageSignal(5, 1)); }) == ErrorCode::TooSmall);

    // Closed form against brute-force neighbour enumeration.
    for (int w = 2; w <= 10; ++w) {
        for (int h = 2; h <= 10; ++h) {
            const ImageSignal img(w, h);
            const auto g = build_8lattice(img);
            std::set<std::pair<int, int>> expect;
            for (int r = 0; r < h; ++r)
                for (int c = 0; c < w; ++c)
                    for (int dr = -1; dr <= 1; ++dr)
                        for (int dc = -1; dc <= 1; ++dc) {
                            const int rr = r + dr;
                            const int cc = c + dc;
                            if ((dr || dc) && rr >= 0 && rr < h && cc >= 0 && cc < w) {
                                const int a = r * w + c;
                                const int b = rr * w + cc;
                                expect.emplace(std::min(a, b), std::max(a, b));
                            }
                        }
            CHECK(g.edge_count() == expect.size());
            CHECK(static_cast<long long>(g.edge_count()) == lattice_edge_count(w, h));
            for (auto [a, b] : expect)
                CHECK(g.has_edge(a, b));
        }
    }
}

TEST_CASE("pixel and vertex ids are a bijection")
{
    const ImageSignal img(7, 4);
    std::set<VertexId> ids;
    for (int r = 0; r < img.height; ++r)
        for (int c = 0; c < img.width; ++c) {
            const auto v = img.vertex(r, c);
            CHECK(img.row(v) == r);
            CHECK(img.col(v) == c);
            ids.insert(v);
        }
    CHECK(ids.size() == img.size());
    CHECK(*ids.rbegin() == static_cast<VertexId>(img.size()) - 1);
}

TEST_CASE("weight schemes")
{
    SUBCASE("constant image")
    {
        const auto g = build_8lattice(ImageSignal(4, 4, 90.0));
        for (const auto& e : g.edges())
            CHECK(e.w == 1.0);
    }
    SUBCASE("exp and abs differences")
    {
        Rng rng(3);
        const auto img = random_image(6, 5, rng);
        const auto ge = build_8lattice(img, {WeightKind::ExpDiff, 10.0});
        const auto ga = build_8lattice(img, {WeightKind::AbsDiff});
        for (std::size_t i = 0; i < ge.edge_count(); ++i) {
            const auto& e = ge.edge(i);
            const double d = std::abs(img.pixels[e.u] - img.pixels[e.v]);
            CHECK(e.w == doctest::Approx(std::exp(d / 10.0)));
            CHECK(ga.edge(i).w == d);
            CHECK((e.w == 1.0) == (d == 0.0));
        }
        const auto gd = build_8lattice(img);
        CHECK(gd.edge(0).w == doctest::Approx(std::exp(std::abs(img.pixels[0] - img.pixels[1]) / kDefaultExpScale)));
    }
    SUBCASE("unit")
    {
        Rng rng(4);
        const auto g = build_8lattice(random_image(3, 3, rng), {WeightKind::Unit});
        for (const auto& e : g.edges())
            CHECK(e.w == 1.0);
    }
}

TEST_CASE("binary edge-map weights")
{
    const ImageSignal img(2, 2);
    EdgeMap zero(2, 2);
    const auto gz = binary_edge_weights(img, zero);
    for (const auto& e : gz.edges())
        CHECK(e.w == 1.0);

    EdgeMap ones(2, 2);
    ones.mask = {1, 1, 1, 1};
    const auto go = binary_edge_weights(img, ones);
    for (const auto& e : go.edges())
        CHECK(e.w == 1.0);

    EdgeMap corner(2, 2);
    corner.mask = {1, 0, 0, 0};
    const auto g = binary_edge_weights(img, corner);
    int fives = 0;
    for (const auto& e : g.edges()) {
        const bool touches = e.u == 0 || e.v == 0;
        CHECK(e.w == (touches ? 5.0 : 1.0));
        fives += e.w == 5.0;
    }
    CHECK(fives == 3);

    Rng rng(5);
    EdgeMap random(9, 7);
    for (auto& m : random.mask)
        m = static_cast<std::uint8_t>(rng.below(2));
    const auto gr = binary_edge_weights(ImageSignal(9, 7), random);
    for (const auto& e : gr.edges())
        CHECK((e.w == 1.0 || e.w == 5.0));

    CHECK(image_error([&] { binary_edge_weights(ImageSignal(3, 2), corner); }) == ErrorCode::DimensionMismatch);
    WeightScheme scheme{WeightKind::Binary};
    scheme.edge_map = corner;
    CHECK(build_8lattice(img, scheme).edge_count() == 6);
}

TEST_CASE("gradient edge map")
{
    for (const auto m : gradient_edge_map(ImageSignal(5, 5, 42.0), 0.5).mask)
        CHECK(m == 0);

    ImageSignal img(2, 2);
    img.pixels = {0, 0, 0, 100};
    CHECK(gradient_edge_map(img, 50).mask == std::vector<std::uint8_t>{1, 1, 1, 1});
    CHECK(gradient_edge_map(img, 300).mask == std::vector<std::uint8_t>{0, 0, 0, 0});
    CHECK(gradient_edge_map(img, 100).mask == std::vector<std::uint8_t>{0, 0, 0, 0});

    ImageSignal wide(4, 1);
    CHECK_THROWS_AS(gradient_edge_map(wide, -1.0), std::invalid_argument);
}

TEST_CASE("gaussian noise")
{
    const ImageSignal flat(64, 64, 128.0);
    CHECK(add_gaussian_noise(flat, 0.0, 1).pixels == flat.pixels);

    const auto a = add_gaussian_noise(flat, 7.0, 42);
    const auto b = add_gaussian_noise(flat, 7.0, 42);
    CHECK(a.pixels == b.pixels);
    CHECK(add_gaussian_noise(flat, 7.0, 43).pixels != a.pixels);

    double mean = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        mean += a.pixels[i] - 128.0;
    mean /= static_cast<double>(a.size());
    double var = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        var += (a.pixels[i] - 128.0 - mean) * (a.pixels[i] - 128.0 - mean);
    const double sd = std::sqrt(var / static_cast<double>(a.size() - 1));
    CHECK(sd >= 6.3);
    CHECK(sd <= 7.7);

    const auto clipped = add_gaussian_noise(ImageSignal(8, 8, 250.0), 50.0, 1);
    for (double px : clipped.pixels) {
        CHECK(px >= 0.0);
        CHECK(px <= 255.0);
    }
}

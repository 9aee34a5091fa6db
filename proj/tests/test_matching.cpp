#include <doctest.h>

#include "cyclegsp/error.hpp"
#include "cyclegsp/matching.hpp"
#include "support.hpp"

using namespace cyclegsp;
using testing::make_graph;

namespace {

Graph petersen()
{
    Graph g(10);
    for (int i = 0; i < 5; ++i) {
        g.add_edge(i, (i + 1) % 5, 1);
        g.add_edge(i, i + 5, 1);
        g.add_edge(5 + i, 5 + (i + 2) % 5, 1);
    }
    return g;
}

ErrorCode matching_error(const Graph& g, bool brute)
{
    try {
        if (brute)
            brute_force_perfect_matching(g);
        else
            min_weight_perfect_matching(g);
    } catch (const Error& e) {
        return e.code();
    }
    return ErrorCode::ParseError;
}

}  // namespace

TEST_CASE("small matchings")
{
    for (bool brute : {false, true}) {
        CAPTURE(brute);
        auto solve = [&](const Graph& g) {
            return brute ? brute_force_perfect_matching(g) : min_weight_perfect_matching(g);
        };

        const auto single = solve(make_graph(2, {{0, 1, 5}}));
        CHECK(single.pairs == std::vector<std::pair<VertexId, VertexId>>{{0, 1}});
        CHECK(single.total_weight == 5);

        const auto c4 = make_graph(4, {{0, 1, 1}, {1, 2, 2}, {2, 3, 1}, {3, 0, 2}});
        const auto m4 = solve(c4);
        CHECK(m4.pairs == std::vector<std::pair<VertexId, VertexId>>{{0, 1}, {2, 3}});
        CHECK(m4.total_weight == 2);

        const auto k4 = make_graph(4, {{0, 1, 1}, {0, 2, 2}, {0, 3, 3}, {1, 2, 4}, {1, 3, 5}, {2, 3, 2}});
        const auto mk = solve(k4);
        CHECK(mk.pairs == std::vector<std::pair<VertexId, VertexId>>{{0, 1}, {2, 3}});
        CHECK(mk.total_weight == 3);

        CHECK(matching_error(testing::cycle_graph(3), brute) == ErrorCode::NoPerfectMatching);
        CHECK(matching_error(make_graph(4, {{0, 1, 1}, {0, 2, 1}, {0, 3, 1}}), brute) ==
              ErrorCode::NoPerfectMatching);

        const auto p = solve(petersen());
        CHECK(p.total_weight == 5);
        CHECK(is_perfect_matching(petersen(), p));

        CHECK(solve(Graph(0)).pairs.empty());
    }
}

TEST_CASE("brute force refuses large graphs")
{
    CHECK(matching_error(testing::cycle_graph(18), true) == ErrorCode::TooLarge);
}

TEST_CASE("is_perfect_matching")
{
    const auto c4 = testing::cycle_graph(4);
    CHECK(is_perfect_matching(c4, Matching{{{0, 1}, {2, 3}}, 2}));
    CHECK_FALSE(is_perfect_matching(c4, Matching{{{0, 1}}, 1}));
    CHECK_FALSE(is_perfect_matching(c4, Matching{{{0, 1}, {1, 2}}, 2}));
    CHECK_FALSE(is_perfect_matching(c4, Matching{{{0, 2}, {1, 3}}, 2}));
}

TEST_CASE("blossom matcher agrees with exhaustive search")
{
    Rng rng(2024);
    int compared = 0;
    for (int t = 0; t < 300; ++t) {
        const int n = 4 + 2 * static_cast<int>(rng.below(5));
        const auto g = testing::random_graph(n, 0.2 + 0.6 * rng.uniform01(), 1, 20, rng);
        std::optional<double> fast;
        std::optional<double> slow;
        try {
            const auto m = min_weight_perfect_matching(g);
            CHECK(is_perfect_matching(g, m));
            fast = m.total_weight;
        } catch (const Error&) {
        }
        try {
            slow = brute_force_perfect_matching(g).total_weight;
        } catch (const Error&) {
        }
        REQUIRE(fast.has_value() == slow.has_value());
        if (fast) {
            CHECK(*fast == *slow);
            ++compared;
        }
    }
    CHECK(compared > 100);
}

TEST_CASE("fractional and integer weights")
{
    Rng rng(8);
    for (int t = 0; t < 100; ++t) {
        Graph g(8);
        IntegerGraph gi(8);
        for (int u = 0; u < 8; ++u)
            for (int v = u + 1; v < 8; ++v)
                if (rng.uniform01() < 0.6) {
                    const auto w = static_cast<std::int64_t>(rng.below(1000));
                    g.add_edge(u, v, w * 0.001);
                    gi.add_edge(u, v, w);
                }
        try {
            const auto a = min_weight_perfect_matching(g);
            const auto b = brute_force_perfect_matching(g);
            CHECK(a.total_weight == doctest::Approx(b.total_weight).epsilon(1e-12));
            const auto ai = min_weight_perfect_matching(gi);
            CHECK(ai.total_weight == brute_force_perfect_matching(gi).total_weight);
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::NoPerfectMatching);
        }
    }
}

TEST_CASE("translating weights shifts the optimum by c|V|/2, scaling keeps the argmin")
{
    Rng rng(99);
    for (int t = 0; t < 60; ++t) {
        const int n = 10;
        const auto g = testing::random_connected_graph(n, 0.5, 1, 20, rng);
        Matching base;
        try {
            base = min_weight_perfect_matching(g);
        } catch (const Error&) {
            continue;
        }
        Graph shifted(n);
        Graph scaled(n);
        for (const auto& e : g.edges()) {
            shifted.add_edge(e.u, e.v, e.w + 7);
            scaled.add_edge(e.u, e.v, e.w * 3);
        }
        const auto ms = min_weight_perfect_matching(shifted);
        CHECK(ms.total_weight == base.total_weight + 7 * n / 2);
        // The optimum of the transformed problem is optimal for the original.
        double ws = 0;
        for (const auto& [u, v] : ms.pairs)
            ws += g.edge(*g.find_edge(u, v)).w;
        CHECK(ws == base.total_weight);
        const auto mk = min_weight_perfect_matching(scaled);
        CHECK(mk.total_weight == 3 * base.total_weight);
    }
}

TEST_CASE("larger graphs: perfect and no worse than a greedy matching")
{
    Rng rng(4);
    for (int t = 0; t < 10; ++t) {
        const int n = 200;
        Graph g(n);
        for (int v = 0; v < n; v += 2)
            g.add_edge(v, v + 1, 100);
        for (int u = 0; u < n; ++u)
            for (int v = u + 2; v < n; ++v)
                if (rng.uniform01() < 0.05 && !g.has_edge(u, v))
                    g.add_edge(u, v, static_cast<double>(rng.below(100)));
        const auto m = min_weight_perfect_matching(g);
        CHECK(is_perfect_matching(g, m));
        CHECK(m.total_weight <= 100.0 * n / 2);
    }
}

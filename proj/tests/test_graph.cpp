#include <doctest.h>

#include <algorithm>
#include <sstream>

#include "cyclegsp/error.hpp"
#include "cyclegsp/graph.hpp"
#include "support.hpp"

using namespace cyclegsp;
using testing::make_graph;

namespace {

ErrorCode code_of(auto&& fn)
{
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an Error");
    return ErrorCode::ParseError;
}

}  // namespace

TEST_CASE("new graphs have isolated vertices")
{
    CHECK(Graph(0).vertex_count() == 0);
    Graph g(5);
    CHECK(g.vertex_count() == 5);
    CHECK(g.edge_count() == 0);
    CHECK(Graph(1).degree(0) == 0);
}

TEST_CASE("add_edge validates its input")
{
    Graph g(3);
    g.add_edge(0, 1, 3.5);
    CHECK(g.edge_count() == 1);
    CHECK(g.edge(0).w == 3.5);
    CHECK(g.degree(0) == 1);
    CHECK(g.degree(1) == 1);

    CHECK(code_of([&] { g.add_edge(2, 2, 1.0); }) == ErrorCode::SelfLoop);
    CHECK(code_of([&] { g.add_edge(1, 0, 2.0); }) == ErrorCode::DuplicateEdge);
    CHECK(code_of([&] { g.add_edge(0, 2, -1.0); }) == ErrorCode::NegativeWeight);
    CHECK(code_of([&] { g.add_edge(0, 3, 1.0); }) == ErrorCode::BadVertex);
    CHECK(code_of([&] { g.add_edge(-1, 0, 1.0); }) == ErrorCode::BadVertex);
    CHECK(g.edge_count() == 1);
}

TEST_CASE("degree sum is twice the edge count")
{
    Rng rng(7);
    for (int t = 0; t < 20; ++t) {
        const auto g = testing::random_graph(12, 0.3, 1, 9, rng);
        int sum = 0;
        for (int v = 0; v < g.vertex_count(); ++v)
            sum += g.degree(v);
        CHECK(sum == 2 * static_cast<int>(g.edge_count()));
    }
}

TEST_CASE("pruning removes pendant vertices until none remain")
{
    SUBCASE("a path disappears")
    {
        const auto p4 = make_graph(4, {{0, 1, 1}, {1, 2, 1}, {2, 3, 1}});
        const auto r = prune_degree_one(p4);
        CHECK(r.graph.vertex_count() == 0);
        auto removed = r.removed;
        std::sort(removed.begin(), removed.end());
        CHECK(removed == std::vector<VertexId>{0, 1, 2, 3});
    }
    SUBCASE("a pendant on a square")
    {
        const auto g = make_graph(5, {{0, 1, 1}, {1, 2, 1}, {2, 3, 1}, {3, 0, 1}, {0, 4, 1}});
        const auto r = prune_degree_one(g);
        CHECK(r.removed == std::vector<VertexId>{4});
        CHECK(r.graph.vertex_count() == 4);
        CHECK(r.graph.edge_count() == 4);
        CHECK(r.original_id == std::vector<VertexId>{0, 1, 2, 3});
    }
    SUBCASE("a triangle is untouched")
    {
        const auto g = testing::cycle_graph(3);
        const auto r = prune_degree_one(g);
        CHECK(r.removed.empty());
        CHECK(same_graph(r.graph, g));
    }
    SUBCASE("isolated vertices go too")
    {
        auto g = testing::cycle_graph(3);
        Graph h(4);
        for (const auto& e : g.edges())
            h.add_edge(e.u + 1, e.v + 1, e.w);
        const auto r = prune_degree_one(h);
        CHECK(r.removed == std::vector<VertexId>{0});
        CHECK(r.original_id == std::vector<VertexId>{1, 2, 3});
    }
}

TEST_CASE("pruning is idempotent and maps ids back")
{
    Rng rng(11);
    for (int t = 0; t < 50; ++t) {
        const auto g = testing::random_graph(14, 0.15, 1, 5, rng);
        const auto once = prune_degree_one(g);
        const auto twice = prune_degree_one(once.graph);
        CHECK(twice.removed.empty());
        CHECK(same_graph(twice.graph, once.graph));
        for (int v = 0; v < once.graph.vertex_count(); ++v)
            CHECK(once.graph.degree(v) >= 2);
        for (const auto& e : once.graph.edges()) {
            const auto id = g.find_edge(once.original_id[e.u], once.original_id[e.v]);
            REQUIRE(id);
            CHECK(g.edge(*id).w == e.w);
        }
        CHECK(once.removed.size() + once.original_id.size() == static_cast<std::size_t>(g.vertex_count()));
    }
}

TEST_CASE("rank quantization")
{
    auto weights_of = [](const IntegerGraph& g) {
        std::vector<std::int64_t> w;
        for (const auto& e : g.edges())
            w.push_back(e.w);
        return w;
    };
    const auto g = make_graph(5, {{0, 1, 0.5}, {1, 2, 3.2}, {2, 3, 0.5}, {3, 4, 7.1}});
    CHECK(weights_of(rank_quantize_weights(g)) == std::vector<std::int64_t>{1, 2, 1, 3});
    CHECK(weights_of(rank_quantize_weights(g, RankMode::Ordinal)) == std::vector<std::int64_t>{1, 3, 2, 4});

    const auto same = make_graph(3, {{0, 1, 2.0}, {1, 2, 2.0}, {0, 2, 2.0}});
    CHECK(weights_of(rank_quantize_weights(same)) == std::vector<std::int64_t>{1, 1, 1});

    const auto three = make_graph(3, {{0, 1, 9}, {1, 2, 1}, {0, 2, 4}});
    CHECK(weights_of(rank_quantize_weights(three)) == std::vector<std::int64_t>{3, 1, 2});
}

TEST_CASE("rank quantization preserves order and ties")
{
    Rng rng(3);
    for (int t = 0; t < 100; ++t) {
        Graph g(10);
        for (int u = 0; u < 10; ++u)
            for (int v = u + 1; v < 10; ++v)
                if (rng.uniform01() < 0.5)
                    g.add_edge(u, v, static_cast<double>(rng.below(6)) * 0.75);
        const auto q = rank_quantize_weights(g);
        for (std::size_t i = 0; i < g.edge_count(); ++i) {
            CHECK(q.edge(i).w >= 1);
            for (std::size_t j = 0; j < g.edge_count(); ++j) {
                CHECK((g.edge(i).w < g.edge(j).w) == (q.edge(i).w < q.edge(j).w));
                CHECK((g.edge(i).w == g.edge(j).w) == (q.edge(i).w == q.edge(j).w));
            }
        }
    }
}

TEST_CASE("edge-list text format")
{
    std::istringstream in("3\n0 1 1.0\n1 2 2.0\n");
    const auto g = read_edge_list(in);
    CHECK(g.vertex_count() == 3);
    CHECK(g.edge_count() == 2);

    std::istringstream commented("# header\n3  # vertices\n\n0\t1 0.25\n");
    CHECK(read_edge_list(commented).edge(0).w == 0.25);

    std::istringstream bad("3\n0 x 1.0\n");
    try {
        read_edge_list(bad);
        FAIL("no error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::ParseError);
        CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }

    std::istringstream range("2\n0 5 1\n");
    CHECK(code_of([&] { read_edge_list(range); }) == ErrorCode::BadVertex);
    std::istringstream empty("");
    CHECK(code_of([&] { read_edge_list(empty); }) == ErrorCode::ParseError);
    CHECK(code_of([] { load_edge_list("/nonexistent/graph.txt"); }) == ErrorCode::FileNotFound);
}

TEST_CASE("edge lists round-trip exactly")
{
    Rng rng(5);
    for (int t = 0; t < 20; ++t) {
        Graph g(9);
        for (int u = 0; u < 9; ++u)
            for (int v = u + 1; v < 9; ++v)
                if (rng.uniform01() < 0.4)
                    g.add_edge(u, v, rng.uniform01() * 1e3);
        std::stringstream io;
        write_edge_list(g, io);
        CHECK(same_graph(read_edge_list(io), g));
    }
}

TEST_CASE("laplacian")
{
    const auto c3 = testing::cycle_graph(3);
    Eigen::MatrixXd expect(3, 3);
    expect << 2, -1, -1, -1, 2, -1, -1, -1, 2;
    CHECK(laplacian(c3).isApprox(expect));

    const auto edge = make_graph(2, {{0, 1, 4}});
    Eigen::MatrixXd e2(2, 2);
    e2 << 4, -4, -4, 4;
    CHECK(laplacian(edge).isApprox(e2));

    CHECK(laplacian(Graph(4)).isZero());

    Rng rng(9);
    const auto g = testing::random_graph(10, 0.5, 1, 7, rng);
    const auto L = laplacian(g);
    CHECK((L * Eigen::VectorXd::Ones(10)).norm() < 1e-12);
    CHECK(L.isApprox(L.transpose()));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(L);
    CHECK(es.eigenvalues()[0] == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(es.eigenvalues().minCoeff() > -1e-9);
}

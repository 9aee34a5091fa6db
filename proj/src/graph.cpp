#include "cyclegsp/graph.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <sstream>
#include <tuple>

#include "cyclegsp/error.hpp"
#include "text_util.hpp"

namespace cyclegsp {

template <class W>
BasicGraph<W>::BasicGraph(int vertex_count) : n_(vertex_count)
{
    if (vertex_count < 0)
        throw Error(ErrorCode::BadVertex, "negative vertex count");
    adj_.resize(static_cast<std::size_t>(vertex_count));
}

template <class W>
std::uint64_t BasicGraph<W>::key(VertexId a, VertexId b) noexcept
{
    if (a > b)
        std::swap(a, b);
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) |
           static_cast<std::uint32_t>(b);
}

template <class W>
std::size_t BasicGraph<W>::add_edge(VertexId u, VertexId v, W w)
{
    if (u < 0 || v < 0 || u >= n_ || v >= n_)
        throw Error(ErrorCode::BadVertex, "edge (" + std::to_string(u) + "," + std::to_string(v) +
                                              ") outside 0.." + std::to_string(n_ - 1));
    if (u == v)
        throw Error(ErrorCode::SelfLoop, "vertex " + std::to_string(u));
    if (!(w >= W{0}))
        throw Error(ErrorCode::NegativeWeight, "edge (" + std::to_string(u) + "," + std::to_string(v) + ")");
    auto [it, inserted] = index_.try_emplace(key(u, v), edges_.size());
    if (!inserted)
        throw Error(ErrorCode::DuplicateEdge, "edge (" + std::to_string(u) + "," + std::to_string(v) + ")");
    const std::size_t id = edges_.size();
    edges_.push_back({u, v, w});
    adj_[u].push_back({v, id});
    adj_[v].push_back({u, id});
    return id;
}

template <class W>
std::optional<std::size_t> BasicGraph<W>::find_edge(VertexId u, VertexId v) const
{
    if (u < 0 || v < 0 || u >= n_ || v >= n_ || u == v)
        return std::nullopt;
    auto it = index_.find(key(u, v));
    if (it == index_.end())
        return std::nullopt;
    return it->second;
}

template <class W>
W BasicGraph<W>::total_weight() const
{
    W sum{0};
    for (const auto& e : edges_)
        sum += e.w;
    return sum;
}

template <class W>
void BasicGraph<W>::set_label(VertexId v, std::string label)
{
    if (v < 0 || v >= n_)
        throw Error(ErrorCode::BadVertex, "label for vertex " + std::to_string(v));
    if (labels_.empty())
        labels_.resize(static_cast<std::size_t>(n_));
    labels_[v] = std::move(label);
}

template <class W>
const std::string& BasicGraph<W>::label(VertexId v) const
{
    static const std::string empty;
    if (labels_.empty())
        return empty;
    return labels_.at(v);
}

template class BasicGraph<double>;
template class BasicGraph<std::int64_t>;

template <class W>
bool same_graph(const BasicGraph<W>& a, const BasicGraph<W>& b)
{
    if (a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count())
        return false;
    for (const auto& e : a.edges()) {
        auto id = b.find_edge(e.u, e.v);
        if (!id || b.edge(*id).w != e.w)
            return false;
    }
    return true;
}

template bool same_graph(const Graph&, const Graph&);
template bool same_graph(const IntegerGraph&, const IntegerGraph&);

template <class W>
PruneResult<W> prune_degree_one(const BasicGraph<W>& g)
{
    const int n = g.vertex_count();
    std::vector<int> degree(n);
    std::vector<char> alive(n, 1);
    std::vector<VertexId> stack;
    for (VertexId v = 0; v < n; ++v) {
        degree[v] = g.degree(v);
        if (degree[v] <= 1)
            stack.push_back(v);
    }
    // Process in increasing id order among the initial candidates.
    std::reverse(stack.begin(), stack.end());

    PruneResult<W> result;
    while (!stack.empty()) {
        const VertexId v = stack.back();
        stack.pop_back();
        if (!alive[v])
            continue;
        alive[v] = 0;
        result.removed.push_back(v);
        for (const auto& inc : g.incident(v)) {
            const VertexId u = inc.neighbor;
            if (!alive[u])
                continue;
            if (--degree[u] <= 1)
                stack.push_back(u);
        }
    }

    std::vector<VertexId> new_id(n, -1);
    for (VertexId v = 0; v < n; ++v) {
        if (alive[v]) {
            new_id[v] = static_cast<VertexId>(result.original_id.size());
            result.original_id.push_back(v);
        }
    }
    result.graph = BasicGraph<W>(static_cast<int>(result.original_id.size()));
    for (const auto& e : g.edges()) {
        if (alive[e.u] && alive[e.v])
            result.graph.add_edge(new_id[e.u], new_id[e.v], e.w);
    }
    if (g.has_labels()) {
        for (std::size_t i = 0; i < result.original_id.size(); ++i)
            result.graph.set_label(static_cast<VertexId>(i), g.label(result.original_id[i]));
    }
    return result;
}

template PruneResult<double> prune_degree_one(const Graph&);
template PruneResult<std::int64_t> prune_degree_one(const IntegerGraph&);

IntegerGraph rank_quantize_weights(const Graph& g, RankMode mode)
{
    const auto edges = g.edges();
    std::vector<std::size_t> order(edges.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return edges[a].w < edges[b].w; });

    std::vector<std::int64_t> rank(edges.size());
    std::int64_t current = 0;
    for (std::size_t i = 0; i < order.size(); ++i) {
        if (mode == RankMode::Ordinal || i == 0 || edges[order[i]].w != edges[order[i - 1]].w)
            ++current;
        rank[order[i]] = current;
    }

    IntegerGraph out(g.vertex_count());
    for (std::size_t i = 0; i < edges.size(); ++i)
        out.add_edge(edges[i].u, edges[i].v, rank[i]);
    return out;
}

Graph to_real(const IntegerGraph& g)
{
    Graph out(g.vertex_count());
    for (const auto& e : g.edges())
        out.add_edge(e.u, e.v, static_cast<double>(e.w));
    return out;
}

namespace {

[[noreturn]] void parse_fail(std::size_t line, const std::string& what)
{
    throw Error(ErrorCode::ParseError, "line " + std::to_string(line) + ": " + what);
}

}  // namespace

Graph read_edge_list(std::istream& in)
{
    std::string raw;
    std::size_t line_no = 0;
    std::optional<Graph> g;
    while (std::getline(in, raw)) {
        ++line_no;
        const auto line = strip_comment(raw);
        if (line.empty())
            continue;
        const auto fields = split_fields(line);
        if (!g) {
            int n = 0;
            if (fields.size() != 1 || !parse_number(fields[0], n) || n < 0)
                parse_fail(line_no, "expected vertex count");
            g.emplace(n);
            continue;
        }
        int u = 0;
        int v = 0;
        double w = 0.0;
        if (fields.size() != 3 || !parse_number(fields[0], u) || !parse_number(fields[1], v) ||
            !parse_number(fields[2], w) || !std::isfinite(w))
            parse_fail(line_no, "expected \"u v w\", got \"" + std::string(line) + "\"");
        if (u < 0 || v < 0 || u >= g->vertex_count() || v >= g->vertex_count())
            throw Error(ErrorCode::BadVertex, "line " + std::to_string(line_no) + ": vertex out of range");
        try {
            g->add_edge(u, v, w);
        } catch (const Error& e) {
            throw Error(e.code(), "line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    if (!g)
        parse_fail(line_no + 1, "missing vertex count");
    return std::move(*g);
}

Graph load_edge_list(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw Error(ErrorCode::FileNotFound, path);
    return read_edge_list(in);
}

void write_edge_list(const Graph& g, std::ostream& out)
{
    out << g.vertex_count() << '\n';
    for (const auto& e : g.edges())
        out << e.u << ' ' << e.v << ' ' << format_double(e.w) << '\n';
}

void save_edge_list(const Graph& g, const std::string& path)
{
    std::ofstream out(path);
    if (!out)
        throw Error(ErrorCode::FileNotFound, path);
    write_edge_list(g, out);
}

Eigen::MatrixXd laplacian(const Graph& g)
{
    const int n = g.vertex_count();
    Eigen::MatrixXd L = Eigen::MatrixXd::Zero(n, n);
    for (const auto& e : g.edges()) {
        L(e.u, e.v) -= e.w;
        L(e.v, e.u) -= e.w;
        L(e.u, e.u) += e.w;
        L(e.v, e.v) += e.w;
    }
    return L;
}

}  // namespace cyclegsp

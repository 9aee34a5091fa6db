#include "cyclegsp/matching.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <optional>

#include "blossom.hpp"
#include "cyclegsp/error.hpp"

namespace cyclegsp {

namespace {

using i128 = __int128;

// Power-of-two rescaling of non-negative doubles into exact integers.
// Fails when the exponent spread would need more than 90 bits.
std::optional<std::vector<i128>> exact_integer_weights(std::span<const BasicEdge<double>> edges)
{
    constexpr int kMaxBits = 90;
    std::optional<int> low;
    std::optional<int> high;
    for (const auto& e : edges) {
        if (e.w == 0.0)
            continue;
        int exp = 0;
        const double frac = std::frexp(e.w, &exp);
        const auto mantissa = static_cast<std::uint64_t>(std::ldexp(frac, 53));
        const int lowest = exp - 53 + std::countr_zero(mantissa);
        low = low ? std::min(*low, lowest) : lowest;
        high = high ? std::max(*high, exp) : exp;
    }
    std::vector<i128> out(edges.size(), 0);
    if (!low)
        return out;
    if (*high - *low > kMaxBits)
        return std::nullopt;
    for (std::size_t i = 0; i < edges.size(); ++i)
        out[i] = static_cast<i128>(std::ldexp(edges[i].w, -*low));
    return out;
}

template <class T>
std::optional<std::vector<int>> solve(int n, std::vector<detail::WeightedPair<T>> pairs)
{
    detail::BlossomMatcher<T> matcher(n, pairs);
    return matcher.solve();
}

template <class W>
BasicMatching<W> from_mate(const BasicGraph<W>& g, const std::vector<int>& mate)
{
    BasicMatching<W> m;
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        if (v < mate[v]) {
            m.pairs.emplace_back(v, mate[v]);
            m.total_weight += g.edge(*g.find_edge(v, mate[v])).w;
        }
    }
    return m;
}

template <class W>
[[noreturn]] void no_matching(const BasicGraph<W>& g)
{
    throw Error(ErrorCode::NoPerfectMatching,
                g.vertex_count() % 2 ? "odd vertex count " + std::to_string(g.vertex_count())
                                     : "graph has no perfect matching");
}

template <class W>
BasicMatching<W> brute_force(const BasicGraph<W>& g)
{
    const int n = g.vertex_count();
    if (n > kBruteForceMatchingLimit)
        throw Error(ErrorCode::TooLarge, std::to_string(n) + " vertices exceeds brute-force limit");
    if (n % 2)
        no_matching(g);

    std::vector<int> mate(n, -1);
    std::vector<int> best;
    W best_weight{};
    W current{};

    auto recurse = [&](auto&& self) -> void {
        int v = 0;
        while (v < n && mate[v] != -1)
            ++v;
        if (v == n) {
            if (best.empty() || current < best_weight) {
                best = mate;
                best_weight = current;
            }
            return;
        }
        for (const auto& inc : g.incident(v)) {
            const int u = inc.neighbor;
            if (mate[u] != -1)
                continue;
            const W w = g.edge(inc.edge).w;
            mate[v] = u;
            mate[u] = v;
            current += w;
            self(self);
            current -= w;
            mate[v] = -1;
            mate[u] = -1;
        }
    };
    if (n == 0)
        return {};
    recurse(recurse);
    if (best.empty())
        no_matching(g);
    return from_mate(g, best);
}

}  // namespace

Matching min_weight_perfect_matching(const Graph& g)
{
    std::optional<std::vector<int>> mate;
    if (auto scaled = exact_integer_weights(g.edges())) {
        std::vector<detail::WeightedPair<i128>> pairs;
        pairs.reserve(g.edge_count());
        for (std::size_t i = 0; i < g.edge_count(); ++i)
            pairs.push_back({g.edge(i).u, g.edge(i).v, (*scaled)[i]});
        mate = solve<i128>(g.vertex_count(), std::move(pairs));
    } else {
        std::vector<detail::WeightedPair<double>> pairs;
        pairs.reserve(g.edge_count());
        for (const auto& e : g.edges())
            pairs.push_back({e.u, e.v, e.w});
        mate = solve<double>(g.vertex_count(), std::move(pairs));
    }
    if (!mate)
        no_matching(g);
    return from_mate(g, *mate);
}

IntegerMatching min_weight_perfect_matching(const IntegerGraph& g)
{
    std::vector<detail::WeightedPair<i128>> pairs;
    pairs.reserve(g.edge_count());
    for (const auto& e : g.edges())
        pairs.push_back({e.u, e.v, static_cast<i128>(e.w)});
    auto mate = solve<i128>(g.vertex_count(), std::move(pairs));
    if (!mate)
        no_matching(g);
    return from_mate(g, *mate);
}

Matching brute_force_perfect_matching(const Graph& g) { return brute_force(g); }
IntegerMatching brute_force_perfect_matching(const IntegerGraph& g) { return brute_force(g); }

template <class W>
bool is_perfect_matching(const BasicGraph<W>& g, const BasicMatching<W>& m)
{
    std::vector<char> seen(g.vertex_count(), 0);
    for (const auto& [u, v] : m.pairs) {
        if (!g.has_edge(u, v))
            return false;
        if (seen[u] || seen[v])
            return false;
        seen[u] = seen[v] = 1;
    }
    return std::all_of(seen.begin(), seen.end(), [](char c) { return c != 0; });
}

template bool is_perfect_matching(const Graph&, const Matching&);
template bool is_perfect_matching(const IntegerGraph&, const IntegerMatching&);

}  // namespace cyclegsp

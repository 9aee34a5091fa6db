#include "cyclegsp/cycle_cover.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>

#include "cyclegsp/error.hpp"
#include "cyclegsp/random.hpp"
#include "text_util.hpp"

namespace cyclegsp {

template <class W>
BasicGadgetGraph<W> subdivide(const BasicGraph<W>& g)
{
    const int n = g.vertex_count();
    const auto m = static_cast<int>(g.edge_count());
    BasicGadgetGraph<W> fg;
    fg.kind = GadgetKind::Subdivision;
    fg.original_vertex_count = n;
    fg.graph = BasicGraph<W>(n + 2 * m);
    fg.required_degree.assign(n, 2);
    fg.required_degree.resize(n + 2 * m, 1);
    for (int i = 0; i < m; ++i) {
        const auto& e = g.edge(i);
        const VertexId ev = n + 2 * i;
        const VertexId ew = ev + 1;
        fg.original_edges.emplace_back(e.u, e.v);
        fg.stubs.emplace_back(ev, ew);
        fg.graph.add_edge(e.u, ev, e.w);
        fg.graph.add_edge(ev, ew, e.w);
        fg.graph.add_edge(ew, e.v, e.w);
    }
    return fg;
}

template <class W>
BasicGadgetGraph<W> split(const BasicGadgetGraph<W>& fg)
{
    if (fg.kind != GadgetKind::Subdivision)
        throw std::invalid_argument("split expects a subdivision gadget");
    BasicGadgetGraph<W> h;
    h.kind = GadgetKind::Split;
    h.original_vertex_count = fg.original_vertex_count;
    h.original_edges = fg.original_edges;
    h.stubs = fg.stubs;
    h.required_degree = fg.required_degree;

    const int fn = fg.graph.vertex_count();
    h.copies.resize(fn);
    for (VertexId a = 0; a < fn; ++a) {
        for (int k = 0; k < fg.required_degree[a]; ++k) {
            h.copies[a].push_back(static_cast<VertexId>(h.owner.size()));
            h.owner.push_back(a);
        }
    }
    h.graph = BasicGraph<W>(static_cast<int>(h.owner.size()));
    for (const auto& e : fg.graph.edges())
        for (VertexId x : h.copies[e.u])
            for (VertexId y : h.copies[e.v])
                h.graph.add_edge(x, y, e.w);
    return h;
}

template <class W>
EdgeList project_matching(const BasicGadgetGraph<W>& h, const BasicMatching<W>& m)
{
    if (h.kind != GadgetKind::Split)
        throw std::invalid_argument("project_matching expects a split gadget");
    if (!is_perfect_matching(h.graph, m))
        throw Error(ErrorCode::InvalidMatching, "matching is not perfect on the split gadget");

    const int n = h.original_vertex_count;
    auto original_of_stub = [&](VertexId s) { return static_cast<std::size_t>((s - n) / 2); };

    // Matching collapsed onto the subdivision vertices.
    std::set<std::pair<VertexId, VertexId>> collapsed;
    for (const auto& [x, y] : m.pairs) {
        const VertexId a = h.owner[x];
        const VertexId b = h.owner[y];
        collapsed.emplace(std::min(a, b), std::max(a, b));
    }

    std::set<std::pair<VertexId, VertexId>> cover;
    for (const auto& [a, b] : collapsed) {
        const bool a_orig = a < n;
        const bool b_orig = b < n;
        if (a_orig && b_orig) {
            cover.emplace(a, b);
        } else if (a_orig != b_orig) {
            const VertexId stub = a_orig ? b : a;
            const auto [v, w] = h.original_edges[original_of_stub(stub)];
            cover.emplace(std::min(v, w), std::max(v, w));
        }
    }
    return {cover.begin(), cover.end()};
}

std::size_t CycleCover::covered_count() const
{
    std::size_t n = 0;
    for (const auto& c : cycles)
        n += c.size();
    for (const auto& c : chains)
        n += c.size();
    return n;
}

namespace {

// Cycles and chains of a degree <= 2 edge set. Vertices flagged in skip are
// ignored when they have no cover edge.
void decompose(int n, const EdgeList& edges, const std::vector<char>& skip, CycleCover& out)
{
    std::vector<std::array<VertexId, 2>> nbr(n, {-1, -1});
    std::vector<int> deg(n, 0);
    for (const auto& [u, v] : edges) {
        for (auto [a, b] : {std::pair{u, v}, std::pair{v, u}}) {
            if (deg[a] == 2)
                throw Error(ErrorCode::NotTwoRegular, "vertex " + std::to_string(a) + " has cover degree > 2");
            nbr[a][deg[a]++] = b;
        }
    }

    std::vector<char> seen(n, 0);
    std::vector<VertexId> component;
    for (VertexId start = 0; start < n; ++start) {
        if (seen[start] || (deg[start] == 0 && !skip.empty() && skip[start]))
            continue;
        component.clear();
        std::vector<VertexId> stack{start};
        seen[start] = 1;
        VertexId low_end = -1;
        while (!stack.empty()) {
            const VertexId v = stack.back();
            stack.pop_back();
            component.push_back(v);
            if (deg[v] < 2 && (low_end == -1 || v < low_end))
                low_end = v;
            for (int k = 0; k < deg[v]; ++k) {
                if (!seen[nbr[v][k]]) {
                    seen[nbr[v][k]] = 1;
                    stack.push_back(nbr[v][k]);
                }
            }
        }

        std::vector<VertexId> walk;
        walk.reserve(component.size());
        if (low_end == -1) {
            VertexId prev = start;
            VertexId cur = std::min(nbr[start][0], nbr[start][1]);
            walk.push_back(start);
            while (cur != start) {
                walk.push_back(cur);
                const VertexId next = nbr[cur][0] == prev ? nbr[cur][1] : nbr[cur][0];
                prev = cur;
                cur = next;
            }
            out.cycles.push_back(std::move(walk));
        } else {
            VertexId prev = -1;
            VertexId cur = low_end;
            while (cur != -1) {
                walk.push_back(cur);
                VertexId next = -1;
                for (int k = 0; k < deg[cur]; ++k)
                    if (nbr[cur][k] != prev)
                        next = nbr[cur][k];
                prev = cur;
                cur = next;
            }
            out.chains.push_back(std::move(walk));
        }
    }
}

template <class W>
EdgeList normalized_edges(const BasicGraph<W>& g, const EdgeList& edges)
{
    EdgeList out;
    out.reserve(edges.size());
    for (const auto& [u, v] : edges) {
        if (!g.has_edge(u, v))
            throw Error(ErrorCode::CoverMismatch,
                        "cover edge (" + std::to_string(u) + "," + std::to_string(v) + ") is not in the graph");
        out.emplace_back(std::min(u, v), std::max(u, v));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

template <class W>
double weight_of(const BasicGraph<W>& g, const EdgeList& edges)
{
    double sum = 0.0;
    for (const auto& [u, v] : edges)
        sum += static_cast<double>(g.edge(*g.find_edge(u, v)).w);
    return sum;
}

struct CoreCover {
    EdgeList edges;
    std::vector<VertexId> removed;
};

// Prune, build the gadget, match, project. Ids refer to g.
template <class W>
std::optional<CoreCover> solve_cover(const BasicGraph<W>& g)
{
    auto pruned = prune_degree_one(g);
    if (pruned.graph.vertex_count() == 0)
        return std::nullopt;
    const auto h = split(subdivide(pruned.graph));
    BasicMatching<W> m;
    try {
        m = min_weight_perfect_matching(h.graph);
    } catch (const Error& e) {
        if (e.code() == ErrorCode::NoPerfectMatching)
            return std::nullopt;
        throw;
    }
    CoreCover core;
    for (const auto& [u, v] : project_matching(h, m)) {
        const VertexId a = pruned.original_id[u];
        const VertexId b = pruned.original_id[v];
        core.edges.emplace_back(std::min(a, b), std::max(a, b));
    }
    std::sort(core.edges.begin(), core.edges.end());
    core.removed = std::move(pruned.removed);
    std::sort(core.removed.begin(), core.removed.end());
    return core;
}

CycleCover assemble(const Graph& raw, const CoreCover& core)
{
    CycleCover c;
    c.cover_edges = core.edges;
    c.uncovered = core.removed;
    std::vector<char> skip(raw.vertex_count(), 0);
    for (VertexId v : core.removed)
        skip[v] = 1;
    decompose(raw.vertex_count(), c.cover_edges, skip, c);
    c.total_weight = weight_of(raw, c.cover_edges);
    return c;
}

[[noreturn]] void no_cover(const std::string& why) { throw Error(ErrorCode::NoCycleCover, why); }

}  // namespace

template <class W>
CycleCover extract_cycles(const BasicGraph<W>& g, const EdgeList& cover_edges)
{
    CycleCover c;
    c.cover_edges = normalized_edges(g, cover_edges);
    decompose(g.vertex_count(), c.cover_edges, {}, c);
    c.total_weight = weight_of(g, c.cover_edges);
    return c;
}

CycleCover min_weight_cycle_cover(const Graph& g, const CoverOptions& options)
{
    std::optional<CoreCover> core;
    if (options.quantize == Quantize::None) {
        core = solve_cover(g);
    } else if (g.edge_count() > 0) {
        const auto q = rank_quantize_weights(g, options.quantize == Quantize::Dense ? RankMode::Dense : RankMode::Ordinal);
        core = solve_cover(q);
    }
    if (!core)
        no_cover("graph has no vertex-disjoint cycle cover");
    return assemble(g, *core);
}

CycleCover min_weight_cycle_cover(const IntegerGraph& g)
{
    auto core = solve_cover(g);
    if (!core)
        no_cover("graph has no vertex-disjoint cycle cover");
    return assemble(to_real(g), *core);
}

CycleCover brute_force_cycle_cover(const Graph& g)
{
    const int n = g.vertex_count();
    if (n > kBruteForceCoverLimit)
        throw Error(ErrorCode::TooLarge, std::to_string(n) + " vertices exceeds brute-force limit");
    if (n == 0)
        no_cover("empty graph");

    const auto edges = g.edges();
    const auto m = edges.size();
    // last_edge[v]: index of the final edge touching v; its degree is settled after it.
    std::vector<long> last_edge(n, -1);
    for (std::size_t i = 0; i < m; ++i) {
        last_edge[edges[i].u] = static_cast<long>(i);
        last_edge[edges[i].v] = static_cast<long>(i);
    }
    if (std::any_of(last_edge.begin(), last_edge.end(), [](long x) { return x < 0; }))
        no_cover("isolated vertex");

    std::vector<int> deg(n, 0);
    std::vector<char> chosen(m, 0);
    std::vector<char> best;
    double best_weight = 0.0;
    double current = 0.0;

    auto settled = [&](std::size_t i) {
        const auto& e = edges[i];
        return (last_edge[e.u] != static_cast<long>(i) || deg[e.u] == 2) &&
               (last_edge[e.v] != static_cast<long>(i) || deg[e.v] == 2);
    };
    auto recurse = [&](auto&& self, std::size_t i) -> void {
        if (i == m) {
            if (best.empty() || current < best_weight) {
                best = chosen;
                best_weight = current;
            }
            return;
        }
        const auto& e = edges[i];
        if (deg[e.u] < 2 && deg[e.v] < 2) {
            ++deg[e.u];
            ++deg[e.v];
            chosen[i] = 1;
            current += e.w;
            if (settled(i))
                self(self, i + 1);
            current -= e.w;
            chosen[i] = 0;
            --deg[e.u];
            --deg[e.v];
        }
        if (settled(i))
            self(self, i + 1);
    };
    recurse(recurse, 0);
    if (best.empty())
        no_cover("no spanning 2-regular subgraph");

    EdgeList cover;
    for (std::size_t i = 0; i < m; ++i)
        if (best[i])
            cover.emplace_back(edges[i].u, edges[i].v);
    return extract_cycles(g, cover);
}

namespace {

template <class W>
CycleCover fallback_impl(const Graph& raw, const BasicGraph<W>& base, W penalty, const FallbackOptions& options)
{
    if (auto core = solve_cover(base); core && core->removed.empty())
        return assemble(raw, *core);

    const int n = base.vertex_count();
    const auto batch = static_cast<std::size_t>(std::max(1, n / 4));
    const auto all_pairs = static_cast<std::size_t>(n) * static_cast<std::size_t>(std::max(0, n - 1)) / 2;
    Rng rng(options.seed);
    BasicGraph<W> work = base;

    for (int round = 0; round < options.max_rounds; ++round) {
        for (std::size_t added = 0; added < batch && work.edge_count() < all_pairs; ++added) {
            VertexId u;
            VertexId v;
            do {
                u = static_cast<VertexId>(rng.below(static_cast<std::uint64_t>(n)));
                v = static_cast<VertexId>(rng.below(static_cast<std::uint64_t>(n)));
            } while (u == v || work.has_edge(u, v));
            work.add_edge(u, v, penalty);
        }
        auto core = solve_cover(work);
        if (!core || !core->removed.empty())
            continue;

        EdgeList kept;
        for (const auto& e : core->edges)
            if (base.has_edge(e.first, e.second))
                kept.push_back(e);
        CycleCover c;
        c.cover_edges = std::move(kept);
        decompose(n, c.cover_edges, {}, c);
        c.total_weight = weight_of(raw, c.cover_edges);
        return c;
    }
    no_cover("no cover after " + std::to_string(options.max_rounds) + " fallback rounds");
}

}  // namespace

CycleCover cover_with_fallback(const Graph& g, const FallbackOptions& options)
{
    if (options.quantize != Quantize::None && g.edge_count() > 0) {
        const auto q = rank_quantize_weights(g, options.quantize == Quantize::Dense ? RankMode::Dense : RankMode::Ordinal);
        std::int64_t penalty = q.total_weight() + 1;
        if (options.penalty) {
            if (*options.penalty <= static_cast<double>(q.total_weight()))
                throw std::invalid_argument("fallback penalty must exceed the total quantized weight");
            penalty = static_cast<std::int64_t>(*options.penalty);
        }
        return fallback_impl(g, q, penalty, options);
    }
    const double total = g.total_weight();
    const double penalty = options.penalty.value_or(total + 1.0);
    if (!(penalty > total))
        throw std::invalid_argument("fallback penalty must exceed the total edge weight");
    return fallback_impl(g, g, penalty, options);
}

CoverDiagnostics validate_cover(const Graph& g, const CycleCover& c)
{
    CoverDiagnostics d;
    const int n = g.vertex_count();

    std::vector<int> hits(n, 0);
    bool ids_ok = true;
    auto hit = [&](VertexId v) {
        if (v < 0 || v >= n)
            ids_ok = false;
        else
            ++hits[v];
    };
    for (const auto& cyc : c.cycles)
        for (VertexId v : cyc)
            hit(v);
    for (const auto& ch : c.chains)
        for (VertexId v : ch)
            hit(v);
    for (VertexId v : c.uncovered)
        hit(v);
    d.coverage = ids_ok;
    for (VertexId v = 0; v < n && d.coverage; ++v) {
        if (hits[v] != 1) {
            d.coverage = false;
            d.problems.push_back("vertex " + std::to_string(v) + " covered " + std::to_string(hits[v]) + " times");
        }
    }
    if (!ids_ok)
        d.problems.push_back("cover references a vertex outside the graph");

    d.membership = true;
    std::vector<int> deg(n, 0);
    double weight = 0.0;
    for (const auto& [u, v] : c.cover_edges) {
        const auto id = (u >= 0 && v >= 0 && u < n && v < n) ? g.find_edge(u, v) : std::nullopt;
        if (!id) {
            d.membership = false;
            d.problems.push_back("cover edge (" + std::to_string(u) + "," + std::to_string(v) + ") not in graph");
            continue;
        }
        weight += g.edge(*id).w;
        ++deg[u];
        ++deg[v];
    }
    auto walk_edges = [&](const std::vector<VertexId>& seq, bool closed) {
        const std::size_t k = seq.size();
        const std::size_t steps = closed ? k : (k == 0 ? 0 : k - 1);
        if (closed && k < 3) {
            d.membership = false;
            d.problems.push_back("cycle shorter than 3");
        }
        for (std::size_t i = 0; i < steps; ++i) {
            const VertexId a = seq[i];
            const VertexId b = seq[(i + 1) % k];
            if (a < 0 || b < 0 || a >= n || b >= n || !g.has_edge(a, b)) {
                d.membership = false;
                d.problems.push_back("consecutive vertices " + std::to_string(a) + "," + std::to_string(b) +
                                     " are not adjacent");
            }
        }
        return steps;
    };
    std::size_t walked = 0;
    for (const auto& cyc : c.cycles)
        walked += walk_edges(cyc, true);
    for (const auto& ch : c.chains)
        walked += walk_edges(ch, false);
    if (walked != c.cover_edges.size()) {
        d.membership = false;
        d.problems.push_back("cycles and chains do not account for the cover edges");
    }

    d.degree = true;
    for (const auto& cyc : c.cycles)
        for (VertexId v : cyc)
            if (v >= 0 && v < n && deg[v] != 2) {
                d.degree = false;
                d.problems.push_back("cycle vertex " + std::to_string(v) + " has cover degree " + std::to_string(deg[v]));
            }
    for (const auto& ch : c.chains)
        for (VertexId v : ch)
            if (v >= 0 && v < n && deg[v] > 2) {
                d.degree = false;
                d.problems.push_back("chain vertex " + std::to_string(v) + " has cover degree > 2");
            }
    for (VertexId v : c.uncovered)
        if (v >= 0 && v < n && deg[v] != 0) {
            d.degree = false;
            d.problems.push_back("uncovered vertex " + std::to_string(v) + " has cover edges");
        }

    d.recomputed_weight = weight;
    d.weight = weight == c.total_weight;
    if (!d.weight)
        d.problems.push_back("stored total weight differs from recomputed " + format_double(weight));
    return d;
}

void write_cover(const CycleCover& c, std::ostream& out)
{
    out << "# weight=" << format_double(c.total_weight) << " covered=" << c.covered_count() << '\n';
    if (!c.uncovered.empty()) {
        out << "# uncovered:";
        for (VertexId v : c.uncovered)
            out << ' ' << v;
        out << '\n';
    }
    auto line = [&](char tag, const std::vector<VertexId>& seq) {
        out << tag << ':';
        for (VertexId v : seq)
            out << ' ' << v;
        out << '\n';
    };
    for (const auto& cyc : c.cycles)
        line('C', cyc);
    for (const auto& ch : c.chains)
        line('P', ch);
}

void save_cover(const CycleCover& c, const std::string& path)
{
    std::ofstream out(path);
    if (!out)
        throw Error(ErrorCode::FileNotFound, path);
    write_cover(c, out);
}

CycleCover read_cover(std::istream& in)
{
    CycleCover c;
    std::string raw;
    std::size_t line_no = 0;
    auto fail = [&](const std::string& why) {
        throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": " + why);
    };
    auto read_ids = [&](std::string_view rest) {
        std::vector<VertexId> ids;
        for (auto field : split_fields(rest)) {
            VertexId v = 0;
            if (!parse_number(field, v) || v < 0)
                fail("bad vertex id \"" + std::string(field) + "\"");
            ids.push_back(v);
        }
        return ids;
    };
    while (std::getline(in, raw)) {
        ++line_no;
        std::string_view line = raw;
        if (!line.empty() && line.back() == '\r')
            line.remove_suffix(1);
        if (line.starts_with("# weight=")) {
            const auto fields = split_fields(line.substr(2));
            for (auto f : fields) {
                if (f.starts_with("weight=") && !parse_number(f.substr(7), c.total_weight))
                    fail("bad weight");
            }
            continue;
        }
        if (line.starts_with("# uncovered:")) {
            c.uncovered = read_ids(line.substr(12));
            continue;
        }
        if (strip_comment(line).empty())
            continue;
        if (line.starts_with("C:")) {
            auto ids = read_ids(line.substr(2));
            if (ids.size() < 3)
                fail("cycle needs at least 3 vertices");
            c.cycles.push_back(std::move(ids));
        } else if (line.starts_with("P:")) {
            auto ids = read_ids(line.substr(2));
            if (ids.empty())
                fail("empty chain");
            c.chains.push_back(std::move(ids));
        } else {
            fail("expected \"C:\" or \"P:\" line");
        }
    }
    auto add = [&](VertexId a, VertexId b) { c.cover_edges.emplace_back(std::min(a, b), std::max(a, b)); };
    for (const auto& cyc : c.cycles)
        for (std::size_t i = 0; i < cyc.size(); ++i)
            add(cyc[i], cyc[(i + 1) % cyc.size()]);
    for (const auto& ch : c.chains)
        for (std::size_t i = 0; i + 1 < ch.size(); ++i)
            add(ch[i], ch[i + 1]);
    std::sort(c.cover_edges.begin(), c.cover_edges.end());
    return c;
}

CycleCover load_cover(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw Error(ErrorCode::FileNotFound, path);
    return read_cover(in);
}

template GadgetGraph subdivide(const Graph&);
template BasicGadgetGraph<std::int64_t> subdivide(const IntegerGraph&);
template GadgetGraph split(const GadgetGraph&);
template BasicGadgetGraph<std::int64_t> split(const BasicGadgetGraph<std::int64_t>&);
template EdgeList project_matching(const GadgetGraph&, const Matching&);
template EdgeList project_matching(const BasicGadgetGraph<std::int64_t>&, const IntegerMatching&);
template CycleCover extract_cycles(const Graph&, const EdgeList&);
template CycleCover extract_cycles(const IntegerGraph&, const EdgeList&);

}  // namespace cyclegsp

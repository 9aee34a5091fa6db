#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cyclegsp/graph.hpp"
#include "cyclegsp/matching.hpp"

namespace cyclegsp {

using EdgeList = std::vector<std::pair<VertexId, VertexId>>;

enum class GadgetKind { Subdivision, Split };

/// Intermediate graphs of the 2-factor to perfect-matching reduction.
///
/// Subdivision: vertices 0..n-1 are the original vertices; original edge i
/// = (v, w) becomes the path v - stub(i).first - stub(i).second - w with
/// stub ids n + 2i and n + 2i + 1.
///
/// Split: every subdivision vertex a is replaced by required_degree[a]
/// copies, and each subdivision edge (a, b) by the complete bipartite graph
/// between the copies of a and of b.
template <class W>
struct BasicGadgetGraph {
    BasicGraph<W> graph;
    GadgetKind kind = GadgetKind::Subdivision;
    int original_vertex_count = 0;
    /// Endpoints of the original edges, indexed like the stubs.
    EdgeList original_edges;
    /// (e_v, e_w) per original edge, as subdivision vertex ids.
    EdgeList stubs;
    /// Degree demanded of each subdivision vertex: 2 on originals, 1 on stubs.
    std::vector<int> required_degree;
    /// Split only: copies[a] lists the split vertices standing for a.
    std::vector<std::vector<VertexId>> copies;
    /// Split only: owner[t] is the subdivision vertex that t copies.
    std::vector<VertexId> owner;
};

using GadgetGraph = BasicGadgetGraph<double>;

template <class W>
BasicGadgetGraph<W> subdivide(const BasicGraph<W>& g);

/// Requires a subdivision gadget.
template <class W>
BasicGadgetGraph<W> split(const BasicGadgetGraph<W>& subdivision);

/// Collapses a perfect matching of the split gadget onto the subdivision
/// graph and keeps the original edges whose stubs are matched towards their
/// own endpoints. Returns sorted (u < v) original edges. Throws
/// InvalidMatching unless m is perfect on the gadget.
template <class W>
EdgeList project_matching(const BasicGadgetGraph<W>& split_gadget, const BasicMatching<W>& m);

struct CycleCover {
    /// Closed cycles in canonical form: start at the smallest id, step to
    /// the smaller neighbour. Sorted by first vertex.
    std::vector<std::vector<VertexId>> cycles;
    /// Open chains (only after fallback), starting at the smaller endpoint.
    std::vector<std::vector<VertexId>> chains;
    /// Sorted (u < v) edges of the cover.
    EdgeList cover_edges;
    double total_weight = 0.0;
    /// Vertices deleted by degree pruning; not part of any cycle or chain.
    std::vector<VertexId> uncovered;

    std::size_t covered_count() const;
};

/// Splits a degree <= 2 edge set into cycles and chains. Vertices untouched
/// by the edge set become single-vertex chains. Throws NotTwoRegular if a
/// vertex has degree above 2, CoverMismatch if an edge is not in g.
template <class W>
CycleCover extract_cycles(const BasicGraph<W>& g, const EdgeList& cover_edges);

enum class Quantize { None, Dense, Ordinal };

struct CoverOptions {
    Quantize quantize = Quantize::None;
};

/// Minimum-weight 2-factor of the degree-pruned graph. total_weight is
/// always summed from g's own weights. Throws NoCycleCover.
CycleCover min_weight_cycle_cover(const Graph& g, const CoverOptions& options = {});
CycleCover min_weight_cycle_cover(const IntegerGraph& g);

inline constexpr int kBruteForceCoverLimit = 10;

/// Exhaustive search over spanning 2-regular edge subsets of g itself (no
/// pruning). Throws TooLarge above 10 vertices and NoCycleCover.
CycleCover brute_force_cycle_cover(const Graph& g);

struct FallbackOptions {
    /// Weight of every added edge; defaults to 1 + the total edge weight of
    /// the graph that is actually matched (quantized when quantizing).
    std::optional<double> penalty;
    std::uint64_t seed = 1;
    int max_rounds = 64;
    Quantize quantize = Quantize::None;
};

/// Adds batches of max(1, n/4) random non-edges carrying a prohibitive
/// penalty until every vertex can be covered, then removes them again; the
/// remaining cover may contain chains. Throws NoCycleCover once max_rounds
/// batches did not help.
CycleCover cover_with_fallback(const Graph& g, const FallbackOptions& options = {});

struct CoverDiagnostics {
    bool coverage = false;
    bool degree = false;
    bool membership = false;
    bool weight = false;
    double recomputed_weight = 0.0;
    std::vector<std::string> problems;

    bool valid() const { return coverage && degree && membership && weight; }
};

CoverDiagnostics validate_cover(const Graph& g, const CycleCover& c);

/// Text format: "# weight=<w> covered=<n>" header, then one "C: ..." line
/// per cycle and one "P: ..." line per chain. Pruned vertices, if any, go on
/// a "# uncovered: ..." comment line.
void write_cover(const CycleCover& c, std::ostream& out);
void save_cover(const CycleCover& c, const std::string& path);
CycleCover read_cover(std::istream& in);
CycleCover load_cover(const std::string& path);

}  // namespace cyclegsp

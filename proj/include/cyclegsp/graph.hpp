#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include <Eigen/Dense>

namespace cyclegsp {

using VertexId = int;

template <class W>
struct BasicEdge {
    VertexId u;
    VertexId v;
    W w;
};

/// Undirected simple graph with dense vertex ids 0..n-1.
///
/// Edges keep their insertion order; incidence lists point back into the
/// edge array so per-edge data can live in parallel vectors indexed by edge.
template <class W>
class BasicGraph {
public:
    using weight_type = W;
    using Edge = BasicEdge<W>;

    struct Incidence {
        VertexId neighbor;
        std::size_t edge;
    };

    BasicGraph() = default;
    explicit BasicGraph(int vertex_count);

    int vertex_count() const noexcept { return n_; }
    std::size_t edge_count() const noexcept { return edges_.size(); }

    /// Throws SelfLoop, DuplicateEdge, NegativeWeight or BadVertex.
    std::size_t add_edge(VertexId u, VertexId v, W w);

    std::span<const Edge> edges() const noexcept { return edges_; }
    const Edge& edge(std::size_t i) const { return edges_.at(i); }
    std::span<const Incidence> incident(VertexId v) const { return adj_.at(v); }
    int degree(VertexId v) const { return static_cast<int>(adj_.at(v).size()); }

    std::optional<std::size_t> find_edge(VertexId u, VertexId v) const;
    bool has_edge(VertexId u, VertexId v) const { return find_edge(u, v).has_value(); }

    W total_weight() const;

    void set_label(VertexId v, std::string label);
    /// Empty string when no label was assigned.
    const std::string& label(VertexId v) const;
    bool has_labels() const noexcept { return !labels_.empty(); }

private:
    static std::uint64_t key(VertexId a, VertexId b) noexcept;

    int n_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::vector<Incidence>> adj_;
    std::unordered_map<std::uint64_t, std::size_t> index_;
    std::vector<std::string> labels_;
};

using Graph = BasicGraph<double>;
using IntegerGraph = BasicGraph<std::int64_t>;

extern template class BasicGraph<double>;
extern template class BasicGraph<std::int64_t>;

/// Same vertex count and the same weighted edge set, ignoring edge order.
template <class W>
bool same_graph(const BasicGraph<W>& a, const BasicGraph<W>& b);

template <class W>
struct PruneResult {
    BasicGraph<W> graph;
    /// Original ids of every deleted vertex, in deletion order.
    std::vector<VertexId> removed;
    /// original_id[i] is the input id of surviving vertex i.
    std::vector<VertexId> original_id;
};

/// Repeatedly deletes vertices of degree <= 1 until none remain. Surviving
/// vertices are renumbered densely, preserving their relative order.
template <class W>
PruneResult<W> prune_degree_one(const BasicGraph<W>& g);

enum class RankMode {
    Dense,    ///< equal raw weights share a rank
    Ordinal,  ///< ties broken by edge index, ranks 1..|E|
};

/// Replaces every weight by its 1-based rank in ascending order.
IntegerGraph rank_quantize_weights(const Graph& g, RankMode mode = RankMode::Dense);

Graph to_real(const IntegerGraph& g);

/// Edge-list text format: first line is the vertex count, then "u v w" per
/// line. '#' starts a comment; blank lines are skipped.
Graph read_edge_list(std::istream& in);
Graph load_edge_list(const std::string& path);
void write_edge_list(const Graph& g, std::ostream& out);
void save_edge_list(const Graph& g, const std::string& path);

/// L = D - A as a dense matrix.
Eigen::MatrixXd laplacian(const Graph& g);

}  // namespace cyclegsp

#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "cyclegsp/graph.hpp"

namespace cyclegsp {

/// A set of vertex-disjoint edges. Pairs are stored with u < v and sorted.
template <class W>
struct BasicMatching {
    std::vector<std::pair<VertexId, VertexId>> pairs;
    W total_weight{};
};

using Matching = BasicMatching<double>;
using IntegerMatching = BasicMatching<std::int64_t>;

/// Exact minimum-weight perfect matching.
///
/// Integer weights are solved in 128-bit integer arithmetic. Real weights
/// are rescaled by a common power of two into 128-bit integers whenever the
/// spread of their binary exponents allows it, which keeps the comparison
/// exact on the stored doubles; otherwise the solver falls back to double
/// arithmetic. Worst case O(n^3).
///
/// Throws NoPerfectMatching.
Matching min_weight_perfect_matching(const Graph& g);
IntegerMatching min_weight_perfect_matching(const IntegerGraph& g);

inline constexpr int kBruteForceMatchingLimit = 16;

/// Exhaustive search over all pairings. Throws TooLarge above 16 vertices,
/// NoPerfectMatching when none exists.
Matching brute_force_perfect_matching(const Graph& g);
IntegerMatching brute_force_perfect_matching(const IntegerGraph& g);

template <class W>
bool is_perfect_matching(const BasicGraph<W>& g, const BasicMatching<W>& m);

}  // namespace cyclegsp

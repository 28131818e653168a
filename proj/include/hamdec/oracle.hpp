#pragma once

// Exhaustive enumeration of Hamiltonian decompositions for small union
// multigraphs, used as ground truth by the tests.

#include "hamdec/graph.hpp"

#include <cstdint>
#include <vector>

namespace hamdec {

inline constexpr int oracle_max_vertices = 16;

/// Unordered decompositions {z, w}. Copy 0 of a fixed edge is always on z.
struct DecompositionSet {
    std::vector<std::vector<Side>> pairs;
    /// Pairs whose two sides have the same edge multiset (doubled tours).
    long long symmetric = 0;
    int fixed_edges = 0;
    bool has_free_edges = true;
    bool limit_hit = false;

    auto count() const noexcept -> long long { return static_cast<long long>(pairs.size()); }
    /// Ordered pairs (z, w) of edge multisets.
    auto ordered_count() const noexcept -> long long { return 2 * count() - symmetric; }
    /// Ordered assignments with the two copies of a fixed edge told apart.
    auto labeled_count() const noexcept -> long long
    {
        return count() * (has_free_edges ? 2 : 1) * (std::int64_t{1} << fixed_edges);
    }
};

/// Stops after `limit` pairs (0 = no limit) and sets limit_hit. Throws
/// TooLarge above oracle_max_vertices vertices.
auto enumerate_decompositions(const UnionMultigraph & g, long long limit = 0) -> DecompositionSet;

/// True iff some decomposition differs from {x, y}. Throws TooLarge.
auto has_distinct_decomposition(const UnionMultigraph & g, const HamiltonianCycle & x, const HamiltonianCycle & y)
    -> bool;

} // namespace hamdec

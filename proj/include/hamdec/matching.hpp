#pragma once

// Cycle covers of a union multigraph through perfect matchings.
//
// Undirected: every vertex v becomes a K(4,2) gadget. The four outer nodes
// stand for the four edge copies at v, the two inner nodes only see their own
// gadget. In a perfect matching the inner nodes take two outer nodes and the
// other two leave through inter-gadget edges; those edges form the cover.
//
// Directed: every vertex v is split into v_L and v_R and every arc (u, v)
// becomes the bipartite edge (u_L, v_R). Perfect matchings are directed
// cycle covers.

#include "hamdec/graph.hpp"

#include <optional>
#include <span>
#include <vector>

namespace hamdec {

struct Arc {
    int to;
    int edge;
};

/// Undirected graph with indexed edges, the input of the general matcher.
class MatchingGraph {
  public:
    explicit MatchingGraph(int vertex_count = 0);

    auto add_edge(int a, int b) -> int;

    auto vertex_count() const noexcept -> int { return static_cast<int>(adjacency_.size()); }
    auto edge_count() const noexcept -> int { return static_cast<int>(ends_.size()); }
    auto endpoints(int e) const -> std::pair<int, int> { return ends_[static_cast<std::size_t>(e)]; }
    auto neighbours(int v) const -> std::span<const Arc> { return adjacency_[static_cast<std::size_t>(v)]; }

  private:
    std::vector<std::pair<int, int>> ends_;
    std::vector<std::vector<Arc>> adjacency_;
};

/// A matching as the matched edge index per vertex (-1 when free).
struct Matching {
    std::vector<int> mate_edge;
    int size = 0;

    auto perfect() const noexcept -> bool { return 2 * static_cast<std::size_t>(size) == mate_edge.size(); }
    auto edges() const -> std::vector<int>;
};

/// Forced edges are seeded into the matching and never unmatched; excluded
/// edges are treated as absent.
struct MatchingConstraints {
    std::span<const int> forced;
    std::span<const int> excluded;
};

struct GadgetGraph {
    MatchingGraph graph;
    int intra_edge_count = 0;
    int inter_edge_count = 0;
    std::vector<int> inter_edge_of_copy;  // multigraph EdgeId -> graph edge
    std::vector<EdgeId> copy_of_edge;     // graph edge -> EdgeId, no_edge for intra edges

    static constexpr auto outer(VertexId v, int slot) -> int { return 6 * v + slot; }
    static constexpr auto inner(VertexId v, int k) -> int { return 6 * v + 4 + k; }
};

struct BipartiteSplit {
    int side_size = 0;
    /// (left tail, right head); index equals the multigraph EdgeId.
    std::vector<std::pair<int, int>> edges;
    std::vector<std::vector<int>> left_edges;
    std::vector<std::vector<int>> right_edges;

    auto degree_left(int u) const -> int { return static_cast<int>(left_edges[static_cast<std::size_t>(u)].size()); }
    auto degree_right(int v) const -> int { return static_cast<int>(right_edges[static_cast<std::size_t>(v)].size()); }
};

/// Throws DirectedInput for a directed multigraph.
auto build_gadget_graph(const UnionMultigraph & g) -> GadgetGraph;

/// Throws UndirectedInput for an undirected multigraph.
auto build_bipartite_split(const UnionMultigraph & g) -> BipartiteSplit;

/// Maximum matching by Edmonds' blossom algorithm. With an rng, the greedy
/// start, root order and neighbour order are shuffled. Throws
/// InfeasibleForced if two forced edges share a vertex.
auto max_matching_general(const MatchingGraph & graph, const MatchingConstraints & constraints = {},
                          Rng * rng = nullptr) -> Matching;

/// Maximum matching by Hopcroft-Karp. Vertex i of the result is left node i
/// for i < n and right node i - n otherwise; edge indices are EdgeIds.
auto max_matching_bipartite(const BipartiteSplit & split, const MatchingConstraints & constraints = {},
                            Rng * rng = nullptr) -> Matching;

/// Throws NotPerfect unless the matching is perfect.
auto cover_from_matching(const UnionMultigraph & g, const GadgetGraph & gadget, const Matching & m) -> CycleCover;
auto cover_from_matching(const UnionMultigraph & g, const BipartiteSplit & split, const Matching & m) -> CycleCover;

/// An edge pinned to one side when covers are rebuilt.
struct ForcedEdge {
    EdgeId edge;
    Side side = Side::Z;

    auto operator==(const ForcedEdge &) const -> bool = default;
};

/// Caches the reduction graph of one multigraph and produces randomised
/// cover pairs from it. Copy 0 of every fixed edge goes to z, copy 1 to w.
class CoverBuilder {
  public:
    explicit CoverBuilder(const UnionMultigraph & g);

    /// Throws InfeasibleForced when no cover respects the forced edges.
    auto build(std::span<const ForcedEdge> forced, Rng & rng) const -> CoverPair;

    auto graph() const noexcept -> const UnionMultigraph & { return *g_; }

  private:
    const UnionMultigraph * g_;
    std::optional<GadgetGraph> gadget_;
    std::optional<BipartiteSplit> split_;
};

auto initial_cycle_covers(const UnionMultigraph & g, std::span<const ForcedEdge> queue, Rng & rng) -> CoverPair;

} // namespace hamdec

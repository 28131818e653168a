#pragma once

// Core types: Hamiltonian cycles, the 4-regular union multigraph of two
// cycles, vertex-disjoint cycle covers of it, and complementary cover pairs.
//
// Vertices are 0-based internally. Every edge copy of a union multigraph has
// a stable EdgeId; parallel copies of the same endpoint pair are told apart
// by their copy index.

#include <compare>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <vector>

namespace hamdec {

using VertexId = std::int32_t;
using EdgeId = std::int32_t;
using Rng = std::mt19937_64;

inline constexpr EdgeId no_edge = -1;

enum class Side : std::uint8_t { Z = 0, W = 1 };

constexpr auto other(Side s) noexcept -> Side { return s == Side::Z ? Side::W : Side::Z; }

/// Endpoint pair. For undirected edges it is normalised so that u <= v.
struct EdgeEnds {
    VertexId u;
    VertexId v;

    auto operator<=>(const EdgeEnds &) const = default;
};

class HamiltonianCycle {
  public:
    /// order must be a permutation of {0..n-1}, n >= 3.
    HamiltonianCycle(std::vector<VertexId> order, bool directed);

    static auto from_one_based(std::span<const int> order, bool directed) -> HamiltonianCycle;

    auto size() const noexcept -> int { return static_cast<int>(order_.size()); }
    auto directed() const noexcept -> bool { return directed_; }
    auto order() const noexcept -> std::span<const VertexId> { return order_; }
    auto one_based() const -> std::vector<int>;

    /// Consecutive pairs plus the closing pair, in tour order.
    auto edges() const -> std::vector<EdgeEnds>;
    auto sorted_edges() const -> std::vector<EdgeEnds>;
    auto same_edges(const HamiltonianCycle & other) const -> bool;

    /// Rotated to start at vertex 0; undirected tours are additionally
    /// reflected so the second vertex is the smaller neighbour of 0.
    auto canonical() const -> HamiltonianCycle;

    auto operator==(const HamiltonianCycle &) const -> bool = default;

  private:
    std::vector<VertexId> order_;
    bool directed_;
};

struct MultiEdge {
    VertexId u;
    VertexId v;
    std::uint8_t copy;
    bool fixed;
};

/// The multigraph x ∪ y. Every vertex has degree 4 (directed: in = out = 2),
/// there are exactly 2n edge copies and an edge is fixed iff it has
/// multiplicity 2.
class UnionMultigraph {
  public:
    /// General constructor, used for union graphs and for hand-built
    /// 4-regular test graphs. Undirected pairs are normalised.
    static auto from_edges(int n, bool directed, std::span<const EdgeEnds> edges) -> UnionMultigraph;

    auto vertex_count() const noexcept -> int { return n_; }
    auto edge_count() const noexcept -> int { return static_cast<int>(edges_.size()); }
    auto directed() const noexcept -> bool { return directed_; }

    auto edge(EdgeId e) const -> const MultiEdge & { return edges_[static_cast<std::size_t>(e)]; }
    auto edges() const noexcept -> std::span<const MultiEdge> { return edges_; }
    auto is_fixed(EdgeId e) const -> bool { return edge(e).fixed; }

    /// All four edge copies at v. Directed graphs list the two out-arcs first.
    auto incident(VertexId v) const -> std::span<const EdgeId>
    {
        return {incidence_.data() + 4 * static_cast<std::size_t>(v), 4};
    }
    auto out_edges(VertexId v) const -> std::span<const EdgeId> { return incident(v).first(2); }
    auto in_edges(VertexId v) const -> std::span<const EdgeId> { return incident(v).last(2); }

    auto other_end(EdgeId e, VertexId v) const -> VertexId
    {
        const auto & me = edge(e);
        return me.u == v ? me.v : me.u;
    }

    /// The parallel copy of a fixed edge, or no_edge.
    auto twin(EdgeId e) const -> EdgeId { return twin_[static_cast<std::size_t>(e)]; }

    auto find(VertexId u, VertexId v) const -> std::vector<EdgeId>;
    auto multiplicity(VertexId u, VertexId v) const -> int { return static_cast<int>(find(u, v).size()); }
    auto fixed_edges() const -> std::vector<EdgeId>;
    auto ends(EdgeId e) const -> EdgeEnds { return {edge(e).u, edge(e).v}; }
    auto sorted_edge_ends() const -> std::vector<EdgeEnds>;

  private:
    UnionMultigraph() = default;

    int n_ = 0;
    bool directed_ = false;
    std::vector<MultiEdge> edges_;
    std::vector<EdgeId> incidence_;
    std::vector<EdgeId> twin_;
};

/// Edge ids 0..n-1 are the edges of x in tour order and n..2n-1 those of y,
/// so copy 0 of a shared edge always belongs to x.
auto build_union(const HamiltonianCycle & x, const HamiltonianCycle & y) -> UnionMultigraph;

/// A spanning subgraph of a union multigraph in which every vertex has degree
/// 2 (directed: in = out = 1).
class CycleCover {
  public:
    /// Throws NotASubset for unknown or repeated ids, DegreeViolation if the
    /// degree invariant fails.
    static auto from_edges(const UnionMultigraph & g, std::vector<EdgeId> edges) -> CycleCover;

    auto vertex_count() const noexcept -> int { return static_cast<int>(component_of_.size()); }
    auto directed() const noexcept -> bool { return directed_; }
    auto edges() const noexcept -> std::span<const EdgeId> { return edges_; }
    auto component_count() const noexcept -> int { return component_count_; }
    auto component_of(VertexId v) const -> int { return component_of_[static_cast<std::size_t>(v)]; }
    auto is_hamiltonian() const noexcept -> bool { return component_count_ == 1; }

    auto sorted_edge_ends(const UnionMultigraph & g) const -> std::vector<EdgeEnds>;
    /// The tour, if the cover is a single cycle.
    auto as_cycle(const UnionMultigraph & g) const -> std::optional<HamiltonianCycle>;

    auto operator==(const CycleCover & other) const -> bool { return edges_ == other.edges_; }

  private:
    CycleCover() = default;

    bool directed_ = false;
    std::vector<EdgeId> edges_;
    std::vector<int> component_of_;
    int component_count_ = 0;
};

/// g minus z, multiplicity-aware.
auto complement_cover(const UnionMultigraph & g, const CycleCover & z) -> CycleCover;

/// Two complementary cycle covers z and w of one union multigraph, stored as
/// a side label per edge copy. The multigraph must outlive the pair.
class CoverPair {
  public:
    /// Throws DegreeViolation unless both sides are cycle covers and every
    /// fixed edge has one copy on each side.
    CoverPair(const UnionMultigraph & g, std::vector<Side> sides);

    static auto from_cover(const UnionMultigraph & g, const CycleCover & z) -> CoverPair;

    auto graph() const noexcept -> const UnionMultigraph & { return *g_; }
    auto side(EdgeId e) const -> Side { return sides_[static_cast<std::size_t>(e)]; }
    auto sides() const noexcept -> std::span<const Side> { return sides_; }
    auto edges_on(Side s) const -> std::vector<EdgeId>;

    auto z() const -> CycleCover;
    auto w() const -> CycleCover;

    /// Unchecked move of one edge copy to the other side. Local searches use
    /// this and restore the invariants before handing the pair back.
    void flip(EdgeId e) { auto & s = sides_[static_cast<std::size_t>(e)]; s = other(s); }

    auto is_valid() const -> bool;

    auto operator==(const CoverPair & other) const -> bool { return g_ == other.g_ && sides_ == other.sides_; }

  private:
    const UnionMultigraph * g_;
    std::vector<Side> sides_;
};

/// Number of cycles on one side; the pair must be valid.
auto component_count(const CoverPair & p, Side s) -> int;

/// Total number of cycles in z and w. Equals 2 iff both are Hamiltonian.
auto objective(const CoverPair & p) -> int;

/// True iff z and w are Hamiltonian, z ⊎ w = x ⊎ y and z differs from both
/// x and y as an edge set.
auto verify_decomposition(const UnionMultigraph & g, const CoverPair & p, const HamiltonianCycle & x,
                          const HamiltonianCycle & y) -> bool;

/// Graph-free check of a certificate: z ⊎ w = x ⊎ y and z ∉ {x, y}.
auto verify_certificate(const HamiltonianCycle & x, const HamiltonianCycle & y, const HamiltonianCycle & z,
                        const HamiltonianCycle & w) -> bool;

} // namespace hamdec

#pragma once

// Edge-exchange neighbourhoods over a CoverPair.
//
// A move sends one edge copy from z to w or back. Moving a z-edge breaks the
// degree invariant at its endpoints; the searches then repair degrees vertex
// by vertex until both sides are cycle covers again, and keep the result only
// if the total number of cycles went down.
//
//   N1 directed    the deterministic chain: remove (a1, a2), add the other
//                  in-arc of a2, remove the other out-arc of its tail, ...
//   N1 undirected  k random repair walks per start edge
//   N2             depth-first bounded search tree over all repairs

#include "hamdec/graph.hpp"

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace hamdec {

struct Move {
    EdgeId edge;
    Side from;

    auto operator==(const Move &) const -> bool = default;
};

/// Ordered record of single-edge moves. Rolling back in reverse order
/// restores the pair exactly.
class MoveLog {
  public:
    void record(EdgeId e, Side from) { moves_.push_back({e, from}); }
    auto size() const noexcept -> std::size_t { return moves_.size(); }
    auto moves() const noexcept -> std::span<const Move> { return moves_; }
    void rollback(CoverPair & p, std::size_t to_size);
    void clear() noexcept { moves_.clear(); }

  private:
    std::vector<Move> moves_;
};

/// One way to repair the degree of a vertex: up to three edge moves.
struct RepairOption {
    std::array<EdgeId, 3> flips{no_edge, no_edge, no_edge};
    int count = 0;

    auto edges() const -> std::span<const EdgeId> { return {flips.data(), static_cast<std::size_t>(count)}; }
};

/// At most three options repair an undirected vertex, at most four a
/// directed one (two for the out-degree, two for the in-degree).
struct RepairOptions {
    std::array<RepairOption, 4> items;
    int count = 0;

    void push(const RepairOption & o) { items[static_cast<std::size_t>(count++)] = o; }
    auto begin() noexcept { return items.begin(); }
    auto end() noexcept { return items.begin() + count; }
    auto begin() const noexcept { return items.begin(); }
    auto end() const noexcept { return items.begin() + count; }
    auto size() const noexcept -> std::size_t { return static_cast<std::size_t>(count); }
    auto empty() const noexcept -> bool { return count == 0; }
    auto operator[](std::size_t i) const -> const RepairOption & { return items[i]; }
};

struct SearchCounters {
    long long starts = 0;
    long long nodes = 0;
    long long evaluations = 0;
    long long improvements = 0;
    long long chain_cap_hits = 0;
};

/// Working state shared by all exchange searches. It owns degree counters,
/// the set of vertices whose degree is currently wrong, the move log, and a
/// snapshot of the cycle layout of the last valid pair, which lets the
/// objective of a repaired state be computed from the moved edges alone.
class ExchangeState {
  public:
    static constexpr std::size_t max_vertices = std::size_t{1} << 21;

    /// Throws TooLarge from max_vertices vertices on.
    explicit ExchangeState(CoverPair & p);

    auto pair() const noexcept -> const CoverPair & { return *p_; }
    auto graph() const noexcept -> const UnionMultigraph & { return *g_; }
    auto base_objective() const noexcept -> int { return base_objective_; }

    /// Fixed edges and edges already moved in the current attempt stay put.
    auto movable(EdgeId e) const -> bool { return ! g_->is_fixed(e) && ! moved_[static_cast<std::size_t>(e)]; }
    void flip(EdgeId e);
    void apply(const RepairOption & option);
    auto mark() const noexcept -> std::size_t { return log_.size(); }
    void undo_to(std::size_t mark);
    auto log() const noexcept -> const MoveLog & { return log_; }

    auto valid() const noexcept -> bool { return bad_.empty(); }
    auto bad_vertices() const noexcept -> std::span<const VertexId> { return bad_; }
    /// The vertex to repair next: the most recently broken one.
    auto pick_bad() const -> VertexId { return bad_.back(); }
    auto repair_options(VertexId u) const -> RepairOptions;

    /// Objective of the current state, which must be valid.
    auto evaluate() -> int;

    /// Keep the moves made so far; the layout snapshot is rebuilt by a full
    /// traversal and checked against the incremental value.
    void commit(int expected_objective);

    auto z_degree(VertexId v) const -> int { return out_[v] + in_[v]; }
    /// Out-degree in z for directed graphs; the plain z-degree otherwise.
    auto z_out_degree(VertexId v) const -> int { return out_[v]; }
    auto component_of(Side s, VertexId v) const -> int
    {
        return (s == Side::Z ? z_layout_ : w_layout_).comp[static_cast<std::size_t>(v)];
    }
    auto component_count(Side s) const -> int { return (s == Side::Z ? z_layout_ : w_layout_).count; }

    SearchCounters counters;

  private:
    struct Layout {
        std::vector<int> comp;
        std::vector<int> pos;
        std::vector<EdgeId> succ_edge;
        int count = 0;
    };

    auto is_bad(VertexId v) const -> bool;
    void refresh_bad(VertexId v);
    void build_layout(Side s, Layout & layout) const;
    auto count_side(Side s, const Layout & layout) -> int;

    CoverPair * p_;
    const UnionMultigraph * g_;
    std::vector<int> out_;
    std::vector<int> in_;
    std::vector<VertexId> bad_;
    std::vector<int> bad_pos_;
    std::vector<char> moved_;
    MoveLog log_;
    Layout z_layout_;
    Layout w_layout_;
    int base_objective_ = 0;

    std::vector<int> local_;
    std::vector<VertexId> touched_;
    std::vector<std::uint64_t> scratch_;
};

/// Deterministic exchange chains, start edges in rng order. On success the
/// applied moves are appended to `applied` when given.
auto local_search_n1_directed(CoverPair & p, Rng & rng, MoveLog * applied = nullptr) -> bool;

/// Up to k random repair walks per start edge, each capped at 2n moves.
auto local_search_n1_undirected(CoverPair & p, int k_walks, Rng & rng, MoveLog * applied = nullptr) -> bool;

auto local_search_n1(CoverPair & p, int k_walks, Rng & rng, MoveLog * applied = nullptr) -> bool;

/// Bounded search tree: depth counts repair steps including the initial
/// move; at most 3^depth_limit nodes per start edge and at most
/// 4 * depth_limit moved edges.
auto local_search_n2(CoverPair & p, int depth_limit, Rng & rng, MoveLog * applied = nullptr) -> bool;

} // namespace hamdec

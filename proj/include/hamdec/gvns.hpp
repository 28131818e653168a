#pragma once

// Search drivers: variable neighbourhood descent over N1 and N2, the
// simulated-annealing shake that rebuilds covers around a queue of forced
// edges, and the loops that combine them.

#include "hamdec/graph.hpp"
#include "hamdec/local_search.hpp"
#include "hamdec/matching.hpp"

#include <chrono>
#include <cstdint>
#include <deque>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace hamdec {

enum class Algorithm { SA, GVNS, VND12, VND21 };

auto to_string(Algorithm a) -> std::string;
/// Accepts sa, gvns, vnd12, vnd21 in any case; throws InvalidParams.
auto parse_algorithm(std::string_view name) -> Algorithm;

enum class NeighborhoodOrder { N1First, N2First };

struct SolverParams {
    int iter_limit = 1000;
    double init_temp = 1000.0;
    /// Queue capacity; 0 selects max(1, n / 3).
    int fix_edges = 0;
    int depth_limit = 10;
    double time_limit = 500.0;
    int k_walks = 10;
    double alpha = 0.99;
    std::uint64_t seed = 0;
    NeighborhoodOrder order = NeighborhoodOrder::N1First;

    /// Throws InvalidParams.
    void validate() const;
    auto queue_capacity(int n) const -> int;

    static auto defaults_for(Algorithm a) -> SolverParams;
};

/// FIFO of forced edges. A pushed edge replaces any earlier entry for the
/// same edge; the oldest entry is evicted on overflow.
class FixedEdgeQueue {
  public:
    explicit FixedEdgeQueue(int capacity);

    /// Returns the evicted entry, if any.
    auto push(ForcedEdge e) -> std::optional<ForcedEdge>;
    void drop_oldest();
    void clear() noexcept { items_.clear(); }

    auto capacity() const noexcept -> int { return capacity_; }
    auto size() const noexcept -> int { return static_cast<int>(items_.size()); }
    auto empty() const noexcept -> bool { return items_.empty(); }
    auto items() const -> std::vector<ForcedEdge> { return {items_.begin(), items_.end()}; }

  private:
    int capacity_;
    std::deque<ForcedEdge> items_;
};

/// The two tours a decomposition has to differ from. Empty means any
/// Hamiltonian pair counts.
class ExcludedPair {
  public:
    ExcludedPair() = default;
    ExcludedPair(const HamiltonianCycle & x, const HamiltonianCycle & y);

    auto is_distinct(const CoverPair & p) const -> bool;
    /// Objective 2 and distinct.
    auto is_solution(const CoverPair & p) const -> bool;

  private:
    std::vector<EdgeEnds> x_;
    std::vector<EdgeEnds> y_;
};

enum class Status { Decomposed, NotFound };
enum class StopReason { None, IterLimit, TimeLimit, LocalMinimum, Infeasible };

auto to_string(Status s) -> std::string;
auto to_string(StopReason r) -> std::string;

struct SolveStats {
    long long iterations = 0;
    long long shakes_accepted = 0;
    long long descents = 0;
    long long n1_improvements = 0;
    long long n2_improvements = 0;
    double elapsed_seconds = 0.0;
    int initial_objective = 0;
    int final_objective = 0;
};

struct SolveOutcome {
    Status status = Status::NotFound;
    StopReason reason = StopReason::None;
    /// Certificate, set iff Decomposed.
    std::optional<HamiltonianCycle> z;
    std::optional<HamiltonianCycle> w;
    SolveStats stats;

    auto decomposed() const noexcept -> bool { return status == Status::Decomposed; }
};

enum class VndResult { Solved, LocalMinimum, TimeUp };

class Deadline {
  public:
    explicit Deadline(double seconds) :
        start_(std::chrono::steady_clock::now()),
        seconds_(seconds)
    {}

    auto elapsed() const -> double
    {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }
    auto expired() const -> bool { return elapsed() > seconds_; }

  private:
    std::chrono::steady_clock::time_point start_;
    double seconds_;
};

/// Descends until the pair solves the instance or neither neighbourhood
/// improves it.
auto vnd(CoverPair & p, const SolverParams & params, const ExcludedPair & target, Rng & rng,
         SolveStats * stats = nullptr, MoveLog * applied = nullptr, const Deadline * deadline = nullptr) -> VndResult;

auto cooling_schedule(const SolverParams & params, long long iter) -> double;
auto acceptance_probability(int delta, double temperature) -> double;
/// exp(-delta / T) >= u.
auto sa_accept(int delta, double temperature, double u) -> bool;

struct ShakeResult {
    CoverPair candidate;
    ForcedEdge forced;
    int delta = 0;
    bool accepted = false;
};

/// Forces an edge joining two cycles of one side, rebuilds both covers
/// around the queue and applies the annealing test. Entries are dropped from
/// the front of the queue while the forced set is infeasible.
auto sa_shake(const CoverPair & p, double temperature, FixedEdgeQueue & queue, const CoverBuilder & builder,
              Rng & rng) -> ShakeResult;

auto solve(const UnionMultigraph & g, const ExcludedPair & target, Algorithm algo, const SolverParams & params)
    -> SolveOutcome;
auto solve(const HamiltonianCycle & x, const HamiltonianCycle & y, Algorithm algo, const SolverParams & params)
    -> SolveOutcome;

auto gvns(const HamiltonianCycle & x, const HamiltonianCycle & y, const SolverParams & params) -> SolveOutcome;
auto sa_only(const HamiltonianCycle & x, const HamiltonianCycle & y, const SolverParams & params) -> SolveOutcome;
/// One descent from the initial covers, neighbourhoods in params.order.
auto vnd_only(const HamiltonianCycle & x, const HamiltonianCycle & y, const SolverParams & params) -> SolveOutcome;

} // namespace hamdec

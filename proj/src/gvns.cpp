#include "hamdec/gvns.hpp"

#include "hamdec/error.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <stdexcept>

namespace hamdec {

auto to_string(Algorithm a) -> std::string
{
    switch (a) {
    case Algorithm::SA: return "SA";
    case Algorithm::GVNS: return "GVNS";
    case Algorithm::VND12: return "VND12";
    case Algorithm::VND21: return "VND21";
    }
    return "?";
}

auto parse_algorithm(std::string_view name) -> Algorithm
{
    std::string lower;
    for (char c : name)
        lower += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (lower == "sa")
        return Algorithm::SA;
    if (lower == "gvns")
        return Algorithm::GVNS;
    if (lower == "vnd12")
        return Algorithm::VND12;
    if (lower == "vnd21")
        return Algorithm::VND21;
    throw Error(ErrorCode::InvalidParams, "unknown algorithm '" + std::string(name) + "'");
}

auto to_string(Status s) -> std::string { return s == Status::Decomposed ? "Decomposed" : "NotFound"; }

auto to_string(StopReason r) -> std::string
{
    switch (r) {
    case StopReason::None: return "None";
    case StopReason::IterLimit: return "IterLimit";
    case StopReason::TimeLimit: return "TimeLimit";
    case StopReason::LocalMinimum: return "LocalMinimum";
    case StopReason::Infeasible: return "Infeasible";
    }
    return "?";
}

void SolverParams::validate() const
{
    auto fail = [](const std::string & what) { throw Error(ErrorCode::InvalidParams, what); };
    if (iter_limit < 0)
        fail("iteration limit must be >= 0");
    if (! (time_limit > 0))
        fail("time limit must be > 0");
    if (! (alpha > 0 && alpha < 1))
        fail("alpha must lie in (0, 1)");
    if (! (init_temp > 0))
        fail("initial temperature must be > 0");
    if (fix_edges < 0)
        fail("fixed-edge queue size must be >= 1, or 0 for automatic");
    if (depth_limit < 0)
        fail("depth limit must be >= 0");
    if (k_walks < 0)
        fail("walk count must be >= 0");
}

auto SolverParams::queue_capacity(int n) const -> int { return fix_edges > 0 ? fix_edges : std::max(1, n / 3); }

auto SolverParams::defaults_for(Algorithm a) -> SolverParams
{
    SolverParams p;
    if (a == Algorithm::SA)
        p.iter_limit = 5000;
    if (a == Algorithm::VND21)
        p.order = NeighborhoodOrder::N2First;
    return p;
}

FixedEdgeQueue::FixedEdgeQueue(int capacity) :
    capacity_(capacity)
{
    if (capacity < 1)
        throw Error(ErrorCode::InvalidParams, "queue capacity must be >= 1");
}

auto FixedEdgeQueue::push(ForcedEdge e) -> std::optional<ForcedEdge>
{
    std::erase_if(items_, [&](const ForcedEdge & f) { return f.edge == e.edge; });
    items_.push_back(e);
    if (static_cast<int>(items_.size()) <= capacity_)
        return std::nullopt;
    auto evicted = items_.front();
    items_.pop_front();
    return evicted;
}

void FixedEdgeQueue::drop_oldest()
{
    if (! items_.empty())
        items_.pop_front();
}

ExcludedPair::ExcludedPair(const HamiltonianCycle & x, const HamiltonianCycle & y) :
    x_(x.sorted_edges()),
    y_(y.sorted_edges())
{}

auto ExcludedPair::is_distinct(const CoverPair & p) const -> bool
{
    if (x_.empty() && y_.empty())
        return true;
    auto z = p.z().sorted_edge_ends(p.graph());
    return z != x_ && z != y_;
}

auto ExcludedPair::is_solution(const CoverPair & p) const -> bool { return objective(p) == 2 && is_distinct(p); }

auto vnd(CoverPair & p, const SolverParams & params, const ExcludedPair & target, Rng & rng, SolveStats * stats,
         MoveLog * applied, const Deadline * deadline) -> VndResult
{
    if (stats)
        ++stats->descents;
    auto time_up = [&] { return deadline && deadline->expired(); };
    auto n1 = [&] {
        bool improved = local_search_n1(p, params.k_walks, rng, applied);
        if (improved && stats)
            ++stats->n1_improvements;
        return improved;
    };
    auto n2 = [&] {
        bool improved = local_search_n2(p, params.depth_limit, rng, applied);
        if (improved && stats)
            ++stats->n2_improvements;
        return improved;
    };
    const bool n1_first = params.order == NeighborhoodOrder::N1First;
    for (;;) {
        if (target.is_solution(p))
            return VndResult::Solved;
        if (time_up())
            return VndResult::TimeUp;
        if (n1_first ? n1() : n2())
            continue;
        if (time_up())
            return VndResult::TimeUp;
        if (! (n1_first ? n2() : n1()))
            return VndResult::LocalMinimum;
    }
}

auto cooling_schedule(const SolverParams & params, long long iter) -> double
{
    return params.init_temp * std::pow(params.alpha, static_cast<double>(iter));
}

auto acceptance_probability(int delta, double temperature) -> double
{
    return std::min(1.0, std::exp(-static_cast<double>(delta) / temperature));
}

auto sa_accept(int delta, double temperature, double u) -> bool
{
    return std::exp(-static_cast<double>(delta) / temperature) >= u;
}

namespace {

    auto pick(const std::vector<EdgeId> & edges, Rng & rng) -> EdgeId
    {
        std::uniform_int_distribution<std::size_t> d(0, edges.size() - 1);
        return edges[d(rng)];
    }

    auto choose_forced(const CoverPair & p, Rng & rng) -> ForcedEdge
    {
        const auto & g = p.graph();
        auto z = p.z();
        auto w = p.w();
        auto bridges = [&](Side on, const CycleCover & across) {
            std::vector<EdgeId> result;
            for (EdgeId e = 0; e < g.edge_count(); ++e)
                if (p.side(e) == on && across.component_of(g.edge(e).u) != across.component_of(g.edge(e).v))
                    result.push_back(e);
            return result;
        };
        const bool z_split = z.component_count() > 1;
        const bool w_split = w.component_count() > 1;
        if (z_split || w_split) {
            bool into_z = z_split;
            if (z_split && w_split)
                into_z = std::bernoulli_distribution(0.5)(rng);
            if (into_z)
                return {pick(bridges(Side::W, z), rng), Side::Z};
            return {pick(bridges(Side::Z, w), rng), Side::W};
        }
        // Both sides Hamiltonian but equal to an input tour: no bridge exists.
        std::vector<EdgeId> free_w;
        for (EdgeId e = 0; e < g.edge_count(); ++e)
            if (p.side(e) == Side::W && ! g.is_fixed(e))
                free_w.push_back(e);
        return {pick(free_w, rng), Side::Z};
    }

} // namespace

auto sa_shake(const CoverPair & p, double temperature, FixedEdgeQueue & queue, const CoverBuilder & builder,
              Rng & rng) -> ShakeResult
{
    auto forced = choose_forced(p, rng);
    queue.push(forced);
    std::optional<CoverPair> candidate;
    while (! candidate) {
        auto items = queue.items();
        try {
            candidate = builder.build(items, rng);
        }
        catch (const Error & e) {
            if (e.code() != ErrorCode::InfeasibleForced || queue.size() <= 1)
                throw;
            queue.drop_oldest();
        }
    }
    int delta = objective(*candidate) - objective(p);
    double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    bool accepted = sa_accept(delta, temperature, u);
    return {std::move(*candidate), forced, delta, accepted};
}

namespace {

    auto finish(SolveOutcome & out, const CoverPair & p, const ExcludedPair & target, const Deadline & deadline,
                StopReason reason) -> SolveOutcome
    {
        out.stats.final_objective = objective(p);
        out.stats.elapsed_seconds = deadline.elapsed();
        if (reason == StopReason::None) {
            if (! target.is_solution(p))
                throw std::logic_error("solver reported a pair that is not a distinct decomposition");
            out.status = Status::Decomposed;
            out.z = p.z().as_cycle(p.graph());
            out.w = p.w().as_cycle(p.graph());
            if (! out.z || ! out.w)
                throw std::logic_error("certificate side is not Hamiltonian");
        }
        else {
            out.status = Status::NotFound;
        }
        out.reason = reason;
        return out;
    }

} // namespace

auto solve(const UnionMultigraph & g, const ExcludedPair & target, Algorithm algo, const SolverParams & params)
    -> SolveOutcome
{
    params.validate();
    Deadline deadline(params.time_limit);
    Rng rng(params.seed);
    SolveOutcome out;
    CoverBuilder builder(g);
    FixedEdgeQueue queue(params.queue_capacity(g.vertex_count()));

    std::optional<CoverPair> current;
    try {
        current = builder.build({}, rng);
    }
    catch (const Error & e) {
        if (e.code() != ErrorCode::InfeasibleForced)
            throw;
        out.stats.elapsed_seconds = deadline.elapsed();
        out.reason = StopReason::Infeasible;
        return out;
    }
    auto & p = *current;
    out.stats.initial_objective = objective(p);

    if (algo == Algorithm::VND12 || algo == Algorithm::VND21) {
        auto q = params;
        q.order = algo == Algorithm::VND12 ? NeighborhoodOrder::N1First : NeighborhoodOrder::N2First;
        switch (vnd(p, q, target, rng, &out.stats, nullptr, &deadline)) {
        case VndResult::Solved: return finish(out, p, target, deadline, StopReason::None);
        case VndResult::TimeUp: return finish(out, p, target, deadline, StopReason::TimeLimit);
        case VndResult::LocalMinimum: return finish(out, p, target, deadline, StopReason::LocalMinimum);
        }
    }

    // One annealing step; returns true when a candidate was accepted.
    auto shake = [&]() -> bool {
        double t = cooling_schedule(params, out.stats.iterations);
        ++out.stats.iterations;
        auto result = sa_shake(p, t, queue, builder, rng);
        if (! result.accepted)
            return false;
        p = std::move(result.candidate);
        ++out.stats.shakes_accepted;
        return true;
    };

    if (algo == Algorithm::SA) {
        if (target.is_solution(p))
            return finish(out, p, target, deadline, StopReason::None);
        for (;;) {
            if (out.stats.iterations >= params.iter_limit)
                return finish(out, p, target, deadline, StopReason::IterLimit);
            if (deadline.expired())
                return finish(out, p, target, deadline, StopReason::TimeLimit);
            if (shake() && target.is_solution(p))
                return finish(out, p, target, deadline, StopReason::None);
        }
    }

    for (;;) {
        auto r = vnd(p, params, target, rng, &out.stats, nullptr, &deadline);
        if (r == VndResult::Solved)
            return finish(out, p, target, deadline, StopReason::None);
        if (r == VndResult::TimeUp)
            return finish(out, p, target, deadline, StopReason::TimeLimit);
        for (bool accepted = false; ! accepted;) {
            if (out.stats.iterations >= params.iter_limit)
                return finish(out, p, target, deadline, StopReason::IterLimit);
            if (deadline.expired())
                return finish(out, p, target, deadline, StopReason::TimeLimit);
            accepted = shake();
        }
        if (target.is_solution(p))
            return finish(out, p, target, deadline, StopReason::None);
    }
}

auto solve(const HamiltonianCycle & x, const HamiltonianCycle & y, Algorithm algo, const SolverParams & params)
    -> SolveOutcome
{
    auto g = build_union(x, y);
    auto out = solve(g, ExcludedPair(x, y), algo, params);
    if (out.decomposed() && ! verify_certificate(x, y, *out.z, *out.w))
        throw std::logic_error("certificate failed independent verification");
    return out;
}

auto gvns(const HamiltonianCycle & x, const HamiltonianCycle & y, const SolverParams & params) -> SolveOutcome
{
    return solve(x, y, Algorithm::GVNS, params);
}

auto sa_only(const HamiltonianCycle & x, const HamiltonianCycle & y, const SolverParams & params) -> SolveOutcome
{
    return solve(x, y, Algorithm::SA, params);
}

auto vnd_only(const HamiltonianCycle & x, const HamiltonianCycle & y, const SolverParams & params) -> SolveOutcome
{
    return solve(x, y, params.order == NeighborhoodOrder::N1First ? Algorithm::VND12 : Algorithm::VND21, params);
}

} // namespace hamdec

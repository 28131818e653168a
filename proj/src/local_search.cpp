#include "hamdec/local_search.hpp"

#include "hamdec/error.hpp"

#include "dsu.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace hamdec {

void MoveLog::rollback(CoverPair & p, std::size_t to_size)
{
    while (moves_.size() > to_size) {
        p.flip(moves_.back().edge);
        moves_.pop_back();
    }
}

ExchangeState::ExchangeState(CoverPair & p) :
    p_(&p),
    g_(&p.graph())
{
    const auto n = static_cast<std::size_t>(g_->vertex_count());
    if (n >= max_vertices)
        throw Error(ErrorCode::TooLarge, "exchange searches support fewer than " + std::to_string(max_vertices)
                                             + " vertices");
    out_.assign(n, 0);
    in_.assign(n, 0);
    bad_pos_.assign(n, -1);
    moved_.assign(static_cast<std::size_t>(g_->edge_count()), 0);
    local_.assign(n, -1);
    for (EdgeId e = 0; e < g_->edge_count(); ++e)
        if (p.side(e) == Side::Z) {
            ++out_[g_->edge(e).u];
            if (g_->directed())
                ++in_[g_->edge(e).v];
            else
                ++out_[g_->edge(e).v];
        }
    for (VertexId v = 0; v < static_cast<VertexId>(n); ++v)
        refresh_bad(v);
    if (! bad_.empty())
        throw std::logic_error("ExchangeState needs a valid cover pair");
    build_layout(Side::Z, z_layout_);
    build_layout(Side::W, w_layout_);
    base_objective_ = z_layout_.count + w_layout_.count;
}

auto ExchangeState::is_bad(VertexId v) const -> bool
{
    return g_->directed() ? (out_[v] != 1 || in_[v] != 1) : out_[v] != 2;
}

void ExchangeState::refresh_bad(VertexId v)
{
    bool bad = is_bad(v);
    auto & pos = bad_pos_[v];
    if (bad && pos < 0) {
        pos = static_cast<int>(bad_.size());
        bad_.push_back(v);
    }
    else if (! bad && pos >= 0) {
        auto last = bad_.back();
        bad_[pos] = last;
        bad_pos_[last] = pos;
        bad_.pop_back();
        pos = -1;
    }
}

void ExchangeState::flip(EdgeId e)
{
    const auto & me = g_->edge(e);
    const Side from = p_->side(e);
    const int delta = from == Side::Z ? -1 : 1;
    out_[me.u] += delta;
    if (g_->directed())
        in_[me.v] += delta;
    else
        out_[me.v] += delta;
    p_->flip(e);
    moved_[e] = 1;
    log_.record(e, from);
    refresh_bad(me.u);
    refresh_bad(me.v);
}

void ExchangeState::apply(const RepairOption & option)
{
    for (auto e : option.edges())
        flip(e);
}

void ExchangeState::undo_to(std::size_t mark)
{
    while (log_.size() > mark) {
        auto e = log_.moves().back().edge;
        const auto & me = g_->edge(e);
        const int delta = p_->side(e) == Side::Z ? -1 : 1;
        out_[me.u] += delta;
        if (g_->directed())
            in_[me.v] += delta;
        else
            out_[me.v] += delta;
        moved_[e] = 0;
        log_.rollback(*p_, log_.size() - 1);
        refresh_bad(me.u);
        refresh_bad(me.v);
    }
}

auto ExchangeState::repair_options(VertexId u) const -> RepairOptions
{
    RepairOptions options;
    auto single = [&](EdgeId e) {
        RepairOption o;
        o.flips[0] = e;
        o.count = 1;
        options.push(o);
    };

    if (g_->directed()) {
        auto consider = [&](std::span<const EdgeId> arcs, int degree) {
            if (degree == 1)
                return;
            const Side want = degree == 0 ? Side::W : Side::Z;
            for (auto e : arcs)
                if (p_->side(e) == want && movable(e))
                    single(e);
        };
        consider(g_->out_edges(u), out_[u]);
        consider(g_->in_edges(u), in_[u]);
        return options;
    }

    std::array<EdgeId, 4> zs{}, ws{};
    std::size_t nz = 0, nw = 0;
    for (auto e : g_->incident(u))
        if (movable(e)) {
            if (p_->side(e) == Side::Z)
                zs[nz++] = e;
            else
                ws[nw++] = e;
        }

    auto triple = [&](EdgeId a, EdgeId b, EdgeId c) {
        RepairOption o;
        o.flips = {a, b, c};
        o.count = c == no_edge ? 2 : 3;
        options.push(o);
    };
    switch (out_[u]) {
    case 1:
        for (std::size_t i = 0; i < nw; ++i)
            single(ws[i]);
        if (nw == 2 && nz == 1)
            triple(ws[0], ws[1], zs[0]);
        break;
    case 3:
        for (std::size_t i = 0; i < nz; ++i)
            single(zs[i]);
        if (nz == 2 && nw == 1)
            triple(zs[0], zs[1], ws[0]);
        break;
    case 0:
        if (nw == 2)
            triple(ws[0], ws[1], no_edge);
        break;
    case 4:
        if (nz == 2)
            triple(zs[0], zs[1], no_edge);
        break;
    default: break;
    }
    return options;
}

void ExchangeState::build_layout(Side s, Layout & layout) const
{
    const int n = g_->vertex_count();
    layout.comp.assign(static_cast<std::size_t>(n), -1);
    layout.pos.assign(static_cast<std::size_t>(n), 0);
    layout.succ_edge.assign(static_cast<std::size_t>(n), no_edge);
    layout.count = 0;
    for (VertexId start = 0; start < n; ++start) {
        if (layout.comp[start] >= 0)
            continue;
        VertexId v = start;
        EdgeId came = no_edge;
        int position = 0;
        do {
            layout.comp[v] = layout.count;
            layout.pos[v] = position++;
            EdgeId next = no_edge;
            auto candidates = g_->directed() ? g_->out_edges(v) : g_->incident(v);
            for (auto e : candidates)
                if (p_->side(e) == s && e != came) {
                    next = e;
                    break;
                }
            if (next == no_edge)
                throw std::logic_error("cycle layout on an invalid cover");
            layout.succ_edge[v] = next;
            came = next;
            v = g_->other_end(next, v);
        } while (v != start);
        ++layout.count;
    }
}

auto ExchangeState::count_side(Side s, const Layout & layout) -> int
{
    const auto m = touched_.size();
    // Packed (component, position, local index), 21 bits each.
    auto key = [](std::uint64_t comp, std::uint64_t pos, std::uint64_t i) { return comp << 42 | pos << 21 | i; };
    constexpr std::uint64_t low = (std::uint64_t{1} << 21) - 1;
    scratch_.clear();
    for (std::size_t i = 0; i < m; ++i) {
        auto v = touched_[i];
        scratch_.push_back(key(static_cast<std::uint64_t>(layout.comp[v]), static_cast<std::uint64_t>(layout.pos[v]), i));
    }
    std::sort(scratch_.begin(), scratch_.end());

    detail::DisjointSets sets(static_cast<int>(m));
    int touched_components = 0;
    for (std::size_t first = 0; first < m;) {
        auto last = first;
        while (last < m && scratch_[last] >> 42 == scratch_[first] >> 42)
            ++last;
        ++touched_components;
        // Between consecutive modified vertices the old cycle is an intact
        // path unless it is a single edge that has been moved away.
        for (auto i = first; i < last; ++i) {
            auto j = i + 1 < last ? i + 1 : first;
            auto a = static_cast<int>(scratch_[i] & low);
            auto b = static_cast<int>(scratch_[j] & low);
            if (! moved_[layout.succ_edge[touched_[a]]])
                sets.unite(a, b);
        }
        first = last;
    }
    for (const auto & mv : log_.moves())
        if (mv.from != s) {
            const auto & me = g_->edge(mv.edge);
            sets.unite(local_[me.u], local_[me.v]);
        }
    int roots = 0;
    for (std::size_t i = 0; i < m; ++i)
        if (sets.find(static_cast<int>(i)) == static_cast<int>(i))
            ++roots;
    return layout.count - touched_components + roots;
}

auto ExchangeState::evaluate() -> int
{
    ++counters.evaluations;
    touched_.clear();
    for (const auto & mv : log_.moves())
        for (auto v : {g_->edge(mv.edge).u, g_->edge(mv.edge).v})
            if (local_[v] < 0) {
                local_[v] = static_cast<int>(touched_.size());
                touched_.push_back(v);
            }
    int result = count_side(Side::Z, z_layout_) + count_side(Side::W, w_layout_);
    for (auto v : touched_)
        local_[v] = -1;
    return result;
}

void ExchangeState::commit(int expected_objective)
{
    for (const auto & mv : log_.moves())
        moved_[mv.edge] = 0;
    log_.clear();
    build_layout(Side::Z, z_layout_);
    build_layout(Side::W, w_layout_);
    base_objective_ = z_layout_.count + w_layout_.count;
    ++counters.improvements;
    if (base_objective_ != expected_objective)
        throw std::logic_error("incremental objective " + std::to_string(expected_objective)
                               + " disagrees with traversal " + std::to_string(base_objective_));
}

namespace {

    auto start_edges(const CoverPair & p, Rng & rng) -> std::vector<EdgeId>
    {
        std::vector<EdgeId> result;
        for (EdgeId e = 0; e < p.graph().edge_count(); ++e)
            if (p.side(e) == Side::Z && ! p.graph().is_fixed(e))
                result.push_back(e);
        std::shuffle(result.begin(), result.end(), rng);
        return result;
    }

    auto accept_if_better(ExchangeState & state, MoveLog * applied) -> bool
    {
        if (! state.valid())
            return false;
        auto value = state.evaluate();
        if (value >= state.base_objective())
            return false;
        if (applied)
            for (const auto & mv : state.log().moves())
                applied->record(mv.edge, mv.from);
        state.commit(value);
        return true;
    }

    // After the in-arc of the current head is replaced, the tail that now has
    // out-degree 2 gives up its other out-arc.
    auto run_chain(ExchangeState & state, EdgeId start, int cap) -> bool
    {
        const auto & g = state.graph();
        const auto & p = state.pair();
        state.flip(start);
        EdgeId removed = start;
        VertexId head = g.edge(start).v;
        for (int moves = 1;; moves += 2) {
            if (moves > cap) {
                ++state.counters.chain_cap_hits;
                return false;
            }
            auto ins = g.in_edges(head);
            EdgeId add = ins[0] == removed ? ins[1] : ins[0];
            if (p.side(add) != Side::W || ! state.movable(add))
                return false;
            state.flip(add);
            VertexId tail = g.edge(add).u;
            if (state.z_out_degree(tail) != 2)
                return true;
            auto outs = g.out_edges(tail);
            EdgeId drop = outs[0] == add ? outs[1] : outs[0];
            if (p.side(drop) != Side::Z || ! state.movable(drop))
                return false;
            state.flip(drop);
            removed = drop;
            head = g.edge(drop).v;
        }
    }

    class TreeSearch {
      public:
        TreeSearch(ExchangeState & state, int depth_limit, Rng & rng) :
            state_(state),
            depth_limit_(depth_limit),
            move_cap_(4 * static_cast<std::size_t>(depth_limit)),
            rng_(rng)
        {
            node_budget_ = 1;
            for (int i = 0; i < depth_limit && node_budget_ < (1LL << 40); ++i)
                node_budget_ *= 3;
        }

        auto from(EdgeId start) -> bool
        {
            nodes_ = 0;
            state_.flip(start);
            return descend(1);
        }

      private:
        auto descend(int depth) -> bool
        {
            ++nodes_;
            ++state_.counters.nodes;
            if (state_.valid()) {
                auto value = state_.evaluate();
                if (value < state_.base_objective()) {
                    found_value_ = value;
                    return true;
                }
                return false;
            }
            if (depth > depth_limit_ || nodes_ > node_budget_ || state_.mark() > move_cap_)
                return false;
            auto options = state_.repair_options(state_.pick_bad());
            std::shuffle(options.begin(), options.end(), rng_);
            for (const auto & option : options) {
                auto mark = state_.mark();
                state_.apply(option);
                if (descend(depth + 1))
                    return true;
                state_.undo_to(mark);
                if (nodes_ > node_budget_)
                    return false;
            }
            return false;
        }

      public:
        int found_value_ = 0;

      private:
        ExchangeState & state_;
        int depth_limit_;
        std::size_t move_cap_;
        long long node_budget_;
        long long nodes_ = 0;
        Rng & rng_;
    };

} // namespace

auto local_search_n1_directed(CoverPair & p, Rng & rng, MoveLog * applied) -> bool
{
    ExchangeState state(p);
    const auto & g = p.graph();
    std::vector<char> checked(static_cast<std::size_t>(g.edge_count()), 0);
    const int cap = 2 * g.vertex_count();
    for (auto e : start_edges(p, rng)) {
        if (checked[e])
            continue;
        ++state.counters.starts;
        auto mark = state.mark();
        if (run_chain(state, e, cap) && accept_if_better(state, applied))
            return true;
        for (auto i = mark; i < state.log().size(); ++i)
            checked[state.log().moves()[i].edge] = 1;
        state.undo_to(mark);
    }
    return false;
}

auto local_search_n1_undirected(CoverPair & p, int k_walks, Rng & rng, MoveLog * applied) -> bool
{
    if (k_walks <= 0)
        return false;
    ExchangeState state(p);
    const auto cap = 2 * static_cast<std::size_t>(p.graph().vertex_count());
    for (auto e : start_edges(p, rng)) {
        ++state.counters.starts;
        for (int walk = 0; walk < k_walks; ++walk) {
            auto mark = state.mark();
            state.flip(e);
            while (! state.valid() && state.mark() - mark <= cap) {
                auto options = state.repair_options(state.pick_bad());
                if (options.empty())
                    break;
                std::uniform_int_distribution<std::size_t> pick(0, options.size() - 1);
                state.apply(options[pick(rng)]);
            }
            if (accept_if_better(state, applied))
                return true;
            state.undo_to(mark);
        }
    }
    return false;
}

auto local_search_n1(CoverPair & p, int k_walks, Rng & rng, MoveLog * applied) -> bool
{
    return p.graph().directed() ? local_search_n1_directed(p, rng, applied)
                                : local_search_n1_undirected(p, k_walks, rng, applied);
}

auto local_search_n2(CoverPair & p, int depth_limit, Rng & rng, MoveLog * applied) -> bool
{
    if (depth_limit <= 0)
        return false;
    ExchangeState state(p);
    TreeSearch tree(state, depth_limit, rng);
    for (auto e : start_edges(p, rng)) {
        ++state.counters.starts;
        auto mark = state.mark();
        if (tree.from(e)) {
            if (applied)
                for (const auto & mv : state.log().moves())
                    applied->record(mv.edge, mv.from);
            state.commit(tree.found_value_);
            return true;
        }
        state.undo_to(mark);
    }
    return false;
}

} // namespace hamdec

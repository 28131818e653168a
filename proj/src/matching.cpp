#include "hamdec/matching.hpp"

#include "hamdec/error.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace hamdec {

MatchingGraph::MatchingGraph(int vertex_count) :
    adjacency_(static_cast<std::size_t>(vertex_count))
{
}

auto MatchingGraph::add_edge(int a, int b) -> int
{
    auto id = static_cast<int>(ends_.size());
    ends_.emplace_back(a, b);
    adjacency_[a].push_back({b, id});
    adjacency_[b].push_back({a, id});
    return id;
}

auto Matching::edges() const -> std::vector<int>
{
    std::vector<int> result;
    for (auto e : mate_edge)
        if (e >= 0)
            result.push_back(e);
    std::sort(result.begin(), result.end());
    result.erase(std::unique(result.begin(), result.end()), result.end());
    return result;
}

namespace {

    // Edmonds' blossom algorithm, BFS from one free root at a time. Per-root
    // state is reset only for the vertices the search touched, so a search
    // that stays local stays cheap.
    class BlossomMatcher {
      public:
        BlossomMatcher(const MatchingGraph & graph, const MatchingConstraints & constraints, Rng * rng) :
            n_(graph.vertex_count()),
            usable_(static_cast<std::size_t>(graph.edge_count()), 1),
            blocked_(static_cast<std::size_t>(n_), 0),
            match_(static_cast<std::size_t>(n_), -1),
            mate_edge_(static_cast<std::size_t>(n_), -1),
            parent_(static_cast<std::size_t>(n_), -1),
            base_(static_cast<std::size_t>(n_)),
            used_(static_cast<std::size_t>(n_), 0),
            in_blossom_(static_cast<std::size_t>(n_), 0),
            touched_flag_(static_cast<std::size_t>(n_), 0),
            lca_mark_(static_cast<std::size_t>(n_), 0),
            rng_(rng)
        {
            std::iota(base_.begin(), base_.end(), 0);
            for (auto e : constraints.excluded)
                usable_[e] = 0;
            for (auto e : constraints.forced) {
                auto [a, b] = graph.endpoints(e);
                if (blocked_[a] || blocked_[b] || ! usable_[e])
                    throw Error(ErrorCode::InfeasibleForced, "forced matching edges are not pairwise disjoint");
                blocked_[a] = blocked_[b] = 1;
                match_[a] = b;
                match_[b] = a;
                mate_edge_[a] = mate_edge_[b] = e;
            }

            offsets_.assign(static_cast<std::size_t>(n_) + 1, 0);
            for (int v = 0; v < n_; ++v)
                offsets_[v + 1] = offsets_[v] + static_cast<int>(graph.neighbours(v).size());
            arcs_.reserve(static_cast<std::size_t>(offsets_[n_]));
            for (int v = 0; v < n_; ++v) {
                auto nb = graph.neighbours(v);
                arcs_.insert(arcs_.end(), nb.begin(), nb.end());
                if (rng_)
                    std::shuffle(arcs_.end() - static_cast<std::ptrdiff_t>(nb.size()), arcs_.end(), *rng_);
            }
        }

        auto run() -> Matching
        {
            std::vector<int> order(static_cast<std::size_t>(n_));
            std::iota(order.begin(), order.end(), 0);
            if (rng_)
                std::shuffle(order.begin(), order.end(), *rng_);

            for (auto v : order) {
                if (blocked_[v] || match_[v] != -1)
                    continue;
                for (int i = offsets_[v]; i < offsets_[v + 1]; ++i) {
                    const auto & a = arcs_[i];
                    if (usable_[a.edge] && ! blocked_[a.to] && match_[a.to] == -1 && a.to != v) {
                        match_[v] = a.to;
                        match_[a.to] = v;
                        break;
                    }
                }
            }

            for (auto root : order) {
                if (blocked_[root] || match_[root] != -1)
                    continue;
                auto end = find_path(root);
                while (end != -1) {
                    auto pv = parent_[end];
                    auto ppv = match_[pv];
                    match_[end] = pv;
                    match_[pv] = end;
                    end = ppv;
                }
            }

            Matching result;
            result.mate_edge = std::move(mate_edge_);
            for (int v = 0; v < n_; ++v) {
                auto u = match_[v];
                if (u < 0)
                    continue;
                if (v < u)
                    ++result.size;
                if (result.mate_edge[v] >= 0)
                    continue;
                for (int i = offsets_[v]; i < offsets_[v + 1]; ++i)
                    if (arcs_[i].to == u && usable_[arcs_[i].edge]) {
                        result.mate_edge[v] = arcs_[i].edge;
                        break;
                    }
            }
            // Both ends of a parallel pair must name the same edge.
            for (int v = 0; v < n_; ++v)
                if (match_[v] > v)
                    result.mate_edge[match_[v]] = result.mate_edge[v];
            return result;
        }

      private:
        void touch(int v)
        {
            if (! touched_flag_[v]) {
                touched_flag_[v] = 1;
                touched_.push_back(v);
            }
        }

        auto lca(int a, int b) -> int
        {
            ++stamp_;
            for (;;) {
                a = base_[a];
                lca_mark_[a] = stamp_;
                if (match_[a] == -1)
                    break;
                a = parent_[match_[a]];
            }
            for (;;) {
                b = base_[b];
                if (lca_mark_[b] == stamp_)
                    return b;
                b = parent_[match_[b]];
            }
        }

        void mark_path(int v, int b, int child)
        {
            while (base_[v] != b) {
                for (auto x : {base_[v], base_[match_[v]]})
                    if (! in_blossom_[x]) {
                        in_blossom_[x] = 1;
                        blossom_list_.push_back(x);
                    }
                parent_[v] = child;
                touch(v);
                child = match_[v];
                v = parent_[match_[v]];
            }
        }

        auto find_path(int root) -> int
        {
            for (auto v : touched_) {
                used_[v] = 0;
                parent_[v] = -1;
                base_[v] = v;
                touched_flag_[v] = 0;
            }
            touched_.clear();
            queue_.clear();

            used_[root] = 1;
            touch(root);
            queue_.push_back(root);
            for (std::size_t head = 0; head < queue_.size(); ++head) {
                int v = queue_[head];
                for (int i = offsets_[v]; i < offsets_[v + 1]; ++i) {
                    const auto & a = arcs_[i];
                    int to = a.to;
                    if (! usable_[a.edge] || blocked_[to] || to == v)
                        continue;
                    if (base_[v] == base_[to] || match_[v] == to)
                        continue;
                    if (to == root || (match_[to] != -1 && parent_[match_[to]] != -1)) {
                        int current_base = lca(v, to);
                        blossom_list_.clear();
                        mark_path(v, current_base, to);
                        mark_path(to, current_base, v);
                        auto snapshot = touched_.size();
                        for (std::size_t k = 0; k < snapshot; ++k) {
                            int u = touched_[k];
                            if (in_blossom_[base_[u]]) {
                                base_[u] = current_base;
                                if (! used_[u]) {
                                    used_[u] = 1;
                                    queue_.push_back(u);
                                }
                            }
                        }
                        for (auto x : blossom_list_)
                            in_blossom_[x] = 0;
                    }
                    else if (parent_[to] == -1) {
                        parent_[to] = v;
                        touch(to);
                        if (match_[to] == -1)
                            return to;
                        int next = match_[to];
                        used_[next] = 1;
                        touch(next);
                        queue_.push_back(next);
                    }
                }
            }
            return -1;
        }

        int n_;
        std::vector<int> offsets_;
        std::vector<Arc> arcs_;
        std::vector<char> usable_;
        std::vector<char> blocked_;
        std::vector<int> match_;
        std::vector<int> mate_edge_;
        std::vector<int> parent_;
        std::vector<int> base_;
        std::vector<char> used_;
        std::vector<char> in_blossom_;
        std::vector<char> touched_flag_;
        std::vector<unsigned> lca_mark_;
        unsigned stamp_ = 0;
        std::vector<int> touched_;
        std::vector<int> queue_;
        std::vector<int> blossom_list_;
        Rng * rng_;
    };

    class HopcroftKarp {
      public:
        HopcroftKarp(const BipartiteSplit & split, const MatchingConstraints & constraints, Rng * rng) :
            split_(split),
            n_(split.side_size),
            usable_(split.edges.size(), 1),
            blocked_left_(static_cast<std::size_t>(n_), 0),
            blocked_right_(static_cast<std::size_t>(n_), 0),
            match_left_(static_cast<std::size_t>(n_), -1),
            match_right_(static_cast<std::size_t>(n_), -1),
            dist_(static_cast<std::size_t>(n_), 0),
            adjacency_(split.left_edges),
            rng_(rng)
        {
            for (auto e : constraints.excluded)
                usable_[e] = 0;
            for (auto e : constraints.forced) {
                auto [l, r] = split.edges[e];
                if (blocked_left_[l] || blocked_right_[r] || ! usable_[e])
                    throw Error(ErrorCode::InfeasibleForced, "forced arcs share a tail or a head");
                blocked_left_[l] = blocked_right_[r] = 1;
                match_left_[l] = match_right_[r] = e;
            }
            if (rng_)
                for (auto & list : adjacency_)
                    std::shuffle(list.begin(), list.end(), *rng_);
        }

        auto run() -> Matching
        {
            std::vector<int> order(static_cast<std::size_t>(n_));
            std::iota(order.begin(), order.end(), 0);
            if (rng_)
                std::shuffle(order.begin(), order.end(), *rng_);
            for (auto u : order) {
                if (match_left_[u] != -1)
                    continue;
                for (auto e : adjacency_[u]) {
                    auto r = split_.edges[e].second;
                    if (usable_[e] && ! blocked_right_[r] && match_right_[r] == -1) {
                        match_left_[u] = match_right_[r] = e;
                        break;
                    }
                }
            }
            while (bfs())
                for (auto u : order)
                    if (match_left_[u] == -1 && ! blocked_left_[u])
                        dfs(u);

            Matching result;
            result.mate_edge.assign(2 * static_cast<std::size_t>(n_), -1);
            for (int u = 0; u < n_; ++u) {
                result.mate_edge[u] = match_left_[u];
                result.mate_edge[n_ + u] = match_right_[u];
                if (match_left_[u] != -1)
                    ++result.size;
            }
            return result;
        }

      private:
        static constexpr int infinity = 1 << 30;

        auto bfs() -> bool
        {
            std::vector<int> queue;
            for (int u = 0; u < n_; ++u) {
                if (match_left_[u] == -1 && ! blocked_left_[u]) {
                    dist_[u] = 0;
                    queue.push_back(u);
                }
                else
                    dist_[u] = infinity;
            }
            bool found = false;
            for (std::size_t head = 0; head < queue.size(); ++head) {
                int u = queue[head];
                for (auto e : adjacency_[u]) {
                    auto r = split_.edges[e].second;
                    if (! usable_[e] || blocked_right_[r])
                        continue;
                    auto m = match_right_[r];
                    if (m == -1)
                        found = true;
                    else {
                        auto next = split_.edges[m].first;
                        if (dist_[next] == infinity) {
                            dist_[next] = dist_[u] + 1;
                            queue.push_back(next);
                        }
                    }
                }
            }
            return found;
        }

        auto dfs(int u) -> bool
        {
            for (auto e : adjacency_[u]) {
                auto r = split_.edges[e].second;
                if (! usable_[e] || blocked_right_[r])
                    continue;
                auto m = match_right_[r];
                if (m == -1 || (dist_[split_.edges[m].first] == dist_[u] + 1 && dfs(split_.edges[m].first))) {
                    match_left_[u] = match_right_[r] = e;
                    return true;
                }
            }
            dist_[u] = infinity;
            return false;
        }

        const BipartiteSplit & split_;
        int n_;
        std::vector<char> usable_;
        std::vector<char> blocked_left_;
        std::vector<char> blocked_right_;
        std::vector<int> match_left_;
        std::vector<int> match_right_;
        std::vector<int> dist_;
        std::vector<std::vector<int>> adjacency_;
        Rng * rng_;
    };

} // namespace

auto build_gadget_graph(const UnionMultigraph & g) -> GadgetGraph
{
    if (g.directed())
        throw Error(ErrorCode::DirectedInput, "gadget reduction is for undirected multigraphs");
    const int n = g.vertex_count();
    GadgetGraph gadget;
    gadget.graph = MatchingGraph(6 * n);
    for (VertexId v = 0; v < n; ++v)
        for (int slot = 0; slot < 4; ++slot)
            for (int k = 0; k < 2; ++k) {
                gadget.graph.add_edge(GadgetGraph::outer(v, slot), GadgetGraph::inner(v, k));
                gadget.copy_of_edge.push_back(no_edge);
                ++gadget.intra_edge_count;
            }

    gadget.inter_edge_of_copy.assign(static_cast<std::size_t>(g.edge_count()), -1);
    auto slot_of = [&](VertexId v, EdgeId e) {
        auto inc = g.incident(v);
        return static_cast<int>(std::find(inc.begin(), inc.end(), e) - inc.begin());
    };
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        const auto & me = g.edge(e);
        auto id = gadget.graph.add_edge(GadgetGraph::outer(me.u, slot_of(me.u, e)),
                                        GadgetGraph::outer(me.v, slot_of(me.v, e)));
        gadget.inter_edge_of_copy[e] = id;
        gadget.copy_of_edge.push_back(e);
        ++gadget.inter_edge_count;
    }
    return gadget;
}

auto build_bipartite_split(const UnionMultigraph & g) -> BipartiteSplit
{
    if (! g.directed())
        throw Error(ErrorCode::UndirectedInput, "bipartite split is for directed multigraphs");
    BipartiteSplit split;
    split.side_size = g.vertex_count();
    split.left_edges.resize(static_cast<std::size_t>(split.side_size));
    split.right_edges.resize(static_cast<std::size_t>(split.side_size));
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        const auto & me = g.edge(e);
        split.edges.emplace_back(me.u, me.v);
        split.left_edges[me.u].push_back(e);
        split.right_edges[me.v].push_back(e);
    }
    return split;
}

auto max_matching_general(const MatchingGraph & graph, const MatchingConstraints & constraints, Rng * rng)
    -> Matching
{
    return BlossomMatcher(graph, constraints, rng).run();
}

auto max_matching_bipartite(const BipartiteSplit & split, const MatchingConstraints & constraints, Rng * rng)
    -> Matching
{
    return HopcroftKarp(split, constraints, rng).run();
}

auto cover_from_matching(const UnionMultigraph & g, const GadgetGraph & gadget, const Matching & m) -> CycleCover
{
    if (! m.perfect() || static_cast<int>(m.mate_edge.size()) != gadget.graph.vertex_count())
        throw Error(ErrorCode::NotPerfect, "gadget matching is not perfect");
    std::vector<EdgeId> z;
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        auto ge = gadget.inter_edge_of_copy[e];
        auto [a, b] = gadget.graph.endpoints(ge);
        if (m.mate_edge[a] == ge && m.mate_edge[b] == ge)
            z.push_back(e);
    }
    return CycleCover::from_edges(g, std::move(z));
}

auto cover_from_matching(const UnionMultigraph & g, const BipartiteSplit & split, const Matching & m) -> CycleCover
{
    if (! m.perfect() || static_cast<int>(m.mate_edge.size()) != 2 * split.side_size)
        throw Error(ErrorCode::NotPerfect, "bipartite matching is not perfect");
    std::vector<EdgeId> z;
    for (int u = 0; u < split.side_size; ++u)
        z.push_back(m.mate_edge[u]);
    return CycleCover::from_edges(g, std::move(z));
}

CoverBuilder::CoverBuilder(const UnionMultigraph & g) :
    g_(&g)
{
    if (g.directed())
        split_ = build_bipartite_split(g);
    else
        gadget_ = build_gadget_graph(g);
}

auto CoverBuilder::build(std::span<const ForcedEdge> forced, Rng & rng) const -> CoverPair
{
    const auto & g = *g_;
    std::vector<int> pin_z, pin_w;
    for (auto e : g.fixed_edges())
        (g.edge(e).copy == 0 ? pin_z : pin_w).push_back(e);
    for (const auto & f : forced) {
        if (f.edge < 0 || f.edge >= g.edge_count())
            throw Error(ErrorCode::InfeasibleForced, "forced edge " + std::to_string(f.edge) + " not in multigraph");
        if (g.is_fixed(f.edge))
            continue;
        (f.side == Side::Z ? pin_z : pin_w).push_back(f.edge);
    }
    std::sort(pin_z.begin(), pin_z.end());
    pin_z.erase(std::unique(pin_z.begin(), pin_z.end()), pin_z.end());
    std::sort(pin_w.begin(), pin_w.end());
    pin_w.erase(std::unique(pin_w.begin(), pin_w.end()), pin_w.end());
    for (auto e : pin_z)
        if (std::binary_search(pin_w.begin(), pin_w.end(), e))
            throw Error(ErrorCode::InfeasibleForced, "edge forced onto both sides");

    if (split_) {
        auto m = max_matching_bipartite(*split_, {pin_z, pin_w}, &rng);
        if (! m.perfect())
            throw Error(ErrorCode::InfeasibleForced, "forced arcs admit no cycle cover");
        return CoverPair::from_cover(g, cover_from_matching(g, *split_, m));
    }

    std::vector<int> forced_ids, excluded_ids;
    for (auto e : pin_z)
        forced_ids.push_back(gadget_->inter_edge_of_copy[e]);
    for (auto e : pin_w)
        excluded_ids.push_back(gadget_->inter_edge_of_copy[e]);
    auto m = max_matching_general(gadget_->graph, {forced_ids, excluded_ids}, &rng);
    if (! m.perfect())
        throw Error(ErrorCode::InfeasibleForced, "forced edges admit no cycle cover");
    return CoverPair::from_cover(g, cover_from_matching(g, *gadget_, m));
}

auto initial_cycle_covers(const UnionMultigraph & g, std::span<const ForcedEdge> queue, Rng & rng) -> CoverPair
{
    return CoverBuilder(g).build(queue, rng);
}

} // namespace hamdec

#include "hamdec/oracle.hpp"

#include "hamdec/error.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <string>

namespace hamdec {

namespace {

    // Union by size without path compression, so unions can be undone.
    class RollbackSets {
      public:
        explicit RollbackSets(int n) :
            parent_(static_cast<std::size_t>(n)),
            size_(static_cast<std::size_t>(n), 1)
        {
            std::iota(parent_.begin(), parent_.end(), 0);
        }

        auto find(int a) const -> int
        {
            while (parent_[a] != a)
                a = parent_[a];
            return a;
        }

        void unite(int a, int b)
        {
            a = find(a);
            b = find(b);
            if (size_[a] < size_[b])
                std::swap(a, b);
            parent_[b] = a;
            size_[a] += size_[b];
            history_.push_back(b);
        }

        void undo()
        {
            int b = history_.back();
            history_.pop_back();
            int a = parent_[b];
            size_[a] -= size_[b];
            parent_[b] = b;
        }

      private:
        std::vector<int> parent_;
        std::vector<int> size_;
        std::vector<int> history_;
    };

    class Enumerator {
      public:
        using Visitor = std::function<bool(const std::vector<Side> &)>;

        Enumerator(const UnionMultigraph & g, Visitor visit) :
            g_(g),
            n_(g.vertex_count()),
            visit_(std::move(visit)),
            sides_(static_cast<std::size_t>(g.edge_count()), Side::Z),
            sets_{RollbackSets(n_), RollbackSets(n_)}
        {
            for (auto & d : degree_)
                d.assign(static_cast<std::size_t>(n_), 0);
            for (EdgeId e = 0; e < g.edge_count(); ++e)
                if (! g.is_fixed(e))
                    order_.push_back(e);
            std::sort(order_.begin(), order_.end(), [&](EdgeId a, EdgeId b) {
                auto ka = std::minmax(g.edge(a).u, g.edge(a).v);
                auto kb = std::minmax(g.edge(b).u, g.edge(b).v);
                return std::tie(ka.first, ka.second, a) < std::tie(kb.first, kb.second, b);
            });
        }

        auto run() -> bool
        {
            for (EdgeId e = 0; e < g_.edge_count(); ++e)
                if (g_.is_fixed(e) && ! place(e, g_.edge(e).copy == 0 ? Side::Z : Side::W))
                    return true;
            return descend(0);
        }

      private:
        // Degree slots: undirected uses [0] for both ends, directed uses
        // [0] for tails and [1] for heads. Each side keeps its own counters.
        auto slot(Side s, int end) -> std::vector<int> & { return degree_[2 * static_cast<int>(s) + end]; }

        auto place(EdgeId e, Side s) -> bool
        {
            const auto & me = g_.edge(e);
            const int cap = g_.directed() ? 1 : 2;
            auto & du = slot(s, 0);
            auto & dv = slot(s, g_.directed() ? 1 : 0);
            if (du[me.u] >= cap || dv[me.v] >= cap)
                return false;
            auto & sets = sets_[static_cast<int>(s)];
            auto & used = count_[static_cast<int>(s)];
            bool closes = sets.find(me.u) == sets.find(me.v);
            if (closes && used + 1 != n_)
                return false;
            ++du[me.u];
            ++dv[me.v];
            ++used;
            closed_.push_back(closes);
            if (! closes)
                sets.unite(me.u, me.v);
            sides_[e] = s;
            return true;
        }

        void unplace(EdgeId e, Side s)
        {
            const auto & me = g_.edge(e);
            --slot(s, 0)[me.u];
            --slot(s, g_.directed() ? 1 : 0)[me.v];
            --count_[static_cast<int>(s)];
            if (! closed_.back())
                sets_[static_cast<int>(s)].undo();
            closed_.pop_back();
        }

        auto descend(std::size_t i) -> bool
        {
            if (i == order_.size())
                return visit_(sides_);
            EdgeId e = order_[i];
            for (Side s : {Side::Z, Side::W}) {
                if (i == 0 && s == Side::W)
                    break;
                if (! place(e, s))
                    continue;
                bool keep_going = descend(i + 1);
                unplace(e, s);
                if (! keep_going)
                    return false;
            }
            return true;
        }

        const UnionMultigraph & g_;
        int n_;
        Visitor visit_;
        std::vector<Side> sides_;
        std::vector<EdgeId> order_;
        std::vector<int> degree_[4];
        RollbackSets sets_[2];
        int count_[2] = {0, 0};
        std::vector<char> closed_;
    };

    void check_size(const UnionMultigraph & g)
    {
        if (g.vertex_count() > oracle_max_vertices)
            throw Error(ErrorCode::TooLarge, "oracle supports at most " + std::to_string(oracle_max_vertices)
                                                 + " vertices, got " + std::to_string(g.vertex_count()));
    }

    auto side_ends(const UnionMultigraph & g, const std::vector<Side> & sides, Side s) -> std::vector<EdgeEnds>
    {
        std::vector<EdgeEnds> result;
        for (EdgeId e = 0; e < g.edge_count(); ++e)
            if (sides[e] == s)
                result.push_back(g.ends(e));
        std::sort(result.begin(), result.end());
        return result;
    }

} // namespace

auto enumerate_decompositions(const UnionMultigraph & g, long long limit) -> DecompositionSet
{
    check_size(g);
    DecompositionSet result;
    result.fixed_edges = static_cast<int>(g.fixed_edges().size()) / 2;
    result.has_free_edges = 2 * result.fixed_edges < g.edge_count();
    Enumerator walker(g, [&](const std::vector<Side> & sides) {
        result.pairs.push_back(sides);
        if (side_ends(g, sides, Side::Z) == side_ends(g, sides, Side::W))
            ++result.symmetric;
        if (limit > 0 && result.count() >= limit) {
            result.limit_hit = true;
            return false;
        }
        return true;
    });
    walker.run();
    return result;
}

auto has_distinct_decomposition(const UnionMultigraph & g, const HamiltonianCycle & x, const HamiltonianCycle & y)
    -> bool
{
    check_size(g);
    auto xs = x.sorted_edges();
    auto ys = y.sorted_edges();
    bool found = false;
    Enumerator walker(g, [&](const std::vector<Side> & sides) {
        auto z = side_ends(g, sides, Side::Z);
        found = z != xs && z != ys;
        return ! found;
    });
    walker.run();
    return found;
}

} // namespace hamdec

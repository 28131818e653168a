#include "hamdec/instance.hpp"
#include "hamdec/local_search.hpp"
#include "hamdec/matching.hpp"
#include "support/brute_force.hpp"
#include "support/fixtures.hpp"

#include <doctest.h>

#include <algorithm>

using namespace hamdec;
using namespace hamdec::testing;

namespace {

// The n = 4 digraph: two 2-cycles on each side, union of x = (1,4,3,2) and
// y = (1,2,3,4).
auto four_cycle_graph() -> UnionMultigraph
{
    auto [x, y] = tours({1, 4, 3, 2}, {1, 2, 3, 4}, true);
    return build_union(x, y);
}

auto four_cycle_pair(const UnionMultigraph & g) -> CoverPair
{
    return pair_from_z(g, one_based_edges({{1, 2}, {2, 1}, {3, 4}, {4, 3}}));
}

auto no_fixed_moved(const UnionMultigraph & g, const MoveLog & log) -> bool
{
    return std::none_of(log.moves().begin(), log.moves().end(), [&](const Move & m) { return g.is_fixed(m.edge); });
}

} // namespace

TEST_SUITE("local_search")
{
    TEST_CASE("move log rollback restores the pair")
    {
        auto g = build_union(twin_x(), twin_y());
        auto p = pair_from_z(g, twin_z_edges());
        auto before = p;
        MoveLog log;
        for (EdgeId e : {2, 3, 7, 9}) {
            log.record(e, p.side(e));
            p.flip(e);
        }
        CHECK_FALSE(p == before);
        log.rollback(p, 0);
        CHECK(p == before);
    }

    TEST_CASE("exchange state tracks degrees and objective")
    {
        auto g = build_union(twin_x(), twin_y());
        auto p = pair_from_z(g, twin_z_edges());
        ExchangeState state(p);
        CHECK(state.base_objective() == 4);
        CHECK(state.valid());
        auto zs = p.edges_on(Side::Z);
        EdgeId e = no_edge;
        for (auto id : zs)
            if (! g.is_fixed(id))
                e = id;
        REQUIRE(e != no_edge);
        auto mark = state.mark();
        state.flip(e);
        CHECK_FALSE(state.valid());
        CHECK(state.bad_vertices().size() == 2);
        CHECK_FALSE(state.movable(e));
        state.undo_to(mark);
        CHECK(state.valid());
        CHECK(state.evaluate() == 4);
    }

    TEST_CASE("a vertex short of one edge has three repairs")
    {
        auto g = build_union(hex_x(), hex_y());
        auto p = CoverPair::from_cover(g, CycleCover::from_edges(g, {0, 1, 2, 3, 4, 5}));
        ExchangeState state(p);
        // Edge 0 is 1-2 of x, vertex 1 has no fixed edge.
        REQUIRE_FALSE(g.is_fixed(0));
        state.flip(0);
        auto options = state.repair_options(0);
        REQUIRE(options.size() == 3);
        int singles = 0, triples = 0;
        for (const auto & o : options) {
            singles += o.count == 1;
            triples += o.count == 3;
            for (auto f : o.edges())
                CHECK(state.movable(f));
        }
        CHECK(singles == 2);
        CHECK(triples == 1);
        // Every option restores the degree at the vertex.
        for (const auto & o : options) {
            auto mark = state.mark();
            state.apply(o);
            CHECK(state.z_degree(0) == 2);
            state.undo_to(mark);
        }
    }

    TEST_CASE("directed chain on the four-vertex example")
    {
        auto g = four_cycle_graph();
        CHECK(g.fixed_edges().empty());
        for (std::uint64_t seed = 0; seed < 8; ++seed) {
            auto p = four_cycle_pair(g);
            REQUIRE(objective(p) == 4);
            Rng rng(seed);
            MoveLog log;
            CHECK(local_search_n1_directed(p, rng, &log));
            CHECK(p.is_valid());
            CHECK(objective(p) == 2);
            // One chain: two arcs out of z and two in.
            CHECK(log.size() == 4);
            int out = 0;
            for (auto m : log.moves())
                out += m.from == Side::Z;
            CHECK(out == 2);
        }
    }

    TEST_CASE("chains alternate around a vertex")
    {
        // Removing (a1, a2) adds the other in-arc (b1, a2), removes the other
        // out-arc (b1, b2) and so on: moves alternate direction and each
        // consecutive pair shares a head or a tail.
        auto g = four_cycle_graph();
        auto p = four_cycle_pair(g);
        Rng rng(3);
        MoveLog log;
        REQUIRE(local_search_n1_directed(p, rng, &log));
        auto moves = log.moves();
        for (std::size_t i = 0; i + 1 < moves.size(); ++i) {
            CHECK(moves[i].from != moves[i + 1].from);
            auto a = g.ends(moves[i].edge), b = g.ends(moves[i + 1].edge);
            if (moves[i].from == Side::Z)
                CHECK(a.v == b.v);
            else
                CHECK(a.u == b.u);
        }
    }

    TEST_CASE("a decomposition cannot be improved")
    {
        auto g = build_union(hex_x(), hex_y());
        auto p = CoverPair::from_cover(g, CycleCover::from_edges(g, {0, 1, 2, 3, 4, 5}));
        REQUIRE(objective(p) == 2);
        auto before = p;
        Rng rng(1);
        CHECK_FALSE(local_search_n1(p, 10, rng));
        CHECK_FALSE(local_search_n2(p, 6, rng));
        CHECK(p == before);

        auto dg = four_cycle_graph();
        auto dp = CoverPair::from_cover(dg, CycleCover::from_edges(dg, {0, 1, 2, 3}));
        CHECK(objective(dp) == 2);
        CHECK_FALSE(local_search_n1_directed(dp, rng));
    }

    TEST_CASE("zero budgets never improve")
    {
        auto g = build_union(twin_x(), twin_y());
        auto p = pair_from_z(g, twin_z_edges());
        auto before = p;
        Rng rng(5);
        CHECK_FALSE(local_search_n1_undirected(p, 0, rng));
        CHECK(p == before);
        CHECK_FALSE(local_search_n2(p, 0, rng));
        CHECK(p == before);
    }

    TEST_CASE("two disjoint K5 stay at their local minimum")
    {
        auto g = two_k5();
        Rng rng(2);
        auto p = initial_cycle_covers(g, {}, rng);
        CHECK(objective(p) == 4);
        auto before = p;
        CHECK_FALSE(local_search_n1(p, 10, rng));
        CHECK(p == before);
        CHECK_FALSE(local_search_n2(p, 5, rng));
        CHECK(p == before);
    }

    TEST_CASE("random walks decompose the triangle pair")
    {
        // The multigraph has a decomposition (brute force), so some walk
        // reaches it from the triangle covers.
        auto g = build_union(twin_x(), twin_y());
        REQUIRE_FALSE(all_labeled_decompositions(g).empty());
        int reached = 0;
        for (std::uint64_t seed = 0; seed < 50; ++seed) {
            auto p = pair_from_z(g, twin_z_edges());
            Rng rng(seed);
            MoveLog log;
            while (local_search_n1_undirected(p, 10, rng, &log))
                CHECK(p.is_valid());
            CHECK(no_fixed_moved(g, log));
            reached += objective(p) == 2;
        }
        CHECK(reached >= 25);
    }

    TEST_CASE("the search tree decomposes the triangle pair")
    {
        auto g = build_union(twin_x(), twin_y());
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            auto p = pair_from_z(g, twin_z_edges());
            Rng rng(seed);
            MoveLog log;
            while (local_search_n2(p, 6, rng, &log))
                CHECK(p.is_valid());
            CHECK(objective(p) == 2);
            CHECK(no_fixed_moved(g, log));
        }
    }

    TEST_CASE("the directed triangle example has no decomposition")
    {
        // Its split graph has two perfect matchings, both of objective 3.
        auto g = tri_digraph();
        CHECK(all_labeled_decompositions(g).empty());
        std::vector<EdgeId> tri;
        for (auto [u, v] : std::vector<std::pair<int, int>>{{1, 5}, {5, 4}, {4, 1}, {2, 6}, {6, 3}, {3, 2}})
            tri.push_back(g.find(u - 1, v - 1).at(0));
        std::sort(tri.begin(), tri.end());
        auto p = CoverPair::from_cover(g, CycleCover::from_edges(g, tri));
        CHECK(objective(p) == 3);
        CHECK(p.w().is_hamiltonian());
        Rng rng(1);
        CHECK_FALSE(local_search_n2(p, 10, rng));
        CHECK_FALSE(local_search_n1_directed(p, rng));
        CHECK(objective(p) == 3);
    }

    TEST_CASE("improvements are strict and keep the invariants")
    {
        for (int i = 0; i < 40; ++i) {
            bool directed = i % 2;
            auto [x, y] = gen_random_pair(8 + i % 5, directed, static_cast<std::uint64_t>(i));
            auto g = build_union(x, y);
            Rng rng(static_cast<std::uint64_t>(i));
            auto p = initial_cycle_covers(g, {}, rng);
            for (int round = 0; round < 20; ++round) {
                int before = objective(p);
                MoveLog log;
                bool improved = round % 2 ? local_search_n2(p, 6, rng, &log) : local_search_n1(p, 5, rng, &log);
                REQUIRE(p.is_valid());
                CHECK(no_fixed_moved(g, log));
                if (improved)
                    CHECK(objective(p) < before);
                else
                    CHECK(objective(p) == before);
            }
        }
    }
}

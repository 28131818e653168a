#include "hamdec/error.hpp"
#include "hamdec/instance.hpp"
#include "hamdec/oracle.hpp"
#include "support/brute_force.hpp"
#include "support/fixtures.hpp"

#include <doctest.h>

#include <algorithm>

using namespace hamdec;
using namespace hamdec::testing;

namespace {

auto z_ends(const UnionMultigraph & g, const std::vector<Side> & sides) -> std::vector<EdgeEnds>
{
    std::vector<EdgeEnds> ends;
    for (EdgeId e = 0; e < g.edge_count(); ++e)
        if (sides[static_cast<std::size_t>(e)] == Side::Z)
            ends.push_back(g.ends(e));
    std::sort(ends.begin(), ends.end());
    return ends;
}

} // namespace

TEST_SUITE("oracle")
{
    TEST_CASE("first example has both decompositions")
    {
        auto g = build_union(hex_x(), hex_y());
        auto set = enumerate_decompositions(g);
        auto has = [&](const HamiltonianCycle & a) {
            auto target = a.sorted_edges();
            return std::any_of(set.pairs.begin(), set.pairs.end(), [&](const std::vector<Side> & s) {
                auto z = z_ends(g, s);
                auto w_sides = s;
                for (auto & side : w_sides)
                    side = other(side);
                return z == target || z_ends(g, w_sides) == target;
            });
        };
        CHECK(has(hex_x()));
        CHECK(has(hex_y()));
        CHECK(has(hex_z()));
        CHECK(has(hex_w()));
        CHECK(set.count() >= 2);
        CHECK(set.ordered_count() % 2 == 0);
        CHECK(set.fixed_edges == 1);
        CHECK(has_distinct_decomposition(g, hex_x(), hex_y()));
    }

    TEST_CASE("directed K3")
    {
        auto [x, y] = tours({1, 2, 3}, {1, 3, 2}, true);
        auto g = build_union(x, y);
        auto set = enumerate_decompositions(g);
        CHECK(set.count() == 1);
        CHECK(set.ordered_count() == 2);
        CHECK_FALSE(has_distinct_decomposition(g, x, y));
    }

    TEST_CASE("doubled cycle")
    {
        auto x = HamiltonianCycle::from_one_based(std::vector{1, 2, 3, 4, 5}, false);
        auto g = doubled(x);
        auto set = enumerate_decompositions(g);
        CHECK(set.count() == 1);
        CHECK(set.symmetric == 1);
        CHECK(set.ordered_count() == 1);
        CHECK_FALSE(set.has_free_edges);
        CHECK(set.labeled_count() == 32);
    }

    TEST_CASE("counts agree with the brute-force enumeration")
    {
        for (int i = 0; i < 60; ++i) {
            bool directed = i % 2;
            int n = 4 + i % 4;
            auto [x, y] = gen_random_pair(n, directed, static_cast<std::uint64_t>(i) + 7);
            auto g = build_union(x, y);
            auto set = enumerate_decompositions(g);
            CHECK(set.labeled_count() == static_cast<long long>(all_labeled_decompositions(g).size()));
            CHECK(set.ordered_count() % 2 == 0);
            for (auto & sides : set.pairs)
                CHECK(objective(CoverPair(g, sides)) == 2);
        }
    }

    TEST_CASE("limits")
    {
        auto [x, y] = gen_random_pair(17, false, 1);
        auto g = build_union(x, y);
        try {
            enumerate_decompositions(g);
            FAIL("expected TooLarge");
        }
        catch (const Error & e) {
            CHECK(e.code() == ErrorCode::TooLarge);
        }
        CHECK_THROWS_AS(has_distinct_decomposition(g, x, y), Error);

        auto small = build_union(hex_x(), hex_y());
        auto set = enumerate_decompositions(small, 1);
        CHECK(set.count() == 1);
        CHECK(set.limit_hit);
        CHECK_FALSE(enumerate_decompositions(small).limit_hit);
    }

    TEST_CASE("two K5 have no decomposition")
    {
        CHECK(enumerate_decompositions(two_k5()).count() == 0);
    }
}

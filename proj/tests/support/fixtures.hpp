#pragma once

// Small instances shared by the test suites.

#include "hamdec/graph.hpp"

#include <vector>

namespace hamdec::testing {

inline auto one_based_edges(std::initializer_list<std::pair<int, int>> list) -> std::vector<EdgeEnds>
{
    std::vector<EdgeEnds> edges;
    for (auto [u, v] : list)
        edges.push_back({u - 1, v - 1});
    return edges;
}

/// Undirected, two tours with non-adjacent vertices on the polytope.
inline auto hex_x() { return HamiltonianCycle::from_one_based(std::vector{1, 2, 3, 4, 5, 6}, false); }
inline auto hex_y() { return HamiltonianCycle::from_one_based(std::vector{1, 4, 6, 2, 3, 5}, false); }
inline auto hex_z() { return HamiltonianCycle::from_one_based(std::vector{1, 4, 5, 3, 2, 6}, false); }
inline auto hex_w() { return HamiltonianCycle::from_one_based(std::vector{1, 2, 3, 4, 6, 5}, false); }

/// Undirected pair with shared edges 1-2 and 4-5; its union has the
/// triangle covers {1,2,6},{3,4,5} and {1,2,3},{4,5,6}.
inline auto twin_x() { return HamiltonianCycle::from_one_based(std::vector{1, 2, 3, 4, 5, 6}, false); }
inline auto twin_y() { return HamiltonianCycle::from_one_based(std::vector{1, 2, 6, 4, 5, 3}, false); }
inline auto twin_z_edges()
{
    return one_based_edges({{1, 2}, {2, 6}, {6, 1}, {3, 4}, {4, 5}, {5, 3}});
}

/// Directed six-vertex graph of two 3-cycles plus one Hamiltonian cycle.
inline auto tri_digraph_arcs()
{
    return one_based_edges({{1, 5}, {5, 4}, {4, 1}, {2, 6}, {6, 3}, {3, 2},
                            {1, 2}, {2, 5}, {5, 6}, {6, 4}, {4, 3}, {3, 1}});
}
inline auto tri_digraph() { return UnionMultigraph::from_edges(6, true, tri_digraph_arcs()); }

/// The same tour with every edge doubled.
inline auto doubled(const HamiltonianCycle & x) -> UnionMultigraph
{
    auto edges = x.edges();
    auto twice = edges;
    twice.insert(twice.end(), edges.begin(), edges.end());
    return UnionMultigraph::from_edges(x.size(), x.directed(), twice);
}

/// Two disjoint copies of K5: 4-regular, 20 edges, never Hamiltonian.
inline auto two_k5() -> UnionMultigraph
{
    std::vector<EdgeEnds> edges;
    for (int base : {0, 5})
        for (int a = 0; a < 5; ++a)
            for (int b = a + 1; b < 5; ++b)
                edges.push_back({base + a, base + b});
    return UnionMultigraph::from_edges(10, false, edges);
}

/// Sides from a list of z edges given by their ends; one copy per listed
/// occurrence, copy 0 first.
inline auto pair_from_z(const UnionMultigraph & g, const std::vector<EdgeEnds> & z_edges) -> CoverPair
{
    std::vector<Side> sides(static_cast<std::size_t>(g.edge_count()), Side::W);
    for (auto e : z_edges) {
        for (auto id : g.find(e.u, e.v))
            if (sides[id] == Side::W) {
                sides[id] = Side::Z;
                break;
            }
    }
    return CoverPair(g, sides);
}

} // namespace hamdec::testing

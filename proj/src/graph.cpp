#include "hamdec/graph.hpp"

#include "dsu.hpp"
#include "hamdec/error.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <string>

namespace hamdec {

namespace {

    auto normalise(EdgeEnds e, bool directed) -> EdgeEnds
    {
        if (! directed && e.v < e.u)
            std::swap(e.u, e.v);
        return e;
    }

    // Labels the connected components of a degree-2 edge set over n vertices.
    auto label_components(const UnionMultigraph & g, std::span<const EdgeId> edges, std::vector<int> & label) -> int
    {
        const int n = g.vertex_count();
        detail::DisjointSets sets(n);
        int count = n;
        for (auto e : edges)
            if (sets.unite(g.edge(e).u, g.edge(e).v))
                --count;

        label.assign(static_cast<std::size_t>(n), -1);
        std::vector<int> id_of_root(static_cast<std::size_t>(n), -1);
        int next = 0;
        for (VertexId v = 0; v < n; ++v) {
            auto r = sets.find(v);
            if (id_of_root[r] < 0)
                id_of_root[r] = next++;
            label[v] = id_of_root[r];
        }
        return count;
    }

    auto merged_ends(const HamiltonianCycle & a, const HamiltonianCycle & b) -> std::vector<EdgeEnds>
    {
        auto result = a.edges();
        auto more = b.edges();
        result.insert(result.end(), more.begin(), more.end());
        std::sort(result.begin(), result.end());
        return result;
    }

} // namespace

HamiltonianCycle::HamiltonianCycle(std::vector<VertexId> order, bool directed) :
    order_(std::move(order)),
    directed_(directed)
{
    const auto n = order_.size();
    if (n < 3)
        throw Error(ErrorCode::NotAPermutation, "a tour needs at least 3 vertices, got " + std::to_string(n));
    std::vector<char> seen(n, 0);
    for (auto v : order_) {
        if (v < 0 || static_cast<std::size_t>(v) >= n || seen[v])
            throw Error(ErrorCode::NotAPermutation, "tour is not a permutation of 0.." + std::to_string(n - 1));
        seen[v] = 1;
    }
}

auto HamiltonianCycle::from_one_based(std::span<const int> order, bool directed) -> HamiltonianCycle
{
    std::vector<VertexId> zero_based;
    zero_based.reserve(order.size());
    for (auto v : order)
        zero_based.push_back(v - 1);
    return HamiltonianCycle(std::move(zero_based), directed);
}

auto HamiltonianCycle::one_based() const -> std::vector<int>
{
    std::vector<int> result;
    result.reserve(order_.size());
    for (auto v : order_)
        result.push_back(v + 1);
    return result;
}

auto HamiltonianCycle::edges() const -> std::vector<EdgeEnds>
{
    std::vector<EdgeEnds> result;
    result.reserve(order_.size());
    for (std::size_t i = 0; i < order_.size(); ++i)
        result.push_back(normalise({order_[i], order_[(i + 1) % order_.size()]}, directed_));
    return result;
}

auto HamiltonianCycle::sorted_edges() const -> std::vector<EdgeEnds>
{
    auto result = edges();
    std::sort(result.begin(), result.end());
    return result;
}

auto HamiltonianCycle::same_edges(const HamiltonianCycle & other) const -> bool
{
    return directed_ == other.directed_ && size() == other.size() && sorted_edges() == other.sorted_edges();
}

auto HamiltonianCycle::canonical() const -> HamiltonianCycle
{
    const auto n = order_.size();
    auto start = static_cast<std::size_t>(std::find(order_.begin(), order_.end(), 0) - order_.begin());
    std::vector<VertexId> result;
    result.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        result.push_back(order_[(start + i) % n]);
    if (! directed_ && result[n - 1] < result[1])
        std::reverse(result.begin() + 1, result.end());
    return HamiltonianCycle(std::move(result), directed_);
}

auto UnionMultigraph::from_edges(int n, bool directed, std::span<const EdgeEnds> edges) -> UnionMultigraph
{
    if (n < 3)
        throw Error(ErrorCode::SizeMismatch, "union multigraph needs at least 3 vertices");
    if (static_cast<int>(edges.size()) != 2 * n)
        throw Error(ErrorCode::DegreeViolation, "expected " + std::to_string(2 * n) + " edges, got "
                                                    + std::to_string(edges.size()));

    UnionMultigraph g;
    g.n_ = n;
    g.directed_ = directed;
    g.edges_.reserve(edges.size());
    g.twin_.assign(edges.size(), no_edge);

    std::map<EdgeEnds, std::vector<EdgeId>> copies;
    for (auto raw : edges) {
        auto e = normalise(raw, directed);
        if (e.u < 0 || e.v < 0 || e.u >= n || e.v >= n || e.u == e.v)
            throw Error(ErrorCode::DegreeViolation, "edge endpoints out of range or a loop");
        auto & list = copies[e];
        if (list.size() >= 2)
            throw Error(ErrorCode::DegreeViolation, "edge multiplicity above 2");
        auto id = static_cast<EdgeId>(g.edges_.size());
        g.edges_.push_back({e.u, e.v, static_cast<std::uint8_t>(list.size()), false});
        list.push_back(id);
    }
    for (auto & [ends, list] : copies)
        if (list.size() == 2) {
            g.edges_[list[0]].fixed = g.edges_[list[1]].fixed = true;
            g.twin_[list[0]] = list[1];
            g.twin_[list[1]] = list[0];
        }

    // Directed: two out slots then two in slots per vertex.
    g.incidence_.assign(4 * static_cast<std::size_t>(n), no_edge);
    std::vector<int> fill_a(static_cast<std::size_t>(n), 0), fill_b(static_cast<std::size_t>(n), 0);
    auto place = [&](VertexId v, int base, std::vector<int> & fill, EdgeId e, int limit) {
        if (fill[v] >= limit)
            throw Error(ErrorCode::DegreeViolation, "vertex " + std::to_string(v + 1) + " has too many incident edges");
        g.incidence_[4 * static_cast<std::size_t>(v) + base + fill[v]++] = e;
    };
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        const auto & me = g.edges_[e];
        if (directed) {
            place(me.u, 0, fill_a, e, 2);
            place(me.v, 2, fill_b, e, 2);
        }
        else {
            place(me.u, 0, fill_a, e, 4);
            place(me.v, 0, fill_a, e, 4);
        }
    }
    for (VertexId v = 0; v < n; ++v) {
        bool ok = directed ? (fill_a[v] == 2 && fill_b[v] == 2) : fill_a[v] == 4;
        if (! ok)
            throw Error(ErrorCode::DegreeViolation, "vertex " + std::to_string(v + 1) + " is not 4-regular");
    }
    return g;
}

auto UnionMultigraph::find(VertexId u, VertexId v) const -> std::vector<EdgeId>
{
    auto key = normalise({u, v}, directed_);
    std::vector<EdgeId> result;
    if (key.u < 0 || key.u >= n_)
        return result;
    for (auto e : incident(key.u))
        if (edges_[e].u == key.u && edges_[e].v == key.v && std::find(result.begin(), result.end(), e) == result.end())
            result.push_back(e);
    return result;
}

auto UnionMultigraph::fixed_edges() const -> std::vector<EdgeId>
{
    std::vector<EdgeId> result;
    for (EdgeId e = 0; e < edge_count(); ++e)
        if (edges_[e].fixed)
            result.push_back(e);
    return result;
}

auto UnionMultigraph::sorted_edge_ends() const -> std::vector<EdgeEnds>
{
    std::vector<EdgeEnds> result;
    result.reserve(edges_.size());
    for (const auto & e : edges_)
        result.push_back({e.u, e.v});
    std::sort(result.begin(), result.end());
    return result;
}

auto build_union(const HamiltonianCycle & x, const HamiltonianCycle & y) -> UnionMultigraph
{
    if (x.size() != y.size())
        throw Error(ErrorCode::SizeMismatch, "tours have " + std::to_string(x.size()) + " and "
                                                 + std::to_string(y.size()) + " vertices");
    if (x.directed() != y.directed())
        throw Error(ErrorCode::ModeMismatch, "one tour is directed and the other is not");
    if (x.same_edges(y))
        throw Error(ErrorCode::IdenticalCycles, "x and y have the same edge set");
    auto edges = x.edges();
    auto more = y.edges();
    edges.insert(edges.end(), more.begin(), more.end());
    return UnionMultigraph::from_edges(x.size(), x.directed(), edges);
}

auto CycleCover::from_edges(const UnionMultigraph & g, std::vector<EdgeId> edges) -> CycleCover
{
    const int n = g.vertex_count();
    std::sort(edges.begin(), edges.end());
    if (std::adjacent_find(edges.begin(), edges.end()) != edges.end())
        throw Error(ErrorCode::NotASubset, "edge copy used twice");
    for (auto e : edges)
        if (e < 0 || e >= g.edge_count())
            throw Error(ErrorCode::NotASubset, "edge id " + std::to_string(e) + " is not in the multigraph");

    std::vector<int> out(static_cast<std::size_t>(n), 0), in(static_cast<std::size_t>(n), 0);
    for (auto e : edges) {
        ++out[g.edge(e).u];
        ++in[g.edge(e).v];
    }
    for (VertexId v = 0; v < n; ++v) {
        bool ok = g.directed() ? (out[v] == 1 && in[v] == 1) : (out[v] + in[v] == 2);
        if (! ok)
            throw Error(ErrorCode::DegreeViolation, "vertex " + std::to_string(v + 1) + " has wrong cover degree");
    }

    CycleCover cover;
    cover.directed_ = g.directed();
    cover.edges_ = std::move(edges);
    cover.component_count_ = label_components(g, cover.edges_, cover.component_of_);
    return cover;
}

auto CycleCover::sorted_edge_ends(const UnionMultigraph & g) const -> std::vector<EdgeEnds>
{
    std::vector<EdgeEnds> result;
    result.reserve(edges_.size());
    for (auto e : edges_)
        result.push_back(g.ends(e));
    std::sort(result.begin(), result.end());
    return result;
}

auto CycleCover::as_cycle(const UnionMultigraph & g) const -> std::optional<HamiltonianCycle>
{
    if (! is_hamiltonian())
        return std::nullopt;
    const int n = vertex_count();
    std::vector<std::array<EdgeId, 2>> at(static_cast<std::size_t>(n), {no_edge, no_edge});
    for (auto e : edges_) {
        const auto & me = g.edge(e);
        if (directed_)
            at[me.u][0] = e;
        else {
            at[me.u][at[me.u][0] == no_edge ? 0 : 1] = e;
            at[me.v][at[me.v][0] == no_edge ? 0 : 1] = e;
        }
    }
    std::vector<VertexId> order;
    order.reserve(static_cast<std::size_t>(n));
    VertexId v = 0;
    EdgeId came = no_edge;
    for (int i = 0; i < n; ++i) {
        order.push_back(v);
        EdgeId next = at[v][0] != came ? at[v][0] : at[v][1];
        if (directed_)
            next = at[v][0];
        came = next;
        v = g.other_end(next, v);
    }
    return HamiltonianCycle(std::move(order), directed_).canonical();
}

auto complement_cover(const UnionMultigraph & g, const CycleCover & z) -> CycleCover
{
    std::vector<char> in_z(static_cast<std::size_t>(g.edge_count()), 0);
    for (auto e : z.edges()) {
        if (e < 0 || e >= g.edge_count())
            throw Error(ErrorCode::NotASubset, "cover edge not in multigraph");
        in_z[e] = 1;
    }
    std::vector<EdgeId> rest;
    for (EdgeId e = 0; e < g.edge_count(); ++e)
        if (! in_z[e])
            rest.push_back(e);
    return CycleCover::from_edges(g, std::move(rest));
}

CoverPair::CoverPair(const UnionMultigraph & g, std::vector<Side> sides) :
    g_(&g),
    sides_(std::move(sides))
{
    if (static_cast<int>(sides_.size()) != g.edge_count())
        throw Error(ErrorCode::SizeMismatch, "side labels do not match the edge count");
    if (! is_valid())
        throw Error(ErrorCode::DegreeViolation, "side labels do not form two complementary cycle covers");
}

auto CoverPair::from_cover(const UnionMultigraph & g, const CycleCover & z) -> CoverPair
{
    std::vector<Side> sides(static_cast<std::size_t>(g.edge_count()), Side::W);
    for (auto e : z.edges())
        sides[e] = Side::Z;
    return CoverPair(g, std::move(sides));
}

auto CoverPair::edges_on(Side s) const -> std::vector<EdgeId>
{
    std::vector<EdgeId> result;
    result.reserve(sides_.size() / 2);
    for (EdgeId e = 0; e < static_cast<EdgeId>(sides_.size()); ++e)
        if (sides_[e] == s)
            result.push_back(e);
    return result;
}

auto CoverPair::z() const -> CycleCover { return CycleCover::from_edges(*g_, edges_on(Side::Z)); }

auto CoverPair::w() const -> CycleCover { return CycleCover::from_edges(*g_, edges_on(Side::W)); }

auto CoverPair::is_valid() const -> bool
{
    const auto & g = *g_;
    const int n = g.vertex_count();
    std::vector<int> out(static_cast<std::size_t>(n), 0), in(static_cast<std::size_t>(n), 0);
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        if (sides_[e] != Side::Z)
            continue;
        ++out[g.edge(e).u];
        ++in[g.edge(e).v];
        auto t = g.twin(e);
        if (t != no_edge && sides_[t] == Side::Z)
            return false;
    }
    for (VertexId v = 0; v < n; ++v) {
        bool ok = g.directed() ? (out[v] == 1 && in[v] == 1) : (out[v] + in[v] == 2);
        if (! ok)
            return false;
    }
    return true;
}

auto component_count(const CoverPair & p, Side s) -> int
{
    std::vector<int> label;
    return label_components(p.graph(), p.edges_on(s), label);
}

auto objective(const CoverPair & p) -> int { return component_count(p, Side::Z) + component_count(p, Side::W); }

auto verify_decomposition(const UnionMultigraph & g, const CoverPair & p, const HamiltonianCycle & x,
                          const HamiltonianCycle & y) -> bool
{
    if (&p.graph() != &g || ! p.is_valid())
        return false;
    if (x.size() != g.vertex_count() || y.size() != g.vertex_count() || x.directed() != g.directed()
        || y.directed() != g.directed())
        return false;
    if (g.sorted_edge_ends() != merged_ends(x, y))
        return false;
    auto z = p.z();
    auto w = p.w();
    if (! z.is_hamiltonian() || ! w.is_hamiltonian())
        return false;
    auto z_ends = z.sorted_edge_ends(g);
    return z_ends != x.sorted_edges() && z_ends != y.sorted_edges();
}

auto verify_certificate(const HamiltonianCycle & x, const HamiltonianCycle & y, const HamiltonianCycle & z,
                        const HamiltonianCycle & w) -> bool
{
    const auto n = x.size();
    const auto d = x.directed();
    for (const auto * c : {&y, &z, &w})
        if (c->size() != n || c->directed() != d)
            return false;
    if (merged_ends(x, y) != merged_ends(z, w))
        return false;
    return ! z.same_edges(x) && ! z.same_edges(y);
}

} // namespace hamdec

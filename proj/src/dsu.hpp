#pragma once

#include <numeric>
#include <vector>

namespace hamdec::detail {

struct DisjointSets {
    std::vector<int> parent;

    explicit DisjointSets(int n = 0) { reset(n); }

    void reset(int n)
    {
        parent.resize(static_cast<std::size_t>(n));
        std::iota(parent.begin(), parent.end(), 0);
    }

    auto find(int a) -> int
    {
        while (parent[a] != a) {
            parent[a] = parent[parent[a]];
            a = parent[a];
        }
        return a;
    }

    auto unite(int a, int b) -> bool
    {
        a = find(a);
        b = find(b);
        if (a == b)
            return false;
        parent[b] = a;
        return true;
    }
};

} // namespace hamdec::detail

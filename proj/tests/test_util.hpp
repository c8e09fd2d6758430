#ifndef RC_TEST_UTIL_HPP
#define RC_TEST_UTIL_HPP

#include <map>
#include <random>
#include <set>
#include <tuple>
#include <vector>

#include "rc/graph.hpp"

namespace rc::testing {

inline MultiGraph make_graph(int n, const std::vector<std::tuple<int, int, int>>& edges, int first_id = 0)
{
    GraphBuilder b;
    for (int i = 0; i < n; ++i) b.add_vertex(first_id + i);
    for (auto [u, v, m] : edges) b.add_edge(first_id + u, first_id + v, m);
    return b.build();
}

inline MultiGraph make_simple(int n, const std::vector<std::pair<int, int>>& edges)
{
    std::vector<std::tuple<int, int, int>> e;
    for (auto [u, v] : edges) e.emplace_back(u, v, 1);
    return make_graph(n, e);
}

inline MultiGraph complete(int n)
{
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) e.emplace_back(i, j);
    return make_simple(n, e);
}

inline MultiGraph path(int n)
{
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
    return make_simple(n, e);
}

inline MultiGraph random_graph(std::mt19937_64& rng, int n, double p, int max_mult = 1, bool connected = false)
{
    std::uniform_real_distribution<double> U(0, 1);
    std::uniform_int_distribution<int> M(1, max_mult);
    std::vector<std::tuple<int, int, int>> e;
    for (int i = 0; i < n; ++i) {
        if (connected && i > 0) e.emplace_back(std::uniform_int_distribution<int>(0, i - 1)(rng), i, M(rng));
        for (int j = i + 1; j < n; ++j)
            if (U(rng) < p) e.emplace_back(i, j, M(rng));
    }
    return make_graph(n, e);
}

/// Graph structure expressed through preimage sets, independent of fresh ids.
using Canon = std::map<std::pair<std::set<int>, std::set<int>>, int>;

inline Canon canon(const MultiGraph& h, const ContractionMap& iota)
{
    std::map<int, std::set<int>> pre;
    for (const auto& [from, to] : iota.raw()) pre[to].insert(from);
    Canon c;
    for (const auto& e : h.edges()) {
        auto a = pre[h.id(e.a)], b = pre[h.id(e.b)];
        if (b < a) std::swap(a, b);
        c[{a, b}] += e.mult;
    }
    return c;
}

inline std::set<std::set<int>> blocks(const MultiGraph& h, const ContractionMap& iota)
{
    std::map<int, std::set<int>> pre;
    for (const auto& [from, to] : iota.raw()) pre[to].insert(from);
    std::set<std::set<int>> out;
    for (int id : h.ids()) out.insert(pre[id]);
    return out;
}

/// Number of components after deleting the given class indices.
inline int components_without(const MultiGraph& g, const std::vector<char>& dead)
{
    DisjointSets ds(g.n());
    int c = g.n();
    for (int i = 0; i < g.m(); ++i)
        if (!dead[i] && ds.unite(g.edges()[i].a, g.edges()[i].b)) --c;
    return c;
}

/// Exhaustive minimum u-v edge cut (multiplicity weighted) by class subsets.
inline int brute_min_edge_cut(const MultiGraph& g, int u, int v)
{
    int best = 1 << 29;
    int pu = g.pos(u), pv = g.pos(v);
    for (std::uint32_t mask = 0; mask < (1u << g.m()); ++mask) {
        DisjointSets ds(g.n());
        int cost = 0;
        for (int i = 0; i < g.m(); ++i) {
            if (mask >> i & 1)
                cost += g.edges()[i].mult;
            else
                ds.unite(g.edges()[i].a, g.edges()[i].b);
        }
        if (ds.find(pu) != ds.find(pv)) best = std::min(best, cost);
    }
    return best;
}

} // namespace rc::testing

#endif

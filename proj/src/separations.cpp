#include "rc/separations.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <unordered_set>

#include "rc/flows.hpp"
#include "rc/parallel.hpp"

namespace rc {

std::vector<char> id_mask(const MultiGraph& g, const std::vector<int>& ids)
{
    std::vector<char> m(g.n(), 0);
    for (int id : ids) m[g.pos(id)] = 1;
    return m;
}

namespace {

struct PairHash {
    std::size_t operator()(const std::pair<std::uint64_t, std::uint64_t>& p) const
    {
        return static_cast<std::size_t>(p.first ^ (p.second * 0x9e3779b97f4a7c15ULL));
    }
};
using SeenSet = std::unordered_set<std::pair<std::uint64_t, std::uint64_t>, PairHash>;

// fingerprint of a partition given by root per position
std::pair<std::uint64_t, std::uint64_t> partition_key(DisjointSets& ds, int n, std::vector<int>& canon)
{
    canon.assign(n, -1);
    std::uint64_t h1 = 0x12345, h2 = 0x6789;
    std::vector<int> first(n, -1);
    for (int p = 0; p < n; ++p) {
        int r = ds.find(p);
        if (first[r] < 0) first[r] = p;
        std::uint64_t v = static_cast<std::uint64_t>(first[r]) + 1;
        h1 = splitmix64(h1 ^ (v + static_cast<std::uint64_t>(p) * 131));
        h2 = splitmix64(h2 + v * 0x9e3779b97f4a7c15ULL + static_cast<std::uint64_t>(p));
    }
    return {h1, h2};
}

// vertices reachable from src avoiding dead vertices and dead classes (positions)
std::vector<int> reach(const MultiGraph& g, int src, const std::vector<char>& dead_v, const std::vector<char>& dead_e)
{
    std::vector<char> seen(g.n(), 0);
    std::vector<int> stack{src}, out;
    seen[src] = 1;
    while (!stack.empty()) {
        int x = stack.back();
        stack.pop_back();
        out.push_back(x);
        for (const auto& [y, e] : g.adj(x)) {
            if (seen[y] || (!dead_v.empty() && dead_v[y]) || (!dead_e.empty() && dead_e[e])) continue;
            seen[y] = 1;
            stack.push_back(y);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<int> to_ids(const MultiGraph& g, const std::vector<int>& ps)
{
    std::vector<int> out;
    out.reserve(ps.size());
    for (int p : ps) out.push_back(g.id(p));
    return out;
}

bool induces_connected(const MultiGraph& g, const std::vector<char>& in)
{
    int start = -1, total = 0;
    for (int p = 0; p < g.n(); ++p)
        if (in[p]) {
            ++total;
            if (start < 0) start = p;
        }
    if (total == 0) return false;
    std::vector<char> dead(g.n());
    for (int p = 0; p < g.n(); ++p) dead[p] = !in[p];
    return static_cast<int>(reach(g, start, dead, {}).size()) == total;
}

struct EdgeScratch {
    std::vector<char> in;
    DisjointSets ds;
    std::vector<int> canon;
    SeenSet seen;
};

std::optional<GoodEdgeSeparation> edge_sep_for_member(const MultiGraph& g, std::int64_t q, int k,
                                                      const std::vector<char>& in, EdgeScratch& sc)
{
    const int n = g.n();
    sc.ds.reset(n);
    for (int i = 0; i < g.m(); ++i)
        if (in[i]) sc.ds.unite(g.edges()[i].a, g.edges()[i].b);
    if (!sc.seen.insert(partition_key(sc.ds, n, sc.canon)).second) return std::nullopt;

    // quotient nodes numbered by first position
    std::vector<int> node(n, -1), first;
    int nodes = 0;
    for (int p = 0; p < n; ++p) {
        int r = sc.ds.find(p);
        if (node[r] < 0) {
            node[r] = nodes++;
            first.push_back(p);
        }
        node[p] = node[r];
    }
    std::vector<int> heavy;
    for (int x = 0; x < nodes; ++x)
        if (sc.ds.size_of(first[x]) > q) heavy.push_back(x);
    if (heavy.size() < 2) return std::nullopt;

    FlowNetwork net;
    for (std::size_t j = 1; j < heavy.size(); ++j) {
        net.reset(nodes);
        for (const auto& e : g.edges())
            if (node[e.a] != node[e.b]) net.add(node[e.a], node[e.b], e.mult, e.mult);
        int f = net.run(heavy[0], heavy[j], k + 1);
        if (f > k) continue;
        auto side = net.reachable(heavy[0]);
        std::vector<char> dead(g.m(), 0);
        GoodEdgeSeparation sep;
        for (int i = 0; i < g.m(); ++i)
            if (side[node[g.edges()[i].a]] != side[node[g.edges()[i].b]]) {
                dead[i] = 1;
                sep.crossing.push_back(i);
            }
        auto v1 = reach(g, first[heavy[0]], {}, dead);
        auto v2 = reach(g, first[heavy[j]], {}, dead);
        sep.v1 = to_ids(g, v1);
        sep.v2 = to_ids(g, v2);
        RC_ASSERT(v1.size() + v2.size() == static_cast<std::size_t>(n), "edge cut sides do not cover V");
        return sep;
    }
    return std::nullopt;
}

} // namespace

std::optional<GoodEdgeSeparation> find_good_edge_separation(const MultiGraph& g, std::int64_t q, int k,
                                                            SolveContext& ctx)
{
    if (!is_connected(g)) throw InputError("find_good_edge_separation needs a connected graph");
    ++ctx.stats().separation_queries;
    if (g.n() < sat_add(sat_mul(2, q), 2) || g.m() == 0) return std::nullopt;
    SetFamily fam = ctx.family(g.m(), sat_mul(2, q), k, "edge-separation");
    const int threads = ctx.config().threads;
    std::vector<EdgeScratch> scratch(std::max(1, threads));
    auto hit = first_hit<GoodEdgeSeparation>(fam.size(), threads, [&](std::size_t i, int w) {
        fam.member(i, scratch[w].in);
        return edge_sep_for_member(g, q, k, scratch[w].in, scratch[w]);
    });
    if (!hit) return std::nullopt;
    return hit->second;
}

std::optional<GoodEdgeSeparation> find_good_edge_separation_randomized(const MultiGraph& g, std::int64_t q,
                                                                       int k, std::uint64_t seed, double delta)
{
    if (!is_connected(g)) throw InputError("find_good_edge_separation_randomized needs a connected graph");
    if (g.n() < sat_add(sat_mul(2, q), 2) || g.m() == 0) return std::nullopt;
    FamilySpec spec;
    spec.universe_size = g.m();
    spec.a = static_cast<int>(std::min<std::int64_t>(sat_mul(2, q), g.m()));
    spec.b = std::min(k, g.m());
    spec.mode = FamilyMode::Randomized;
    spec.delta = delta;
    spec.seed = mix_seed(seed, "edge-separation-karger");
    SetFamily fam = build_family(spec);
    std::vector<char> in;
    DisjointSets ds;
    for (std::size_t i = 0; i < fam.size(); ++i) {
        fam.member(i, in);
        ds.reset(g.n());
        for (int c = 0; c < g.m(); ++c)
            if (in[c]) ds.unite(g.edges()[c].a, g.edges()[c].b);
        bool any_big = false;
        for (int p = 0; p < g.n(); ++p)
            if (ds.size_of(p) > q) any_big = true;
        if (!any_big) continue;
        // absorb small vertices into neighbours until every vertex is big
        bool changed = true;
        while (changed) {
            changed = false;
            for (const auto& e : g.edges()) {
                int ra = ds.find(e.a), rb = ds.find(e.b);
                if (ra != rb && (ds.size_of(ra) <= q || ds.size_of(rb) <= q)) {
                    ds.unite(ra, rb);
                    changed = true;
                }
            }
        }
        std::vector<int> group(g.n());
        for (int p = 0; p < g.n(); ++p) group[p] = ds.find(p);
        Contracted h = quotient(g, group);
        if (h.graph.n() < 2) continue;
        int hn = h.graph.n();
        int trials = std::max(20, static_cast<int>(2.0 * hn * hn * std::log(hn + 1.0)));
        auto kr = karger_min_cut(h.graph, trials, mix_seed(seed, i, 77));
        if (kr.size > k) continue;
        // map the cut back onto G classes
        std::vector<char> dead(g.m(), 0);
        GoodEdgeSeparation sep;
        std::set<std::pair<int, int>> cut_pairs;
        for (int c : kr.cut) cut_pairs.insert({h.graph.id(h.graph.edges()[c].a), h.graph.id(h.graph.edges()[c].b)});
        for (int c = 0; c < g.m(); ++c) {
            int u = h.iota(g.id(g.edges()[c].a)), v = h.iota(g.id(g.edges()[c].b));
            if (u > v) std::swap(u, v);
            if (u != v && cut_pairs.count({u, v})) {
                dead[c] = 1;
                sep.crossing.push_back(c);
            }
        }
        auto v1 = reach(g, 0, {}, dead);
        std::vector<char> in1(g.n(), 0);
        for (int p : v1) in1[p] = 1;
        std::vector<int> v2;
        for (int p = 0; p < g.n(); ++p)
            if (!in1[p]) v2.push_back(p);
        sep.v1 = to_ids(g, v1);
        sep.v2 = to_ids(g, v2);
        if (is_good_edge_separation(g, sep, q, k)) return sep;
    }
    return std::nullopt;
}

namespace {

struct NodeScratch {
    std::vector<char> in;
    DisjointSets ds;
    std::vector<int> canon;
    SeenSet seen;
    std::set<std::vector<int>> cores;
};

// contract edges inside S + V_inf; returns quotient node per position
int contract_inside(const MultiGraph& g, const std::vector<char>& sv, DisjointSets& ds, std::vector<int>& node,
                    std::vector<int>& first)
{
    const int n = g.n();
    ds.reset(n);
    for (const auto& e : g.edges())
        if (sv[e.a] && sv[e.b]) ds.unite(e.a, e.b);
    node.assign(n, -1);
    first.clear();
    int nodes = 0;
    for (int p = 0; p < n; ++p) {
        int r = ds.find(p);
        if (node[r] < 0) {
            node[r] = nodes++;
            first.push_back(p);
        }
        node[p] = node[r];
    }
    return nodes;
}

std::optional<GoodNodeSeparation> node_sep_for_member(const MultiGraph& g, const std::vector<char>& undel,
                                                      const std::vector<int>& universe, std::int64_t q, int k,
                                                      const std::vector<char>& in, NodeScratch& sc)
{
    const int n = g.n();
    std::vector<char> sv(undel);
    for (std::size_t i = 0; i < universe.size(); ++i)
        if (in[i]) sv[universe[i]] = 1;
    std::vector<int> node, first;
    int nodes = contract_inside(g, sv, sc.ds, node, first);
    {
        // dedupe on the contraction together with which singletons are in S
        auto key = partition_key(sc.ds, n, sc.canon);
        std::uint64_t h = key.second;
        for (int p = 0; p < n; ++p) h = splitmix64(h ^ (static_cast<std::uint64_t>(sv[p]) << 1) ^ p);
        if (!sc.seen.insert({key.first, h}).second) return std::nullopt;
    }
    std::vector<std::int64_t> weight(nodes, 0);
    std::vector<char> in_s(nodes, 0);
    for (int p = 0; p < n; ++p) {
        if (!undel[p]) ++weight[node[p]];
        if (sv[p]) in_s[node[p]] = 1;
    }
    std::vector<int> big;
    for (int x = 0; x < nodes; ++x)
        if (in_s[x] && weight[x] > q) big.push_back(x);
    if (big.size() < 2) return std::nullopt;

    FlowNetwork net;
    const int inf = k + 1;
    for (std::size_t j = 1; j < big.size(); ++j) {
        net.reset(2 * nodes);
        for (int x = 0; x < nodes; ++x) net.add(2 * x, 2 * x + 1, in_s[x] ? inf : 1);
        for (const auto& e : g.edges()) {
            int x = node[e.a], y = node[e.b];
            if (x == y) continue;
            net.add(2 * x + 1, 2 * y, inf);
            net.add(2 * y + 1, 2 * x, inf);
        }
        int f = net.run(2 * big[0] + 1, 2 * big[j], k + 1);
        if (f > k) continue;
        auto side = net.reachable(2 * big[0] + 1);
        std::vector<char> dead(n, 0);
        GoodNodeSeparation sep;
        for (int x = 0; x < nodes; ++x)
            if (side[2 * x] && !side[2 * x + 1]) {
                RC_ASSERT(!in_s[x], "node cut through an infinite vertex");
                dead[first[x]] = 1;
                sep.z.push_back(g.id(first[x]));
            }
        std::sort(sep.z.begin(), sep.z.end());
        sep.v1 = to_ids(g, reach(g, first[big[0]], dead, {}));
        sep.v2 = to_ids(g, reach(g, first[big[j]], dead, {}));
        return sep;
    }
    return std::nullopt;
}

} // namespace

std::optional<GoodNodeSeparation> find_good_node_separation(const MultiGraph& g, const std::vector<int>& undeletable,
                                                            std::int64_t q, int k, SolveContext& ctx)
{
    if (!is_connected(g)) throw InputError("find_good_node_separation needs a connected graph");
    ++ctx.stats().separation_queries;
    auto undel = id_mask(g, undeletable);
    std::vector<int> universe;
    for (int p = 0; p < g.n(); ++p)
        if (!undel[p]) universe.push_back(p);
    if (static_cast<std::int64_t>(universe.size()) < sat_add(sat_mul(2, q), 3)) return std::nullopt;
    SetFamily fam = ctx.family(static_cast<int>(universe.size()), sat_add(sat_mul(2, q), 2), k, "node-separation");
    const int threads = ctx.config().threads;
    std::vector<NodeScratch> scratch(std::max(1, threads));
    auto hit = first_hit<GoodNodeSeparation>(fam.size(), threads, [&](std::size_t i, int w) {
        fam.member(i, scratch[w].in);
        return node_sep_for_member(g, undel, universe, q, k, scratch[w].in, scratch[w]);
    });
    if (!hit) return std::nullopt;
    return hit->second;
}

std::optional<FlowerSeparation> flower_with_core(const MultiGraph& g, const std::vector<char>& undel,
                                                 const std::vector<char>& border, const std::vector<int>& core,
                                                 std::int64_t q)
{
    const int n = g.n();
    std::vector<char> in_core(n, 0);
    for (int p : core) in_core[p] = 1;
    std::int64_t outside = 0; // |V \ (V_inf + Z)|
    for (int p = 0; p < n; ++p)
        if (!undel[p] && !in_core[p]) ++outside;
    const std::int64_t lo = q + 1, hi = outside - q - 1;
    if (lo > hi) return std::nullopt;

    // components of G - Z with their eligibility
    std::vector<int> comp(n, -1);
    std::vector<std::vector<int>> comps;
    for (int s = 0; s < n; ++s) {
        if (in_core[s] || comp[s] >= 0) continue;
        auto c = reach(g, s, in_core, {});
        for (int p : c) comp[p] = static_cast<int>(comps.size());
        comps.push_back(std::move(c));
    }
    std::vector<int> eligible;
    std::vector<std::int64_t> weight;
    for (std::size_t i = 0; i < comps.size(); ++i) {
        std::int64_t w = 0;
        bool ok = true;
        std::vector<char> nb(n, 0);
        for (int p : comps[i]) {
            if (border[p]) ok = false;
            if (!undel[p]) ++w;
            for (const auto& [y, e] : g.adj(p))
                if (in_core[y]) nb[y] = 1;
        }
        for (int z : core)
            if (!nb[z]) ok = false;
        if (w > q) ok = false;
        if (ok && w > 0) {
            eligible.push_back(static_cast<int>(i));
            weight.push_back(w);
        }
    }
    std::int64_t total = 0;
    for (auto w : weight) total += w;
    if (total < lo) return std::nullopt;
    const std::int64_t cap = std::min(total, hi);
    // suffix reachability: can[i][t] = some subset of eligible[i..] sums to t
    const int ne = static_cast<int>(eligible.size());
    std::vector<std::vector<char>> can(ne + 1, std::vector<char>(cap + 1, 0));
    can[ne][0] = 1;
    for (int i = ne - 1; i >= 0; --i)
        for (std::int64_t t = 0; t <= cap; ++t)
            can[i][t] = can[i + 1][t] || (t >= weight[i] && can[i + 1][t - weight[i]]);
    std::int64_t target = -1;
    for (std::int64_t t = lo; t <= cap; ++t)
        if (can[0][t]) {
            target = t;
            break;
        }
    if (target < 0) return std::nullopt;
    FlowerSeparation sep;
    for (int p : core) sep.core.push_back(g.id(p));
    std::sort(sep.core.begin(), sep.core.end());
    // earliest components first
    std::int64_t left = target;
    for (int i = 0; i < ne && left > 0; ++i) {
        if (left >= weight[i] && can[i + 1][left - weight[i]]) {
            sep.petals.push_back(to_ids(g, comps[eligible[i]]));
            left -= weight[i];
        }
    }
    return sep;
}

namespace {

std::optional<FlowerSeparation> flower_for_member(const MultiGraph& g, const std::vector<char>& undel,
                                                  const std::vector<char>& border, const std::vector<int>& universe,
                                                  std::int64_t q, int k, const std::vector<char>& in,
                                                  NodeScratch& sc)
{
    const int n = g.n();
    std::vector<char> sv(undel);
    for (std::size_t i = 0; i < universe.size(); ++i)
        if (in[i]) sv[universe[i]] = 1;
    std::vector<int> node, first;
    int nodes = contract_inside(g, sv, sc.ds, node, first);
    std::vector<std::int64_t> weight(nodes, 0);
    std::vector<std::vector<int>> members(nodes);
    for (int p = 0; p < n; ++p) {
        if (!undel[p]) ++weight[node[p]];
        members[node[p]].push_back(p);
    }
    for (int x = 0; x < nodes; ++x) {
        if (!sv[first[x]] || weight[x] > q) continue;
        std::vector<int> nb;
        bool small = true;
        for (int p : members[x]) {
            for (const auto& [y, e] : g.adj(p))
                if (node[y] != x) nb.push_back(y);
            if (nb.size() > static_cast<std::size_t>(4 * (k + 1) + 64)) {
                std::sort(nb.begin(), nb.end());
                nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
                if (static_cast<int>(nb.size()) > k) {
                    small = false;
                    break;
                }
            }
        }
        if (!small) continue;
        std::sort(nb.begin(), nb.end());
        nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
        if (nb.empty() || static_cast<int>(nb.size()) > k) continue;
        if (!sc.cores.insert(nb).second) continue;
        if (auto f = flower_with_core(g, undel, border, nb, q)) return f;
    }
    return std::nullopt;
}

} // namespace

std::optional<FlowerSeparation> find_flower_separation(const MultiGraph& g, const std::vector<int>& undeletable,
                                                       const std::vector<int>& border, std::int64_t q, int k,
                                                       SolveContext& ctx)
{
    if (!is_connected(g)) throw InputError("find_flower_separation needs a connected graph");
    ++ctx.stats().separation_queries;
    auto undel = id_mask(g, undeletable);
    auto bord = id_mask(g, border);
    std::vector<int> universe;
    for (int p = 0; p < g.n(); ++p)
        if (!undel[p]) universe.push_back(p);
    if (k < 1 || static_cast<std::int64_t>(universe.size()) < sat_add(sat_mul(2, q), 3)) return std::nullopt;
    SetFamily fam = ctx.family(static_cast<int>(universe.size()), q, k, "flower-separation");
    const int threads = ctx.config().threads;
    std::vector<NodeScratch> scratch(std::max(1, threads));
    auto hit = first_hit<FlowerSeparation>(fam.size(), threads, [&](std::size_t i, int w) {
        fam.member(i, scratch[w].in);
        return flower_for_member(g, undel, bord, universe, q, k, scratch[w].in, scratch[w]);
    });
    if (!hit) return std::nullopt;
    return hit->second;
}

bool is_good_edge_separation(const MultiGraph& g, const GoodEdgeSeparation& s, std::int64_t q, int k)
{
    std::vector<char> side(g.n(), 0);
    for (int id : s.v1) {
        int p = g.find(id);
        if (p < 0 || side[p]) return false;
        side[p] = 1;
    }
    for (int id : s.v2) {
        int p = g.find(id);
        if (p < 0 || side[p]) return false;
        side[p] = 2;
    }
    for (int p = 0; p < g.n(); ++p)
        if (!side[p]) return false;
    if (static_cast<std::int64_t>(s.v1.size()) <= q || static_cast<std::int64_t>(s.v2.size()) <= q) return false;
    std::int64_t cross = 0;
    for (const auto& e : g.edges())
        if (side[e.a] != side[e.b]) cross += e.mult;
    if (cross > k) return false;
    std::vector<char> in1(g.n()), in2(g.n());
    for (int p = 0; p < g.n(); ++p) {
        in1[p] = side[p] == 1;
        in2[p] = side[p] == 2;
    }
    return induces_connected(g, in1) && induces_connected(g, in2);
}

bool is_good_node_separation(const MultiGraph& g, const std::vector<int>& undeletable, const GoodNodeSeparation& s,
                             std::int64_t q, int k)
{
    auto undel = id_mask(g, undeletable);
    if (static_cast<int>(s.z.size()) > k) return false;
    std::vector<char> dead(g.n(), 0);
    for (int id : s.z) {
        int p = g.find(id);
        if (p < 0 || undel[p]) return false;
        dead[p] = 1;
    }
    auto check_comp = [&](const std::vector<int>& side) -> std::vector<int> {
        if (side.empty()) return {};
        int p = g.find(side.front());
        if (p < 0 || dead[p]) return {};
        auto c = reach(g, p, dead, {});
        if (to_ids(g, c) != side) return {};
        return c;
    };
    auto c1 = check_comp(s.v1), c2 = check_comp(s.v2);
    if (c1.empty() || c2.empty() || c1 == c2) return false;
    auto weight = [&](const std::vector<int>& c) {
        std::int64_t w = 0;
        for (int p : c)
            if (!undel[p]) ++w;
        return w;
    };
    return weight(c1) > q && weight(c2) > q;
}

bool is_flower_separation(const MultiGraph& g, const std::vector<int>& undeletable, const std::vector<int>& border,
                          const FlowerSeparation& s, std::int64_t q, int k)
{
    auto undel = id_mask(g, undeletable);
    auto bord = id_mask(g, border);
    if (s.core.empty() || static_cast<int>(s.core.size()) > k) return false;
    std::vector<char> in_core(g.n(), 0), used(g.n(), 0);
    for (int id : s.core) {
        int p = g.find(id);
        if (p < 0 || undel[p]) return false;
        in_core[p] = 1;
    }
    std::int64_t petal_weight = 0;
    for (const auto& petal : s.petals) {
        if (petal.empty()) return false;
        int p = g.find(petal.front());
        if (p < 0 || in_core[p]) return false;
        auto c = reach(g, p, in_core, {});
        if (to_ids(g, c) != petal) return false;
        std::int64_t w = 0;
        std::vector<char> nb(g.n(), 0);
        for (int x : c) {
            if (used[x] || bord[x]) return false;
            used[x] = 1;
            if (!undel[x]) ++w;
            for (const auto& [y, e] : g.adj(x))
                if (in_core[y]) nb[y] = 1;
        }
        for (int z = 0; z < g.n(); ++z)
            if (in_core[z] && !nb[z]) return false;
        if (w > q) return false;
        petal_weight += w;
    }
    std::int64_t stalk = 0;
    for (int p = 0; p < g.n(); ++p)
        if (!in_core[p] && !used[p] && !undel[p]) ++stalk;
    return stalk > q && petal_weight > q;
}

bool check_structure_bound(const MultiGraph& g, const std::vector<int>& undeletable, const std::vector<int>& border,
                           std::int64_t q, int k)
{
    if (g.n() > 12) throw SizeError("check_structure_bound limited to 12 vertices");
    auto undel = id_mask(g, undeletable);
    std::vector<int> deletable;
    for (int p = 0; p < g.n(); ++p)
        if (!undel[p]) deletable.push_back(p);
    const std::int64_t limit =
        sat_add(sat_add(sat_mul(sat_add(sat_mul(2, q), 2), (std::int64_t{1} << k) - 1), static_cast<std::int64_t>(border.size())), 1);
    bool ok = true;
    for_each_subset_upto(static_cast<int>(deletable.size()), k, [&](const std::vector<int>& idx) {
        std::vector<char> dead(g.n(), 0);
        for (int i : idx) dead[deletable[i]] = 1;
        std::vector<char> seen(g.n(), 0);
        std::int64_t counted = 0, large = 0;
        for (int p = 0; p < g.n(); ++p) {
            if (dead[p] || seen[p]) continue;
            auto c = reach(g, p, dead, {});
            std::int64_t w = 0;
            for (int x : c) {
                seen[x] = 1;
                if (!undel[x]) ++w;
            }
            if (w > 0) ++counted;
            if (w > q) ++large;
        }
        if (counted > limit || large > 1) ok = false;
        return ok;
    });
    return ok;
}

bool check_edge_structure_bound(const MultiGraph& g, std::int64_t q, int k)
{
    if (g.m() > 40) throw SizeError("check_edge_structure_bound limited to 40 edge classes");
    bool ok = true;
    for_each_subset_upto(g.m(), k, [&](const std::vector<int>& idx) {
        std::int64_t cost = 0;
        std::vector<char> dead(g.m(), 0);
        for (int i : idx) {
            cost += g.edges()[i].mult;
            dead[i] = 1;
        }
        if (cost > k) return true;
        std::vector<char> seen(g.n(), 0);
        std::int64_t comps = 0, large = 0;
        for (int p = 0; p < g.n(); ++p) {
            if (seen[p]) continue;
            auto c = reach(g, p, {}, dead);
            for (int x : c) seen[x] = 1;
            ++comps;
            if (static_cast<std::int64_t>(c.size()) > q) ++large;
        }
        if (comps > cost + 1 || large > 1) ok = false;
        return ok;
    });
    return ok;
}

} // namespace rc

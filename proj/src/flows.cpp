#include "rc/flows.hpp"

#include <algorithm>
#include <deque>
#include <random>

namespace rc {

void FlowNetwork::reset(int nodes)
{
    head_.assign(nodes, {});
    to_.clear();
    cap_.clear();
    orig_.clear();
}

int FlowNetwork::add(int a, int b, int cab, int cba)
{
    int id = static_cast<int>(to_.size());
    to_.push_back(b);
    cap_.push_back(cab);
    orig_.push_back(cab);
    head_[a].push_back(id);
    to_.push_back(a);
    cap_.push_back(cba);
    orig_.push_back(cba);
    head_[b].push_back(id + 1);
    return id;
}

int FlowNetwork::run(int s, int t, int limit)
{
    int flow = 0;
    std::vector<int> via(nodes());
    std::deque<int> queue;
    while (flow < limit) {
        std::fill(via.begin(), via.end(), -1);
        via[s] = -2;
        queue.assign(1, s);
        while (!queue.empty() && via[t] == -1) {
            int x = queue.front();
            queue.pop_front();
            for (int arc : head_[x]) {
                if (cap_[arc] > 0 && via[to_[arc]] == -1) {
                    via[to_[arc]] = arc;
                    queue.push_back(to_[arc]);
                }
            }
        }
        if (via[t] == -1) break;
        int push = limit - flow;
        for (int x = t; x != s; x = to_[via[x] ^ 1]) push = std::min(push, cap_[via[x]]);
        for (int x = t; x != s; x = to_[via[x] ^ 1]) {
            cap_[via[x]] -= push;
            cap_[via[x] ^ 1] += push;
        }
        flow += push;
    }
    return flow;
}

std::vector<char> FlowNetwork::reachable(int s) const
{
    std::vector<char> seen(nodes(), 0);
    std::vector<int> stack{s};
    seen[s] = 1;
    while (!stack.empty()) {
        int x = stack.back();
        stack.pop_back();
        for (int arc : head_[x])
            if (cap_[arc] > 0 && !seen[to_[arc]]) {
                seen[to_[arc]] = 1;
                stack.push_back(to_[arc]);
            }
    }
    return seen;
}

namespace {

std::vector<int> reach_ids(const MultiGraph& g, int src, const std::vector<char>& dead_vertex,
                           const std::vector<char>& dead_class)
{
    std::vector<char> seen(g.n(), 0);
    std::vector<int> stack{src}, out;
    seen[src] = 1;
    while (!stack.empty()) {
        int x = stack.back();
        stack.pop_back();
        out.push_back(g.id(x));
        for (const auto& [y, e] : g.adj(x)) {
            if (seen[y] || dead_vertex[y] || dead_class[e]) continue;
            seen[y] = 1;
            stack.push_back(y);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace

CutResult min_edge_cut_bounded(const MultiGraph& g, int u, int v, int k)
{
    if (u == v) throw InputError("min_edge_cut_bounded needs distinct endpoints");
    if (k < 0) throw InputError("k must be nonnegative");
    int s = g.pos(u), t = g.pos(v);
    FlowNetwork net(g.n());
    for (const auto& e : g.edges()) net.add(e.a, e.b, e.mult, e.mult);
    CutResult r;
    int f = net.run(s, t, k + 1);
    if (f > k) return r;
    r.exceeds = false;
    r.size = f;
    auto side = net.reachable(s);
    std::vector<char> dead_class(g.m(), 0);
    for (int i = 0; i < g.m(); ++i)
        if (side[g.edges()[i].a] != side[g.edges()[i].b]) {
            r.cut.push_back(i);
            dead_class[i] = 1;
        }
    r.source_side = reach_ids(g, s, std::vector<char>(g.n(), 0), dead_class);
    return r;
}

CutResult min_vertex_cut_bounded(const MultiGraph& g, int u, int v, int k, const std::vector<int>& forbidden)
{
    if (u == v) throw InputError("min_vertex_cut_bounded needs distinct endpoints");
    if (k < 0) throw InputError("k must be nonnegative");
    int s = g.pos(u), t = g.pos(v);
    std::vector<char> inf(g.n(), 0);
    for (int id : forbidden) inf[g.pos(id)] = 1;
    if (inf[s] || inf[t]) throw InputError("endpoints may not be forbidden");
    inf[s] = inf[t] = 1;
    const int big = k + 1;
    FlowNetwork net(2 * g.n());
    std::vector<int> split(g.n());
    for (int p = 0; p < g.n(); ++p) split[p] = net.add(2 * p, 2 * p + 1, inf[p] ? big : 1);
    for (const auto& e : g.edges()) {
        net.add(2 * e.a + 1, 2 * e.b, big);
        net.add(2 * e.b + 1, 2 * e.a, big);
    }
    CutResult r;
    int f = net.run(2 * s + 1, 2 * t, k + 1);
    if (f > k) return r;
    r.exceeds = false;
    r.size = f;
    auto side = net.reachable(2 * s + 1);
    std::vector<char> dead(g.n(), 0);
    for (int p = 0; p < g.n(); ++p)
        if (side[2 * p] && !side[2 * p + 1]) {
            dead[p] = 1;
            r.cut.push_back(g.id(p));
        }
    r.source_side = reach_ids(g, s, dead, std::vector<char>(g.m(), 0));
    return r;
}

KargerResult karger_min_cut(const MultiGraph& g, int trials, std::uint64_t seed)
{
    if (trials < 1) throw InputError("karger_min_cut needs trials >= 1");
    KargerResult best;
    if (g.n() < 2 || !is_connected(g)) return best;
    best.size = -1;
    std::vector<std::pair<double, int>> order(g.m());
    DisjointSets ds;
    for (int trial = 0; trial < trials; ++trial) {
        std::mt19937_64 rng(mix_seed(seed, static_cast<std::uint64_t>(trial)));
        // a class of multiplicity c is first hit at an Exp(c) time
        for (int i = 0; i < g.m(); ++i) {
            std::exponential_distribution<double> ex(g.edges()[i].mult);
            order[i] = {ex(rng), i};
        }
        std::sort(order.begin(), order.end());
        ds.reset(g.n());
        int comps = g.n();
        for (const auto& [key, i] : order) {
            if (comps == 2) break;
            if (ds.unite(g.edges()[i].a, g.edges()[i].b)) --comps;
        }
        int size = 0;
        std::vector<int> cut;
        for (int i = 0; i < g.m(); ++i)
            if (ds.find(g.edges()[i].a) != ds.find(g.edges()[i].b)) {
                size += g.edges()[i].mult;
                cut.push_back(i);
            }
        if (best.size < 0 || size < best.size) {
            best.size = size;
            best.cut = std::move(cut);
        }
    }
    return best;
}

std::vector<std::vector<int>> disjoint_paths(const MultiGraph& g, const std::vector<char>& sources,
                                             const std::vector<char>& sinks,
                                             const std::vector<char>& blocked, int limit)
{
    // split every vertex; sources hang off a super source, sinks off a super sink
    const int n = g.n();
    const int S = 2 * n, T = 2 * n + 1;
    FlowNetwork net(2 * n + 2);
    for (int p = 0; p < n; ++p) {
        if (blocked[p]) continue;
        net.add(2 * p, 2 * p + 1, 1);
        if (sources[p]) net.add(S, 2 * p, 1);
        if (sinks[p]) net.add(2 * p + 1, T, 1);
    }
    for (const auto& e : g.edges()) {
        if (blocked[e.a] || blocked[e.b]) continue;
        // sources are only entered from the super source, sinks only left to the super sink
        if (!sources[e.b] && !sinks[e.a]) net.add(2 * e.a + 1, 2 * e.b, 1);
        if (!sources[e.a] && !sinks[e.b]) net.add(2 * e.b + 1, 2 * e.a, 1);
    }
    int f = net.run(S, T, limit);
    std::vector<std::vector<int>> paths;
    // peel paths by following saturated forward arcs
    std::vector<std::vector<int>> used(net.nodes());
    for (int x = 0; x < net.nodes(); ++x)
        for (int arc : net.out_arcs(x))
            if ((arc & 1) == 0 && net.flow_on(arc) > 0) used[x].push_back(arc);
    for (int i = 0; i < f; ++i) {
        std::vector<int> path;
        int x = S;
        while (x != T) {
            RC_ASSERT(!used[x].empty(), "flow decomposition lost a path");
            int arc = used[x].back();
            used[x].pop_back();
            x = net.arc_to(arc);
            if (x < 2 * n && (x & 1) == 0) path.push_back(x / 2);
        }
        paths.push_back(std::move(path));
    }
    return paths;
}

} // namespace rc

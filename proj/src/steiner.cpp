#include "rc/steiner.hpp"

#include <algorithm>
#include <set>

#include "rc/parallel.hpp"
#include "rc/separations.hpp"

namespace rc {

std::int64_t steiner_q(int k)
{
    const std::int64_t behaviors =
        sat_mul(sat_mul(sat_pow(2 * k, 2 * k), sat_pow(2, 2 * k)), k + 2);
    return sat_add(sat_mul(k, behaviors), 1);
}

std::vector<SteinerBehavior> steiner_behaviors(int borders, int k)
{
    std::vector<SteinerBehavior> out;
    for (const auto& rgs : all_partitions(borders)) {
        int classes = rgs.empty() ? 0 : *std::max_element(rgs.begin(), rgs.end()) + 1;
        for (std::uint32_t cy = 0; cy < (1u << classes); ++cy) {
            std::uint32_t y = 0;
            for (int i = 0; i < borders; ++i)
                if (cy >> rgs[i] & 1) y |= 1u << i;
            for (int s = 0; s <= k + 1; ++s) out.push_back({rgs, y, s});
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

std::vector<int> canonical_rgs(const std::vector<int>& labels)
{
    std::vector<int> out(labels.size());
    std::vector<std::pair<int, int>> seen;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        int id = -1;
        for (const auto& [l, c] : seen)
            if (l == labels[i]) id = c;
        if (id < 0) {
            id = static_cast<int>(seen.size());
            seen.push_back({labels[i], id});
        }
        out[i] = id;
    }
    return out;
}

// Best cut per behavior, with the deterministic (cost, pairs) order.
void offer(SteinerTable& table, const SteinerBehavior& beh, EdgeCut cut)
{
    auto it = table.find(beh);
    if (it == table.end())
        table.emplace(beh, std::move(cut));
    else if (cut < it->second)
        it->second = std::move(cut);
}

void merge_into(SteinerTable& into, SteinerTable&& from)
{
    for (auto& [beh, cut] : from) offer(into, beh, std::move(cut));
}

EdgeCut cut_of(const MultiGraph& g, const std::vector<int>& classes)
{
    EdgeCut c;
    for (int i : classes) {
        const auto& e = g.edges()[i];
        c.pairs.push_back({g.id(e.a), g.id(e.b)});
        c.cost += e.mult;
    }
    std::sort(c.pairs.begin(), c.pairs.end());
    return c;
}

// Records the candidate under the behavior it realizes when its cost fits the budget.
void record(const MultiGraph& g, int k, const std::vector<int>& classes, SteinerTable& table)
{
    std::int64_t cost = 0;
    for (int i : classes) cost += g.edges()[i].mult;
    if (cost > k) return;
    std::vector<char> dead(g.m(), 0);
    for (int i : classes) dead[i] = 1;
    offer(table, steiner_behavior_of(g, dead), cut_of(g, classes));
}

std::int64_t effective_q(const SolveContext& ctx, int k)
{
    return ctx.config().q_override > 0 ? ctx.config().q_override : steiner_q(k);
}

std::uint64_t brute_candidates(const MultiGraph& g, int k)
{
    int eligible = 0;
    for (const auto& e : g.edges())
        if (e.mult <= k) ++eligible;
    std::uint64_t total = 0;
    for (int i = 0; i <= k; ++i) total = std::min<std::uint64_t>(total + binom(eligible, i), 1ULL << 62);
    return total;
}

MultiGraph retag_borders(const MultiGraph& g, const std::vector<int>& border_ids)
{
    std::vector<std::uint8_t> tags = g.all_tags();
    for (auto& t : tags) t &= static_cast<std::uint8_t>(~kBorder);
    for (int id : border_ids) tags[g.pos(id)] |= kBorder;
    return g.with_tags(std::move(tags));
}

// One separation side: solve it, contract the unused edges, solve the rest.
std::optional<SteinerTable> recurse_on_side(const MultiGraph& g, int k, const std::vector<int>& side,
                                            const std::vector<int>& crossing, SolveContext& ctx, int depth)
{
    std::vector<char> in(g.n(), 0);
    for (int id : side) in[g.pos(id)] = 1;
    std::vector<int> borders;
    for (int p = 0; p < g.n(); ++p)
        if (in[p] && g.has_tag(p, kBorder)) borders.push_back(g.id(p));
    for (int c : crossing) {
        const auto& e = g.edges()[c];
        borders.push_back(g.id(in[e.a] ? e.a : e.b));
    }
    std::sort(borders.begin(), borders.end());
    borders.erase(std::unique(borders.begin(), borders.end()), borders.end());

    MultiGraph star = sparsify(retag_borders(induced_subgraph(g, side), borders), k);
    RC_ASSERT(star.n() < g.n(), "separation side did not shrink the instance");
    SteinerTable inner = solve_border_steiner(star, k, ctx, depth + 1);

    std::set<std::pair<int, int>> used;
    for (const auto& [beh, cut] : inner) used.insert(cut.pairs.begin(), cut.pairs.end());
    std::vector<int> rest;
    for (int i = 0; i < g.m(); ++i) {
        const auto& e = g.edges()[i];
        if (in[e.a] && in[e.b] && !used.count({g.id(e.a), g.id(e.b)})) rest.push_back(i);
    }
    if (rest.empty()) return std::nullopt;

    Contracted con = contract_edges(g, rest);
    MultiGraph reduced = sparsify(con.graph, k);
    RC_ASSERT(reduced.n() < g.n(), "contraction did not shrink the instance");
    ++ctx.stats().separations;
    SteinerTable outer = solve_border_steiner(reduced, k, ctx, depth + 1);

    // classes of g behind each class of the reduced graph
    std::map<std::pair<int, int>, std::vector<int>> behind;
    for (int i = 0; i < g.m(); ++i) {
        int u = con.iota(g.id(g.edges()[i].a)), v = con.iota(g.id(g.edges()[i].b));
        if (u == v) continue;
        behind[{std::min(u, v), std::max(u, v)}].push_back(i);
    }
    const auto g_borders = g.ids_with_tag(kBorder);
    const auto r_borders = reduced.ids_with_tag(kBorder);
    SteinerTable out;
    for (const auto& [beh, cut] : outer) {
        std::vector<int> classes;
        for (const auto& pr : cut.pairs) {
            auto it = behind.find(pr);
            RC_ASSERT(it != behind.end(), "reduced solution uses an unknown class");
            classes.insert(classes.end(), it->second.begin(), it->second.end());
        }
        std::sort(classes.begin(), classes.end());
        std::int64_t cost = 0;
        for (int c : classes) cost += g.edges()[c].mult;
        if (cost > k) continue;
        // lift the behavior through the contraction
        std::vector<int> labels;
        std::uint32_t y = 0;
        for (std::size_t i = 0; i < g_borders.size(); ++i) {
            int img = con.iota(g_borders[i]);
            auto pos = std::lower_bound(r_borders.begin(), r_borders.end(), img) - r_borders.begin();
            labels.push_back(beh.partition[pos]);
            if (beh.y >> pos & 1) y |= 1u << i;
        }
        SteinerBehavior lifted{canonical_rgs(labels), y, beh.s};
        std::vector<char> dead(g.m(), 0);
        for (int c : classes) dead[c] = 1;
        RC_ASSERT(steiner_behavior_of(g, dead) == lifted, "lifted behavior disagrees with simulation");
        offer(out, lifted, cut_of(g, classes));
    }
    return out;
}

} // namespace

SteinerBehavior steiner_behavior_of(const MultiGraph& g, const std::vector<char>& dead)
{
    DisjointSets ds(g.n());
    for (int i = 0; i < g.m(); ++i)
        if (!dead[i]) ds.unite(g.edges()[i].a, g.edges()[i].b);
    std::vector<char> has_terminal(g.n(), 0);
    SteinerBehavior beh;
    for (int p = 0; p < g.n(); ++p)
        if (g.has_tag(p, kTerminal)) {
            int r = ds.find(p);
            if (!has_terminal[r]) ++beh.s;
            has_terminal[r] = 1;
        }
    std::vector<int> labels;
    int idx = 0;
    for (int p = 0; p < g.n(); ++p) {
        if (!g.has_tag(p, kBorder)) continue;
        int r = ds.find(p);
        labels.push_back(r);
        if (has_terminal[r]) beh.y |= 1u << idx;
        ++idx;
    }
    beh.partition = canonical_rgs(labels);
    return beh;
}

SteinerDp::SteinerDp(std::vector<std::int64_t> a, std::vector<int> b, int max_l)
    : a_(std::move(a)), b_(std::move(b)), max_l_(max_l)
{
    RC_ASSERT(a_.size() == b_.size(), "component cost and terminal lists differ in length");
    const int p = components();
    table_.assign(static_cast<std::size_t>(p + 1) * (max_l_ + 1) * 2, kInf64);
    took_.assign(table_.size(), 0);
    from_t_.assign(table_.size(), 0);
    table_[at(0, 0, false)] = 0;
    auto get = [&](int j, int l, bool t) { return l < 0 ? kInf64 : table_[at(j, l, t)]; };
    auto plus = [](std::int64_t x, std::int64_t y) { return x >= kInf64 ? kInf64 : x + y; };
    for (int j = 1; j <= p; ++j) {
        const std::int64_t aj = a_[j - 1];
        const int bj = b_[j - 1];
        for (int l = 0; l <= max_l_; ++l) {
            // t = bottom: the remaining component with the core holds no other terminal
            {
                std::size_t c = at(j, l, false);
                if (bj == 0) {
                    std::int64_t skip = get(j - 1, l, false), take = plus(get(j - 1, l - bj, false), aj);
                    if (take < skip) {
                        table_[c] = take;
                        took_[c] = 1;
                    } else {
                        table_[c] = skip;
                    }
                } else {
                    table_[c] = plus(get(j - 1, l - bj, false), aj);
                    took_[c] = 1;
                }
                from_t_[c] = 0;
            }
            // t = top
            {
                std::size_t c = at(j, l, true);
                if (bj == 0) {
                    std::int64_t skip = get(j - 1, l, true), take = plus(get(j - 1, l - bj, true), aj);
                    if (take < skip) {
                        table_[c] = take;
                        took_[c] = 1;
                    } else {
                        table_[c] = skip;
                    }
                    from_t_[c] = 1;
                } else {
                    std::int64_t skip_bot = get(j - 1, l, false), skip_top = get(j - 1, l, true);
                    std::int64_t take = plus(get(j - 1, l - bj, true), aj);
                    std::int64_t best = std::min({skip_bot, skip_top, take});
                    table_[c] = best;
                    if (best == skip_bot) {
                        from_t_[c] = 0;
                    } else if (best == skip_top) {
                        from_t_[c] = 1;
                    } else {
                        took_[c] = 1;
                        from_t_[c] = 1;
                    }
                }
            }
        }
    }
}

std::size_t SteinerDp::at(int j, int l, bool t) const
{
    return (static_cast<std::size_t>(j) * (max_l_ + 1) + l) * 2 + (t ? 1 : 0);
}

std::int64_t SteinerDp::value(int j, int l, bool t) const
{
    if (j < 0 || j > components() || l < 0 || l > max_l_) throw InputError("dp index out of range");
    return table_[at(j, l, t)];
}

std::vector<int> SteinerDp::extract(int l, bool t) const
{
    std::vector<int> gamma;
    int j = components();
    if (value(j, l, t) >= kInf64) throw InputError("dp cell is infeasible");
    while (j > 0) {
        std::size_t c = at(j, l, t);
        if (took_[c]) {
            gamma.push_back(j - 1);
            l -= b_[j - 1];
        }
        t = from_t_[c] != 0;
        --j;
    }
    RC_ASSERT(l == 0 && !t, "dp backlinks did not end at the base cell");
    std::reverse(gamma.begin(), gamma.end());
    return gamma;
}

SteinerTable brute_force_border_steiner(const MultiGraph& g, int k, SolveContext& ctx)
{
    ++ctx.stats().brute_force_calls;
    std::vector<int> eligible;
    for (int i = 0; i < g.m(); ++i)
        if (g.edges()[i].mult <= k) eligible.push_back(i);
    SteinerTable table;
    std::vector<int> classes;
    for_each_subset_upto(static_cast<int>(eligible.size()), k, [&](const std::vector<int>& idx) {
        std::int64_t cost = 0;
        for (int i : idx) cost += g.edges()[eligible[i]].mult;
        if (cost > k) return true;
        classes.clear();
        for (int i : idx) classes.push_back(eligible[i]);
        record(g, k, classes, table);
        return true;
    });
    return table;
}

namespace {

struct HcWorker {
    SteinerTable table;
    std::set<std::vector<int>> tried;
    std::set<std::pair<std::uint64_t, std::uint64_t>> partitions;
    DisjointSets ds;
    std::vector<char> in;
};

void hc_branch(const MultiGraph& g, int k, std::int64_t q, const std::vector<int>& border_index, HcWorker& w)
{
    const int n = g.n();
    w.ds.reset(n);
    for (int i = 0; i < g.m(); ++i)
        if (w.in[i]) w.ds.unite(g.edges()[i].a, g.edges()[i].b);
    int core = -1;
    for (int p = 0; p < n; ++p)
        if (w.ds.find(p) == p && w.ds.size_of(p) > q) {
            if (core < 0)
                core = p;
            else
                w.ds.unite(core, p);
        }
    if (core < 0) return;
    core = w.ds.find(core);

    // H vertices are union-find roots; skip partitions already handled
    std::vector<int> node(n), first(n, -1);
    std::uint64_t h1 = 0x51ed27, h2 = 0x2545f4;
    for (int p = 0; p < n; ++p) {
        node[p] = w.ds.find(p);
        if (first[node[p]] < 0) first[node[p]] = p;
        std::uint64_t v = static_cast<std::uint64_t>(first[node[p]]) + 1;
        h1 = splitmix64(h1 ^ (v + static_cast<std::uint64_t>(p) * 131));
        h2 = splitmix64(h2 + v * 0x9e3779b97f4a7c15ULL + static_cast<std::uint64_t>(p));
    }
    if (!w.partitions.insert({h1, h2}).second) return;

    // components of H minus the core
    DisjointSets comp(n);
    for (const auto& e : g.edges()) {
        int x = node[e.a], y = node[e.b];
        if (x != y && x != core && y != core) comp.unite(x, y);
    }
    std::vector<int> comp_index(n, -1);
    std::vector<std::vector<int>> comp_classes;
    std::vector<std::int64_t> a;
    std::vector<int> terminals;
    std::vector<std::uint32_t> border_bits;
    for (int p = 0; p < n; ++p) {
        if (node[p] == core) continue;
        int r = comp.find(node[p]);
        if (comp_index[r] < 0) {
            comp_index[r] = static_cast<int>(a.size());
            a.push_back(0);
            terminals.push_back(0);
            border_bits.push_back(0);
            comp_classes.emplace_back();
        }
    }
    std::vector<char> node_terminal(n, 0);
    for (int p = 0; p < n; ++p) {
        if (node[p] == core) continue;
        int ci = comp_index[comp.find(node[p])];
        if (g.has_tag(p, kTerminal) && !node_terminal[node[p]]) {
            node_terminal[node[p]] = 1;
            ++terminals[ci];
        }
        if (border_index[p] >= 0) border_bits[ci] |= 1u << border_index[p];
    }
    for (int i = 0; i < g.m(); ++i) {
        int x = node[g.edges()[i].a], y = node[g.edges()[i].b];
        if (x == y) continue;
        int ci = comp_index[comp.find(x != core ? x : y)];
        comp_classes[ci].push_back(i);
        a[ci] += g.edges()[i].mult;
    }

    std::vector<int> plain, bordered;
    for (std::size_t c = 0; c < a.size(); ++c) (border_bits[c] ? bordered : plain).push_back(static_cast<int>(c));
    std::vector<std::int64_t> pa;
    std::vector<int> pb;
    for (int c : plain) {
        pa.push_back(a[c]);
        pb.push_back(terminals[c]);
    }
    SteinerDp dp(pa, pb, k + 1);
    const int p = dp.components();
    std::vector<int> classes;
    for (std::uint32_t out = 0; out < (1u << bordered.size()); ++out) {
        std::int64_t base = 0;
        for (std::size_t i = 0; i < bordered.size(); ++i)
            if (out >> i & 1) base += a[bordered[i]];
        if (base > k) continue;
        for (int l = 0; l <= k + 1; ++l)
            for (bool t : {false, true}) {
                std::int64_t v = dp.value(p, l, t);
                if (v >= kInf64 || base + v > k) continue;
                classes.clear();
                for (std::size_t i = 0; i < bordered.size(); ++i)
                    if (out >> i & 1)
                        classes.insert(classes.end(), comp_classes[bordered[i]].begin(),
                                       comp_classes[bordered[i]].end());
                for (int j : dp.extract(l, t))
                    classes.insert(classes.end(), comp_classes[plain[j]].begin(), comp_classes[plain[j]].end());
                std::sort(classes.begin(), classes.end());
                if (!w.tried.insert(classes).second) continue;
                record(g, k, classes, w.table);
            }
    }
}

} // namespace

SteinerTable high_connectivity_steiner(const MultiGraph& g, int k, std::int64_t q, SolveContext& ctx)
{
    ++ctx.stats().hc_invocations;
    SteinerTable table;
    record(g, k, {}, table);
    if (k == 0 || g.m() == 0) return table;

    std::vector<int> border_index(g.n(), -1);
    int nb = 0;
    for (int p = 0; p < g.n(); ++p)
        if (g.has_tag(p, kBorder)) border_index[p] = nb++;

    SetFamily fam = ctx.family(g.m(), sat_mul(3, sat_mul(q, k)), k, "steiner-high-connectivity");
    ctx.stats().branches += static_cast<std::int64_t>(fam.size());
    const int threads = std::max(1, ctx.config().threads);
    std::vector<HcWorker> workers(threads);
    parallel_for(fam.size(), threads, [&](std::size_t i, int w) {
        fam.member(i, workers[w].in);
        hc_branch(g, k, q, border_index, workers[w]);
    });
    for (auto& w : workers) merge_into(table, std::move(w.table));
    return table;
}

SteinerTable solve_border_steiner(const MultiGraph& g, int k, SolveContext& ctx, int depth)
{
    ctx.note_depth(depth);
    if (k < 0) throw InputError("budget must be non-negative");
    if (!is_connected(g)) throw InputError("border Steiner instance must be connected");
    RC_ASSERT(static_cast<int>(g.ids_with_tag(kBorder).size()) <= 2 * k, "more than 2k border terminals");
    RC_ASSERT(g.ids_with_tag(kBorder).size() <= 30, "border terminal count exceeds mask width");
    const std::int64_t q = effective_q(ctx, k);

    if (k > 0) {
        if (auto sep = find_good_edge_separation(g, q, k, ctx)) {
            std::vector<const std::vector<int>*> sides;
            for (const auto* side : {&sep->v1, &sep->v2}) {
                int borders = 0;
                for (int id : *side)
                    if (g.has_tag(g.pos(id), kBorder)) ++borders;
                if (borders <= k) sides.push_back(side);
            }
            std::stable_sort(sides.begin(), sides.end(),
                             [](const auto* x, const auto* y) { return x->size() < y->size(); });
            for (const auto* side : sides)
                if (auto res = recurse_on_side(g, k, *side, sep->crossing, ctx, depth)) return *res;
            // neither side let the contraction make progress
            if (brute_candidates(g, k) <= static_cast<std::uint64_t>(ctx.config().brute_limit))
                return brute_force_border_steiner(g, k, ctx);
            ctx.stats().exact = false;
            return high_connectivity_steiner(g, k, q, ctx);
        }
    }
    if (g.n() <= sat_mul(k + 1, q) || k == 0) return brute_force_border_steiner(g, k, ctx);
    return high_connectivity_steiner(g, k, q, ctx);
}

SteinerResult solve_steiner(const SteinerInstance& inst, SolveContext& ctx)
{
    if (inst.s < 1) throw InputError("s must be at least 1");
    if (inst.k < 0) throw InputError("k must be non-negative");
    const MultiGraph& g = inst.g;
    std::vector<std::uint8_t> tags(g.n(), 0);
    for (int t : inst.terminals) tags[g.pos(t)] = kTerminal;

    SteinerResult res;
    int comp_count = 0;
    auto label = component_labels(g, &comp_count);
    std::vector<char> comp_terminal(comp_count, 0);
    int terminal_comps = 0;
    for (int p = 0; p < g.n(); ++p)
        if (tags[p] && !comp_terminal[label[p]]) {
            comp_terminal[label[p]] = 1;
            ++terminal_comps;
        }
    if (inst.s <= terminal_comps) {
        res.feasible = true;
        return res;
    }
    const int s = inst.s - std::max(0, terminal_comps - 1);
    if (terminal_comps == 0 || s > inst.k + 1) return res;

    // connect the components through a (k+2)-clique that no budget-k cut can split
    GraphBuilder b(g.next_id());
    for (int p = 0; p < g.n(); ++p) b.add_vertex(g.id(p), tags[p]);
    for (const auto& e : g.edges()) b.add_edge(g.id(e.a), g.id(e.b), e.mult);
    if (comp_count > 1) {
        std::vector<int> rep(comp_count, -1);
        for (int p = 0; p < g.n(); ++p)
            if (rep[label[p]] < 0) rep[label[p]] = g.id(p);
        std::vector<int> clique;
        for (int i = 0; i < inst.k + 2; ++i) {
            clique.push_back(g.next_id() + i);
            b.add_vertex(clique.back());
        }
        for (std::size_t i = 0; i < clique.size(); ++i) {
            for (std::size_t j = i + 1; j < clique.size(); ++j) b.add_edge(clique[i], clique[j]);
            for (int r : rep) b.add_edge(clique[i], r);
        }
    }
    MultiGraph h = sparsify(b.build(), inst.k);
    SteinerTable table = solve_border_steiner(h, inst.k, ctx);
    auto it = table.find(SteinerBehavior{{}, 0, s});
    if (it == table.end()) return res;

    EdgeCut cut;
    for (const auto& [u, v] : it->second.pairs) {
        if (!g.has(u) || !g.has(v)) continue;
        cut.pairs.push_back({u, v});
        cut.cost += g.edges()[g.edge_index_by_id(u, v)].mult;
    }
    RC_ASSERT(verify_steiner(inst, cut.pairs), "solver returned an invalid Steiner cut");
    res.feasible = true;
    res.cut = std::move(cut);
    return res;
}

bool verify_steiner(const SteinerInstance& inst, const std::vector<std::pair<int, int>>& pairs)
{
    const MultiGraph& g = inst.g;
    std::vector<char> dead(g.m(), 0);
    std::int64_t cost = 0;
    for (const auto& [u, v] : pairs) {
        int c = g.edge_index_by_id(u, v);
        if (c < 0) throw InputError("cut names a pair that is not an edge");
        if (dead[c]) continue;
        dead[c] = 1;
        cost += g.edges()[c].mult;
    }
    if (cost > inst.k) return false;
    DisjointSets ds(g.n());
    for (int i = 0; i < g.m(); ++i)
        if (!dead[i]) ds.unite(g.edges()[i].a, g.edges()[i].b);
    std::set<int> roots;
    for (int t : inst.terminals) roots.insert(ds.find(g.pos(t)));
    return static_cast<int>(roots.size()) >= inst.s;
}

} // namespace rc

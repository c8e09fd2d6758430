#include "rc/mwcu.hpp"

#include <algorithm>
#include <optional>
#include <set>

#include "rc/flows.hpp"
#include "rc/parallel.hpp"
#include "rc/separations.hpp"

namespace rc {

MwcuThresholds mwcu_thresholds(int k, const SolverConfig& cfg)
{
    MwcuThresholds th;
    const std::int64_t k3 = static_cast<std::int64_t>(k) * k * k;
    const std::int64_t base = 2 * k3 + 6 * static_cast<std::int64_t>(k) * k + 1;
    th.q = cfg.q_override > 0 ? cfg.q_override : sat_add(sat_mul(k, sat_pow(base, 2 * k)), k);
    th.t = cfg.t_override > 0 ? cfg.t_override
                              : sat_add(sat_mul(sat_add(sat_mul(2, th.q), 2), sat_pow(2, k) - 1), 2 * k + 1);
    return th;
}

namespace {

bool is_deletable(const MultiGraph& g, int p)
{
    return !g.has_tag(p, kTerminal) && !g.has_tag(p, kUndeletable);
}

std::vector<int> border_positions(const MultiGraph& g)
{
    std::vector<int> out;
    for (int p = 0; p < g.n(); ++p)
        if (g.has_tag(p, kBorder)) out.push_back(p);
    return out;
}

// restricted-growth labels for the new classes of rb, extending `base` in place
void extend_rb(std::size_t i, int fresh, const std::vector<int>& labels, std::vector<int>& rb,
               std::vector<std::vector<int>>& out)
{
    if (i == rb.size()) {
        out.push_back(rb);
        return;
    }
    if (rb[i] == -1) {
        extend_rb(i + 1, fresh, labels, rb, out);
        return;
    }
    for (int c : labels) {
        rb[i] = c;
        extend_rb(i + 1, fresh, labels, rb, out);
    }
    for (int j = 0; j <= fresh; ++j) {
        rb[i] = -2 - j;
        extend_rb(i + 1, std::max(fresh, j + 1), labels, rb, out);
    }
    rb[i] = 0;
}

std::vector<int> canonical_rgs(const std::vector<int>& labels)
{
    std::vector<int> out(labels.size(), -1);
    std::vector<std::pair<int, int>> seen;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (labels[i] == -1) continue;
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

void offer(MwcuTable& table, const MwcuBehavior& beh, const NodeCut& cut)
{
    auto it = table.find(beh);
    if (it == table.end())
        table.emplace(beh, cut);
    else if (cut < it->second)
        it->second = cut;
}

void merge_into(MwcuTable& into, const MwcuTable& from)
{
    for (const auto& [beh, cut] : from) offer(into, beh, cut);
}

// Shared scratch for recording a candidate under every added relation on the surviving borders.
struct Recorder {
    const MwcuBorder& ib;
    std::vector<int> borders;
    std::vector<std::vector<std::vector<int>>> partitions; // by surviving-border count
    std::vector<char> x;

    explicit Recorder(const MwcuBorder& b) : ib(b), borders(border_positions(b.g)), x(b.g.n(), 0)
    {
        for (std::size_t s = 0; s <= borders.size(); ++s) partitions.push_back(all_partitions(static_cast<int>(s)));
    }

    // x_pos: candidate deletion positions (deletable, at most k)
    void record(const std::vector<int>& x_pos, MwcuTable& table)
    {
        if (static_cast<int>(x_pos.size()) > ib.k) return;
        std::fill(x.begin(), x.end(), 0);
        for (int p : x_pos) x[p] = 1;
        std::vector<int> alive;
        for (std::size_t i = 0; i < borders.size(); ++i)
            if (!x[borders[i]]) alive.push_back(static_cast<int>(i));
        NodeCut cut;
        for (int p : x_pos) cut.ids.push_back(ib.g.id(p));
        std::sort(cut.ids.begin(), cut.ids.end());
        std::vector<int> eb(borders.size(), -1);
        MwcuBehavior beh;
        for (const auto& part : partitions[alive.size()]) {
            for (std::size_t j = 0; j < alive.size(); ++j) eb[alive[j]] = part[j];
            if (mwcu_behavior_of(ib, x, eb, beh)) offer(table, beh, cut);
        }
    }
};

std::uint64_t brute_candidates(const MultiGraph& g, int k)
{
    int d = 0;
    for (int p = 0; p < g.n(); ++p)
        if (is_deletable(g, p)) ++d;
    std::uint64_t total = 0;
    for (int i = 0; i <= k; ++i) total = std::min<std::uint64_t>(total + binom(d, i), 1ULL << 62);
    return total;
}

MultiGraph rebuild(const MultiGraph& g, const std::vector<char>& keep,
                   const std::set<std::pair<int, int>>& extra)
{
    GraphBuilder b(g.next_id());
    for (int p = 0; p < g.n(); ++p)
        if (keep[p]) b.add_vertex(g.id(p), g.tags(p));
    std::set<std::pair<int, int>> edges = extra;
    for (const auto& e : g.edges())
        if (keep[e.a] && keep[e.b]) edges.insert({g.id(e.a), g.id(e.b)});
    for (const auto& [u, v] : edges) b.add_edge(u, v);
    return b.build();
}

MultiGraph simple_graph(const MultiGraph& g)
{
    return rebuild(g, std::vector<char>(g.n(), 1), {});
}

std::vector<int> neighbour_ids(const MultiGraph& g, int p)
{
    std::vector<int> out;
    for (const auto& [q, c] : g.adj(p)) out.push_back(g.id(q));
    return out;
}

enum class Cleanup { Unchanged, Changed, Infeasible };

// Terminal identification and duplicate-terminal deletion after a recursive call.
Cleanup clean_terminals(MwcuBorder& ib, std::vector<int> scope)
{
    bool changed = false;
    // pairs inside scope that no k deletions can separate
    for (bool again = true; again;) {
        again = false;
        std::sort(scope.begin(), scope.end());
        for (std::size_t i = 0; i < scope.size() && !again; ++i) {
            for (std::size_t j = i + 1; j < scope.size() && !again; ++j) {
                int pu = ib.g.pos(scope[i]), pv = ib.g.pos(scope[j]);
                bool joined = ib.g.edge_index(pu, pv) >= 0;
                if (!joined) {
                    auto nu = neighbour_ids(ib.g, pu), nv = neighbour_ids(ib.g, pv);
                    std::vector<int> common;
                    std::set_intersection(nu.begin(), nu.end(), nv.begin(), nv.end(), std::back_inserter(common));
                    joined = static_cast<int>(common.size()) > ib.k;
                    for (int w : common)
                        if (!is_deletable(ib.g, ib.g.pos(w))) joined = true;
                }
                if (!joined) continue;
                const int u = scope[i], v = scope[j];
                if (ib.cls.at(u) != ib.cls.at(v)) return Cleanup::Infeasible;
                auto merged = identify_vertices(ib.g, {u, v});
                const int w = merged.iota(u);
                const int c = ib.cls.at(u);
                ib.g = simple_graph(merged.graph);
                ib.cls.erase(u);
                ib.cls.erase(v);
                ib.cls[w] = c;
                scope.erase(scope.begin() + static_cast<std::ptrdiff_t>(j));
                scope.erase(scope.begin() + static_cast<std::ptrdiff_t>(i));
                scope.push_back(w);
                changed = again = true;
            }
        }
    }
    // a third terminal of a class with the same terminal-free neighbourhood is redundant
    std::map<std::pair<int, std::vector<int>>, std::vector<int>> groups;
    for (const auto& [id, c] : ib.cls) {
        auto nb = neighbour_ids(ib.g, ib.g.pos(id));
        bool clean = true;
        for (int w : nb)
            if (ib.g.has_tag(ib.g.pos(w), kTerminal)) clean = false;
        if (clean) groups[{c, nb}].push_back(id);
    }
    std::vector<int> drop;
    for (auto& [key, ids] : groups)
        for (std::size_t i = 2; i < ids.size(); ++i) drop.push_back(ids[i]);
    if (!drop.empty()) {
        ib.g = remove_vertices(ib.g, drop);
        for (int id : drop) ib.cls.erase(id);
        changed = true;
    }
    return changed ? Cleanup::Changed : Cleanup::Unchanged;
}

enum class Step { Progress, NoProgress, Infeasible };

// Solves the side V* with its neighbourhood as border, then bypasses every
// vertex of V* that no recorded solution uses.
Step recurse_on_side(MwcuBorder& cur, const std::vector<int>& vstar, SolveContext& ctx, int depth)
{
    const MultiGraph& g = cur.g;
    std::vector<char> in_v(g.n(), 0), in_w(g.n(), 0);
    for (int id : vstar) in_v[g.pos(id)] = in_w[g.pos(id)] = 1;
    std::vector<int> w_ids;
    std::vector<char> zw(g.n(), 0);
    for (int p = 0; p < g.n(); ++p)
        if (in_v[p])
            for (const auto& [q, c] : g.adj(p))
                if (!in_v[q]) zw[q] = in_w[q] = 1;
    for (int p = 0; p < g.n(); ++p)
        if (in_w[p]) w_ids.push_back(g.id(p));

    MwcuBorder sub;
    sub.k = cur.k;
    MultiGraph induced = induced_subgraph(g, w_ids);
    std::vector<std::uint8_t> tags(induced.n());
    for (int p = 0; p < induced.n(); ++p) {
        const int op = g.pos(induced.id(p));
        tags[p] = static_cast<std::uint8_t>(g.tags(op) & ~kBorder);
        if (g.has_tag(op, kBorder) || zw[op]) tags[p] |= kBorder;
    }
    sub.g = induced.with_tags(std::move(tags));
    for (const auto& [id, c] : cur.cls)
        if (in_w[g.pos(id)]) sub.cls[id] = c;
    RC_ASSERT(static_cast<int>(sub.g.ids_with_tag(kBorder).size()) <= 2 * cur.k, "side has too many borders");

    ++ctx.stats().separations;
    MwcuTable table = solve_border_mwcu(sub, ctx, depth + 1);
    std::set<int> used;
    for (int id : sub.g.ids_with_tag(kBorder)) used.insert(id);
    for (const auto& [beh, cut] : table) used.insert(cut.ids.begin(), cut.ids.end());

    std::vector<int> gone, scope;
    for (int id : vstar) {
        const int p = g.pos(id);
        if (g.has_tag(p, kTerminal))
            scope.push_back(id);
        else if (!used.count(id))
            gone.push_back(id);
    }
    if (!gone.empty()) cur.g = bypass_vertices(cur.g, gone);
    Cleanup cl = clean_terminals(cur, scope);
    if (cl == Cleanup::Infeasible) return Step::Infeasible;
    return gone.empty() && cl == Cleanup::Unchanged ? Step::NoProgress : Step::Progress;
}

void check_border_instance(const MwcuBorder& ib)
{
    if (ib.k < 0) throw InputError("budget must be non-negative");
    if (!is_connected(ib.g)) throw InputError("border instance must be connected");
    const auto borders = ib.g.ids_with_tag(kBorder);
    RC_ASSERT(static_cast<int>(borders.size()) <= 2 * ib.k || borders.empty(), "more than 2k border terminals");
    RC_ASSERT(borders.size() <= 30, "border terminal count exceeds mask width");
    for (int id : borders) RC_ASSERT(!ib.g.has_tag(ib.g.pos(id), kTerminal), "border terminal is a terminal");
    for (int id : ib.g.ids_with_tag(kTerminal)) RC_ASSERT(ib.cls.count(id) != 0, "terminal without a class");
    RC_ASSERT(ib.cls.size() == ib.g.ids_with_tag(kTerminal).size(), "class map names a non-terminal");
}

} // namespace

std::vector<MwcuBehavior> mwcu_behaviors(int borders, const std::vector<int>& class_labels)
{
    std::vector<int> labels = class_labels;
    std::sort(labels.begin(), labels.end());
    labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
    std::vector<MwcuBehavior> out;
    for (std::uint32_t x = 0; x < (1u << borders); ++x) {
        std::vector<int> rb(borders, 0);
        std::vector<int> alive;
        for (int i = 0; i < borders; ++i) {
            if (x >> i & 1)
                rb[i] = -1;
            else
                alive.push_back(i);
        }
        std::vector<std::vector<int>> rbs;
        extend_rb(0, 0, labels, rb, rbs);
        const auto parts = all_partitions(static_cast<int>(alive.size()));
        for (const auto& r : rbs) {
            for (const auto& part : parts) {
                // the added relation must refine the class relation
                bool refines = true;
                for (std::size_t a = 0; a < alive.size() && refines; ++a)
                    for (std::size_t b = a + 1; b < alive.size(); ++b)
                        if (part[a] == part[b] && r[alive[a]] != r[alive[b]]) refines = false;
                if (!refines) continue;
                MwcuBehavior beh;
                beh.x = x;
                beh.eb.assign(borders, -1);
                for (std::size_t a = 0; a < alive.size(); ++a) beh.eb[alive[a]] = part[a];
                beh.rb = r;
                out.push_back(std::move(beh));
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

bool mwcu_behavior_of(const MwcuBorder& ib, const std::vector<char>& x, const std::vector<int>& eb,
                      MwcuBehavior& out)
{
    const MultiGraph& g = ib.g;
    DisjointSets ds(g.n());
    for (const auto& e : g.edges())
        if (!x[e.a] && !x[e.b]) ds.unite(e.a, e.b);
    const auto borders = border_positions(g);
    RC_ASSERT(eb.size() == borders.size(), "added relation has the wrong length");
    for (std::size_t i = 0; i < borders.size(); ++i) {
        if (x[borders[i]] || eb[i] < 0) continue;
        for (std::size_t j = i + 1; j < borders.size(); ++j)
            if (!x[borders[j]] && eb[j] == eb[i]) ds.unite(borders[i], borders[j]);
    }
    std::map<int, int> class_of_root, root_of_class;
    for (const auto& [id, c] : ib.cls) {
        const int r = ds.find(g.pos(id));
        auto a = class_of_root.emplace(r, c);
        if (!a.second && a.first->second != c) return false;
        auto b = root_of_class.emplace(c, r);
        if (!b.second && b.first->second != r) return false;
    }
    out.x = 0;
    out.eb.assign(borders.size(), -1);
    out.rb.assign(borders.size(), -1);
    std::vector<int> fresh_roots;
    for (std::size_t i = 0; i < borders.size(); ++i) {
        if (x[borders[i]]) {
            out.x |= 1u << i;
            continue;
        }
        RC_ASSERT(eb[i] >= 0, "surviving border without a label");
        out.eb[i] = eb[i];
        const int r = ds.find(borders[i]);
        auto it = class_of_root.find(r);
        if (it != class_of_root.end()) {
            out.rb[i] = it->second;
            continue;
        }
        auto f = std::find(fresh_roots.begin(), fresh_roots.end(), r);
        if (f == fresh_roots.end()) {
            fresh_roots.push_back(r);
            f = fresh_roots.end() - 1;
        }
        out.rb[i] = -2 - static_cast<int>(f - fresh_roots.begin());
    }
    out.eb = canonical_rgs(out.eb);
    return true;
}

bool mwcu_solves(const MwcuBorder& ib, const std::vector<int>& x_ids, const MwcuBehavior& beh)
{
    const MultiGraph& g = ib.g;
    if (static_cast<int>(x_ids.size()) > ib.k) return false;
    std::vector<char> x(g.n(), 0);
    for (int id : x_ids) {
        const int p = g.find(id);
        if (p < 0 || !is_deletable(g, p) || x[p]) return false;
        x[p] = 1;
    }
    const auto borders = border_positions(g);
    if (beh.eb.size() != borders.size()) return false;
    for (std::size_t i = 0; i < borders.size(); ++i)
        if ((x[borders[i]] != 0) != ((beh.x >> i & 1) != 0)) return false;
    MwcuBehavior got;
    return mwcu_behavior_of(ib, x, beh.eb, got) && got == beh;
}

MultiGraph bypass_vertices(const MultiGraph& g, const std::vector<int>& ids)
{
    std::vector<char> gone(g.n(), 0);
    for (int id : ids) {
        const int p = g.pos(id);
        RC_ASSERT(!g.has_tag(p, kTerminal) && !g.has_tag(p, kBorder), "bypassing a terminal");
        gone[p] = 1;
    }
    std::vector<char> keep(g.n());
    for (int p = 0; p < g.n(); ++p) keep[p] = !gone[p];
    std::set<std::pair<int, int>> extra;
    std::vector<char> seen(g.n(), 0);
    for (int s = 0; s < g.n(); ++s) {
        if (!gone[s] || seen[s]) continue;
        std::vector<int> queue{s};
        std::set<int> rim;
        seen[s] = 1;
        for (std::size_t h = 0; h < queue.size(); ++h)
            for (const auto& [q, c] : g.adj(queue[h])) {
                if (!gone[q])
                    rim.insert(g.id(q));
                else if (!seen[q]) {
                    seen[q] = 1;
                    queue.push_back(q);
                }
            }
        for (auto a = rim.begin(); a != rim.end(); ++a)
            for (auto b = std::next(a); b != rim.end(); ++b) extra.insert({*a, *b});
    }
    return rebuild(g, keep, extra);
}

MwcuTable brute_force_border_mwcu(const MwcuBorder& ib, SolveContext& ctx)
{
    ++ctx.stats().brute_force_calls;
    std::vector<int> deletable;
    for (int p = 0; p < ib.g.n(); ++p)
        if (is_deletable(ib.g, p)) deletable.push_back(p);
    Recorder rec(ib);
    MwcuTable table;
    std::vector<int> x;
    for_each_subset_upto(static_cast<int>(deletable.size()), ib.k, [&](const std::vector<int>& idx) {
        x.clear();
        for (int i : idx) x.push_back(deletable[i]);
        rec.record(x, table);
        return true;
    });
    return table;
}

namespace {

struct HcWorker {
    MwcuTable table;
    std::set<std::vector<int>> tried;
    std::vector<char> in;
};

// One family member: every deleted-border guess and every choice of the
// terminal set allowed to stay with the big component.
void hc_branch(const MwcuBorder& ib, const std::vector<int>& universe, Recorder& rec, HcWorker& w)
{
    const MultiGraph& g = ib.g;
    const int n = g.n();
    std::vector<char> in_s(n, 0);
    for (int p = 0; p < n; ++p)
        if (!is_deletable(g, p)) in_s[p] = 1; // undeletable vertices never meet a solution
    for (std::size_t i = 0; i < universe.size(); ++i)
        if (w.in[i]) in_s[universe[i]] = 1;

    const auto& borders = rec.borders;
    std::vector<int> class_list;
    for (const auto& [id, c] : ib.cls) class_list.push_back(c);
    std::sort(class_list.begin(), class_list.end());
    class_list.erase(std::unique(class_list.begin(), class_list.end()), class_list.end());

    std::vector<int> deletable_borders;
    for (std::size_t i = 0; i < borders.size(); ++i)
        if (is_deletable(g, borders[i])) deletable_borders.push_back(static_cast<int>(i));

    for_each_subset_upto(static_cast<int>(deletable_borders.size()), ib.k, [&](const std::vector<int>& xi) {
        std::vector<char> xb(n, 0);
        std::uint32_t xmask = 0;
        for (int i : xi) {
            xb[borders[deletable_borders[i]]] = 1;
            xmask |= 1u << deletable_borders[i];
        }
        // components of G[S + T + surviving borders]
        std::vector<char> in_h(n, 0);
        for (int p = 0; p < n; ++p) in_h[p] = !xb[p] && (in_s[p] || g.has_tag(p, kTerminal) || g.has_tag(p, kBorder));
        DisjointSets ds(n);
        for (const auto& e : g.edges())
            if (in_h[e.a] && in_h[e.b]) ds.unite(e.a, e.b);
        // per component: classes present, surviving borders present, outside neighbours
        std::map<int, std::pair<std::set<int>, std::uint32_t>> dset;
        for (const auto& [id, c] : ib.cls) dset[ds.find(g.pos(id))].first.insert(c);
        for (std::size_t i = 0; i < borders.size(); ++i)
            if (!xb[borders[i]]) dset[ds.find(borders[i])].second |= 1u << i;
        std::map<int, std::vector<int>> rim;
        for (int p = 0; p < n; ++p) {
            if (!in_h[p]) continue;
            const int r = ds.find(p);
            if (!dset.count(r)) continue;
            for (const auto& [q, c] : g.adj(p))
                if (!in_h[q] && !xb[q]) rim[r].push_back(q);
        }
        const std::uint32_t alive = ((borders.size() >= 32 ? 0u : (1u << borders.size())) - 1u) & ~xmask;
        std::vector<char> mark(n, 0);
        auto try_big = [&](int big_class, std::uint32_t big_borders) {
            std::vector<int> x;
            for (int p = 0; p < n; ++p)
                if (xb[p]) x.push_back(p);
            std::fill(mark.begin(), mark.end(), 0);
            for (const auto& [r, d] : dset) {
                bool inside = (d.second & ~big_borders) == 0;
                for (int c : d.first)
                    if (c != big_class) inside = false;
                if (inside) continue; // stays with the big side
                for (int q : rim[r])
                    if (!mark[q]) {
                        mark[q] = 1;
                        x.push_back(q);
                    }
                if (static_cast<int>(x.size()) > ib.k) return;
            }
            std::sort(x.begin(), x.end());
            if (!w.tried.insert(x).second) return;
            rec.record(x, w.table);
        };
        // big terminal set: empty, or one class together with any surviving borders,
        // or surviving borders alone
        for (std::uint32_t sub = alive;; sub = (sub - 1) & alive) {
            try_big(-1, sub);
            for (int c : class_list) try_big(c, sub);
            if (sub == 0) break;
        }
        return true;
    });
}

} // namespace

MwcuTable high_connectivity_mwcu(const MwcuBorder& ib, std::int64_t q, std::int64_t t, SolveContext& ctx)
{
    ++ctx.stats().hc_invocations;
    std::vector<int> universe;
    for (int p = 0; p < ib.g.n(); ++p)
        if (is_deletable(ib.g, p)) universe.push_back(p);
    SetFamily fam = ctx.family(static_cast<int>(universe.size()), sat_mul(q, t), ib.k, "mwcu-high-connectivity");
    ctx.stats().branches += static_cast<std::int64_t>(fam.size());
    const int threads = std::max(1, ctx.config().threads);
    std::vector<HcWorker> workers(threads);
    std::vector<Recorder> recorders;
    for (int i = 0; i < threads; ++i) recorders.emplace_back(ib);
    parallel_for(fam.size(), threads, [&](std::size_t i, int w) {
        fam.member(i, workers[w].in);
        hc_branch(ib, universe, recorders[w], workers[w]);
    });
    MwcuTable table;
    for (auto& w : workers) merge_into(table, w.table);
    return table;
}

MwcuTable solve_border_mwcu(const MwcuBorder& ib, SolveContext& ctx, int depth)
{
    ctx.note_depth(depth);
    check_border_instance(ib);
    MwcuBorder cur = ib;
    while (true) {
        const MwcuThresholds th = mwcu_thresholds(cur.k, ctx.config());
        std::vector<int> undeletable;
        int deletable = 0;
        for (int p = 0; p < cur.g.n(); ++p) {
            if (is_deletable(cur.g, p))
                ++deletable;
            else
                undeletable.push_back(cur.g.id(p));
        }
        if (cur.k == 0 || deletable == 0) return brute_force_border_mwcu(cur, ctx);
        const auto borders = cur.g.ids_with_tag(kBorder);

        std::vector<std::vector<int>> sides;
        bool found = false;
        if (auto sep = find_good_node_separation(cur.g, undeletable, th.q, cur.k, ctx)) {
            found = true;
            for (const auto* side : {&sep->v1, &sep->v2}) {
                int nb = 0;
                for (int id : *side)
                    if (cur.g.has_tag(cur.g.pos(id), kBorder)) ++nb;
                if (nb <= cur.k) sides.push_back(*side);
            }
            std::stable_sort(sides.begin(), sides.end(),
                             [](const auto& a, const auto& b) { return a.size() < b.size(); });
        } else if (auto fl = find_flower_separation(cur.g, undeletable, borders, th.q, cur.k, ctx)) {
            found = true;
            std::vector<int> vstar;
            for (const auto& petal : fl->petals) vstar.insert(vstar.end(), petal.begin(), petal.end());
            std::sort(vstar.begin(), vstar.end());
            sides.push_back(std::move(vstar));
        }
        if (found) {
            bool progressed = false;
            for (const auto& side : sides) {
                Step st = recurse_on_side(cur, side, ctx, depth);
                if (st == Step::Infeasible) return {};
                if (st == Step::Progress) {
                    progressed = true;
                    break;
                }
            }
            if (progressed) continue;
            // the separation did not shrink the instance
            if (brute_candidates(cur.g, cur.k) <= static_cast<std::uint64_t>(ctx.config().brute_limit))
                return brute_force_border_mwcu(cur, ctx);
            ctx.stats().exact = false;
            return high_connectivity_mwcu(cur, th.q, th.t, ctx);
        }
        if (deletable <= sat_add(sat_mul(th.q, th.t), cur.k)) return brute_force_border_mwcu(cur, ctx);
        return high_connectivity_mwcu(cur, th.q, th.t, ctx);
    }
}

namespace {

// Flow test for k+2 paths from v to terminals of pairwise distinct classes,
// disjoint apart from v.
bool forced_by_paths(const MultiGraph& g, int v, const std::vector<int>& class_of, int classes, int k)
{
    const int n = g.n();
    const int sink = 2 * n + classes;
    FlowNetwork net(sink + 1);
    const int big = k + 2;
    for (int p = 0; p < n; ++p)
        if (p != v) net.add(2 * p, 2 * p + 1, 1);
    for (const auto& e : g.edges()) {
        if (e.b != v) net.add(2 * e.a + 1, 2 * e.b, big);
        if (e.a != v) net.add(2 * e.b + 1, 2 * e.a, big);
    }
    for (int p = 0; p < n; ++p)
        if (class_of[p] >= 0 && p != v) net.add(2 * p + 1, 2 * n + class_of[p], 1);
    for (int c = 0; c < classes; ++c) net.add(2 * n + c, sink, 1);
    return net.run(2 * v + 1, sink, k + 2) >= k + 2;
}

struct Normalized {
    MultiGraph g; // terminals carry kTerminal|kUndeletable, V-infinity kUndeletable
    std::map<int, int> cls;
};

Normalized normalize(const MwcuInstance& inst)
{
    if (inst.k < 0) throw InputError("k must be non-negative");
    if (inst.terminals.size() != inst.classes.size()) throw InputError("every terminal needs a class");
    std::vector<std::uint8_t> tags(inst.g.n(), 0);
    for (int id : inst.undeletable) tags[inst.g.pos(id)] |= kUndeletable;
    std::vector<int> labels = inst.classes;
    std::sort(labels.begin(), labels.end());
    labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
    Normalized out;
    for (std::size_t i = 0; i < inst.terminals.size(); ++i) {
        const int p = inst.g.pos(inst.terminals[i]);
        if (tags[p] & kTerminal) throw InputError("terminal listed twice");
        tags[p] |= kTerminal | kUndeletable;
        out.cls[inst.terminals[i]] =
            static_cast<int>(std::lower_bound(labels.begin(), labels.end(), inst.classes[i]) - labels.begin());
    }
    out.g = simple_graph(inst.g.with_tags(std::move(tags)));
    return out;
}

} // namespace

ClassReduction reduce_equivalence_classes(const MwcuInstance& inst)
{
    Normalized nz = normalize(inst);
    ClassReduction red;
    red.k = inst.k;
    MultiGraph g = nz.g;
    int classes = 0;
    for (const auto& [id, c] : nz.cls) classes = std::max(classes, c + 1);
    for (bool again = true; again;) {
        again = false;
        std::vector<int> class_of(g.n(), -1);
        for (const auto& [id, c] : nz.cls) class_of[g.pos(id)] = c;
        for (int v = 0; v < g.n(); ++v) {
            if (g.has_tag(v, kTerminal)) continue;
            if (!forced_by_paths(g, v, class_of, classes, red.k)) continue;
            if (g.has_tag(v, kUndeletable) || red.k == 0) {
                red.feasible = false;
                return red;
            }
            red.forced.push_back(g.id(v));
            --red.k;
            g = remove_vertices(g, {g.id(v)});
            again = true;
            break;
        }
    }
    std::sort(red.forced.begin(), red.forced.end());

    int comps = 0;
    auto label = component_labels(g, &comps);
    std::vector<std::set<int>> comp_classes(comps);
    std::map<int, int> comp_of_class;
    for (const auto& [id, c] : nz.cls) {
        const int comp = label[g.pos(id)];
        auto it = comp_of_class.emplace(c, comp);
        if (!it.second && it.first->second != comp) {
            red.feasible = false;
            return red;
        }
        comp_classes[comp].insert(c);
    }
    // with an empty solution a component keeps all its terminals together, so one class
    const std::int64_t limit = std::max<std::int64_t>(1, static_cast<std::int64_t>(red.k) * red.k + red.k);
    for (const auto& cc : comp_classes)
        if (static_cast<std::int64_t>(cc.size()) > limit) {
            red.feasible = false;
            return red;
        }
    for (const auto& comp : connected_components(g)) {
        MwcuInstance part;
        part.g = induced_subgraph(g, comp).with_tags(std::vector<std::uint8_t>(comp.size(), 0));
        part.k = red.k;
        for (int id : comp) {
            const int p = g.pos(id);
            if (g.has_tag(p, kTerminal)) {
                part.terminals.push_back(id);
                part.classes.push_back(nz.cls.at(id));
            } else if (g.has_tag(p, kUndeletable)) {
                part.undeletable.push_back(id);
            }
        }
        if (!part.terminals.empty()) red.parts.push_back(std::move(part));
    }
    return red;
}

MwcuResult solve_nmwcu(const MwcuInstance& inst, SolveContext& ctx)
{
    MwcuResult res;
    ClassReduction red = reduce_equivalence_classes(inst);
    if (!red.feasible) return res;
    std::vector<int> x = red.forced;
    for (const auto& part : red.parts) {
        Normalized nz = normalize(part);
        MwcuBorder ib;
        ib.g = nz.g;
        ib.cls = nz.cls;
        ib.k = red.k;
        MwcuTable table = solve_border_mwcu(ib, ctx);
        auto it = table.find(MwcuBehavior{});
        if (it == table.end()) return res;
        x.insert(x.end(), it->second.ids.begin(), it->second.ids.end());
        if (static_cast<int>(x.size()) > inst.k) return res;
    }
    std::sort(x.begin(), x.end());
    RC_ASSERT(verify_nmwcu(inst, x), "solver returned an invalid cut-uncut set");
    res.feasible = true;
    res.cut.ids = std::move(x);
    return res;
}

bool verify_nmwcu(const MwcuInstance& inst, const std::vector<int>& x_ids)
{
    const MultiGraph& g = inst.g;
    if (static_cast<int>(x_ids.size()) > inst.k) return false;
    std::vector<char> x(g.n(), 0), blocked(g.n(), 0);
    for (int id : inst.terminals) blocked[g.pos(id)] = 1;
    for (int id : inst.undeletable) blocked[g.pos(id)] = 1;
    for (int id : x_ids) {
        const int p = g.find(id);
        if (p < 0 || blocked[p] || x[p]) return false;
        x[p] = 1;
    }
    DisjointSets ds(g.n());
    for (const auto& e : g.edges())
        if (!x[e.a] && !x[e.b]) ds.unite(e.a, e.b);
    for (std::size_t i = 0; i < inst.terminals.size(); ++i)
        for (std::size_t j = i + 1; j < inst.terminals.size(); ++j) {
            const bool same = ds.find(g.pos(inst.terminals[i])) == ds.find(g.pos(inst.terminals[j]));
            if (same != (inst.classes[i] == inst.classes[j])) return false;
        }
    return true;
}

MwcuInstance emwcu_to_nmwcu(const MwcuInstance& inst, std::map<int, std::pair<int, int>>* sub_of)
{
    const MultiGraph& g = inst.g;
    GraphBuilder b;
    for (int id : g.ids()) b.add_vertex(id);
    int next = g.next_id();
    for (const auto& e : g.edges()) {
        // a class heavier than k can never be cut, so k+1 copies represent it
        const int copies = std::min(e.mult, inst.k + 1);
        for (int c = 0; c < copies; ++c) {
            const int s = next++;
            b.add_vertex(s);
            b.add_edge(g.id(e.a), s);
            b.add_edge(s, g.id(e.b));
            if (sub_of) (*sub_of)[s] = {g.id(e.a), g.id(e.b)};
        }
    }
    MwcuInstance out;
    out.g = b.build();
    out.terminals = inst.terminals;
    out.classes = inst.classes;
    out.k = inst.k;
    out.undeletable = g.ids();
    return out;
}

EmwcuResult solve_emwcu(const MwcuInstance& inst, SolveContext& ctx)
{
    std::map<int, std::pair<int, int>> sub_of;
    MwcuInstance node = emwcu_to_nmwcu(inst, &sub_of);
    EmwcuResult res;
    MwcuResult nr = solve_nmwcu(node, ctx);
    if (!nr.feasible) return res;
    std::map<std::pair<int, int>, int> hits;
    for (int s : nr.cut.ids) ++hits[sub_of.at(s)];
    for (const auto& [pair, count] : hits) {
        const int c = inst.g.edge_index_by_id(pair.first, pair.second);
        RC_ASSERT(count == inst.g.edges()[c].mult, "optimal node cut splits a parallel class");
        res.cut.pairs.push_back(pair);
        res.cut.cost += count;
    }
    RC_ASSERT(verify_emwcu(inst, res.cut.pairs), "solver returned an invalid edge cut-uncut set");
    res.feasible = true;
    return res;
}

bool verify_emwcu(const MwcuInstance& inst, const std::vector<std::pair<int, int>>& pairs)
{
    const MultiGraph& g = inst.g;
    if (inst.terminals.size() != inst.classes.size()) throw InputError("every terminal needs a class");
    std::vector<char> dead(g.m(), 0);
    std::int64_t cost = 0;
    for (const auto& [u, v] : pairs) {
        const int c = g.edge_index_by_id(u, v);
        if (c < 0) throw InputError("cut names a pair that is not an edge");
        if (dead[c]) continue;
        dead[c] = 1;
        cost += g.edges()[c].mult;
    }
    if (cost > inst.k) return false;
    DisjointSets ds(g.n());
    for (int i = 0; i < g.m(); ++i)
        if (!dead[i]) ds.unite(g.edges()[i].a, g.edges()[i].b);
    for (std::size_t i = 0; i < inst.terminals.size(); ++i)
        for (std::size_t j = i + 1; j < inst.terminals.size(); ++j) {
            const bool same = ds.find(g.pos(inst.terminals[i])) == ds.find(g.pos(inst.terminals[j]));
            if (same != (inst.classes[i] == inst.classes[j])) return false;
        }
    return true;
}

} // namespace rc

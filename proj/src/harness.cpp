#include "rc/harness.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

namespace rc {

namespace {

void guard(bool ok, const char* what)
{
    if (!ok) throw SizeError(std::string("oracle guard exceeded: ") + what);
}

} // namespace

std::optional<SteinerOracleAnswer> oracle_steiner(const SteinerInstance& inst)
{
    const MultiGraph& g = inst.g;
    guard(g.n() <= 12, "n <= 12");
    guard(inst.k <= 4, "k <= 4");
    if (inst.s < 1) throw InputError("s must be at least 1");
    // one entry per copy, endpoint positions
    std::vector<std::pair<int, int>> copies;
    for (const auto& e : g.edges())
        for (int c = 0; c < e.mult; ++c) copies.push_back({e.a, e.b});
    std::vector<char> is_terminal(g.n(), 0);
    for (int t : inst.terminals) is_terminal[g.pos(t)] = 1;

    std::optional<SteinerOracleAnswer> best;
    std::vector<char> gone(copies.size());
    std::vector<int> comp(g.n());
    for_each_subset_upto(static_cast<int>(copies.size()), inst.k, [&](const std::vector<int>& idx) {
        std::fill(gone.begin(), gone.end(), 0);
        for (int i : idx) gone[i] = 1;
        // breadth-first labelling of G minus the chosen copies
        std::fill(comp.begin(), comp.end(), -1);
        int count = 0;
        for (int s = 0; s < g.n(); ++s) {
            if (comp[s] >= 0) continue;
            std::vector<int> queue{s};
            comp[s] = s;
            bool term = false;
            for (std::size_t h = 0; h < queue.size(); ++h) {
                int x = queue[h];
                term |= is_terminal[x] != 0;
                for (std::size_t c = 0; c < copies.size(); ++c) {
                    if (gone[c]) continue;
                    int y = copies[c].first == x ? copies[c].second : copies[c].second == x ? copies[c].first : -1;
                    if (y >= 0 && comp[y] < 0) {
                        comp[y] = s;
                        queue.push_back(y);
                    }
                }
            }
            if (term) ++count;
        }
        if (count >= inst.s) {
            SteinerOracleAnswer ans;
            for (int i : idx) ans.pairs.push_back({g.id(copies[i].first), g.id(copies[i].second)});
            ans.size = static_cast<int>(idx.size());
            best = ans;
            return false; // subsets come in size order, so the first hit is minimum
        }
        return true;
    });
    return best;
}

MultiGraph random_connected_graph(std::mt19937_64& rng, int n, double density, int max_mult)
{
    std::uniform_real_distribution<double> U(0.0, 1.0);
    std::uniform_int_distribution<int> M(1, std::max(1, max_mult));
    GraphBuilder b;
    for (int v = 1; v <= n; ++v) b.add_vertex(v);
    std::set<std::pair<int, int>> used;
    for (int v = 2; v <= n; ++v) {
        int u = std::uniform_int_distribution<int>(1, v - 1)(rng);
        b.add_edge(u, v, M(rng));
        used.insert({u, v});
    }
    for (int u = 1; u <= n; ++u)
        for (int v = u + 1; v <= n; ++v)
            if (!used.count({u, v}) && U(rng) < density) b.add_edge(u, v, M(rng));
    return b.build();
}

SteinerInstance gen_random_steiner(int n, double density, int k, int s, int terminals, std::uint64_t seed,
                                   int max_mult)
{
    if (n < 1 || k < 0 || s < 1 || terminals < 0 || terminals > n)
        throw InputError("infeasible generator parameters");
    std::mt19937_64 rng(seed);
    SteinerInstance inst;
    inst.g = random_connected_graph(rng, n, density, max_mult);
    std::vector<int> ids(n);
    for (int i = 0; i < n; ++i) ids[i] = i + 1;
    std::shuffle(ids.begin(), ids.end(), rng);
    inst.terminals.assign(ids.begin(), ids.begin() + terminals);
    std::sort(inst.terminals.begin(), inst.terminals.end());
    inst.k = k;
    inst.s = s;
    return inst;
}

namespace {

// Terminal split check by breadth-first search; alive flags per position,
// adjacency given as (endpoint, endpoint) copies.
bool splits_by_class(int n, const std::vector<std::pair<int, int>>& copies, const std::vector<char>& edge_alive,
                     const std::vector<char>& vertex_alive, const std::vector<int>& term_pos,
                     const std::vector<int>& classes)
{
    std::vector<int> comp(n, -1);
    for (int s = 0; s < n; ++s) {
        if (comp[s] >= 0 || !vertex_alive[s]) continue;
        std::vector<int> queue{s};
        comp[s] = s;
        for (std::size_t h = 0; h < queue.size(); ++h) {
            const int x = queue[h];
            for (std::size_t c = 0; c < copies.size(); ++c) {
                if (!edge_alive[c]) continue;
                int y = copies[c].first == x ? copies[c].second : copies[c].second == x ? copies[c].first : -1;
                if (y >= 0 && vertex_alive[y] && comp[y] < 0) {
                    comp[y] = s;
                    queue.push_back(y);
                }
            }
        }
    }
    for (std::size_t i = 0; i < term_pos.size(); ++i)
        for (std::size_t j = i + 1; j < term_pos.size(); ++j)
            if ((comp[term_pos[i]] == comp[term_pos[j]]) != (classes[i] == classes[j])) return false;
    return true;
}

} // namespace

std::optional<MwcuOracleAnswer> oracle_mwcu_node(const MwcuInstance& inst)
{
    const MultiGraph& g = inst.g;
    guard(g.n() <= 12, "n <= 12");
    guard(inst.k <= 4, "k <= 4");
    if (inst.terminals.size() != inst.classes.size()) throw InputError("every terminal needs a class");
    std::vector<char> blocked(g.n(), 0);
    std::vector<int> term_pos;
    for (int t : inst.terminals) {
        term_pos.push_back(g.pos(t));
        blocked[g.pos(t)] = 1;
    }
    for (int u : inst.undeletable) blocked[g.pos(u)] = 1;
    std::vector<int> cand;
    for (int p = 0; p < g.n(); ++p)
        if (!blocked[p]) cand.push_back(p);
    std::vector<std::pair<int, int>> copies;
    for (const auto& e : g.edges()) copies.push_back({e.a, e.b});
    const std::vector<char> all_edges(copies.size(), 1);

    std::optional<MwcuOracleAnswer> best;
    std::vector<char> alive(g.n());
    for_each_subset_upto(static_cast<int>(cand.size()), inst.k, [&](const std::vector<int>& idx) {
        std::fill(alive.begin(), alive.end(), 1);
        for (int i : idx) alive[cand[i]] = 0;
        if (!splits_by_class(g.n(), copies, all_edges, alive, term_pos, inst.classes)) return true;
        MwcuOracleAnswer ans;
        for (int i : idx) ans.vertices.push_back(g.id(cand[i]));
        ans.size = static_cast<int>(idx.size());
        best = ans;
        return false;
    });
    return best;
}

std::optional<MwcuOracleAnswer> oracle_mwcu_edge(const MwcuInstance& inst)
{
    const MultiGraph& g = inst.g;
    guard(g.n() <= 12, "n <= 12");
    guard(inst.k <= 4, "k <= 4");
    if (inst.terminals.size() != inst.classes.size()) throw InputError("every terminal needs a class");
    std::vector<int> term_pos;
    for (int t : inst.terminals) term_pos.push_back(g.pos(t));
    std::vector<std::pair<int, int>> copies;
    for (const auto& e : g.edges())
        for (int c = 0; c < e.mult; ++c) copies.push_back({e.a, e.b});
    const std::vector<char> all_vertices(g.n(), 1);

    std::optional<MwcuOracleAnswer> best;
    std::vector<char> alive(copies.size());
    for_each_subset_upto(static_cast<int>(copies.size()), inst.k, [&](const std::vector<int>& idx) {
        std::fill(alive.begin(), alive.end(), 1);
        for (int i : idx) alive[i] = 0;
        if (!splits_by_class(g.n(), copies, alive, all_vertices, term_pos, inst.classes)) return true;
        MwcuOracleAnswer ans;
        for (int i : idx) ans.pairs.push_back({g.id(copies[i].first), g.id(copies[i].second)});
        ans.size = static_cast<int>(idx.size());
        best = ans;
        return false;
    });
    return best;
}

MwcuInstance gen_random_mwcu(int n, double density, int k, int terminals, int classes, std::uint64_t seed,
                             int undeletable, int max_mult)
{
    if (n < 1 || k < 0 || terminals < 0 || undeletable < 0 || terminals + undeletable > n ||
        (terminals > 0 && classes < 1))
        throw InputError("infeasible generator parameters");
    std::mt19937_64 rng(seed);
    MwcuInstance inst;
    inst.g = random_connected_graph(rng, n, density, max_mult);
    std::vector<int> ids(n);
    for (int i = 0; i < n; ++i) ids[i] = i + 1;
    std::shuffle(ids.begin(), ids.end(), rng);
    inst.terminals.assign(ids.begin(), ids.begin() + terminals);
    std::sort(inst.terminals.begin(), inst.terminals.end());
    std::uniform_int_distribution<int> C(0, std::max(0, classes - 1));
    for (int i = 0; i < terminals; ++i) inst.classes.push_back(C(rng));
    inst.undeletable.assign(ids.begin() + terminals, ids.begin() + terminals + undeletable);
    std::sort(inst.undeletable.begin(), inst.undeletable.end());
    inst.k = k;
    return inst;
}

} // namespace rc

namespace rc {

namespace {

// Backtracking labeler over positions: vertices in breadth-first order so
// every vertex after a component root has a labeled neighbour.
class UlcLabeler {
public:
    explicit UlcLabeler(const UlcGraph& g) : g_(g), ids_(g.ids()), adj_(ids_.size())
    {
        std::map<int, int> pos;
        for (std::size_t i = 0; i < ids_.size(); ++i) pos[ids_[i]] = static_cast<int>(i);
        for (const auto& [u, v] : g.edges()) {
            const int e = static_cast<int>(edges_.size());
            edges_.emplace_back(u, v);
            adj_[pos[u]].push_back({pos[v], e, &g.constraint(u, v)});
            adj_[pos[v]].push_back({pos[u], e, &g.constraint(v, u)});
        }
    }
    const std::vector<int>& ids() const { return ids_; }
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }

    /// gone: per position; cut: per edge index.
    bool run(const std::vector<char>& gone, const std::vector<char>& cut, UlcLabeling& out)
    {
        const int n = static_cast<int>(ids_.size());
        order_.clear();
        std::vector<char> seen(n, 0);
        for (int r = 0; r < n; ++r) {
            if (gone[r] || seen[r]) continue;
            std::size_t h = order_.size();
            order_.push_back(r);
            seen[r] = 1;
            for (; h < order_.size(); ++h)
                for (const auto& a : adj_[order_[h]])
                    if (!gone[a.to] && !seen[a.to] && !cut[a.edge]) {
                        seen[a.to] = 1;
                        order_.push_back(a.to);
                    }
        }
        lab_.assign(n, -1);
        if (!go(0, cut)) return false;
        out.clear();
        for (int i : order_) out[ids_[i]] = lab_[i];
        return true;
    }

private:
    struct Arc {
        int to;
        int edge;
        const PartialPermutation* psi;
    };

    bool go(std::size_t i, const std::vector<char>& cut)
    {
        if (i == order_.size()) return true;
        const int v = order_[i];
        const std::uint64_t phi = g_.phi(ids_[v]);
        for (int a = 0; a < g_.s(); ++a) {
            if (!(phi >> a & 1)) continue;
            bool ok = true;
            for (const auto& arc : adj_[v]) {
                if (lab_[arc.to] < 0 || cut[arc.edge]) continue;
                if (!arc.psi->contains(a, lab_[arc.to])) {
                    ok = false;
                    break;
                }
            }
            if (!ok) continue;
            lab_[v] = a;
            if (go(i + 1, cut)) return true;
            lab_[v] = -1;
        }
        return false;
    }

    const UlcGraph& g_;
    std::vector<int> ids_;
    std::vector<std::vector<Arc>> adj_;
    std::vector<std::pair<int, int>> edges_;
    std::vector<int> order_;
    std::vector<int> lab_;
};

} // namespace

std::optional<UlcOracleAnswer> oracle_ulc_node(const UlcInstance& inst)
{
    guard(inst.g.n() <= 12, "n <= 12");
    guard(inst.k <= 4, "k <= 4");
    UlcLabeler labeler(inst.g);
    const auto& ids = labeler.ids();
    const std::vector<char> cut(labeler.edges().size(), 0);
    std::vector<char> gone(ids.size());
    std::optional<UlcOracleAnswer> ans;
    for_each_subset_upto(static_cast<int>(ids.size()), inst.k, [&](const std::vector<int>& idx) {
        std::fill(gone.begin(), gone.end(), 0);
        for (int i : idx) gone[i] = 1;
        UlcLabeling lab;
        if (!labeler.run(gone, cut, lab)) return true;
        ans = UlcOracleAnswer{};
        for (int i : idx) ans->vertices.push_back(ids[i]);
        ans->labels = std::move(lab);
        ans->size = static_cast<int>(idx.size());
        return false;
    });
    return ans;
}

std::optional<UlcOracleAnswer> oracle_ulc_edge(const UlcInstance& inst)
{
    guard(inst.k <= 4, "k <= 4");
    UlcLabeler labeler(inst.g);
    const auto& edges = labeler.edges();
    std::uint64_t subsets = 0;
    for (int i = 0; i <= inst.k; ++i) subsets += binom(static_cast<int>(edges.size()), i);
    guard(subsets <= 20000000, "at most 2e7 edge subsets");
    const std::vector<char> gone(labeler.ids().size(), 0);
    std::vector<char> cut(edges.size());
    std::optional<UlcOracleAnswer> ans;
    for_each_subset_upto(static_cast<int>(edges.size()), inst.k, [&](const std::vector<int>& idx) {
        std::fill(cut.begin(), cut.end(), 0);
        for (int i : idx) cut[i] = 1;
        UlcLabeling lab;
        if (!labeler.run(gone, cut, lab)) return true;
        ans = UlcOracleAnswer{};
        for (int i : idx) ans->edges.push_back(edges[i]);
        ans->labels = std::move(lab);
        ans->size = static_cast<int>(idx.size());
        return false;
    });
    return ans;
}

UlcInstance gen_random_ulc(int n, double density, int k, int s, std::uint64_t seed, double noise,
                           double list_density, double partial)
{
    if (n < 1 || k < 0 || s < 1 || s > kMaxAlphabet) throw InputError("infeasible generator parameters");
    std::mt19937_64 rng(seed);
    const MultiGraph skel = random_connected_graph(rng, n, density);
    std::uniform_int_distribution<int> L(0, s - 1);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    std::map<int, int> plant;
    UlcInstance inst;
    inst.k = k;
    inst.g = UlcGraph(s);
    for (int id : skel.ids()) {
        plant[id] = L(rng);
        std::uint64_t phi = 0;
        for (int a = 0; a < s; ++a)
            if (U(rng) < list_density) phi |= std::uint64_t{1} << a;
        if (U(rng) >= noise) phi |= std::uint64_t{1} << plant[id];
        inst.g.add_vertex(id, phi);
    }
    for (const auto& e : skel.edges()) {
        const int u = skel.id(e.a), v = skel.id(e.b);
        std::vector<int> perm(s);
        for (int a = 0; a < s; ++a) perm[a] = a;
        std::shuffle(perm.begin(), perm.end(), rng);
        if (U(rng) >= noise) {
            // make the plant consistent on this edge
            const int at = static_cast<int>(std::find(perm.begin(), perm.end(), plant[v]) - perm.begin());
            std::swap(perm[at], perm[plant[u]]);
        }
        std::vector<std::pair<int, int>> pairs;
        for (int a = 0; a < s; ++a) pairs.emplace_back(a, perm[a]);
        if (U(rng) < partial) pairs.erase(pairs.begin() + L(rng));
        inst.g.update_edge(u, v, PartialPermutation::from_pairs(s, pairs));
    }
    return inst;
}

} // namespace rc

namespace rc {

void validate_mcc(const MccInstance& mcc)
{
    if (mcc.k < 1 || mcc.n < 1) throw InputError("multicolored clique needs k >= 1 and n >= 1");
    for (const auto& [x, y] : mcc.edges) {
        if (x < 0 || y < 0 || x >= mcc.k * mcc.n || y >= mcc.k * mcc.n)
            throw InputError("multicolored clique vertex out of range");
        if (x / mcc.n == y / mcc.n) throw InputError("multicolored clique edge inside a part");
    }
}

std::optional<std::vector<int>> mcc_find_clique(const MccInstance& mcc)
{
    validate_mcc(mcc);
    std::set<std::pair<int, int>> adj;
    for (const auto& [x, y] : mcc.edges) {
        adj.insert({x, y});
        adj.insert({y, x});
    }
    std::vector<int> pick;
    std::function<bool()> go = [&]() {
        const int i = static_cast<int>(pick.size());
        if (i == mcc.k) return true;
        for (int p = 0; p < mcc.n; ++p) {
            bool ok = true;
            for (int j = 0; j < i && ok; ++j) ok = adj.count({j * mcc.n + pick[j], i * mcc.n + p}) != 0;
            if (!ok) continue;
            pick.push_back(p);
            if (go()) return true;
            pick.pop_back();
        }
        return false;
    };
    if (!go()) return std::nullopt;
    return pick;
}

MccInstance gen_random_mcc(int k, int n, double density, std::uint64_t seed)
{
    if (k < 1 || n < 1) throw InputError("infeasible generator parameters");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    MccInstance mcc{k, n, {}};
    for (int x = 0; x < k * n; ++x)
        for (int y = x + 1; y < k * n; ++y)
            if (x / n != y / n && U(rng) < density) mcc.edges.emplace_back(x, y);
    return mcc;
}

UlcInstance gen_mcc_to_eulc(const MccInstance& mcc)
{
    validate_mcc(mcc);
    const int k = mcc.k, n = mcc.n, len = k * n;
    if (len < 3) throw InputError("the construction needs k*n >= 3");
    const int s = (n + 1) * (n + 1);
    if (s > kMaxAlphabet) throw InputError("alphabet exceeds 64 labels");
    std::uint64_t lambda = 0;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) lambda |= std::uint64_t{1} << mcc_label(n, a, b);
    std::vector<std::pair<int, int>> shift;
    for (int a = 0; a <= n; ++a)
        for (int b = 0; b <= n; ++b) shift.emplace_back(mcc_label(n, a, b), mcc_label(n, (a + n) % (n + 1), b));
    const auto pi0 = PartialPermutation::from_pairs(s, shift);

    UlcInstance inst;
    inst.k = k * k;
    inst.g = UlcGraph(s);
    for (int i = 0; i < k; ++i)
        for (int p = 0; p < len; ++p) inst.g.add_vertex(mcc_cycle_id(k, n, i, p), lambda);
    for (int i = 0; i < k; ++i)
        for (int p = 0; p < len; ++p)
            inst.g.update_edge(mcc_cycle_id(k, n, i, p), mcc_cycle_id(k, n, i, (p + 1) % len), pi0);
    std::set<std::pair<int, int>> adj(mcc.edges.begin(), mcc.edges.end());
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j) {
            std::vector<std::pair<int, int>> sigma;
            for (int p = 0; p < n; ++p)
                for (int q = 0; q < n; ++q)
                    if (adj.count({i * n + p, j * n + q}) || adj.count({j * n + q, i * n + p}))
                        sigma.emplace_back(mcc_label(n, p, q), mcc_label(n, q, p));
            inst.g.update_edge(mcc_cycle_id(k, n, i, j * n), mcc_cycle_id(k, n, j, i * n),
                               PartialPermutation::from_pairs(s, sigma));
        }
    return inst;
}

UlcInstance gen_restrict_ulc(const UlcInstance& inst)
{
    const UlcGraph& g = inst.g;
    const int s = g.s(), k = inst.k, kk = k * (k + 2), s2 = s + k + 2;
    if (s2 > kMaxAlphabet) throw InputError("restricted alphabet exceeds 64 labels");
    UlcInstance out;
    out.k = kk;
    out.g = UlcGraph(s2);
    const auto ids = g.ids();
    int next = ids.empty() ? 1 : ids.back() + 1;
    for (int v : ids) out.g.add_vertex(v);
    const auto ident = PartialPermutation::identity(s2);

    for (int v : ids) {
        // cyclic shift on the labels outside phi_v; there are at least two
        std::vector<int> moved;
        for (int a = 0; a < s2; ++a)
            if (a >= s || !(g.phi(v) >> a & 1)) moved.push_back(a);
        std::vector<std::pair<int, int>> pairs;
        for (int a = 0; a < s; ++a)
            if (g.phi(v) >> a & 1) pairs.emplace_back(a, a);
        for (std::size_t i = 0; i < moved.size(); ++i) pairs.emplace_back(moved[i], moved[(i + 1) % moved.size()]);
        const auto pi = PartialPermutation::from_pairs(s2, pairs);
        // loop v-v as the triangle v, w1, w2
        for (int c = 0; c <= kk; ++c) {
            const int w1 = next++, w2 = next++;
            out.g.add_vertex(w1);
            out.g.add_vertex(w2);
            out.g.update_edge(v, w1, ident);
            out.g.update_edge(w1, w2, ident);
            out.g.update_edge(w2, v, pi);
        }
    }
    for (const auto& [u, v] : g.edges()) {
        const auto& psi = g.constraint(u, v);
        std::vector<int> xu, xv;
        for (int a = 0; a < s; ++a) {
            if (psi.apply(a) < 0) xu.push_back(a);
            if (psi.preimage(a) < 0) xv.push_back(a);
        }
        for (int a = s; a < s2; ++a) {
            xu.push_back(a);
            xv.push_back(a);
        }
        const int len = static_cast<int>(xu.size());
        for (int i = 0; i < k + 2; ++i) {
            auto pairs = psi.pairs();
            for (int j = 0; j < len; ++j) pairs.emplace_back(xu[j], xv[(j + i) % len]);
            const int mid = next++;
            out.g.add_vertex(mid);
            out.g.update_edge(u, mid, ident);
            out.g.update_edge(mid, v, PartialPermutation::from_pairs(s2, pairs));
        }
    }
    return out;
}

} // namespace rc

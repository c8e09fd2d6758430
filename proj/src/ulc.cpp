#include "rc/ulc.hpp"

#include <algorithm>
#include <set>

#include "rc/flows.hpp"
#include "rc/parallel.hpp"
#include "rc/separations.hpp"

namespace rc {

PartialPermutation PartialPermutation::identity(int s)
{
    PartialPermutation p(s);
    for (int a = 0; a < s; ++a) p.fwd_[a] = p.bwd_[a] = a;
    return p;
}

PartialPermutation PartialPermutation::from_pairs(int s, const std::vector<std::pair<int, int>>& pairs)
{
    PartialPermutation p(s);
    for (const auto& [a, b] : pairs) {
        if (a < 0 || a >= s || b < 0 || b >= s)
            throw InputError("label pair " + std::to_string(a) + ":" + std::to_string(b) + " outside the alphabet");
        if (p.fwd_[a] == b) continue;
        if (p.fwd_[a] >= 0 || p.bwd_[b] >= 0)
            throw InputError("pairs do not form a partial permutation at " + std::to_string(a) + ":" +
                             std::to_string(b));
        p.fwd_[a] = b;
        p.bwd_[b] = a;
    }
    return p;
}

bool PartialPermutation::empty() const
{
    return std::all_of(fwd_.begin(), fwd_.end(), [](int b) { return b < 0; });
}

std::vector<std::pair<int, int>> PartialPermutation::pairs() const
{
    std::vector<std::pair<int, int>> out;
    for (int a = 0; a < s(); ++a)
        if (fwd_[a] >= 0) out.emplace_back(a, fwd_[a]);
    return out;
}

PartialPermutation PartialPermutation::inverse() const
{
    PartialPermutation p;
    p.fwd_ = bwd_;
    p.bwd_ = fwd_;
    return p;
}

PartialPermutation PartialPermutation::then(const PartialPermutation& next) const
{
    RC_ASSERT(s() == next.s(), "alphabet mismatch");
    PartialPermutation p(s());
    for (int a = 0; a < s(); ++a) {
        const int b = fwd_[a];
        if (b < 0) continue;
        const int c = next.fwd_[b];
        if (c < 0) continue;
        p.fwd_[a] = c;
        p.bwd_[c] = a;
    }
    return p;
}

PartialPermutation PartialPermutation::intersect(const PartialPermutation& o) const
{
    RC_ASSERT(s() == o.s(), "alphabet mismatch");
    PartialPermutation p(s());
    for (int a = 0; a < s(); ++a)
        if (fwd_[a] >= 0 && fwd_[a] == o.fwd_[a]) {
            p.fwd_[a] = fwd_[a];
            p.bwd_[fwd_[a]] = a;
        }
    return p;
}

std::uint64_t PartialPermutation::image(std::uint64_t mask) const
{
    std::uint64_t out = 0;
    for (int a = 0; a < s(); ++a)
        if ((mask >> a & 1) && fwd_[a] >= 0) out |= std::uint64_t{1} << fwd_[a];
    return out;
}

UlcGraph::UlcGraph(int s) : s_(s)
{
    if (s < 0 || s > kMaxAlphabet) throw InputError("alphabet size must lie in 0.." + std::to_string(kMaxAlphabet));
}

std::uint64_t UlcGraph::full() const
{
    return s_ >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << s_) - 1;
}

const UlcGraph::Vertex& UlcGraph::at(int id) const
{
    auto it = v_.find(id);
    if (it == v_.end()) throw InputError("unknown vertex " + std::to_string(id));
    return it->second;
}

UlcGraph::Vertex& UlcGraph::at(int id)
{
    auto it = v_.find(id);
    if (it == v_.end()) throw InputError("unknown vertex " + std::to_string(id));
    return it->second;
}

void UlcGraph::add_vertex(int id, std::uint64_t phi)
{
    if (phi & ~full()) throw InputError("list of vertex " + std::to_string(id) + " leaves the alphabet");
    if (!v_.emplace(id, Vertex{phi, {}}).second) throw InputError("duplicate vertex " + std::to_string(id));
}

int UlcGraph::m() const
{
    std::size_t deg = 0;
    for (const auto& [id, v] : v_) deg += v.nbr.size();
    return static_cast<int>(deg / 2);
}

std::vector<int> UlcGraph::ids() const
{
    std::vector<int> out;
    out.reserve(v_.size());
    for (const auto& [id, v] : v_) out.push_back(id);
    return out;
}

std::vector<std::pair<int, int>> UlcGraph::edges() const
{
    std::vector<std::pair<int, int>> out;
    for (const auto& [id, v] : v_)
        for (const auto& [w, psi] : v.nbr)
            if (id < w) out.emplace_back(id, w);
    return out;
}

std::uint64_t UlcGraph::phi(int id) const { return at(id).phi; }

void UlcGraph::set_phi(int id, std::uint64_t phi)
{
    if (phi & ~full()) throw InputError("list of vertex " + std::to_string(id) + " leaves the alphabet");
    at(id).phi = phi;
}

bool UlcGraph::adjacent(int u, int v) const { return at(u).nbr.count(v) != 0; }

const PartialPermutation& UlcGraph::constraint(int u, int v) const
{
    const auto& nbr = at(u).nbr;
    auto it = nbr.find(v);
    if (it == nbr.end()) throw InputError("no edge " + std::to_string(u) + "-" + std::to_string(v));
    return it->second;
}

const std::map<int, PartialPermutation>& UlcGraph::nbrs(int id) const { return at(id).nbr; }

void UlcGraph::update_edge(int u, int v, const PartialPermutation& psi)
{
    if (u == v) throw InputError("loop at vertex " + std::to_string(u));
    if (psi.s() != s_) throw InputError("constraint over a different alphabet");
    Vertex& a = at(u);
    Vertex& b = at(v);
    auto it = a.nbr.find(v);
    if (it == a.nbr.end()) {
        a.nbr.emplace(v, psi);
        b.nbr.emplace(u, psi.inverse());
    } else {
        it->second = it->second.intersect(psi);
        b.nbr[u] = it->second.inverse();
    }
}

void UlcGraph::remove_vertex(int id)
{
    Vertex& v = at(id);
    for (const auto& [w, psi] : v.nbr) v_.at(w).nbr.erase(id);
    v_.erase(id);
}

UlcGraph UlcGraph::induced(const std::vector<int>& ids) const
{
    UlcGraph out(s_);
    for (int id : ids) out.add_vertex(id, phi(id));
    for (int id : ids)
        for (const auto& [w, psi] : at(id).nbr)
            if (id < w && out.has(w)) out.update_edge(id, w, psi);
    return out;
}

MultiGraph UlcGraph::skeleton() const
{
    GraphBuilder b;
    for (const auto& [id, v] : v_) b.add_vertex(id);
    for (const auto& [u, v] : edges()) b.add_edge(u, v);
    return b.build();
}

bool UlcGraph::operator==(const UlcGraph& o) const
{
    if (s_ != o.s_ || v_.size() != o.v_.size()) return false;
    for (auto a = v_.begin(), b = o.v_.begin(); a != v_.end(); ++a, ++b)
        if (a->first != b->first || a->second.phi != b->second.phi || a->second.nbr != b->second.nbr) return false;
    return true;
}

bool UlcSolution::operator<(const UlcSolution& o) const
{
    if (x.size() != o.x.size()) return x.size() < o.x.size();
    if (x != o.x) return x < o.x;
    return labels < o.labels;
}

UlcThresholds ulc_thresholds(int k, int s, const SolverConfig& cfg)
{
    UlcThresholds th;
    th.q = cfg.q_override > 0 ? cfg.q_override : sat_add(sat_mul(k, sat_pow(s + 1, 4 * k)), 2 * k);
    th.t = cfg.t_override > 0 ? cfg.t_override
                              : sat_add(sat_mul(sat_add(sat_mul(2, th.q), 2), sat_pow(2, k) - 1), 4 * k + 1);
    return th;
}

namespace {

// Position-indexed snapshot of a UlcGraph; the constraint pointers stay valid
// while the graph is unchanged.
struct View {
    int n = 0;
    int s = 0;
    std::vector<int> ids;
    std::vector<std::uint64_t> phi;
    std::vector<std::vector<std::pair<int, const PartialPermutation*>>> adj;

    explicit View(const UlcGraph& g) : n(g.n()), s(g.s()), ids(g.ids()), phi(n), adj(n)
    {
        for (int p = 0; p < n; ++p) {
            phi[p] = g.phi(ids[p]);
            for (const auto& [w, psi] : g.nbrs(ids[p])) adj[p].emplace_back(pos(w), &psi);
        }
    }
    int pos(int id) const
    {
        auto it = std::lower_bound(ids.begin(), ids.end(), id);
        if (it == ids.end() || *it != id) throw InputError("unknown vertex " + std::to_string(id));
        return static_cast<int>(it - ids.begin());
    }
    bool allowed(int p, int a) const { return a >= 0 && (phi[p] >> a & 1); }
};

// Breadth-first propagation inside `in` from (start, alpha). lab must be -1 on
// the reached component; on success it holds the labeling there, on failure the
// touched entries are reset. `seen` receives the component.
bool propagate(const View& v, const std::vector<char>& in, int start, int alpha, std::vector<int>& lab,
               std::vector<int>& seen)
{
    seen.clear();
    if (!v.allowed(start, alpha)) return false;
    lab[start] = alpha;
    seen.push_back(start);
    bool ok = true;
    for (std::size_t h = 0; h < seen.size() && ok; ++h) {
        const int p = seen[h];
        for (const auto& [q, psi] : v.adj[p]) {
            if (!in[q]) continue;
            const int b = psi->apply(lab[p]);
            if (lab[q] < 0) {
                if (!v.allowed(q, b)) {
                    ok = false;
                    break;
                }
                lab[q] = b;
                seen.push_back(q);
            } else if (lab[q] != b) {
                ok = false;
                break;
            }
        }
    }
    if (!ok)
        for (int p : seen) lab[p] = -1;
    return ok;
}

// Every labeling of the component of `in` holding `anchor`, as full-length vectors.
std::vector<std::vector<int>> component_labelings(const View& v, const std::vector<char>& in, int anchor)
{
    std::vector<std::vector<int>> out;
    std::vector<int> lab(v.n, -1), seen;
    for (int a = 0; a < v.s; ++a)
        if (propagate(v, in, anchor, a, lab, seen)) {
            out.push_back(lab);
            for (int p : seen) lab[p] = -1;
        }
    return out;
}

// Components of `in`, each ascending, ordered by smallest position.
std::vector<std::vector<int>> components(const View& v, const std::vector<char>& in)
{
    std::vector<std::vector<int>> out;
    std::vector<char> done(v.n, 0);
    for (int p = 0; p < v.n; ++p) {
        if (!in[p] || done[p]) continue;
        std::vector<int> comp{p};
        done[p] = 1;
        for (std::size_t h = 0; h < comp.size(); ++h)
            for (const auto& [q, psi] : v.adj[comp[h]])
                if (in[q] && !done[q]) {
                    done[q] = 1;
                    comp.push_back(q);
                }
        std::sort(comp.begin(), comp.end());
        out.push_back(std::move(comp));
    }
    return out;
}

// Labeling of G[in] that agrees with `fixed` (-1 = free) wherever fixed is set;
// free components take the smallest workable label at their smallest vertex.
bool label_consistent(const View& v, const std::vector<char>& in, const std::vector<int>& fixed,
                      std::vector<int>& out)
{
    out.assign(v.n, -1);
    std::vector<int> seen;
    for (const auto& comp : components(v, in)) {
        int anchor = -1;
        for (int p : comp)
            if (fixed[p] >= 0) {
                anchor = p;
                break;
            }
        if (anchor >= 0) {
            if (!propagate(v, in, anchor, fixed[anchor], out, seen)) return false;
            for (int p : comp)
                if (fixed[p] >= 0 && out[p] != fixed[p]) return false;
        } else {
            bool any = false;
            for (int a = 0; a < v.s && !any; ++a) any = propagate(v, in, comp[0], a, out, seen);
            if (!any) return false;
        }
    }
    return true;
}

std::vector<char> id_mask(const View& v, const std::vector<int>& ids)
{
    std::vector<char> m(v.n, 0);
    for (int id : ids) m[v.pos(id)] = 1;
    return m;
}

UlcLabeling to_labeling(const View& v, const std::vector<int>& lab)
{
    UlcLabeling out;
    for (int p = 0; p < v.n; ++p)
        if (lab[p] >= 0) out.emplace(v.ids[p], lab[p]);
    return out;
}

} // namespace

std::optional<UlcLabeling> propagate_labeling(const UlcGraph& g, const std::vector<int>& a, int v, int alpha)
{
    View view(g);
    std::vector<char> in = id_mask(view, a);
    const int start = view.pos(v);
    if (!in[start]) throw InputError("anchor vertex outside the set");
    if (components(view, in).size() != 1) throw InputError("vertex set does not induce a connected subgraph");
    if (alpha < 0 || alpha >= g.s()) throw InputError("label outside the alphabet");
    std::vector<int> lab(view.n, -1), seen;
    if (!propagate(view, in, start, alpha, lab, seen)) return std::nullopt;
    return to_labeling(view, lab);
}

std::vector<UlcLabeling> enumerate_labelings(const UlcGraph& g, const std::vector<int>& a)
{
    std::vector<UlcLabeling> out;
    if (a.empty()) return out;
    const int anchor = *std::min_element(a.begin(), a.end());
    for (int alpha = 0; alpha < g.s(); ++alpha)
        if (auto lab = propagate_labeling(g, a, anchor, alpha)) out.push_back(std::move(*lab));
    return out;
}

void bypass_vertex_ulc(UlcGraph& g, int v)
{
    const std::uint64_t phi_v = g.phi(v);
    RC_ASSERT(phi_v != 0, "bypassed vertex needs a nonempty list");
    const std::map<int, PartialPermutation> nbr = g.nbrs(v); // psi_{vu,v}
    g.remove_vertex(v);
    for (const auto& [u, psi] : nbr) g.set_phi(u, g.phi(u) & psi.image(phi_v));
    for (auto a = nbr.begin(); a != nbr.end(); ++a)
        for (auto b = std::next(a); b != nbr.end(); ++b)
            // psi_{vu2,v} o psi_{vu1,u1}: from u1 through v to u2
            g.update_edge(a->first, b->first, a->second.inverse().then(b->second));
}

std::optional<UlcLabeling> label_remainder(const UlcGraph& g, const std::vector<int>& x)
{
    View view(g);
    std::vector<char> in(view.n, 1);
    for (int id : x) in[view.pos(id)] = 0;
    std::vector<int> out;
    if (!label_consistent(view, in, std::vector<int>(view.n, -1), out)) return std::nullopt;
    return to_labeling(view, out);
}

bool verify_nulc(const UlcInstance& inst, const std::vector<int>& x, const UlcLabeling& labels, std::string* why)
{
    auto fail = [&](const std::string& m) {
        if (why) *why = m;
        return false;
    };
    std::set<int> del;
    for (int id : x) {
        if (!inst.g.has(id)) return fail("deleted vertex " + std::to_string(id) + " is not in the graph");
        if (!del.insert(id).second) return fail("vertex " + std::to_string(id) + " deleted twice");
    }
    if (static_cast<int>(del.size()) > inst.k) return fail("deletion set exceeds the budget");
    for (int id : inst.g.ids()) {
        if (del.count(id)) continue;
        auto it = labels.find(id);
        if (it == labels.end()) return fail("vertex " + std::to_string(id) + " has no label");
        if (it->second < 0 || it->second >= inst.g.s() || !(inst.g.phi(id) >> it->second & 1))
            return fail("label of vertex " + std::to_string(id) + " is not in its list");
    }
    for (const auto& [u, v] : inst.g.edges()) {
        if (del.count(u) || del.count(v)) continue;
        if (!inst.g.constraint(u, v).contains(labels.at(u), labels.at(v)))
            return fail("edge " + std::to_string(u) + "-" + std::to_string(v) + " violates its constraint");
    }
    return true;
}

bool verify_eulc(const UlcInstance& inst, const std::vector<std::pair<int, int>>& edges, const UlcLabeling& labels,
                 std::string* why)
{
    auto fail = [&](const std::string& m) {
        if (why) *why = m;
        return false;
    };
    std::set<std::pair<int, int>> del;
    for (auto [u, v] : edges) {
        if (u > v) std::swap(u, v);
        if (!inst.g.has(u) || !inst.g.has(v) || !inst.g.adjacent(u, v))
            return fail("deleted edge " + std::to_string(u) + "-" + std::to_string(v) + " is not in the graph");
        if (!del.insert({u, v}).second)
            return fail("edge " + std::to_string(u) + "-" + std::to_string(v) + " deleted twice");
    }
    if (static_cast<int>(del.size()) > inst.k) return fail("deletion set exceeds the budget");
    for (int id : inst.g.ids()) {
        auto it = labels.find(id);
        if (it == labels.end()) return fail("vertex " + std::to_string(id) + " has no label");
        if (it->second < 0 || it->second >= inst.g.s() || !(inst.g.phi(id) >> it->second & 1))
            return fail("label of vertex " + std::to_string(id) + " is not in its list");
    }
    for (const auto& e : inst.g.edges()) {
        if (del.count(e)) continue;
        if (!inst.g.constraint(e.first, e.second).contains(labels.at(e.first), labels.at(e.second)))
            return fail("edge " + std::to_string(e.first) + "-" + std::to_string(e.second) +
                        " violates its constraint");
    }
    return true;
}

std::vector<UlcBehavior> ulc_behaviors(const UlcBorder& ib)
{
    const int nb = static_cast<int>(ib.border.size());
    const int s = ib.g.s();
    std::vector<UlcBehavior> out;
    UlcBehavior cur(nb, kSkull);
    while (true) {
        out.push_back(cur);
        int i = nb - 1;
        while (i >= 0 && cur[i] == s - 1) {
            cur[i] = kSkull;
            --i;
        }
        if (i < 0) break;
        ++cur[i];
    }
    return out;
}

namespace {

// Records every behavior realized by deleting x; the first solution per behavior wins.
void record_deletion(const View& v, const std::vector<int>& border, const std::vector<char>& x,
                     const std::vector<int>& x_ids, UlcTable& table)
{
    std::vector<char> in(v.n);
    for (int p = 0; p < v.n; ++p) in[p] = !x[p];
    std::vector<char> is_border(v.n, 0);
    for (int p : border) is_border[p] = 1;
    std::vector<int> base(v.n, -1);
    std::vector<std::vector<std::vector<int>>> choices;
    std::vector<std::vector<int>> choice_comp;
    for (const auto& comp : components(v, in)) {
        auto labs = component_labelings(v, in, comp[0]);
        if (labs.empty()) return;
        if (std::any_of(comp.begin(), comp.end(), [&](int p) { return is_border[p]; })) {
            choices.push_back(std::move(labs));
            choice_comp.push_back(comp);
        } else {
            for (int p : comp) base[p] = labs[0][p];
        }
    }
    std::vector<std::size_t> pick(choices.size(), 0);
    while (true) {
        std::vector<int> lab = base;
        for (std::size_t c = 0; c < choices.size(); ++c)
            for (int p : choice_comp[c]) lab[p] = choices[c][pick[c]][p];
        UlcBehavior beh(border.size());
        for (std::size_t i = 0; i < border.size(); ++i) beh[i] = x[border[i]] ? kSkull : lab[border[i]];
        if (!table.count(beh)) table.emplace(std::move(beh), UlcSolution{x_ids, to_labeling(v, lab)});
        std::size_t c = 0;
        while (c < pick.size() && ++pick[c] == choices[c].size()) pick[c++] = 0;
        if (c == pick.size()) break;
    }
}

std::vector<int> border_positions(const View& v, const UlcBorder& ib)
{
    std::vector<int> out;
    for (int id : ib.border) out.push_back(v.pos(id));
    return out;
}

void check_border_instance(const UlcBorder& ib)
{
    RC_ASSERT(static_cast<int>(ib.border.size()) <= 4 * ib.k, "more than 4k border vertices");
    RC_ASSERT(std::is_sorted(ib.border.begin(), ib.border.end()), "border must be ascending");
    for (int id : ib.border) RC_ASSERT(ib.g.has(id), "border vertex outside the graph");
    RC_ASSERT(ib.g.n() == 0 || is_connected(ib.g.skeleton()), "border instance must be connected");
}

std::uint64_t brute_candidates(int n, int k)
{
    std::uint64_t total = 0;
    for (int i = 0; i <= std::min(n, k); ++i) total += binom(n, i);
    return total;
}

} // namespace

UlcTable brute_force_border_ulc(const UlcBorder& ib, SolveContext& ctx)
{
    ++ctx.stats().brute_force_calls;
    View v(ib.g);
    const auto border = border_positions(v, ib);
    UlcTable table;
    std::vector<char> x(v.n, 0);
    for_each_subset_upto(v.n, ib.k, [&](const std::vector<int>& idx) {
        std::fill(x.begin(), x.end(), 0);
        std::vector<int> ids;
        for (int p : idx) {
            x[p] = 1;
            ids.push_back(v.ids[p]);
        }
        record_deletion(v, border, x, ids, table);
        return true;
    });
    return table;
}

namespace {

struct State {
    std::vector<char> x0; // committed deletions
    std::vector<char> y;  // committed survivors
    std::vector<int> lab; // labels on the labeled survivors, -1 elsewhere
    int nx = 0;
};

// Smallest set B of at most two vertices next to the labeled part such that the
// labeling cannot extend to it; empty when the whole neighbourhood extends.
std::vector<int> blocking_set(const View& v, const State& st)
{
    std::vector<int> cand(v.n, -1), ring;
    std::vector<char> in_ring(v.n, 0);
    for (int p = 0; p < v.n; ++p) {
        if (st.lab[p] >= 0 || st.x0[p]) continue;
        const PartialPermutation* to_w = nullptr;
        int w = -1;
        for (const auto& [q, psi] : v.adj[p])
            if (st.lab[q] >= 0) {
                w = q;
                to_w = psi;
                break;
            }
        if (w < 0) continue;
        const int a = to_w->preimage(st.lab[w]);
        if (!v.allowed(p, a)) return {p};
        cand[p] = a;
        in_ring[p] = 1;
        ring.push_back(p);
    }
    for (int p : ring)
        for (const auto& [q, psi] : v.adj[p]) {
            if (st.lab[q] >= 0) {
                if (!psi->contains(cand[p], st.lab[q])) return {p};
            } else if (in_ring[q] && q > p && !psi->contains(cand[p], cand[q])) {
                return {p, q};
            }
        }
    return {};
}

// Bounded search for one (S, big-stain labeling, behavior) branch.
struct SearchTree {
    const View& v;
    int k;
    const std::vector<char>& in_s;
    const std::vector<char>& sbig;
    std::vector<char> near_big; // closed neighbourhood of the big stains
    std::int64_t leaves = 0;
    std::optional<UlcSolution> best;

    void offer(const State& st, const std::vector<int>& lab)
    {
        UlcSolution sol;
        for (int p = 0; p < v.n; ++p)
            if (st.x0[p]) sol.x.push_back(v.ids[p]);
        sol.labels = to_labeling(v, lab);
        if (!best || sol < *best) best = std::move(sol);
    }

    void run(State st)
    {
        std::vector<char> alive(v.n);
        std::vector<int> out;
        while (true) {
            // finishing rule
            for (int p = 0; p < v.n; ++p) alive[p] = !st.x0[p];
            if (label_consistent(v, alive, st.lab, out)) {
                ++leaves;
                offer(st, out);
                return;
            }
            // neighbourhood branching rule
            const auto b = blocking_set(v, st);
            if (!b.empty()) {
                int made = 0;
                for (int p : b) {
                    if (st.y[p] || st.nx >= k) continue;
                    State child = st;
                    child.x0[p] = 1;
                    ++child.nx;
                    ++made;
                    run(std::move(child));
                }
                if (made == 0) ++leaves;
                return;
            }
            // small stains rule
            std::vector<char> open(v.n);
            for (int p = 0; p < v.n; ++p) open[p] = !near_big[p] && !st.x0[p];
            std::vector<int> c;
            for (const auto& comp : components(v, open))
                if (std::any_of(comp.begin(), comp.end(), [&](int p) { return st.y[p] && st.lab[p] < 0; })) {
                    c = comp;
                    break;
                }
            RC_ASSERT(!c.empty(), "no search rule applies");
            std::vector<char> in_c(v.n, 0), cstar = sbig;
            for (int p : c) in_c[p] = cstar[p] = 1;
            bool nbrs_deleted = true;
            for (int p : c)
                for (const auto& [q, psi] : v.adj[p]) {
                    if (in_c[q]) continue;
                    if (st.x0[q])
                        continue;
                    nbrs_deleted = false;
                    cstar[q] = 1;
                }
            if (label_consistent(v, cstar, st.lab, out)) {
                for (int p : c)
                    if (st.y[p] && st.lab[p] < 0) st.lab[p] = out[p];
                continue;
            }
            std::vector<int> cs;
            for (int p : c)
                if (!in_s[p]) cs.push_back(p);
            // with no budget left every labeled child would need a deletion next
            const bool big_branches = !nbrs_deleted && st.nx < k;
            // with C inside S the small-component branch repeats the first labeled branch
            const bool small_branch = !(cs.empty() && big_branches);
            int made = 0;
            if (small_branch) {
                State child = st;
                bool ok = child.nx + static_cast<int>(cs.size()) <= k;
                for (int p : cs) {
                    if (child.y[p]) ok = false;
                    child.x0[p] = 1;
                }
                child.nx += static_cast<int>(cs.size());
                if (ok) {
                    std::vector<char> cs_in(v.n, 0);
                    for (int p : c) cs_in[p] = in_s[p];
                    for (const auto& stain : components(v, cs_in)) {
                        if (child.lab[stain[0]] >= 0) continue;
                        auto labs = component_labelings(v, cs_in, stain[0]);
                        if (labs.empty()) {
                            ok = false;
                            break;
                        }
                        for (int p : stain) child.lab[p] = labs[0][p];
                    }
                }
                if (ok) {
                    ++made;
                    run(std::move(child));
                }
            }
            if (big_branches) {
                for (const auto& labs : component_labelings(v, in_c, c[0])) {
                    bool agree = true;
                    for (int p : c)
                        if (st.lab[p] >= 0 && st.lab[p] != labs[p]) agree = false;
                    if (!agree) continue;
                    State child = st;
                    for (int p : c) {
                        child.y[p] = 1;
                        child.lab[p] = labs[p];
                    }
                    RC_ASSERT(!blocking_set(v, child).empty(),
                              "labeled small-stain branch must continue with neighbourhood branching");
                    ++made;
                    run(std::move(child));
                }
            }
            if (made == 0) ++leaves;
            return;
        }
    }
};

// Up to `limit` paths from c1 to c2 with pairwise disjoint interiors, as position
// sequences starting in c1 and ending in c2.
std::vector<std::vector<int>> stain_paths(const View& v, const std::vector<char>& c1, const std::vector<char>& c2,
                                          int limit)
{
    const int n = v.n;
    const int S = 2 * n, T = 2 * n + 1;
    const int wide = n + 1;
    FlowNetwork net(2 * n + 2);
    for (int p = 0; p < n; ++p) {
        net.add(2 * p, 2 * p + 1, c1[p] || c2[p] ? wide : 1);
        if (c1[p]) net.add(S, 2 * p, wide);
        if (c2[p]) net.add(2 * p + 1, T, wide);
        for (const auto& [q, psi] : v.adj[p]) {
            if (c1[q] || c2[p]) continue;
            if ((c1[p] && c1[q]) || (c2[p] && c2[q])) continue;
            net.add(2 * p + 1, 2 * q, 1);
        }
    }
    const int f = net.run(S, T, limit);
    std::vector<std::vector<int>> used(net.nodes());
    for (int x = 0; x < net.nodes(); ++x)
        for (int arc : net.out_arcs(x))
            if ((arc & 1) == 0)
                for (int i = 0; i < net.flow_on(arc); ++i) used[x].push_back(arc);
    std::vector<std::vector<int>> paths;
    for (int i = 0; i < f; ++i) {
        std::vector<int> path;
        int x = S;
        while (x != T) {
            RC_ASSERT(!used[x].empty(), "flow decomposition lost a path");
            const int arc = used[x].back();
            used[x].pop_back();
            x = net.arc_to(arc);
            if (x < 2 * n && (x & 1) == 0) path.push_back(x / 2);
        }
        paths.push_back(std::move(path));
    }
    return paths;
}

const PartialPermutation* edge_constraint(const View& v, int p, int q)
{
    for (const auto& [r, psi] : v.adj[p])
        if (r == q) return psi;
    return nullptr;
}

// Candidate labelings of all big stains: every labeling of the largest one,
// each other stain following the label carried by a strict majority of
// 2k+1 interior-disjoint paths.
std::vector<std::vector<int>> big_labelings(const View& v, const std::vector<char>& in_s,
                                            const std::vector<std::vector<int>>& big, int k)
{
    std::size_t first = 0;
    for (std::size_t i = 1; i < big.size(); ++i)
        if (big[i].size() > big[first].size()) first = i;
    std::vector<char> c1(v.n, 0);
    for (int p : big[first]) c1[p] = 1;
    struct Other {
        std::vector<int> comp;
        std::vector<std::vector<int>> labs;
        std::vector<std::vector<int>> paths;
    };
    std::vector<Other> others;
    for (std::size_t i = 0; i < big.size(); ++i) {
        if (i == first) continue;
        Other o;
        o.comp = big[i];
        o.labs = component_labelings(v, in_s, big[i][0]);
        if (o.labs.empty()) return {};
        std::vector<char> c2(v.n, 0);
        for (int p : big[i]) c2[p] = 1;
        o.paths = stain_paths(v, c1, c2, 2 * k + 1);
        others.push_back(std::move(o));
    }
    std::vector<std::vector<int>> out;
    for (auto lab : component_labelings(v, in_s, big[first][0])) {
        bool ok = true;
        for (const auto& o : others) {
            std::vector<int> votes(o.labs.size(), 0);
            for (const auto& path : o.paths) {
                int a = lab[path[0]];
                for (std::size_t j = 0; j + 1 < path.size() && a >= 0; ++j) {
                    a = edge_constraint(v, path[j], path[j + 1])->apply(a);
                    if (!v.allowed(path[j + 1], a)) a = -1;
                }
                if (a < 0) continue;
                for (std::size_t j = 0; j < o.labs.size(); ++j)
                    if (o.labs[j][path.back()] == a) ++votes[j];
            }
            int winner = -1;
            for (std::size_t j = 0; j < votes.size(); ++j)
                if (votes[j] >= k + 1) winner = static_cast<int>(j);
            if (winner < 0) {
                ok = false;
                break;
            }
            for (int p : o.comp) lab[p] = o.labs[winner][p];
        }
        if (ok) out.push_back(std::move(lab));
    }
    return out;
}

// Cheap necessary conditions on a behavior: budget, lists, border-border edges.
bool behavior_plausible(const View& v, const std::vector<int>& border, const UlcBehavior& beh, int k)
{
    int dead = 0;
    for (std::size_t i = 0; i < border.size(); ++i) {
        if (beh[i] == kSkull) {
            ++dead;
            continue;
        }
        if (!v.allowed(border[i], beh[i])) return false;
        for (std::size_t j = 0; j < i; ++j) {
            if (beh[j] == kSkull) continue;
            const auto* psi = edge_constraint(v, border[i], border[j]);
            if (psi && !psi->contains(beh[i], beh[j])) return false;
        }
    }
    return dead <= k;
}

struct HcWorker {
    std::map<UlcBehavior, UlcSolution> best;
    UlcSearchStats stats;
    std::vector<char> in;
};

} // namespace

UlcTable high_connectivity_ulc(const UlcBorder& ib, std::int64_t q, std::int64_t t, SolveContext& ctx,
                               UlcSearchStats* search)
{
    ++ctx.stats().hc_invocations;
    View v(ib.g);
    const auto border = border_positions(v, ib);
    const int k = ib.k;

    // behaviors grouped by their deleted borders
    std::map<std::vector<int>, std::vector<UlcBehavior>> groups;
    for (auto& beh : ulc_behaviors(ib)) {
        if (!behavior_plausible(v, border, beh, k)) continue;
        std::vector<int> dead;
        for (std::size_t i = 0; i < border.size(); ++i)
            if (beh[i] == kSkull) dead.push_back(border[i]);
        groups[dead].push_back(std::move(beh));
    }

    // solutions without deletions
    UlcTable empty_x;
    record_deletion(v, border, std::vector<char>(v.n, 0), {}, empty_x);

    const std::int64_t a = sat_add(sat_mul(q, t), sat_mul(sat_add(q, 1), k));
    SetFamily fam = ctx.family(v.n, a, k, "ulc-high-connectivity");
    ctx.stats().branches += static_cast<std::int64_t>(fam.size());
    const std::int64_t leaf_bound = sat_pow(2 * v.s + 1, k);

    const int threads = std::max(1, ctx.config().threads);
    std::vector<HcWorker> workers(threads);
    parallel_for(fam.size(), threads, [&](std::size_t i, int w) {
        HcWorker& wk = workers[w];
        fam.member(i, wk.in);
        for (const auto& [dead, behs] : groups) {
            std::vector<char> forsaken(v.n, 0);
            int nforsaken = 0;
            for (int p = 0; p < v.n; ++p) forsaken[p] = v.phi[p] == 0;
            for (int p : dead) forsaken[p] = 1;
            for (int p = 0; p < v.n; ++p) nforsaken += forsaken[p];
            if (nforsaken > k) continue;
            std::vector<char> in_s(wk.in.begin(), wk.in.end());
            bool clash = false;
            for (int p = 0; p < v.n; ++p) clash = clash || (in_s[p] && forsaken[p]);
            if (clash) continue;
            // every vertex that is not forsaken ends up next to S
            for (int p = 0; p < v.n; ++p) {
                if (forsaken[p] || in_s[p]) continue;
                bool touches = false;
                for (const auto& [r, psi] : v.adj[p]) touches = touches || in_s[r];
                if (!touches) in_s[p] = 1;
            }
            std::vector<std::vector<int>> big;
            std::vector<char> sbig(v.n, 0), near_big(v.n, 0);
            for (auto& stain : components(v, in_s))
                if (static_cast<std::int64_t>(stain.size()) > q) {
                    for (int p : stain) {
                        sbig[p] = near_big[p] = 1;
                        for (const auto& [r, psi] : v.adj[p]) near_big[r] = 1;
                    }
                    big.push_back(std::move(stain));
                }
            if (big.empty()) {
                // every component of G - X is small, so S is all of V - X
                std::vector<int> lab;
                State st;
                st.x0.assign(v.n, 0);
                for (int p = 0; p < v.n; ++p)
                    if (!in_s[p]) {
                        st.x0[p] = 1;
                        ++st.nx;
                    }
                if (st.nx > k) continue;
                for (const auto& beh : behs) {
                    std::vector<int> fixed(v.n, -1);
                    bool ok = true;
                    for (std::size_t bi = 0; bi < border.size(); ++bi)
                        if (beh[bi] != kSkull) {
                            ok = ok && in_s[border[bi]];
                            fixed[border[bi]] = beh[bi];
                        }
                    if (!ok || !label_consistent(v, in_s, fixed, lab)) continue;
                    SearchTree tree{v, k, in_s, sbig, near_big, 0, std::nullopt};
                    tree.offer(st, lab);
                    auto it = wk.best.find(beh);
                    if (it == wk.best.end())
                        wk.best.emplace(beh, std::move(*tree.best));
                    else if (*tree.best < it->second)
                        it->second = std::move(*tree.best);
                }
                continue;
            }
            const auto psi_big = big_labelings(v, in_s, big, k);
            for (const auto& beh : behs) {
                for (const auto& lab_big : psi_big) {
                    SearchTree tree{v, k, in_s, sbig, near_big, 0, std::nullopt};
                    State st;
                    st.x0 = forsaken;
                    st.nx = nforsaken;
                    st.y = in_s;
                    st.lab = lab_big;
                    bool ok = true;
                    std::vector<int> tmp(v.n, -1), seen;
                    for (std::size_t bi = 0; bi < border.size() && ok; ++bi) {
                        const int p = border[bi];
                        if (beh[bi] == kSkull) continue;
                        if (st.lab[p] >= 0) {
                            ok = st.lab[p] == beh[bi];
                            continue;
                        }
                        if (st.x0[p]) {
                            ok = false;
                            continue;
                        }
                        st.y[p] = 1;
                        if (!propagate(v, st.y, p, beh[bi], tmp, seen)) {
                            ok = false;
                            continue;
                        }
                        for (int r : seen) {
                            if (st.lab[r] >= 0 && st.lab[r] != tmp[r]) ok = false;
                            st.lab[r] = tmp[r];
                            tmp[r] = -1;
                        }
                    }
                    if (ok)
                        tree.run(std::move(st));
                    else
                        tree.leaves = 1;
                    ++wk.stats.trees;
                    wk.stats.leaves_max = std::max(wk.stats.leaves_max, tree.leaves);
                    if (tree.leaves > leaf_bound) ++wk.stats.bound_violations;
                    if (tree.best) {
                        auto it = wk.best.find(beh);
                        if (it == wk.best.end())
                            wk.best.emplace(beh, std::move(*tree.best));
                        else if (*tree.best < it->second)
                            it->second = std::move(*tree.best);
                    }
                }
            }
        }
    });

    UlcTable table;
    UlcSearchStats total;
    for (auto& wk : workers) {
        total.trees += wk.stats.trees;
        total.leaves_max = std::max(total.leaves_max, wk.stats.leaves_max);
        total.bound_violations += wk.stats.bound_violations;
        for (auto& [beh, sol] : wk.best) {
            auto it = table.find(beh);
            if (it == table.end())
                table.emplace(beh, std::move(sol));
            else if (sol < it->second)
                it->second = std::move(sol);
        }
    }
    for (const auto& [dead, behs] : groups)
        for (const auto& beh : behs) {
            auto e = empty_x.find(beh);
            if (e == empty_x.end()) continue;
            auto it = table.find(beh);
            if (it == table.end() || e->second < it->second) table[beh] = e->second;
        }
    ctx.stats().hc_leaves_max = std::max(ctx.stats().hc_leaves_max, total.leaves_max);
    ctx.stats().hc_leaves_bound_violations += total.bound_violations;
    if (search) {
        search->trees += total.trees;
        search->leaves_max = std::max(search->leaves_max, total.leaves_max);
        search->bound_violations += total.bound_violations;
    }
    return table;
}

namespace {

// A bypassed vertex with its list and constraints at the time it left.
struct Bypassed {
    int id;
    std::uint64_t phi;
    std::map<int, PartialPermutation> nbr;
};

enum class Step { Progress, NoProgress, Infeasible };

Step recurse_on_side(UlcBorder& cur, const std::vector<int>& vstar, std::vector<Bypassed>& trail,
                     SolveContext& ctx, int depth)
{
    std::set<int> in_v(vstar.begin(), vstar.end()), w(vstar.begin(), vstar.end()), zw;
    for (int id : vstar)
        for (const auto& [u, psi] : cur.g.nbrs(id))
            if (!in_v.count(u)) {
                zw.insert(u);
                w.insert(u);
            }
    UlcBorder sub;
    sub.k = cur.k;
    sub.g = cur.g.induced(std::vector<int>(w.begin(), w.end()));
    std::set<int> sb(zw.begin(), zw.end());
    for (int id : cur.border)
        if (w.count(id)) sb.insert(id);
    sub.border.assign(sb.begin(), sb.end());
    RC_ASSERT(static_cast<int>(sub.border.size()) <= 4 * cur.k, "side has too many borders");

    ++ctx.stats().separations;
    const UlcTable table = solve_border_ulc(sub, ctx, depth + 1);
    if (table.empty()) return Step::Infeasible;
    std::set<int> used(sb.begin(), sb.end());
    for (const auto& [beh, sol] : table) used.insert(sol.x.begin(), sol.x.end());
    bool gone = false;
    for (int id : vstar) {
        if (used.count(id)) continue;
        // a vertex without labels lies in every solution, so none exists
        if (cur.g.phi(id) == 0) return Step::Infeasible;
        trail.push_back({id, cur.g.phi(id), cur.g.nbrs(id)});
        bypass_vertex_ulc(cur.g, id);
        gone = true;
    }
    return gone ? Step::Progress : Step::NoProgress;
}

// Labels bypassed vertices in reverse order, each from a surviving neighbour.
void restore(const std::vector<Bypassed>& trail, UlcSolution& sol)
{
    const std::set<int> del(sol.x.begin(), sol.x.end());
    for (auto it = trail.rbegin(); it != trail.rend(); ++it) {
        int alpha = -1;
        for (const auto& [u, psi] : it->nbr) {
            if (del.count(u)) continue;
            alpha = psi.preimage(sol.labels.at(u));
            break;
        }
        bool isolated = std::all_of(it->nbr.begin(), it->nbr.end(),
                                    [&](const auto& e) { return del.count(e.first) != 0; });
        if (isolated)
            for (int a = 0; a < 64 && alpha < 0; ++a)
                if (it->phi >> a & 1) alpha = a;
        RC_ASSERT(alpha >= 0 && (it->phi >> alpha & 1), "bypassed vertex cannot be relabeled");
        sol.labels[it->id] = alpha;
    }
}

} // namespace

UlcTable solve_border_ulc(const UlcBorder& ib, SolveContext& ctx, int depth)
{
    ctx.note_depth(depth);
    check_border_instance(ib);
    UlcBorder cur = ib;
    std::vector<Bypassed> trail;
    UlcTable table;
    while (true) {
        const UlcThresholds th = ulc_thresholds(cur.k, cur.g.s(), ctx.config());
        if (cur.k == 0 || cur.g.n() <= 1) {
            table = brute_force_border_ulc(cur, ctx);
            break;
        }
        const MultiGraph skel = cur.g.skeleton();
        std::vector<std::vector<int>> sides;
        bool found = false;
        if (auto sep = find_good_node_separation(skel, {}, th.q, 2 * cur.k, ctx)) {
            found = true;
            for (const auto* side : {&sep->v1, &sep->v2}) {
                int nb = 0;
                for (int id : *side) nb += std::binary_search(cur.border.begin(), cur.border.end(), id);
                if (nb <= 2 * cur.k) sides.push_back(*side);
            }
            std::stable_sort(sides.begin(), sides.end(),
                             [](const auto& a, const auto& b) { return a.size() < b.size(); });
        } else if (auto fl = find_flower_separation(skel, {}, cur.border, th.q, cur.k, ctx)) {
            found = true;
            std::vector<int> vstar;
            for (const auto& petal : fl->petals) vstar.insert(vstar.end(), petal.begin(), petal.end());
            std::sort(vstar.begin(), vstar.end());
            sides.push_back(std::move(vstar));
        }
        if (found) {
            Step st = Step::NoProgress;
            for (const auto& side : sides) {
                st = recurse_on_side(cur, side, trail, ctx, depth);
                if (st != Step::NoProgress) break;
            }
            if (st == Step::Infeasible) return {};
            if (st == Step::Progress) continue;
            // the separation did not shrink the instance
            if (brute_candidates(cur.g.n(), cur.k) <= static_cast<std::uint64_t>(ctx.config().brute_limit)) {
                table = brute_force_border_ulc(cur, ctx);
            } else {
                ctx.stats().exact = false;
                table = high_connectivity_ulc(cur, th.q, th.t, ctx);
            }
            break;
        }
        if (cur.g.n() <= sat_add(sat_mul(th.q, th.t), cur.k))
            table = brute_force_border_ulc(cur, ctx);
        else
            table = high_connectivity_ulc(cur, th.q, th.t, ctx);
        break;
    }
    const UlcInstance check{ib.g, ib.k};
    for (auto& [beh, sol] : table) {
        restore(trail, sol);
        std::string why;
        RC_ASSERT(verify_nulc(check, sol.x, sol.labels, &why), "border solution invalid: " + why);
        for (std::size_t i = 0; i < ib.border.size(); ++i) {
            const int id = ib.border[i];
            const bool dead = std::binary_search(sol.x.begin(), sol.x.end(), id);
            RC_ASSERT(beh[i] == kSkull ? dead : !dead && sol.labels.at(id) == beh[i],
                      "border solution inconsistent with its behavior");
        }
    }
    return table;
}

UlcResult solve_nulc(const UlcInstance& inst, SolveContext& ctx)
{
    if (inst.k < 0) throw InputError("budget must be nonnegative");
    UlcResult res;
    res.feasible = true;
    for (const auto& comp : connected_components(inst.g.skeleton())) {
        UlcBorder ib;
        ib.g = inst.g.induced(comp);
        ib.k = inst.k;
        const UlcTable table = solve_border_ulc(ib, ctx);
        auto it = table.find(UlcBehavior{});
        if (it == table.end()) return UlcResult{};
        res.sol.x.insert(res.sol.x.end(), it->second.x.begin(), it->second.x.end());
        res.sol.labels.insert(it->second.labels.begin(), it->second.labels.end());
    }
    std::sort(res.sol.x.begin(), res.sol.x.end());
    if (static_cast<int>(res.sol.x.size()) > inst.k) return UlcResult{};
    std::string why;
    RC_ASSERT(verify_nulc(inst, res.sol.x, res.sol.labels, &why), "solution invalid: " + why);
    return res;
}

EdgeUlcReduction reduce_edge_ulc(const UlcInstance& inst)
{
    if (inst.k < 0) throw InputError("budget must be nonnegative");
    const auto ids = inst.g.ids();
    const int stride = ids.empty() ? 1 : std::max(1, ids.back() + 1);
    const int s = inst.g.s();
    EdgeUlcReduction red;
    red.node.k = inst.k;
    red.node.g = UlcGraph(s);
    UlcGraph& h = red.node.g;
    const auto ident = PartialPermutation::identity(s);
    for (int v : ids)
        for (int j = 0; j <= inst.k; ++j) {
            const int c = v + j * stride;
            h.add_vertex(c, inst.g.phi(v));
            red.copy_of[c] = v;
            for (int i = 0; i < j; ++i) h.update_edge(v + i * stride, c, ident);
        }
    int next = (inst.k + 1) * stride;
    for (const auto& [u, v] : inst.g.edges()) {
        const int mid = next++;
        h.add_vertex(mid);
        red.middle_of[mid] = {u, v};
        const auto& psi = inst.g.constraint(u, v);
        for (int j = 0; j <= inst.k; ++j) {
            h.update_edge(u + j * stride, mid, ident);
            h.update_edge(mid, v + j * stride, psi);
        }
    }
    return red;
}

EulcResult solve_eulc(const UlcInstance& inst, SolveContext& ctx)
{
    const EdgeUlcReduction red = reduce_edge_ulc(inst);
    const UlcResult r = solve_nulc(red.node, ctx);
    EulcResult out;
    if (!r.feasible) return out;
    out.feasible = true;
    for (int id : r.sol.x) {
        auto it = red.middle_of.find(id);
        RC_ASSERT(it != red.middle_of.end(), "a minimum node solution never deletes vertex copies");
        out.edges.push_back(it->second);
    }
    for (int v : inst.g.ids()) out.labels[v] = r.sol.labels.at(v);
    std::string why;
    RC_ASSERT(verify_eulc(inst, out.edges, out.labels, &why), "edge solution invalid: " + why);
    return out;
}
} // namespace rc

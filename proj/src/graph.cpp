#include "rc/graph.hpp"

#include <algorithm>
#include <map>

namespace rc {

std::int64_t MultiGraph::total_multiplicity() const
{
    std::int64_t t = 0;
    for (const auto& e : edges_) t += e.mult;
    return t;
}

int MultiGraph::find(int id) const
{
    auto it = std::lower_bound(ids_.begin(), ids_.end(), id);
    if (it == ids_.end() || *it != id) return -1;
    return static_cast<int>(it - ids_.begin());
}

int MultiGraph::pos(int id) const
{
    int p = find(id);
    if (p < 0) throw InputError("unknown vertex id " + std::to_string(id));
    return p;
}

int MultiGraph::edge_index(int a, int b) const
{
    const auto& row = adj_[a];
    auto it = std::lower_bound(row.begin(), row.end(), std::make_pair(b, -1));
    if (it == row.end() || it->first != b) return -1;
    return it->second;
}

int MultiGraph::edge_index_by_id(int u, int v) const
{
    int a = find(u), b = find(v);
    if (a < 0 || b < 0) return -1;
    return edge_index(a, b);
}

MultiGraph MultiGraph::with_tags(std::vector<std::uint8_t> tags) const
{
    if (tags.size() != ids_.size()) throw InputError("tag vector size mismatch");
    MultiGraph g = *this;
    g.tags_ = std::move(tags);
    return g;
}

std::vector<int> MultiGraph::ids_with_tag(VertexTag t) const
{
    std::vector<int> out;
    for (int p = 0; p < n(); ++p)
        if (tags_[p] & t) out.push_back(ids_[p]);
    return out;
}

void GraphBuilder::add_vertex(int id, std::uint8_t tags)
{
    vertices_[id] |= tags;
}

void GraphBuilder::add_tags(int id, std::uint8_t tags)
{
    auto it = vertices_.find(id);
    if (it == vertices_.end()) throw InputError("unknown vertex id " + std::to_string(id));
    it->second |= tags;
}

void GraphBuilder::add_edge(int u, int v, int mult)
{
    if (mult < 1) throw InputError("edge multiplicity must be positive");
    if (!vertices_.count(u) || !vertices_.count(v))
        throw InputError("edge references unknown vertex");
    if (u == v) return;
    if (u > v) std::swap(u, v);
    edges_.push_back({{u, v}, mult});
}

MultiGraph GraphBuilder::build() const
{
    MultiGraph g;
    g.ids_.reserve(vertices_.size());
    for (const auto& [id, t] : vertices_) g.ids_.push_back(id);
    std::sort(g.ids_.begin(), g.ids_.end());
    g.tags_.resize(g.ids_.size());
    for (int p = 0; p < g.n(); ++p) g.tags_[p] = vertices_.at(g.ids_[p]);
    int top = g.ids_.empty() ? 0 : g.ids_.back() + 1;
    g.next_id_ = std::max(top, next_floor_);

    std::vector<std::pair<std::pair<int, int>, int>> es;
    es.reserve(edges_.size());
    for (const auto& [uv, mult] : edges_) es.push_back({{g.find(uv.first), g.find(uv.second)}, mult});
    std::sort(es.begin(), es.end());
    for (const auto& [ab, mult] : es) {
        if (!g.edges_.empty() && g.edges_.back().a == ab.first && g.edges_.back().b == ab.second)
            g.edges_.back().mult += mult;
        else
            g.edges_.push_back({ab.first, ab.second, mult});
    }
    g.adj_.assign(g.n(), {});
    for (int i = 0; i < g.m(); ++i) {
        g.adj_[g.edges_[i].a].push_back({g.edges_[i].b, i});
        g.adj_[g.edges_[i].b].push_back({g.edges_[i].a, i});
    }
    for (auto& row : g.adj_) std::sort(row.begin(), row.end());
    return g;
}

ContractionMap ContractionMap::identity(const MultiGraph& g)
{
    ContractionMap c;
    for (int id : g.ids()) c.map_[id] = id;
    return c;
}

int ContractionMap::operator()(int id) const
{
    auto it = map_.find(id);
    if (it == map_.end()) throw InputError("contraction map has no entry for " + std::to_string(id));
    return it->second;
}

ContractionMap ContractionMap::then(const ContractionMap& next) const
{
    ContractionMap c;
    for (const auto& [from, mid] : map_) c.map_[from] = next(mid);
    return c;
}

std::vector<int> ContractionMap::preimage(int image) const
{
    std::vector<int> out;
    for (const auto& [from, to] : map_)
        if (to == image) out.push_back(from);
    std::sort(out.begin(), out.end());
    return out;
}

Contracted quotient(const MultiGraph& g, const std::vector<int>& group)
{
    if (static_cast<int>(group.size()) != g.n()) throw InputError("group vector size mismatch");
    // first position of each group, and group sizes
    std::map<int, std::pair<int, int>> info; // label -> (first pos, count)
    for (int p = 0; p < g.n(); ++p) {
        auto it = info.find(group[p]);
        if (it == info.end())
            info[group[p]] = {p, 1};
        else
            ++it->second.second;
    }
    std::vector<std::pair<int, int>> order; // (first pos, label)
    for (const auto& [label, fc] : info) order.push_back({fc.first, label});
    std::sort(order.begin(), order.end());

    std::map<int, int> new_id;
    int fresh = g.next_id();
    for (const auto& [first, label] : order) {
        if (info[label].second == 1)
            new_id[label] = g.id(first);
        else
            new_id[label] = fresh++;
    }
    GraphBuilder b(fresh);
    Contracted out;
    for (int p = 0; p < g.n(); ++p) {
        int nid = new_id[group[p]];
        b.add_vertex(nid, g.tags(p));
        out.iota.set(g.id(p), nid);
    }
    for (const auto& e : g.edges()) {
        int u = new_id[group[e.a]], v = new_id[group[e.b]];
        if (u != v) b.add_edge(u, v, e.mult);
    }
    out.graph = b.build();
    return out;
}

Contracted contract_edges(const MultiGraph& g, const std::vector<int>& classes)
{
    DisjointSets ds(g.n());
    for (int c : classes) {
        if (c < 0 || c >= g.m()) throw InputError("unknown edge class " + std::to_string(c));
        ds.unite(g.edges()[c].a, g.edges()[c].b);
    }
    std::vector<int> group(g.n());
    for (int p = 0; p < g.n(); ++p) group[p] = ds.find(p);
    return quotient(g, group);
}

Contracted contract_edges(const MultiGraph& g, const std::vector<std::pair<int, int>>& id_pairs)
{
    std::vector<int> classes;
    for (const auto& [u, v] : id_pairs) {
        int c = g.edge_index_by_id(u, v);
        if (c < 0) throw InputError("unknown edge " + std::to_string(u) + "-" + std::to_string(v));
        classes.push_back(c);
    }
    return contract_edges(g, classes);
}

Contracted identify_vertices(const MultiGraph& g, const std::vector<int>& ids)
{
    if (ids.empty()) throw InputError("identify_vertices needs a nonempty group");
    std::vector<int> group(g.n());
    for (int p = 0; p < g.n(); ++p) group[p] = p;
    int root = g.pos(ids.front());
    for (int id : ids) group[g.pos(id)] = root;
    return quotient(g, group);
}

namespace {

MultiGraph rebuild(const MultiGraph& g, const std::vector<int>& mult)
{
    GraphBuilder b(g.next_id());
    for (int p = 0; p < g.n(); ++p) b.add_vertex(g.id(p), g.tags(p));
    for (int i = 0; i < g.m(); ++i)
        if (mult[i] > 0) b.add_edge(g.id(g.edges()[i].a), g.id(g.edges()[i].b), mult[i]);
    return b.build();
}

} // namespace

MultiGraph cap_multiplicity(const MultiGraph& g, int k)
{
    std::vector<int> mult(g.m());
    for (int i = 0; i < g.m(); ++i) mult[i] = std::min(g.edges()[i].mult, k + 1);
    return rebuild(g, mult);
}

MultiGraph sparsify(const MultiGraph& g, int k)
{
    if (k < 0) throw InputError("sparsify needs k >= 0");
    std::vector<int> left(g.m()), kept(g.m(), 0);
    for (int i = 0; i < g.m(); ++i) left[i] = g.edges()[i].mult;
    DisjointSets ds;
    for (int round = 0; round <= k; ++round) {
        ds.reset(g.n());
        bool any = false;
        for (int i = 0; i < g.m(); ++i) {
            if (left[i] == 0) continue;
            if (ds.unite(g.edges()[i].a, g.edges()[i].b)) {
                --left[i];
                ++kept[i];
                any = true;
            }
        }
        if (!any) break;
    }
    return rebuild(g, kept);
}

std::vector<int> component_labels(const MultiGraph& g, int* count)
{
    std::vector<int> label(g.n(), -1);
    int c = 0;
    std::vector<int> stack;
    for (int s = 0; s < g.n(); ++s) {
        if (label[s] >= 0) continue;
        label[s] = c;
        stack.push_back(s);
        while (!stack.empty()) {
            int x = stack.back();
            stack.pop_back();
            for (const auto& [y, e] : g.adj(x)) {
                if (label[y] < 0) {
                    label[y] = c;
                    stack.push_back(y);
                }
            }
        }
        ++c;
    }
    if (count) *count = c;
    return label;
}

std::vector<std::vector<int>> connected_components(const MultiGraph& g)
{
    int c = 0;
    auto label = component_labels(g, &c);
    std::vector<std::vector<int>> out(c);
    for (int p = 0; p < g.n(); ++p) out[label[p]].push_back(g.id(p));
    return out;
}

bool is_connected(const MultiGraph& g)
{
    int c = 0;
    component_labels(g, &c);
    return c <= 1;
}

MultiGraph induced_subgraph(const MultiGraph& g, const std::vector<int>& ids)
{
    std::vector<char> keep(g.n(), 0);
    for (int id : ids) keep[g.pos(id)] = 1;
    GraphBuilder b(g.next_id());
    for (int p = 0; p < g.n(); ++p)
        if (keep[p]) b.add_vertex(g.id(p), g.tags(p));
    for (const auto& e : g.edges())
        if (keep[e.a] && keep[e.b]) b.add_edge(g.id(e.a), g.id(e.b), e.mult);
    return b.build();
}

MultiGraph remove_classes(const MultiGraph& g, const std::vector<int>& classes)
{
    std::vector<int> mult(g.m());
    for (int i = 0; i < g.m(); ++i) mult[i] = g.edges()[i].mult;
    for (int c : classes) {
        if (c < 0 || c >= g.m()) throw InputError("unknown edge class " + std::to_string(c));
        mult[c] = 0;
    }
    return rebuild(g, mult);
}

MultiGraph remove_vertices(const MultiGraph& g, const std::vector<int>& ids)
{
    std::vector<char> drop(g.n(), 0);
    for (int id : ids) drop[g.pos(id)] = 1;
    std::vector<int> keep;
    for (int p = 0; p < g.n(); ++p)
        if (!drop[p]) keep.push_back(g.id(p));
    return induced_subgraph(g, keep);
}

bool same_graph(const MultiGraph& a, const MultiGraph& b)
{
    if (a.ids() != b.ids() || a.all_tags() != b.all_tags() || a.m() != b.m()) return false;
    for (int i = 0; i < a.m(); ++i) {
        const auto& x = a.edges()[i];
        const auto& y = b.edges()[i];
        if (x.a != y.a || x.b != y.b || x.mult != y.mult) return false;
    }
    return true;
}

} // namespace rc

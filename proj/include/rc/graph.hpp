#ifndef RC_GRAPH_HPP
#define RC_GRAPH_HPP

#include <cstdint>
#include <unordered_map>
#include <utility>
#include <vector>

#include "rc/common.hpp"

namespace rc {

enum VertexTag : std::uint8_t {
    kTerminal = 1,
    kBorder = 2,
    kUndeletable = 4,
};

/// One parallel class: endpoints are positions a < b, mult >= 1.
struct EdgeClass {
    int a;
    int b;
    int mult;
};

/// Loop-free multigraph with stable integer vertex ids.
///
/// Vertices are stored by ascending id, so position order equals id order.
/// Parallel edges are kept as one class with a multiplicity. Values are
/// immutable once built; every operation returns a new graph.
class MultiGraph {
public:
    MultiGraph() = default;

    int n() const { return static_cast<int>(ids_.size()); }
    int m() const { return static_cast<int>(edges_.size()); }
    std::int64_t total_multiplicity() const;

    int id(int p) const { return ids_[p]; }
    const std::vector<int>& ids() const { return ids_; }
    int find(int id) const;     // -1 when absent
    int pos(int id) const;      // throws InputError when absent
    bool has(int id) const { return find(id) >= 0; }

    std::uint8_t tags(int p) const { return tags_[p]; }
    bool has_tag(int p, VertexTag t) const { return (tags_[p] & t) != 0; }
    const std::vector<std::uint8_t>& all_tags() const { return tags_; }

    const std::vector<EdgeClass>& edges() const { return edges_; }
    /// (neighbour position, class index), ascending by neighbour.
    const std::vector<std::pair<int, int>>& adj(int p) const { return adj_[p]; }
    int degree(int p) const { return static_cast<int>(adj_[p].size()); }
    int edge_index(int a, int b) const; // positions; -1 when not adjacent
    int edge_index_by_id(int u, int v) const;

    int next_id() const { return next_id_; }

    MultiGraph with_tags(std::vector<std::uint8_t> tags) const;
    std::vector<int> ids_with_tag(VertexTag t) const;

private:
    friend class GraphBuilder;
    std::vector<int> ids_;
    std::vector<std::uint8_t> tags_;
    std::vector<EdgeClass> edges_;
    std::vector<std::vector<std::pair<int, int>>> adj_;
    int next_id_ = 0;
};

/// Accumulates vertices and edges; loops are dropped, parallel edges summed.
class GraphBuilder {
public:
    explicit GraphBuilder(int next_id_floor = 0) : next_floor_(next_id_floor) {}
    void add_vertex(int id, std::uint8_t tags = 0);
    void add_tags(int id, std::uint8_t tags);
    void add_edge(int u, int v, int mult = 1);
    MultiGraph build() const;

private:
    std::unordered_map<int, std::uint8_t> vertices_;
    std::vector<std::pair<std::pair<int, int>, int>> edges_;
    int next_floor_;
};

/// Total map from vertex ids of a source graph to vertex ids of a derived graph.
class ContractionMap {
public:
    ContractionMap() = default;
    static ContractionMap identity(const MultiGraph& g);
    int operator()(int id) const;
    bool contains(int id) const { return map_.count(id) != 0; }
    void set(int from, int to) { map_[from] = to; }
    /// Composition: first this, then `next`.
    ContractionMap then(const ContractionMap& next) const;
    std::vector<int> preimage(int image) const; // ascending
    const std::unordered_map<int, int>& raw() const { return map_; }

private:
    std::unordered_map<int, int> map_;
};

struct Contracted {
    MultiGraph graph;
    ContractionMap iota;
};

/// Merge vertices by a group label per position. Singleton groups keep
/// their id, merged groups receive fresh ids; tags are or-ed together.
Contracted quotient(const MultiGraph& g, const std::vector<int>& group);

Contracted contract_edges(const MultiGraph& g, const std::vector<int>& classes);
Contracted contract_edges(const MultiGraph& g, const std::vector<std::pair<int, int>>& id_pairs);
Contracted identify_vertices(const MultiGraph& g, const std::vector<int>& ids);

MultiGraph cap_multiplicity(const MultiGraph& g, int k);
/// Union of k+1 successively peeled spanning forests.
MultiGraph sparsify(const MultiGraph& g, int k);

/// Components as id lists, each ascending, ordered by smallest id.
std::vector<std::vector<int>> connected_components(const MultiGraph& g);
/// Component index per position.
std::vector<int> component_labels(const MultiGraph& g, int* count = nullptr);
bool is_connected(const MultiGraph& g);

MultiGraph induced_subgraph(const MultiGraph& g, const std::vector<int>& ids);
MultiGraph remove_classes(const MultiGraph& g, const std::vector<int>& classes);
MultiGraph remove_vertices(const MultiGraph& g, const std::vector<int>& ids);

/// Structural equality (ids, tags, classes and multiplicities).
bool same_graph(const MultiGraph& a, const MultiGraph& b);

} // namespace rc

#endif

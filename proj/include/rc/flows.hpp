#ifndef RC_FLOWS_HPP
#define RC_FLOWS_HPP

#include <cstdint>
#include <vector>

#include "rc/graph.hpp"

namespace rc {

/// Residual network for small-value integral flows.
class FlowNetwork {
public:
    explicit FlowNetwork(int nodes = 0) { reset(nodes); }
    void reset(int nodes);
    int nodes() const { return static_cast<int>(head_.size()); }
    /// Arc a->b with capacity cab and reverse capacity cba; returns the arc index.
    int add(int a, int b, int cab, int cba = 0);
    /// Augments along shortest paths until `limit` units flow; returns the flow value.
    int run(int s, int t, int limit);
    /// Nodes reachable from s in the residual network.
    std::vector<char> reachable(int s) const;
    int residual(int arc) const { return cap_[arc]; }
    int flow_on(int arc) const { return orig_[arc] - cap_[arc]; }
    int arc_from(int arc) const { return to_[arc ^ 1]; }
    int arc_to(int arc) const { return to_[arc]; }
    const std::vector<int>& out_arcs(int v) const { return head_[v]; }

private:
    std::vector<std::vector<int>> head_;
    std::vector<int> to_, cap_, orig_;
};

/// Result of a bounded cut query.
struct CutResult {
    bool exceeds = true;            // more than k disjoint paths exist
    int size = 0;                   // cut value (multiplicity-weighted for edges)
    std::vector<int> cut;           // edge class indices or vertex ids
    std::vector<int> source_side;   // ids reachable from the source once the cut is removed
};

/// Minimum u-v edge cut if its value is at most k (ids).
CutResult min_edge_cut_bounded(const MultiGraph& g, int u, int v, int k);

/// Minimum internal u-v vertex cut avoiding `forbidden`, if of size at most k.
CutResult min_vertex_cut_bounded(const MultiGraph& g, int u, int v, int k,
                                 const std::vector<int>& forbidden);

struct KargerResult {
    int size = 0;
    std::vector<int> cut; // edge class indices
};

/// Best cut over `trials` random contraction runs (multiplicity weighted).
KargerResult karger_min_cut(const MultiGraph& g, int trials, std::uint64_t seed);

/// Up to `limit` pairwise vertex-disjoint paths between vertex sets given by
/// position masks; paths are returned as position sequences from a source to a sink.
std::vector<std::vector<int>> disjoint_paths(const MultiGraph& g, const std::vector<char>& sources,
                                             const std::vector<char>& sinks,
                                             const std::vector<char>& blocked, int limit);

} // namespace rc

#endif

#ifndef RC_MWCU_HPP
#define RC_MWCU_HPP

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "rc/context.hpp"
#include "rc/graph.hpp"
#include "rc/steiner.hpp"

namespace rc {

/// Multiway cut-uncut instance. classes[i] is the class label of terminals[i];
/// undeletable vertices are never deleted (terminals always are).
struct MwcuInstance {
    MultiGraph g;
    std::vector<int> terminals;
    std::vector<int> classes;
    int k = 0;
    std::vector<int> undeletable;
};

/// Behavior on the border terminals, taken in ascending id order.
/// x: deleted borders as a bitmask. eb: restricted-growth labels of the added
/// relation over surviving borders (-1 for deleted). rb: class of each surviving
/// border, either a terminal class label (>= 0) or -2 - j for the j-th new class.
struct MwcuBehavior {
    std::uint32_t x = 0;
    std::vector<int> eb;
    std::vector<int> rb;
    bool operator<(const MwcuBehavior& o) const
    {
        if (x != o.x) return x < o.x;
        if (eb != o.eb) return eb < o.eb;
        return rb < o.rb;
    }
    bool operator==(const MwcuBehavior& o) const { return x == o.x && eb == o.eb && rb == o.rb; }
};

/// Deleted vertices (ascending ids), ordered by (size, ids).
struct NodeCut {
    std::vector<int> ids;
    int size() const { return static_cast<int>(ids.size()); }
    bool operator<(const NodeCut& o) const
    {
        return ids.size() != o.ids.size() ? ids.size() < o.ids.size() : ids < o.ids;
    }
    bool operator==(const NodeCut& o) const { return ids == o.ids; }
};

using MwcuTable = std::map<MwcuBehavior, NodeCut>;

/// Border instance: vertex tags carry kTerminal, kBorder and kUndeletable
/// (terminals are undeletable); cls maps each terminal id to its class.
struct MwcuBorder {
    MultiGraph g;
    std::map<int, int> cls;
    int k = 0;
};

struct MwcuThresholds {
    std::int64_t q = 0;
    std::int64_t t = 0;
};

/// q = k(2k^3+6k^2+1)^{2k} + k and t = (2q+2)(2^k-1) + 2k + 1, with overrides.
MwcuThresholds mwcu_thresholds(int k, const SolverConfig& cfg);

/// All behaviors for `borders` border terminals against the given terminal classes.
std::vector<MwcuBehavior> mwcu_behaviors(int borders, const std::vector<int>& class_labels);

/// Behavior realized by deleting `x` (positions) under the added relation `eb`;
/// false when the terminals are not split according to their classes.
bool mwcu_behavior_of(const MwcuBorder& ib, const std::vector<char>& x, const std::vector<int>& eb,
                      MwcuBehavior& out);
/// Direct check of one (X, behavior) pair.
bool mwcu_solves(const MwcuBorder& ib, const std::vector<int>& x_ids, const MwcuBehavior& beh);

/// Outcome of the class-count reduction: forced deletions and one instance per
/// component that carries terminals.
struct ClassReduction {
    bool feasible = true;
    int k = 0;
    std::vector<int> forced;
    std::vector<MwcuInstance> parts;
};
ClassReduction reduce_equivalence_classes(const MwcuInstance& inst);

/// Vertex ids of the graph with `ids` bypassed: each component of the removed
/// set turns its neighbourhood into a clique.
MultiGraph bypass_vertices(const MultiGraph& g, const std::vector<int>& ids);

MwcuTable brute_force_border_mwcu(const MwcuBorder& ib, SolveContext& ctx);
MwcuTable high_connectivity_mwcu(const MwcuBorder& ib, std::int64_t q, std::int64_t t, SolveContext& ctx);
MwcuTable solve_border_mwcu(const MwcuBorder& ib, SolveContext& ctx, int depth = 0);

struct MwcuResult {
    bool feasible = false;
    NodeCut cut;
};
MwcuResult solve_nmwcu(const MwcuInstance& inst, SolveContext& ctx);
bool verify_nmwcu(const MwcuInstance& inst, const std::vector<int>& x_ids);

struct EmwcuResult {
    bool feasible = false;
    EdgeCut cut;
};
/// Edge variant: every edge copy is subdivided and only subdivision vertices are deletable.
EmwcuResult solve_emwcu(const MwcuInstance& inst, SolveContext& ctx);
bool verify_emwcu(const MwcuInstance& inst, const std::vector<std::pair<int, int>>& pairs);

/// Node instance equivalent to an edge instance; sub_of maps subdivision ids to edge pairs.
MwcuInstance emwcu_to_nmwcu(const MwcuInstance& inst, std::map<int, std::pair<int, int>>* sub_of = nullptr);

} // namespace rc

#endif

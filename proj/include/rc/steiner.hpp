#ifndef RC_STEINER_HPP
#define RC_STEINER_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "rc/context.hpp"
#include "rc/graph.hpp"

namespace rc {

struct SteinerInstance {
    MultiGraph g;
    std::vector<int> terminals; // vertex ids
    int s = 1;
    int k = 0;
};

/// Behavior on the border terminals, taken in ascending id order:
/// partition as a restricted-growth string, y bit i for border i, s terminal components.
struct SteinerBehavior {
    std::vector<int> partition;
    std::uint32_t y = 0;
    int s = 0;

    bool operator<(const SteinerBehavior& o) const
    {
        if (partition != o.partition) return partition < o.partition;
        if (y != o.y) return y < o.y;
        return s < o.s;
    }
    bool operator==(const SteinerBehavior& o) const
    {
        return partition == o.partition && y == o.y && s == o.s;
    }
};

/// Deleted parallel classes as id pairs (u < v), cost = deleted multiplicity.
struct EdgeCut {
    std::vector<std::pair<int, int>> pairs;
    std::int64_t cost = 0;

    bool operator<(const EdgeCut& o) const { return cost != o.cost ? cost < o.cost : pairs < o.pairs; }
    bool operator==(const EdgeCut& o) const { return cost == o.cost && pairs == o.pairs; }
};

/// Optimal cut per behavior; absent behaviors have no solution.
using SteinerTable = std::map<SteinerBehavior, EdgeCut>;

/// Threshold k (2k)^{2k} 2^{2k} (k+2) + 1, saturating.
std::int64_t steiner_q(int k);

/// Every valid behavior for `borders` border terminals and budget k, in output order.
std::vector<SteinerBehavior> steiner_behaviors(int borders, int k);

/// Behavior realized by deleting the classes flagged in `dead`
/// (terminals and border terminals are read from the vertex tags).
SteinerBehavior steiner_behavior_of(const MultiGraph& g, const std::vector<char>& dead);

/// Prefix dynamic program over plain components: cost a_i, terminal count b_i.
class SteinerDp {
public:
    SteinerDp(std::vector<std::int64_t> a, std::vector<int> b, int max_l);
    int components() const { return static_cast<int>(a_.size()); }
    int max_l() const { return max_l_; }
    /// T[j][l][t]; kInf64 when infeasible.
    std::int64_t value(int j, int l, bool t) const;
    /// Component indices (0-based) behind T[p][l][t], following backlinks.
    std::vector<int> extract(int l, bool t) const;

private:
    std::size_t at(int j, int l, bool t) const;
    std::vector<std::int64_t> a_;
    std::vector<int> b_;
    int max_l_;
    std::vector<std::int64_t> table_;
    std::vector<char> took_;  // backlink: component j taken
    std::vector<char> from_t_; // backlink: previous row's t flag
};

/// Exhaustive border solver: all class subsets of total multiplicity <= k.
SteinerTable brute_force_border_steiner(const MultiGraph& g, int k, SolveContext& ctx);

/// High-connectivity phase; candidates are filed under the behavior they realize.
SteinerTable high_connectivity_steiner(const MultiGraph& g, int k, std::int64_t q, SolveContext& ctx);

/// Border problem: terminals carry kTerminal, border terminals kBorder (at most 2k).
SteinerTable solve_border_steiner(const MultiGraph& g, int k, SolveContext& ctx, int depth = 0);

struct SteinerResult {
    bool feasible = false;
    EdgeCut cut;
};

SteinerResult solve_steiner(const SteinerInstance& inst, SolveContext& ctx);

/// Direct check: |X| <= k and at least s components with a terminal.
bool verify_steiner(const SteinerInstance& inst, const std::vector<std::pair<int, int>>& pairs);

} // namespace rc

#endif

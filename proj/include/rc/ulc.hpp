#ifndef RC_ULC_HPP
#define RC_ULC_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rc/context.hpp"
#include "rc/graph.hpp"

namespace rc {

/// Largest supported alphabet; vertex lists are bitmasks.
constexpr int kMaxAlphabet = 64;

/// Injective partial map on {0..s-1}.
class PartialPermutation {
public:
    PartialPermutation() = default;
    explicit PartialPermutation(int s) : fwd_(s, -1), bwd_(s, -1) {}
    static PartialPermutation identity(int s);
    /// Throws InputError when the pairs are not a partial permutation.
    static PartialPermutation from_pairs(int s, const std::vector<std::pair<int, int>>& pairs);

    int s() const { return static_cast<int>(fwd_.size()); }
    int apply(int a) const { return fwd_[a]; }   // -1 when undefined
    int preimage(int b) const { return bwd_[b]; } // -1 when undefined
    bool contains(int a, int b) const { return a >= 0 && b >= 0 && fwd_[a] == b; }
    bool empty() const;
    std::vector<std::pair<int, int>> pairs() const;

    PartialPermutation inverse() const;
    /// First this, then `next`.
    PartialPermutation then(const PartialPermutation& next) const;
    PartialPermutation intersect(const PartialPermutation& o) const;
    /// Image of a label set.
    std::uint64_t image(std::uint64_t mask) const;

    bool operator==(const PartialPermutation& o) const { return fwd_ == o.fwd_; }
    bool operator!=(const PartialPermutation& o) const { return fwd_ != o.fwd_; }

private:
    std::vector<int> fwd_, bwd_;
};

/// Simple graph with label lists and edge constraints. The constraint kept at
/// (u, v) is psi_{uv,u}: pairs (label of u, label of v); (v, u) holds its inverse.
class UlcGraph {
public:
    explicit UlcGraph(int s = 0);
    int s() const { return s_; }
    std::uint64_t full() const;

    void add_vertex(int id, std::uint64_t phi);
    void add_vertex(int id) { add_vertex(id, full()); }
    bool has(int id) const { return v_.count(id) != 0; }
    int n() const { return static_cast<int>(v_.size()); }
    int m() const;
    std::vector<int> ids() const;
    std::vector<std::pair<int, int>> edges() const; // (u, v) with u < v

    std::uint64_t phi(int id) const;
    void set_phi(int id, std::uint64_t phi);
    bool adjacent(int u, int v) const;
    /// psi_{uv,u}; the edge must exist.
    const PartialPermutation& constraint(int u, int v) const;
    /// Neighbour id -> constraint from this vertex towards it.
    const std::map<int, PartialPermutation>& nbrs(int id) const;

    /// Adds the edge with psi, or intersects the existing constraint with psi.
    void update_edge(int u, int v, const PartialPermutation& psi);
    void remove_vertex(int id);
    UlcGraph induced(const std::vector<int>& ids) const;
    /// Same vertex ids and adjacency, multiplicity one.
    MultiGraph skeleton() const;
    bool operator==(const UlcGraph& o) const;

private:
    struct Vertex {
        std::uint64_t phi = 0;
        std::map<int, PartialPermutation> nbr;
    };
    const Vertex& at(int id) const;
    Vertex& at(int id);
    int s_ = 0;
    std::map<int, Vertex> v_;
};

/// Node or edge label-cover instance; which one is fixed by the caller.
struct UlcInstance {
    UlcGraph g;
    int k = 0;
};

using UlcLabeling = std::map<int, int>;

/// Deleted vertex ids (ascending) and a labeling of everything else.
struct UlcSolution {
    std::vector<int> x;
    UlcLabeling labels;
    bool operator<(const UlcSolution& o) const;
    bool operator==(const UlcSolution& o) const { return x == o.x && labels == o.labels; }
};

/// Border behavior: label or kSkull per border vertex, borders in ascending id order.
constexpr int kSkull = -1;
using UlcBehavior = std::vector<int>;
/// Behaviors absent from the table have no solution.
using UlcTable = std::map<UlcBehavior, UlcSolution>;

struct UlcBorder {
    UlcGraph g;
    std::vector<int> border; // ascending
    int k = 0;
};

struct UlcThresholds {
    std::int64_t q = 0;
    std::int64_t t = 0;
};

/// q = k(s+1)^{4k} + 2k and t = (2q+2)(2^k-1) + 4k + 1, with overrides.
UlcThresholds ulc_thresholds(int k, int s, const SolverConfig& cfg);

/// The unique labeling of the connected set A with label alpha at v, if any.
/// Throws InputError when G[A] is not connected or v is not in A.
std::optional<UlcLabeling> propagate_labeling(const UlcGraph& g, const std::vector<int>& a, int v, int alpha);
/// All labelings of a connected set (at most s), by increasing label of its smallest vertex.
std::vector<UlcLabeling> enumerate_labelings(const UlcGraph& g, const std::vector<int>& a);

/// Removes v and moves its constraints onto its neighbourhood. phi_v must be nonempty.
void bypass_vertex_ulc(UlcGraph& g, int v);

/// Definitional check: deleted set within budget, every other vertex labeled
/// inside its list, every surviving edge satisfied. `why` names the first failure.
bool verify_nulc(const UlcInstance& inst, const std::vector<int>& x, const UlcLabeling& labels,
                 std::string* why = nullptr);
bool verify_eulc(const UlcInstance& inst, const std::vector<std::pair<int, int>>& edges,
                 const UlcLabeling& labels, std::string* why = nullptr);

/// Some labeling of G - x, by components, or nullopt.
std::optional<UlcLabeling> label_remainder(const UlcGraph& g, const std::vector<int>& x);

/// Every behavior of the border set (borders ascending): all maps to labels or kSkull.
std::vector<UlcBehavior> ulc_behaviors(const UlcBorder& ib);

/// Per-tree leaf counts of the final search, kept by the high-connectivity phase.
struct UlcSearchStats {
    std::int64_t trees = 0;
    std::int64_t leaves_max = 0;
    std::int64_t bound_violations = 0;
    std::int64_t totality_failures = 0;
};

UlcTable brute_force_border_ulc(const UlcBorder& ib, SolveContext& ctx);
UlcTable high_connectivity_ulc(const UlcBorder& ib, std::int64_t q, std::int64_t t, SolveContext& ctx,
                               UlcSearchStats* search = nullptr);
UlcTable solve_border_ulc(const UlcBorder& ib, SolveContext& ctx, int depth = 0);

struct UlcResult {
    bool feasible = false;
    UlcSolution sol;
};
UlcResult solve_nulc(const UlcInstance& inst, SolveContext& ctx);

/// Node instance for an edge instance: each vertex becomes k+1 copies joined
/// by identities, each edge a middle vertex with an identity half towards u and
/// psi_{uv,u} towards v. Copy j of v has id v + j*stride; middle ids follow.
struct EdgeUlcReduction {
    UlcInstance node;
    std::map<int, std::pair<int, int>> middle_of; // middle id -> original edge (u < v)
    std::map<int, int> copy_of;                   // copy id -> original vertex
};
EdgeUlcReduction reduce_edge_ulc(const UlcInstance& inst);

struct EulcResult {
    bool feasible = false;
    std::vector<std::pair<int, int>> edges;
    UlcLabeling labels;
};
EulcResult solve_eulc(const UlcInstance& inst, SolveContext& ctx);

} // namespace rc

#endif

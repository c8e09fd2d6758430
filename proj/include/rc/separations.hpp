#ifndef RC_SEPARATIONS_HPP
#define RC_SEPARATIONS_HPP

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "rc/context.hpp"
#include "rc/graph.hpp"

namespace rc {

/// (V1, V2) with both sides above q vertices, both connected, at most k crossing edges.
struct GoodEdgeSeparation {
    std::vector<int> v1, v2;     // vertex ids
    std::vector<int> crossing;   // edge class indices
};

/// Z of at most k deletable vertices; V1, V2 are two components of G - Z, each
/// with more than q vertices outside the undeletable set.
struct GoodNodeSeparation {
    std::vector<int> z, v1, v2;
};

/// Core Z with petals: full components of G - Z attached to all of Z.
struct FlowerSeparation {
    std::vector<int> core;
    std::vector<std::vector<int>> petals;
};

using Separation = std::variant<GoodEdgeSeparation, GoodNodeSeparation, FlowerSeparation>;

std::optional<GoodEdgeSeparation> find_good_edge_separation(const MultiGraph& g, std::int64_t q, int k,
                                                            SolveContext& ctx);
/// Karger-based variant: contracts family sets and small-endpoint edges, then
/// looks for a global cut of value at most k.
std::optional<GoodEdgeSeparation> find_good_edge_separation_randomized(const MultiGraph& g, std::int64_t q,
                                                                       int k, std::uint64_t seed,
                                                                       double delta = 1e-6);

std::optional<GoodNodeSeparation> find_good_node_separation(const MultiGraph& g,
                                                            const std::vector<int>& undeletable,
                                                            std::int64_t q, int k, SolveContext& ctx);

std::optional<FlowerSeparation> find_flower_separation(const MultiGraph& g, const std::vector<int>& undeletable,
                                                       const std::vector<int>& border, std::int64_t q, int k,
                                                       SolveContext& ctx);

/// Flower check for one candidate core.
std::optional<FlowerSeparation> flower_with_core(const MultiGraph& g, const std::vector<char>& undeletable,
                                                 const std::vector<char>& border, const std::vector<int>& core,
                                                 std::int64_t q);

bool is_good_edge_separation(const MultiGraph& g, const GoodEdgeSeparation& s, std::int64_t q, int k);
bool is_good_node_separation(const MultiGraph& g, const std::vector<int>& undeletable,
                             const GoodNodeSeparation& s, std::int64_t q, int k);
bool is_flower_separation(const MultiGraph& g, const std::vector<int>& undeletable,
                          const std::vector<int>& border, const FlowerSeparation& s, std::int64_t q, int k);

/// Exhaustive check of the component-count bounds that hold when neither node
/// separation type exists (|V| <= 12).
bool check_structure_bound(const MultiGraph& g, const std::vector<int>& undeletable,
                           const std::vector<int>& border, std::int64_t q, int k);
/// Edge analogue: every cut of value at most k leaves at most one component above q vertices
/// and at most |F|+1 components.
bool check_edge_structure_bound(const MultiGraph& g, std::int64_t q, int k);

/// Position mask from an id list.
std::vector<char> id_mask(const MultiGraph& g, const std::vector<int>& ids);

} // namespace rc

#endif

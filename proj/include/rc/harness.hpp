#ifndef RC_HARNESS_HPP
#define RC_HARNESS_HPP

#include <cstdint>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "rc/mwcu.hpp"
#include "rc/steiner.hpp"
#include "rc/ulc.hpp"

namespace rc {

/// Minimum-size witness of an exhaustive search, or nullopt for NO.
struct SteinerOracleAnswer {
    std::vector<std::pair<int, int>> pairs; // one entry per deleted copy
    int size = 0;
};

/// Exhaustive Steiner Cut: every set of at most k individual edge copies (n <= 12, k <= 4).
std::optional<SteinerOracleAnswer> oracle_steiner(const SteinerInstance& inst);

/// Connected random multigraph on ids 1..n: random tree plus extra edges with probability `density`.
MultiGraph random_connected_graph(std::mt19937_64& rng, int n, double density, int max_mult = 1);

SteinerInstance gen_random_steiner(int n, double density, int k, int s, int terminals, std::uint64_t seed,
                                   int max_mult = 1);

/// Minimum deletion set for cut-uncut: vertex ids (node) or one pair per deleted copy (edge).
struct MwcuOracleAnswer {
    std::vector<int> vertices;
    std::vector<std::pair<int, int>> pairs;
    int size = 0;
};

/// Exhaustive node cut-uncut over deletable vertices (n <= 12, k <= 4).
std::optional<MwcuOracleAnswer> oracle_mwcu_node(const MwcuInstance& inst);
/// Exhaustive edge cut-uncut over individual edge copies (n <= 12, k <= 4).
std::optional<MwcuOracleAnswer> oracle_mwcu_edge(const MwcuInstance& inst);

/// Connected random cut-uncut instance; terminals get class labels 0..classes-1
/// uniformly, `undeletable` further non-terminals join the undeletable set.
MwcuInstance gen_random_mwcu(int n, double density, int k, int terminals, int classes, std::uint64_t seed,
                             int undeletable = 0, int max_mult = 1);

/// Minimum label-cover witness: deleted vertices (node) or edges (edge) and a labeling.
struct UlcOracleAnswer {
    std::vector<int> vertices;
    std::vector<std::pair<int, int>> edges;
    UlcLabeling labels;
    int size = 0;
};

/// Exhaustive node label cover over vertex subsets (n <= 12, k <= 4).
std::optional<UlcOracleAnswer> oracle_ulc_node(const UlcInstance& inst);
/// Exhaustive edge label cover over edge subsets (k <= 4, at most 2e7 subsets).
std::optional<UlcOracleAnswer> oracle_ulc_edge(const UlcInstance& inst);

/// Connected random label-cover instance on ids 1..n around a planted labeling:
/// each edge is a random permutation, consistent with the plant unless it is
/// noisy (probability `noise`); lists hold each label with probability
/// `list_density` and the planted label unless noisy; with probability
/// `partial` an edge loses one random pair.
UlcInstance gen_random_ulc(int n, double density, int k, int s, std::uint64_t seed, double noise = 0.3,
                           double list_density = 0.6, double partial = 0.2);

/// Multicolored clique input: k parts of n vertices each; vertex p of part i
/// has index i*n + p. Edges join distinct parts.
struct MccInstance {
    int k = 0;
    int n = 0;
    std::vector<std::pair<int, int>> edges;
};

/// Throws InputError on an intra-part edge or an index out of range.
void validate_mcc(const MccInstance& mcc);
/// Brute force over one vertex per part; returns the chosen p per part.
std::optional<std::vector<int>> mcc_find_clique(const MccInstance& mcc);
/// Each cross-part pair becomes an edge with probability `density`.
MccInstance gen_random_mcc(int k, int n, double density, std::uint64_t seed);

/// Label (a, b) of the hardness construction, a, b in {0..n}.
inline int mcc_label(int n, int a, int b) { return a * (n + 1) + b; }
/// Id of the cycle vertex u^i_p: parts in order, p = 0..kn-1 within a part.
inline int mcc_cycle_id(int k, int n, int i, int p) { return i * k * n + p + 1; }

/// Edge label-cover instance with budget k^2 that is YES iff H has a
/// multicolored clique. Needs k*n >= 3 so the cycles are simple.
UlcInstance gen_mcc_to_eulc(const MccInstance& mcc);

/// Equivalent edge instance with full lists and full permutations, budget
/// k(k+2) and alphabet s+k+2. Labels s..s+k+1 are the new symbols. Loops
/// become triangles and parallel edges are subdivided, so original vertices
/// keep their ids and new vertices get ids above the largest one.
UlcInstance gen_restrict_ulc(const UlcInstance& inst);

} // namespace rc

#endif

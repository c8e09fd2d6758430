#ifndef RC_CONTEXT_HPP
#define RC_CONTEXT_HPP

#include <cstdint>
#include <set>
#include <string>

#include "rc/families.hpp"

namespace rc {

enum class FamilyChoice { Auto, Exhaustive, PerfectHash, Randomized };

std::string to_string(FamilyChoice c);
FamilyChoice family_choice_from_string(const std::string& s);

struct SolverConfig {
    FamilyChoice family = FamilyChoice::Auto;
    double delta = 1e-6;         // per branching site, randomized families
    std::int64_t q_override = 0; // 0 keeps the theoretical threshold
    std::int64_t t_override = 0;
    std::uint64_t seed = 1;
    int threads = 1;
    std::int64_t brute_limit = 2000000; // candidate sets a fallback brute force may enumerate
};

struct SolveStats {
    std::int64_t branches = 0;        // family members examined in high-connectivity phases
    std::int64_t separations = 0;     // separations found and used for recursion
    std::int64_t separation_queries = 0;
    std::int64_t brute_force_calls = 0;
    std::int64_t hc_invocations = 0;
    std::int64_t hc_leaves_max = 0;   // largest search tree seen in one invocation (ULC)
    std::int64_t hc_leaves_bound_violations = 0;
    int max_depth = 0;
    std::int64_t randomized_sites = 0;
    double failure_bound = 0.0;
    bool exact = true;                // false once an unguaranteed fallback was taken
    std::set<std::string> family_modes;
};

/// Configuration, counters and the seed stream shared by one solver run.
class SolveContext {
public:
    explicit SolveContext(SolverConfig cfg) : cfg_(cfg) {}
    const SolverConfig& config() const { return cfg_; }
    SolveStats& stats() { return stats_; }
    const SolveStats& stats() const { return stats_; }

    /// Builds the covering family for one branching site. Must be called from
    /// sequential code so the site numbering is reproducible.
    SetFamily family(int universe, std::int64_t a, std::int64_t b, const char* site);

    void note_depth(int depth);

private:
    SolverConfig cfg_;
    SolveStats stats_;
    std::uint64_t sites_ = 0;
};

} // namespace rc

#endif

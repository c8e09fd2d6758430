#ifndef RC_FAMILIES_HPP
#define RC_FAMILIES_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace rc {

enum class FamilyMode { Exhaustive, PerfectHash, Randomized };

std::string to_string(FamilyMode m);
FamilyMode family_mode_from_string(const std::string& s);

/// Covering-family request over the universe positions 0..size-1.
struct FamilySpec {
    int universe_size = 0;
    int a = 0;
    int b = 0;
    FamilyMode mode = FamilyMode::Randomized;
    double delta = 1e-6;     // randomized only
    std::uint64_t seed = 1;  // randomized only
};

/// Family of subsets, generated member by member.
///
/// For every disjoint (A, B) with |A| <= a and |B| <= b some member S has
/// A in S and S disjoint from B; always in the deterministic modes, with
/// probability at least 1 - delta per pair in randomized mode.
class SetFamily {
public:
    std::size_t size() const { return size_; }
    int universe_size() const { return n_; }
    FamilyMode mode() const { return mode_; }
    std::uint64_t seed() const { return seed_; }
    double failure_bound() const { return failure_bound_; }
    int a() const { return a_; }
    int b() const { return b_; }
    const std::vector<int>& primes() const { return primes_; }

    /// in[x] = 1 iff position x belongs to member i.
    void member(std::size_t i, std::vector<char>& in) const;
    std::vector<int> member_list(std::size_t i) const;

private:
    friend SetFamily build_family(const FamilySpec& spec);
    int n_ = 0;
    int a_ = 0, b_ = 0;
    FamilyMode mode_ = FamilyMode::Exhaustive;
    std::size_t size_ = 0;
    std::uint64_t seed_ = 0;
    double failure_bound_ = 0.0;
    std::uint64_t threshold_ = 0; // randomized: join iff hash < threshold
    bool all_join_ = false;
    // perfect hash: members grouped per prime, each group enumerates bucket subsets
    std::vector<int> primes_;
    std::vector<std::size_t> group_start_;
    int take_ = 0;
};

SetFamily build_family(const FamilySpec& spec);

/// Exhaustive check of the covering property (universe size <= 16).
bool covering_check(const SetFamily& fam, int a, int b);

/// Binomial coefficient saturating at ~1e18.
std::uint64_t binom(int n, int r);
/// Draw count for the randomized mode.
std::size_t randomized_draws(int a, int b, double delta);

} // namespace rc

#endif

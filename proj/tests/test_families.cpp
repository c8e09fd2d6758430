#include <gtest/gtest.h>

#include <cmath>

#include "rc/common.hpp"
#include "rc/context.hpp"
#include "rc/families.hpp"

using namespace rc;

namespace {

SetFamily make(int n, int a, int b, FamilyMode mode, std::uint64_t seed = 1, double delta = 1e-6)
{
    FamilySpec s;
    s.universe_size = n;
    s.a = a;
    s.b = b;
    s.mode = mode;
    s.seed = seed;
    s.delta = delta;
    return build_family(s);
}

// independent covering oracle on explicit member lists
bool covers_all(const std::vector<std::vector<char>>& members, int n, int a, int b)
{
    for (std::uint32_t am = 0; am < (1u << n); ++am) {
        if (__builtin_popcount(am) > a) continue;
        for (std::uint32_t bm = 0; bm < (1u << n); ++bm) {
            if ((am & bm) || __builtin_popcount(bm) > b) continue;
            bool ok = false;
            for (const auto& s : members) {
                bool good = true;
                for (int x = 0; x < n && good; ++x) {
                    if ((am >> x & 1) && !s[x]) good = false;
                    if ((bm >> x & 1) && s[x]) good = false;
                }
                if (good) {
                    ok = true;
                    break;
                }
            }
            if (!ok) return false;
        }
    }
    return true;
}

std::vector<std::vector<char>> members_of(const SetFamily& f)
{
    std::vector<std::vector<char>> out(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) f.member(i, out[i]);
    return out;
}

} // namespace

TEST(Family, EmptyCoverSetSuffices)
{
    for (auto mode : {FamilyMode::Exhaustive, FamilyMode::PerfectHash, FamilyMode::Randomized}) {
        auto f = make(4, 0, 2, mode);
        EXPECT_TRUE(covering_check(f, 0, 2)) << to_string(mode);
        bool has_empty = false;
        for (std::size_t i = 0; i < f.size(); ++i) has_empty |= f.member_list(i).empty();
        EXPECT_TRUE(has_empty);
    }
}

TEST(Family, TwoElementUniverse)
{
    for (auto mode : {FamilyMode::Exhaustive, FamilyMode::PerfectHash}) {
        auto f = make(2, 1, 1, mode);
        EXPECT_TRUE(covering_check(f, 1, 1));
        EXPECT_TRUE(covers_all(members_of(f), 2, 1, 1));
    }
}

TEST(Family, RandomizedSixTwoTwo)
{
    // delta is per (A,B) pair; the 90 maximal pairs give a union bound of 9% failures
    int pass = 0;
    for (std::uint64_t seed = 1; seed <= 1000; ++seed)
        if (covering_check(make(6, 2, 2, FamilyMode::Randomized, seed, 1e-3), 2, 2)) ++pass;
    EXPECT_GE(pass, 910);
    // splitting 1e-3 over the maximal pairs makes the whole family fail rarely
    int pass_split = 0;
    for (std::uint64_t seed = 1; seed <= 1000; ++seed)
        if (covering_check(make(6, 2, 2, FamilyMode::Randomized, seed, 1e-3 / 90), 2, 2)) ++pass_split;
    EXPECT_GE(pass_split, 990);
}

TEST(Family, DeterministicModesCoverSmallUniverses)
{
    for (int n = 1; n <= 10; ++n)
        for (int a = 0; a <= std::min(3, n); ++a)
            for (int b = 0; b <= std::min(3, n - a); ++b) {
                auto ph = make(n, a, b, FamilyMode::PerfectHash);
                ASSERT_TRUE(covering_check(ph, a, b)) << n << " " << a << " " << b;
                if (n <= 7) ASSERT_TRUE(covers_all(members_of(ph), n, a, b));
                auto ex = make(n, a, b, FamilyMode::Exhaustive);
                ASSERT_TRUE(covering_check(ex, a, b));
                ASSERT_EQ(ex.size(), std::size_t{1} << n);
            }
}

TEST(Family, PerfectHashSizeMatchesBucketCount)
{
    for (int n : {5, 9, 14, 30, 200})
        for (int a = 1; a <= 3; ++a) {
            auto f = make(n, a, 2, FamilyMode::PerfectHash);
            std::uint64_t expect = 0;
            for (int p : f.primes()) expect += binom(p, a);
            EXPECT_EQ(f.size(), expect);
            // ceiling: primes used times the largest bucket choice
            int pmax = f.primes().empty() ? 0 : f.primes().back();
            EXPECT_LE(f.size(), f.primes().size() * binom(pmax, a));
            for (std::size_t i = 0; i < f.size(); i += 7)
                for (int x : f.member_list(i)) ASSERT_LT(x, n);
        }
}

TEST(Family, CoveringCheckRejectsMissingPair)
{
    // a family with only {0}: A={1} is uncovered
    auto f = make(2, 1, 1, FamilyMode::Exhaustive);
    std::vector<std::vector<char>> only0{{1, 0}};
    EXPECT_FALSE(covers_all(only0, 2, 1, 1));
    EXPECT_TRUE(covers_all({{0, 0, 0}}, 3, 0, 3));
    EXPECT_THROW(covering_check(make(17, 1, 1, FamilyMode::PerfectHash), 1, 1), SizeError);
    EXPECT_TRUE(covering_check(f, 1, 1));
}

TEST(Family, ExhaustiveLimit)
{
    EXPECT_THROW(make(21, 1, 1, FamilyMode::Exhaustive), SizeError);
    EXPECT_NO_THROW(make(20, 1, 1, FamilyMode::Exhaustive));
}

TEST(Family, Reproducible)
{
    auto f1 = make(12, 3, 2, FamilyMode::Randomized, 77);
    auto f2 = make(12, 3, 2, FamilyMode::Randomized, 77);
    ASSERT_EQ(f1.size(), f2.size());
    for (std::size_t i = 0; i < f1.size(); ++i) ASSERT_EQ(f1.member_list(i), f2.member_list(i));
    auto f3 = make(12, 3, 2, FamilyMode::Randomized, 78);
    bool differs = false;
    for (std::size_t i = 0; i < f1.size() && !differs; ++i) differs = f1.member_list(i) != f3.member_list(i);
    EXPECT_TRUE(differs);
}

TEST(Family, RandomizedDrawCount)
{
    double p = std::pow(2.0 / 5, 2) * std::pow(3.0 / 5, 3);
    EXPECT_EQ(randomized_draws(2, 3, 1e-6), static_cast<std::size_t>(std::ceil(std::log(1e6) / p)));
    EXPECT_EQ(randomized_draws(0, 4, 1e-6), 1u);
    EXPECT_EQ(randomized_draws(3, 0, 1e-6), 1u);
    auto f = make(10, 2, 3, FamilyMode::Randomized, 5, 1e-6);
    EXPECT_DOUBLE_EQ(f.failure_bound(), 1e-6);
    EXPECT_EQ(make(10, 2, 3, FamilyMode::PerfectHash).failure_bound(), 0.0);
}

TEST(Context, AutoChoiceAndSeedStream)
{
    SolverConfig cfg;
    SolveContext ctx(cfg);
    // auto keeps the smaller deterministic family
    for (int n : {3, 6, 10, 16, 20, 30}) {
        auto f = ctx.family(n, 2, 2, "t");
        auto ph = make(n, 2, 2, FamilyMode::PerfectHash);
        EXPECT_LE(f.size(), ph.size());
        if (n <= 20) EXPECT_LE(f.size(), std::size_t{1} << n);
        EXPECT_NE(f.mode(), FamilyMode::Randomized);
    }
    EXPECT_EQ(ctx.family(30, 2, 2, "t").mode(), FamilyMode::PerfectHash);
    SolverConfig ex;
    ex.family = FamilyChoice::Exhaustive;
    SolveContext exctx(ex);
    EXPECT_EQ(exctx.family(20, 2, 2, "t").mode(), FamilyMode::Exhaustive);
    EXPECT_EQ(exctx.family(21, 2, 2, "t").mode(), FamilyMode::PerfectHash);
    cfg.family = FamilyChoice::Randomized;
    SolveContext r1(cfg), r2(cfg);
    auto x = r1.family(30, 2, 2, "t");
    auto y = r1.family(30, 2, 2, "t");
    auto z = r2.family(30, 2, 2, "t");
    EXPECT_EQ(x.member_list(3), z.member_list(3));
    EXPECT_NE(x.seed(), y.seed());
    EXPECT_EQ(r1.stats().randomized_sites, 2);
    EXPECT_NEAR(r1.stats().failure_bound, 2e-6, 1e-12);
    EXPECT_THROW(ctx.family(1000, 40, 40, "huge"), SizeError);
}

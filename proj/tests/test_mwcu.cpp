#include <gtest/gtest.h>

#include <random>

#include "rc/harness.hpp"
#include "rc/mwcu.hpp"
#include "test_util.hpp"

using namespace rc;
using namespace rc::testing;

namespace {

MwcuInstance instance(MultiGraph g, std::vector<int> terminals, std::vector<int> classes, int k,
                      std::vector<int> undeletable = {})
{
    MwcuInstance inst;
    inst.g = std::move(g);
    inst.terminals = std::move(terminals);
    inst.classes = std::move(classes);
    inst.k = k;
    inst.undeletable = std::move(undeletable);
    return inst;
}

SolverConfig config(std::int64_t q = 0, std::int64_t t = 0, FamilyChoice fam = FamilyChoice::Auto)
{
    SolverConfig c;
    c.q_override = q;
    c.t_override = t;
    c.family = fam;
    return c;
}

MwcuBorder border(const MultiGraph& g, const std::map<int, int>& cls, const std::vector<int>& borders, int k,
                  const std::vector<int>& undeletable = {})
{
    std::vector<std::uint8_t> tags(g.n(), 0);
    for (const auto& [id, c] : cls) tags[g.pos(id)] |= kTerminal | kUndeletable;
    for (int id : borders) tags[g.pos(id)] |= kBorder;
    for (int id : undeletable) tags[g.pos(id)] |= kUndeletable;
    MwcuBorder ib;
    ib.g = g.with_tags(tags);
    ib.cls = cls;
    ib.k = k;
    return ib;
}

void expect_table_valid(const MwcuBorder& ib, const MwcuTable& t)
{
    for (const auto& [beh, cut] : t) ASSERT_TRUE(mwcu_solves(ib, cut.ids, beh));
}

void expect_same_costs(const MwcuTable& a, const MwcuTable& b, int trial)
{
    ASSERT_EQ(a.size(), b.size()) << trial;
    for (const auto& [beh, cut] : b) {
        ASSERT_TRUE(a.count(beh)) << trial;
        ASSERT_EQ(a.at(beh).size(), cut.size()) << trial;
    }
}

} // namespace

TEST(MwcuThresholds, PrintedFormulas)
{
    auto th = mwcu_thresholds(1, SolverConfig{});
    EXPECT_EQ(th.q, 1 * 81 + 1);
    EXPECT_EQ(th.t, (2 * 82 + 2) * 1 + 3);
    auto o = mwcu_thresholds(2, config(3, 5));
    EXPECT_EQ(o.q, 3);
    EXPECT_EQ(o.t, 5);
}

TEST(MwcuReduce, ForcedByThreeClasses)
{
    // v = 0 adjacent to terminals 1, 2, 3 of distinct classes
    auto g = make_simple(4, {{0, 1}, {0, 2}, {0, 3}});
    auto red = reduce_equivalence_classes(instance(g, {1, 2, 3}, {0, 1, 2}, 1));
    ASSERT_TRUE(red.feasible);
    EXPECT_EQ(red.forced, (std::vector<int>{0}));
    EXPECT_EQ(red.k, 0);
    EXPECT_EQ(red.parts.size(), 3u);
}

TEST(MwcuReduce, SameClassKeepsVertex)
{
    auto g = make_simple(4, {{0, 1}, {0, 2}, {0, 3}});
    auto red = reduce_equivalence_classes(instance(g, {1, 2, 3}, {5, 5, 5}, 1));
    ASSERT_TRUE(red.feasible);
    EXPECT_TRUE(red.forced.empty());
    EXPECT_EQ(red.k, 1);
}

TEST(MwcuReduce, ClassAcrossComponentsIsNo)
{
    auto g = make_simple(4, {{0, 1}, {2, 3}});
    EXPECT_FALSE(reduce_equivalence_classes(instance(g, {0, 2}, {1, 1}, 2)).feasible);
}

TEST(MwcuReduce, ForcedUndeletableIsNo)
{
    auto g = make_simple(4, {{0, 1}, {0, 2}, {0, 3}});
    EXPECT_FALSE(reduce_equivalence_classes(instance(g, {1, 2, 3}, {0, 1, 2}, 1, {0})).feasible);
}

TEST(MwcuReduce, PreservesOracleAnswer)
{
    for (int trial = 0; trial < 150; ++trial) {
        const int n = 4 + trial % 6;
        auto inst = gen_random_mwcu(n, 0.3, trial % 3, std::min(n, 3 + trial % 4), 2 + trial % 3, 500 + trial);
        auto o = oracle_mwcu_node(inst);
        auto red = reduce_equivalence_classes(inst);
        if (!red.feasible) {
            ASSERT_FALSE(o) << trial;
            continue;
        }
        int total = static_cast<int>(red.forced.size());
        bool ok = true;
        for (auto part : red.parts) {
            part.k = red.k;
            auto po = oracle_mwcu_node(part);
            if (!po) ok = false;
            else total += po->size;
        }
        ok = ok && total <= inst.k;
        ASSERT_EQ(ok, static_cast<bool>(o)) << trial;
        if (o) ASSERT_EQ(total, o->size) << trial;
    }
}

TEST(MwcuBorder, PathExamples)
{
    auto g = path(3); // a=0, x=1, b=2
    SolveContext ctx(config());
    auto split = solve_border_mwcu(border(g, {{0, 0}, {2, 1}}, {}, 1), ctx);
    EXPECT_EQ(split.at(MwcuBehavior{}).ids, (std::vector<int>{1}));
    auto joined = solve_border_mwcu(border(g, {{0, 0}, {2, 0}}, {}, 1), ctx);
    EXPECT_TRUE(joined.at(MwcuBehavior{}).ids.empty());
    auto stuck = solve_border_mwcu(border(g, {{0, 0}, {2, 1}}, {}, 1, {1}), ctx);
    EXPECT_FALSE(stuck.count(MwcuBehavior{}));
}

TEST(MwcuBorder, HighConnectivityExamples)
{
    SolveContext ctx(config(1, 1, FamilyChoice::Exhaustive));
    // single class on a cycle: the empty set is found
    auto c5 = make_simple(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}});
    auto one = high_connectivity_mwcu(border(c5, {{0, 3}, {2, 3}}, {}, 1), 1, 1, ctx);
    EXPECT_TRUE(one.at(MwcuBehavior{}).ids.empty());
    // articulation vertex between two classes
    auto g = make_simple(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}});
    auto two = high_connectivity_mwcu(border(g, {{0, 0}, {4, 1}}, {}, 1), 1, 1, ctx);
    EXPECT_EQ(two.at(MwcuBehavior{}).size(), 1);
    EXPECT_TRUE(verify_nmwcu(instance(g, {0, 4}, {0, 1}, 1), two.at(MwcuBehavior{}).ids));
}

TEST(MwcuBehaviors, EnumerationBoundsAndClosure)
{
    // no borders: a single behavior
    EXPECT_EQ(mwcu_behaviors(0, {0, 1}).size(), 1u);
    for (int nb = 1; nb <= 3; ++nb)
        for (int classes = 0; classes <= 3; ++classes) {
            std::vector<int> labels;
            for (int c = 0; c < classes; ++c) labels.push_back(c);
            auto all = mwcu_behaviors(nb, labels);
            double bound = std::pow(1.0 + nb * (nb + classes), nb);
            EXPECT_LE(static_cast<double>(all.size()), bound);
            EXPECT_TRUE(std::is_sorted(all.begin(), all.end()));
            EXPECT_EQ(std::adjacent_find(all.begin(), all.end()), all.end());
        }
    // one border, one class: deleted, or (own E class) x (join class 0 or new class)
    EXPECT_EQ(mwcu_behaviors(1, {0}).size(), 3u);
}

TEST(MwcuBehaviors, RealizedBehaviorsAreEnumerated)
{
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 40; ++trial) {
        auto inst = gen_random_mwcu(7, 0.3, 2, 2, 2, 900 + trial);
        std::map<int, int> cls;
        for (std::size_t i = 0; i < inst.terminals.size(); ++i) cls[inst.terminals[i]] = inst.classes[i];
        std::vector<int> borders;
        for (int id : inst.g.ids())
            if (!cls.count(id) && borders.size() < 3 && rng() % 2) borders.push_back(id);
        auto ib = border(inst.g, cls, borders, 2);
        SolveContext ctx(config());
        auto table = brute_force_border_mwcu(ib, ctx);
        auto all = mwcu_behaviors(static_cast<int>(borders.size()), {0, 1});
        for (const auto& [beh, cut] : table) ASSERT_TRUE(std::binary_search(all.begin(), all.end(), beh));
        expect_table_valid(ib, table);
    }
}

TEST(MwcuBypass, SolutionsAvoidingVertexAreKept)
{
    for (int trial = 0; trial < 40; ++trial) {
        auto inst = gen_random_mwcu(7, 0.35, 2, 3, 2, 1300 + trial);
        std::vector<int> free;
        for (int id : inst.g.ids())
            if (std::find(inst.terminals.begin(), inst.terminals.end(), id) == inst.terminals.end())
                free.push_back(id);
        if (free.empty()) continue;
        const int v = free[trial % free.size()];
        MwcuInstance by = inst;
        by.g = bypass_vertices(inst.g, {v});
        std::vector<int> rest;
        for (int id : free)
            if (id != v) rest.push_back(id);
        for_each_subset_upto(static_cast<int>(rest.size()), inst.k, [&](const std::vector<int>& idx) {
            std::vector<int> x;
            for (int i : idx) x.push_back(rest[i]);
            EXPECT_EQ(verify_nmwcu(inst, x), verify_nmwcu(by, x)) << trial;
            return true;
        });
    }
}

TEST(MwcuBorder, OverrideTablesMatchBruteForce)
{
    std::mt19937_64 rng(11);
    int recursed = 0, hc = 0;
    for (int trial = 0; trial < 80; ++trial) {
        const int n = 9 + trial % 8;
        const int k = 1 + trial % 2;
        auto inst = gen_random_mwcu(n, 0.05 + 0.05 * (trial % 3), k, 2 + trial % 4, 2 + trial % 2, 2000 + trial,
                                    trial % 4 == 0 ? 1 : 0);
        std::map<int, int> cls;
        for (std::size_t i = 0; i < inst.terminals.size(); ++i) cls[inst.terminals[i]] = inst.classes[i];
        std::vector<int> borders;
        for (int id : inst.g.ids())
            if (!cls.count(id) && static_cast<int>(borders.size()) < 2 * k && rng() % 3 == 0) borders.push_back(id);
        auto ib = border(inst.g, cls, borders, k, inst.undeletable);
        SolveContext fast(config(1, 1, FamilyChoice::Exhaustive)), slow(config());
        auto a = solve_border_mwcu(ib, fast);
        auto b = brute_force_border_mwcu(ib, slow);
        recursed += fast.stats().separations > 0;
        hc += fast.stats().hc_invocations > 0;
        expect_table_valid(ib, a);
        expect_same_costs(a, b, trial);
    }
    EXPECT_GT(recursed, 5);
    EXPECT_GT(hc, 5);
}

TEST(MwcuSolve, NodeOracleEquivalence)
{
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 3 + trial % 7;
        const int k = trial % 3;
        const int terminals = std::min(n, 2 + trial % 4);
        const int undel = std::min(n - terminals, trial % 5 == 0 ? 1 : 0);
        auto inst = gen_random_mwcu(n, 0.3, k, terminals, 1 + trial % 3, 3000 + trial, undel);
        auto o = oracle_mwcu_node(inst);
        for (auto cfg : {config(), config(1, 1, FamilyChoice::Exhaustive), config(2, 1, FamilyChoice::Exhaustive)}) {
            SolveContext ctx(cfg);
            auto r = solve_nmwcu(inst, ctx);
            ASSERT_EQ(r.feasible, static_cast<bool>(o)) << trial << " q=" << cfg.q_override;
            if (o) {
                ASSERT_EQ(r.cut.size(), o->size) << trial;
                ASSERT_TRUE(verify_nmwcu(inst, r.cut.ids));
            }
        }
    }
}

TEST(MwcuSolve, EdgeExamples)
{
    SolveContext ctx(config());
    auto tri = make_simple(3, {{0, 1}, {1, 2}, {2, 0}});
    EXPECT_FALSE(solve_emwcu(instance(tri, {0, 1}, {0, 1}, 1), ctx).feasible);
    auto r = solve_emwcu(instance(path(2), {0, 1}, {0, 1}, 1), ctx);
    ASSERT_TRUE(r.feasible);
    EXPECT_EQ(r.cut.pairs, (std::vector<std::pair<int, int>>{{0, 1}}));
    auto c4 = make_simple(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
    auto alt = instance(c4, {0, 1, 2, 3}, {0, 1, 0, 1}, 4);
    auto o = oracle_mwcu_edge(alt);
    auto a = solve_emwcu(alt, ctx);
    EXPECT_EQ(a.feasible, static_cast<bool>(o));
    EXPECT_FALSE(a.feasible); // each class needs a path, and those paths cross
}

TEST(MwcuSolve, EdgeOracleEquivalence)
{
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 2 + trial % 8;
        const int k = trial % 3;
        auto inst = gen_random_mwcu(n, 0.3, k, std::min(n, 2 + trial % 3), 1 + trial % 3, 4000 + trial, 0,
                                    trial % 4 == 0 ? 2 : 1);
        auto o = oracle_mwcu_edge(inst);
        // exhaustive families double per subdivision vertex, so the override run stays small
        const bool small = emwcu_to_nmwcu(inst).g.n() - n <= 14;
        for (auto cfg : {config(), config(1, 1, FamilyChoice::Exhaustive)}) {
            if (cfg.q_override > 0 && !small) continue;
            SolveContext ctx(cfg);
            auto r = solve_emwcu(inst, ctx);
            ASSERT_EQ(r.feasible, static_cast<bool>(o)) << trial << " q=" << cfg.q_override;
            if (o) {
                ASSERT_EQ(r.cut.cost, o->size) << trial;
                ASSERT_TRUE(verify_emwcu(inst, r.cut.pairs));
            }
        }
    }
}

TEST(MwcuSolve, ThreadCountDoesNotChangeAnswer)
{
    for (int trial = 0; trial < 10; ++trial) {
        auto inst = gen_random_mwcu(9, 0.3, 2, 3, 2, 5000 + trial);
        SolverConfig a = config(1, 1, FamilyChoice::Exhaustive), b = a;
        b.threads = 3;
        SolveContext ca(a), cb(b);
        auto ra = solve_nmwcu(inst, ca), rb = solve_nmwcu(inst, cb);
        ASSERT_EQ(ra.feasible, rb.feasible);
        ASSERT_EQ(ra.cut.ids, rb.cut.ids);
    }
}

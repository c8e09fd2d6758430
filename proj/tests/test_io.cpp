#include <gtest/gtest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "rc/io.hpp"

using namespace rc;

namespace {

const std::string kFixtures = RC_FIXTURE_DIR;
const std::string kGolden = RC_GOLDEN_DIR;
const std::string kCli = RC_CLI_PATH;

const char* kSolvable[] = {"steiner_path",      "steiner_triangles",    "emwcu_square",       "nmwcu_star",
                           "nulc_swap_triangle", "eulc_swap_triangle", "eulc_infeasible"};

std::string slurp(const std::string& path)
{
    std::ifstream in(path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string parse_error(const std::string& text)
{
    try {
        parse_instance_string(text);
    } catch (const InputError& e) {
        return e.what();
    }
    return "";
}

// Exit status of the CLI; stdout goes to `out`.
int run(const std::string& args, const std::string& out = "/dev/null")
{
    const int status = std::system((kCli + " " + args + " > " + out + " 2>/dev/null").c_str());
    return WEXITSTATUS(status);
}

std::string tmp_path(const std::string& name) { return ::testing::TempDir() + name; }

} // namespace

TEST(Parse, Errors)
{
    EXPECT_EQ(parse_error("e 1 2\n"), "line 1: expected header 'p <problem> <n> <m>'");
    EXPECT_EQ(parse_error("p steiner 2 1\ne 1 3\nparam s 1\nparam k 0\n"), "line 2: vertex id 3 outside 1..2");
    EXPECT_EQ(parse_error("p steiner 2 1\n# c\ne 1 1\n"), "line 3: loops are not allowed");
    EXPECT_EQ(parse_error("p steiner 2 2\ne 1 2\nparam s 1\nparam k 0\n"), "header declares 2 edges, found 1");
    EXPECT_EQ(parse_error("p nulc 2 1\ne 1 2\nsigma 2\ncst 1 2 0:1 1:1\nparam k 0\n"),
              "line 4: constraint is not a partial permutation");
    EXPECT_EQ(parse_error("p nulc 2 1\ne 1 2\ncst 1 2 0:1\n"), "line 3: 'cst' before 'sigma'");
    EXPECT_EQ(parse_error("p nulc 2 1\ne 1 2 2\n"), "line 2: this problem needs multiplicity 1");
    EXPECT_EQ(parse_error("p nulc 2 1\ne 1 2\nsigma 2\nparam k 0\n"), "line 2: edge has no 'cst' line");
    EXPECT_EQ(parse_error("p emwcu 2 1\ne 1 2\nt 1\n"), "line 3: expected 't v <class>'");
    EXPECT_EQ(parse_error("p steiner 2 1\ne 1 2\nparam s 1\n"), "missing 'param k'");
    EXPECT_EQ(parse_error("p mcc 4 1\ne 1 2\nparam k 2\n"), "mcc: multicolored clique edge inside a part");
    EXPECT_EQ(parse_error("p foo 1 0\n"), "line 1: unknown problem 'foo'");
}

TEST(Parse, ConstraintOrientation)
{
    // cst 2 1 gives psi_{21,2}; the stored psi_{12,1} is its inverse
    const auto f = parse_instance_string("p eulc 2 1\ne 1 2\nsigma 3\ncst 2 1 0:1 1:2\nparam k 0\n");
    EXPECT_TRUE(f.ulc.g.constraint(1, 2).contains(1, 0));
    EXPECT_TRUE(f.ulc.g.constraint(1, 2).contains(2, 1));
    EXPECT_EQ(f.ulc.g.constraint(1, 2).apply(0), -1);
}

TEST(Format, RoundTrip)
{
    for (const char* name : kSolvable) {
        const auto f = read_instance_file(kFixtures + "/" + name + ".txt");
        const std::string text = format_instance(f);
        const auto g = parse_instance_string(text);
        EXPECT_EQ(format_instance(g), text) << name;
        if (f.problem == Problem::Nulc || f.problem == Problem::Eulc) EXPECT_EQ(f.ulc.g, g.ulc.g) << name;
        if (f.problem == Problem::Steiner) EXPECT_TRUE(same_graph(f.steiner.g, g.steiner.g)) << name;
    }
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        InstanceFile u;
        u.problem = Problem::Nulc;
        u.ulc = gen_random_ulc(7, 0.4, 2, 4, seed);
        EXPECT_EQ(parse_instance_string(format_instance(u)).ulc.g, u.ulc.g);
        InstanceFile m;
        m.problem = Problem::Nmwcu;
        m.mwcu = gen_random_mwcu(8, 0.3, 2, 3, 2, seed, 1, 2);
        const auto back = parse_instance_string(format_instance(m)).mwcu;
        EXPECT_TRUE(same_graph(back.g, m.mwcu.g));
        EXPECT_EQ(back.undeletable.size(), m.mwcu.undeletable.size());
        InstanceFile c;
        c.problem = Problem::Mcc;
        c.mcc = gen_random_mcc(3, 2, 0.5, seed);
        EXPECT_EQ(parse_instance_string(format_instance(c)).mcc.edges, c.mcc.edges);
    }
}

TEST(Format, RenumbersIds)
{
    InstanceFile f;
    f.problem = Problem::Nulc;
    f.ulc.k = 1;
    f.ulc.g = UlcGraph(2);
    f.ulc.g.add_vertex(10);
    f.ulc.g.add_vertex(40, 1);
    f.ulc.g.update_edge(40, 10, PartialPermutation::from_pairs(2, {{0, 1}}));
    EXPECT_EQ(format_instance(f), "p nulc 2 1\ne 1 2\nsigma 2\ndom 2 0\ncst 1 2 1:0\nparam k 1\n");
}

TEST(Report, GoldenFiles)
{
    for (const char* name : kSolvable) {
        const auto f = read_instance_file(kFixtures + "/" + name + ".txt");
        const auto rep = run_solver(f, SolveMode::Exact, SolverConfig{});
        EXPECT_EQ(report_to_json(rep, false), slurp(kGolden + "/" + name + ".json")) << name;
    }
}

TEST(Report, BruteForceMatchesExact)
{
    for (const char* name : kSolvable) {
        const auto f = read_instance_file(kFixtures + "/" + name + ".txt");
        const auto a = run_solver(f, SolveMode::Exact, SolverConfig{});
        const auto b = run_solver(f, SolveMode::BruteForce, SolverConfig{});
        EXPECT_EQ(a.answer, b.answer) << name;
        EXPECT_EQ(a.size, b.size) << name;
        EXPECT_TRUE(verify_report(f, a).ok) << name;
        EXPECT_TRUE(verify_report(f, b).ok) << name;
    }
}

TEST(Report, JsonRoundTrip)
{
    const auto f = read_instance_file(kFixtures + "/nulc_swap_triangle.txt");
    const auto rep = run_solver(f, SolveMode::Exact, SolverConfig{});
    const auto back = report_from_json(report_to_json(rep, true));
    EXPECT_EQ(back.answer, "yes");
    EXPECT_EQ(back.vertices, rep.vertices);
    EXPECT_EQ(back.labels, rep.labels);
    EXPECT_EQ(report_to_json(back, false), report_to_json(rep, false));
    EXPECT_THROW(report_from_json("{\"answer\": 1}"), InputError);
}

TEST(Verify, Tampering)
{
    const auto f = read_instance_file(kFixtures + "/nulc_swap_triangle.txt");
    auto rep = run_solver(f, SolveMode::Exact, SolverConfig{});
    ASSERT_TRUE(verify_report(f, rep).ok);

    auto sized = rep;
    sized.size = 0;
    EXPECT_FALSE(verify_report(f, sized).ok);

    // vertex 2 has a full list over {0,1}; label 5 is outside it
    auto bad = rep;
    bad.labels[2] = 5;
    const auto v = verify_report(f, bad);
    EXPECT_FALSE(v.ok);
    EXPECT_EQ(v.message, "label of vertex 2 is not in its list");

    auto lied = rep;
    lied.answer = "no";
    EXPECT_FALSE(verify_report(f, lied).ok);

    const auto s = read_instance_file(kFixtures + "/steiner_path.txt");
    auto srep = run_solver(s, SolveMode::Exact, SolverConfig{});
    srep.edges = {{1, 3}};
    EXPECT_EQ(verify_report(s, srep).message, "edge 1-3 is not in the instance");
}

TEST(Cli, ExitCodes)
{
    EXPECT_EQ(run("solve " + kFixtures + "/steiner_path.txt"), 0);
    EXPECT_EQ(run("solve " + kFixtures + "/emwcu_square.txt"), 2);
    EXPECT_EQ(run("solve " + kFixtures + "/eulc_infeasible.txt --mode bruteforce"), 2);
    EXPECT_EQ(run("solve " + kFixtures + "/steiner_path.txt --problem nulc"), 1);
    EXPECT_EQ(run("solve /nonexistent/file.txt"), 1);
    EXPECT_EQ(run("solve " + kFixtures + "/steiner_path.txt --mode sideways"), 1);
    EXPECT_EQ(run("frobnicate"), 1);
}

TEST(Cli, MonteCarloNo)
{
    // randomized families on a NO instance cannot certify the answer
    const std::string path = tmp_path("mc_no.txt");
    InstanceFile f;
    f.problem = Problem::Steiner;
    GraphBuilder b;
    for (int v = 1; v <= 8; ++v) b.add_vertex(v);
    for (int v = 1; v <= 8; ++v)
        for (int w = v + 1; w <= 8; ++w) b.add_edge(v, w);
    f.steiner = SteinerInstance{b.build(), {1, 2, 3}, 2, 1};
    std::ofstream(path) << format_instance(f);
    EXPECT_EQ(run("solve " + path + " --mode randomized --q-override 1"), 3);
    EXPECT_EQ(run("solve " + path + " --mode exact --q-override 1 --family exhaustive"), 2);
}

TEST(Cli, SolveVerifyAndDeterminism)
{
    for (const char* name : kSolvable) {
        const std::string inst = kFixtures + "/" + name + ".txt";
        const std::string a = tmp_path(std::string(name) + "_1.json"), b = tmp_path(std::string(name) + "_4.json");
        run("solve " + inst + " --json --seed 7 --threads 1", a);
        run("solve " + inst + " --json --seed 7 --threads 4", b);
        EXPECT_EQ(slurp(a), slurp(b)) << name;
        EXPECT_EQ(run("verify " + inst + " " + a), 0) << name;
    }
}

TEST(Cli, GenAndReduce)
{
    const std::string g1 = tmp_path("g1.txt"), g2 = tmp_path("g2.txt");
    ASSERT_EQ(run("gen --problem eulc --n 6 --k 1 --s 3 --seed 5 -o " + g1), 0);
    ASSERT_EQ(run("gen --problem eulc --n 6 --k 1 --s 3 --seed 5 -o " + g2), 0);
    EXPECT_EQ(slurp(g1), slurp(g2));

    const std::string red = tmp_path("mcc_red.txt");
    ASSERT_EQ(run("reduce --kind mcc-eulc " + kFixtures + "/mcc_k2n2.txt -o " + red), 0);
    EXPECT_EQ(slurp(red), slurp(kGolden + "/mcc_k2n2_eulc.txt"));
    EXPECT_EQ(run("solve " + red + " --mode bruteforce"), 0);
    EXPECT_EQ(run("reduce --kind eulc-nulc " + kFixtures + "/mcc_k2n2.txt"), 1);

    // every reduction keeps the answer of its source
    const std::pair<const char*, const char*> cases[] = {
        {"eulc-nulc", "eulc_swap_triangle"},   {"eulc-nulc", "eulc_infeasible"},
        {"eulc-restricted", "eulc_swap_triangle"}, {"eulc-restricted", "eulc_infeasible"},
        {"emwcu-nmwcu", "emwcu_square"}};
    for (const auto& [kind, name] : cases) {
        const std::string src = kFixtures + "/" + name + ".txt", out = tmp_path(std::string(kind) + name + ".txt");
        ASSERT_EQ(run(std::string("reduce --kind ") + kind + " " + src + " -o " + out), 0);
        // the restricted output is large for the recursive solver; its oracle is quick
        const std::string mode = std::string(kind) == "eulc-restricted" ? " --mode bruteforce" : "";
        EXPECT_EQ(run("solve " + src + " --mode bruteforce"), run("solve " + out + mode)) << kind << " " << name;
    }
}

// Command-line front-end: solve, verify, gen, reduce.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "rc/io.hpp"

using namespace rc;

namespace {

void write_text(const std::string& text, const std::string& path)
{
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw InputError("cannot write '" + path + "'");
    out << text;
}

std::string read_text(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw InputError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string report_text(const SolutionReport& r, bool with_stats)
{
    std::ostringstream o;
    o << "problem " << to_string(r.problem) << '\n' << "answer " << r.answer << '\n';
    if (r.answer == "yes") {
        o << "size " << r.size << '\n';
        if (!r.edges.empty()) {
            o << "edges";
            for (const auto& [u, v] : r.edges) o << ' ' << u << '-' << v;
            o << '\n';
        }
        if (!r.vertices.empty()) {
            o << "vertices";
            for (int v : r.vertices) o << ' ' << v;
            o << '\n';
        }
        if (!r.labels.empty()) {
            o << "labels";
            for (const auto& [v, a] : r.labels) o << ' ' << v << ':' << a;
            o << '\n';
        }
    }
    o << "mode " << to_string(r.mode) << " family " << r.family << " seed " << r.seed << " q " << r.q << " t "
      << r.t << " failure_bound " << r.failure_bound << " exact " << (r.exact ? 1 : 0) << '\n';
    if (with_stats) {
        const auto& s = r.stats;
        o << "stats branches " << s.branches << " separations " << s.separations << " depth " << s.max_depth
          << " hc " << s.hc_invocations << " leaves_max " << s.hc_leaves_max << " wall_ms " << r.wall_ms << '\n';
    }
    return o.str();
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"exact solvers for Steiner cut, multiway cut-uncut and unique label cover"};
    app.require_subcommand(1);

    // solve
    auto* solve = app.add_subcommand("solve", "solve an instance file");
    std::string solve_file, problem_flag, mode = "exact", family = "auto";
    double delta = 1e-6;
    std::int64_t q_override = 0, t_override = 0, brute_limit = 2000000;
    std::uint64_t seed = 1;
    int threads = 1;
    bool as_json = false, with_stats = false;
    solve->add_option("instance", solve_file, "instance file")->required();
    solve->add_option("--problem", problem_flag, "expected problem (must match the header)");
    solve->add_option("--mode", mode, "exact | randomized | bruteforce")
        ->check(CLI::IsMember({"exact", "randomized", "bruteforce"}));
    solve->add_option("--family", family, "auto | exhaustive | perfect-hash | randomized")
        ->check(CLI::IsMember({"auto", "exhaustive", "perfect-hash", "randomized"}));
    solve->add_option("--family-delta", delta, "failure probability per randomized branching site")
        ->check(CLI::Range(1e-300, 1.0));
    solve->add_option("--q-override", q_override, "replace the theoretical q (0 keeps it)")->check(CLI::NonNegativeNumber);
    solve->add_option("--t-override", t_override, "replace the theoretical t (0 keeps it)")->check(CLI::NonNegativeNumber);
    solve->add_option("--seed", seed, "seed for every randomized site");
    solve->add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);
    solve->add_option("--brute-limit", brute_limit, "candidate sets a fallback brute force may enumerate");
    solve->add_flag("--json", as_json, "print the report as JSON");
    solve->add_flag("--stats", with_stats, "include counters and wall time");

    // verify
    auto* verify = app.add_subcommand("verify", "re-validate a JSON report against an instance");
    std::string verify_file, report_file;
    verify->add_option("instance", verify_file, "instance file")->required();
    verify->add_option("report", report_file, "JSON report")->required();

    // gen
    auto* gen = app.add_subcommand("gen", "write a random instance");
    std::string gen_problem, gen_out;
    int gn = 8, gk = 1, gs = 2, gterm = 3, gclasses = 2, gund = 0, gmult = 1, gparts = 2;
    double gdensity = 0.3;
    std::uint64_t gseed = 1;
    gen->add_option("--problem", gen_problem, "steiner | emwcu | nmwcu | eulc | nulc | mcc")->required();
    gen->add_option("--n", gn, "vertices (mcc: vertices per part)")->check(CLI::PositiveNumber);
    gen->add_option("--density", gdensity, "extra edge probability")->check(CLI::Range(0.0, 1.0));
    gen->add_option("--k", gk, "budget (mcc: number of parts)")->check(CLI::NonNegativeNumber);
    gen->add_option("--s", gs, "Steiner s or alphabet size")->check(CLI::PositiveNumber);
    gen->add_option("--terminals", gterm, "terminal count")->check(CLI::NonNegativeNumber);
    gen->add_option("--classes", gclasses, "terminal classes (cut-uncut)")->check(CLI::PositiveNumber);
    gen->add_option("--undeletable", gund, "extra undeletable vertices (cut-uncut)")->check(CLI::NonNegativeNumber);
    gen->add_option("--max-mult", gmult, "largest edge multiplicity")->check(CLI::PositiveNumber);
    gen->add_option("--parts", gparts, "mcc parts (alias of --k for mcc)")->check(CLI::PositiveNumber);
    gen->add_option("--seed", gseed, "generator seed");
    gen->add_option("-o,--out", gen_out, "output file (default stdout)");

    // reduce
    auto* reduce = app.add_subcommand("reduce", "rewrite an instance through a reduction");
    std::string reduce_kind, reduce_file, reduce_out;
    reduce->add_option("--kind", reduce_kind, "mcc-eulc | eulc-restricted | eulc-nulc | emwcu-nmwcu")
        ->required()
        ->check(CLI::IsMember({"mcc-eulc", "eulc-restricted", "eulc-nulc", "emwcu-nmwcu"}));
    reduce->add_option("instance", reduce_file, "instance file")->required();
    reduce->add_option("-o,--out", reduce_out, "output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (*solve) {
            const InstanceFile inst = read_instance_file(solve_file);
            if (!problem_flag.empty() && problem_from_string(problem_flag) != inst.problem)
                throw InputError("--problem " + problem_flag + " does not match the file header (" +
                                 to_string(inst.problem) + ")");
            SolverConfig cfg;
            cfg.family = family_choice_from_string(family);
            cfg.delta = delta;
            cfg.q_override = q_override;
            cfg.t_override = t_override;
            cfg.seed = seed;
            cfg.threads = threads;
            cfg.brute_limit = brute_limit;
            const SolutionReport rep = run_solver(inst, solve_mode_from_string(mode), cfg);
            std::cout << (as_json ? report_to_json(rep, with_stats) : report_text(rep, with_stats));
            return exit_code(rep);
        }
        if (*verify) {
            const InstanceFile inst = read_instance_file(verify_file);
            const SolutionReport rep = report_from_json(read_text(report_file));
            const VerifyOutcome v = verify_report(inst, rep);
            (v.ok ? std::cout : std::cerr) << (v.ok ? "valid: " : "invalid: ") << v.message << '\n';
            return v.ok ? 0 : 1;
        }
        if (*gen) {
            InstanceFile f;
            f.problem = problem_from_string(gen_problem);
            switch (f.problem) {
            case Problem::Steiner: f.steiner = gen_random_steiner(gn, gdensity, gk, gs, gterm, gseed, gmult); break;
            case Problem::Emwcu:
            case Problem::Nmwcu:
                f.mwcu = gen_random_mwcu(gn, gdensity, gk, gterm, gclasses, gseed, gund, gmult);
                break;
            case Problem::Eulc:
            case Problem::Nulc: f.ulc = gen_random_ulc(gn, gdensity, gk, gs, gseed); break;
            case Problem::Mcc: f.mcc = gen_random_mcc(gparts, gn, gdensity, gseed); break;
            }
            write_text(format_instance(f), gen_out);
            return 0;
        }
        if (*reduce) {
            const InstanceFile in = read_instance_file(reduce_file);
            InstanceFile out;
            auto need = [&](Problem p) {
                if (in.problem != p)
                    throw InputError("reduction " + reduce_kind + " needs a " + to_string(p) + " instance");
            };
            if (reduce_kind == "mcc-eulc") {
                need(Problem::Mcc);
                out.problem = Problem::Eulc;
                out.ulc = gen_mcc_to_eulc(in.mcc);
            } else if (reduce_kind == "eulc-restricted") {
                need(Problem::Eulc);
                out.problem = Problem::Eulc;
                out.ulc = gen_restrict_ulc(in.ulc);
            } else if (reduce_kind == "eulc-nulc") {
                need(Problem::Eulc);
                out.problem = Problem::Nulc;
                out.ulc = reduce_edge_ulc(in.ulc).node;
            } else {
                need(Problem::Emwcu);
                out.problem = Problem::Nmwcu;
                out.mwcu = emwcu_to_nmwcu(in.mwcu);
            }
            write_text(format_instance(out), reduce_out);
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}

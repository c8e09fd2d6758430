#ifndef RC_IO_HPP
#define RC_IO_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "rc/harness.hpp"

namespace rc {

enum class Problem { Steiner, Emwcu, Nmwcu, Eulc, Nulc, Mcc };

std::string to_string(Problem p);
Problem problem_from_string(const std::string& s);

/// One parsed instance file; only the member matching `problem` is meaningful.
struct InstanceFile {
    Problem problem = Problem::Steiner;
    SteinerInstance steiner;
    MwcuInstance mwcu;
    UlcInstance ulc;
    MccInstance mcc;
};

/// Line-based format with 1-based ids. Throws InputError("line N: ...").
InstanceFile parse_instance(std::istream& in);
InstanceFile parse_instance_string(const std::string& text);
InstanceFile read_instance_file(const std::string& path);

/// Canonical text. Vertex ids are renumbered 1..n in ascending order.
std::string format_instance(const InstanceFile& inst);

enum class SolveMode { Exact, Randomized, BruteForce };

std::string to_string(SolveMode m);
SolveMode solve_mode_from_string(const std::string& s);

struct SolutionReport {
    Problem problem = Problem::Steiner;
    std::string answer; // yes, no, unknown-monte-carlo
    std::int64_t size = 0;
    std::vector<std::pair<int, int>> edges; // deleted parallel classes (u < v)
    std::vector<int> vertices;
    UlcLabeling labels;

    SolveMode mode = SolveMode::Exact;
    std::string family;
    std::uint64_t seed = 0;
    double delta = 0.0;
    std::int64_t q = 0;
    std::int64_t t = 0;
    double failure_bound = 0.0;
    bool exact = true;

    SolveStats stats;
    double wall_ms = 0.0;
};

SolutionReport run_solver(const InstanceFile& inst, SolveMode mode, const SolverConfig& cfg);

/// Stats and wall time are written only when `with_stats` is set, so default
/// output is a function of the instance and flags.
std::string report_to_json(const SolutionReport& rep, bool with_stats);
/// Throws InputError on malformed reports.
SolutionReport report_from_json(const std::string& text);

/// 0 yes, 2 no, 3 unknown-monte-carlo.
int exit_code(const SolutionReport& rep);

struct VerifyOutcome {
    bool ok = false;
    std::string message;
};

/// Re-validates a positive report by definition, including its size. Negative
/// reports are checked against the exhaustive oracle when it fits its guards.
VerifyOutcome verify_report(const InstanceFile& inst, const SolutionReport& rep);

} // namespace rc

#endif

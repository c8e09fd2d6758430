#include "rc/io.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "json.hpp"

namespace rc {

namespace {

using nlohmann::json;

const std::pair<Problem, const char*> kProblemNames[] = {
    {Problem::Steiner, "steiner"}, {Problem::Emwcu, "emwcu"}, {Problem::Nmwcu, "nmwcu"},
    {Problem::Eulc, "eulc"},       {Problem::Nulc, "nulc"},   {Problem::Mcc, "mcc"},
};

bool is_mwcu(Problem p) { return p == Problem::Emwcu || p == Problem::Nmwcu; }
bool is_ulc(Problem p) { return p == Problem::Eulc || p == Problem::Nulc; }

struct LineError {
    int line;
    [[noreturn]] void fail(const std::string& msg) const
    {
        throw InputError("line " + std::to_string(line) + ": " + msg);
    }
};

long long to_int(const LineError& at, const std::string& tok, const char* what)
{
    std::size_t used = 0;
    long long v = 0;
    try {
        v = std::stoll(tok, &used);
    } catch (const std::exception&) {
        at.fail(std::string("expected an integer for ") + what + ", got '" + tok + "'");
    }
    if (used != tok.size()) at.fail(std::string("expected an integer for ") + what + ", got '" + tok + "'");
    return v;
}

struct EdgeLine {
    int line, u, v, mult;
};

// Positions 1..n of the ascending ids.
std::map<int, int> renumber(const std::vector<int>& ids)
{
    std::map<int, int> r;
    for (int id : ids) r.emplace(id, 0);
    int next = 1;
    for (auto& [id, to] : r) to = next++;
    return r;
}

std::vector<std::pair<int, int>> normalized(std::vector<std::pair<int, int>> pairs)
{
    for (auto& [u, v] : pairs)
        if (u > v) std::swap(u, v);
    std::sort(pairs.begin(), pairs.end());
    pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
    return pairs;
}

} // namespace

std::string to_string(Problem p)
{
    for (const auto& [q, name] : kProblemNames)
        if (q == p) return name;
    return "?";
}

Problem problem_from_string(const std::string& s)
{
    for (const auto& [q, name] : kProblemNames)
        if (s == name) return q;
    throw InputError("unknown problem '" + s + "'");
}

std::string to_string(SolveMode m)
{
    switch (m) {
    case SolveMode::Exact: return "exact";
    case SolveMode::Randomized: return "randomized";
    case SolveMode::BruteForce: return "bruteforce";
    }
    return "?";
}

SolveMode solve_mode_from_string(const std::string& s)
{
    if (s == "exact") return SolveMode::Exact;
    if (s == "randomized") return SolveMode::Randomized;
    if (s == "bruteforce") return SolveMode::BruteForce;
    throw InputError("unknown mode '" + s + "'");
}

InstanceFile parse_instance(std::istream& in)
{
    InstanceFile out;
    bool header = false;
    int n = 0, m = 0;
    std::optional<long long> k, s_param, sigma;
    std::vector<EdgeLine> edges;
    std::map<int, int> terminals; // id -> class (Steiner: 0)
    std::set<int> undeletable;
    std::map<int, std::uint64_t> doms;
    std::map<std::pair<int, int>, std::pair<int, PartialPermutation>> csts; // (u,v) -> (line, psi_{uv,u})

    std::string raw;
    for (int ln = 1; std::getline(in, raw); ++ln) {
        const LineError at{ln};
        if (auto h = raw.find('#'); h != std::string::npos) raw.erase(h);
        std::istringstream ls(raw);
        std::vector<std::string> tok;
        for (std::string w; ls >> w;) tok.push_back(w);
        if (tok.empty()) continue;
        const std::string& d = tok[0];
        if (!header) {
            if (d != "p" || tok.size() != 4) at.fail("expected header 'p <problem> <n> <m>'");
            try {
                out.problem = problem_from_string(tok[1]);
            } catch (const InputError& e) {
                at.fail(e.what());
            }
            n = static_cast<int>(to_int(at, tok[2], "n"));
            m = static_cast<int>(to_int(at, tok[3], "m"));
            if (n < 0 || m < 0) at.fail("n and m must be nonnegative");
            header = true;
            continue;
        }
        const Problem p = out.problem;
        auto vertex = [&](const std::string& w) {
            const long long v = to_int(at, w, "vertex id");
            if (v < 1 || v > n) at.fail("vertex id " + w + " outside 1.." + std::to_string(n));
            return static_cast<int>(v);
        };
        if (d == "p") {
            at.fail("duplicate header");
        } else if (d == "e") {
            if (tok.size() != 3 && tok.size() != 4) at.fail("expected 'e u v [mult]'");
            const int u = vertex(tok[1]), v = vertex(tok[2]);
            if (u == v) at.fail("loops are not allowed");
            const long long mult = tok.size() == 4 ? to_int(at, tok[3], "multiplicity") : 1;
            if (mult < 1) at.fail("multiplicity must be at least 1");
            if ((is_ulc(p) || p == Problem::Mcc) && mult != 1) at.fail("this problem needs multiplicity 1");
            if (mult > 1000000) at.fail("multiplicity too large");
            edges.push_back({ln, u, v, static_cast<int>(mult)});
        } else if (d == "param") {
            if (tok.size() != 3) at.fail("expected 'param <name> <value>'");
            const long long val = to_int(at, tok[2], "parameter");
            if (tok[1] == "k") {
                if (k) at.fail("duplicate 'param k'");
                if (val < 0 || val > 1000000) at.fail("k out of range");
                k = val;
            } else if (tok[1] == "s" && p == Problem::Steiner) {
                if (s_param) at.fail("duplicate 'param s'");
                if (val < 1 || val > 1000000) at.fail("s out of range");
                s_param = val;
            } else {
                at.fail("unknown parameter '" + tok[1] + "' for " + to_string(p));
            }
        } else if (d == "t" && p == Problem::Steiner) {
            if (tok.size() != 2) at.fail("expected 't v'");
            if (!terminals.emplace(vertex(tok[1]), 0).second) at.fail("duplicate terminal");
        } else if (d == "t" && is_mwcu(p)) {
            if (tok.size() != 3) at.fail("expected 't v <class>'");
            const long long c = to_int(at, tok[2], "class");
            if (c < 0 || c > 1000000) at.fail("class id out of range");
            if (!terminals.emplace(vertex(tok[1]), static_cast<int>(c)).second) at.fail("duplicate terminal");
        } else if (d == "undeletable" && is_mwcu(p)) {
            if (tok.size() != 2) at.fail("expected 'undeletable v'");
            if (!undeletable.insert(vertex(tok[1])).second) at.fail("duplicate undeletable vertex");
        } else if (d == "sigma" && is_ulc(p)) {
            if (tok.size() != 2) at.fail("expected 'sigma <s>'");
            if (sigma) at.fail("duplicate 'sigma'");
            const long long s = to_int(at, tok[1], "alphabet size");
            if (s < 1 || s > kMaxAlphabet) at.fail("alphabet size must be in 1..64");
            sigma = s;
        } else if (d == "dom" && is_ulc(p)) {
            if (!sigma) at.fail("'dom' before 'sigma'");
            if (tok.size() < 2) at.fail("expected 'dom v a1 a2 ...'");
            const int v = vertex(tok[1]);
            if (doms.count(v)) at.fail("duplicate 'dom' for vertex " + tok[1]);
            std::uint64_t mask = 0;
            for (std::size_t i = 2; i < tok.size(); ++i) {
                const long long a = to_int(at, tok[i], "label");
                if (a < 0 || a >= *sigma) at.fail("label " + tok[i] + " outside the alphabet");
                mask |= std::uint64_t{1} << a;
            }
            doms[v] = mask;
        } else if (d == "cst" && is_ulc(p)) {
            if (!sigma) at.fail("'cst' before 'sigma'");
            if (tok.size() < 3) at.fail("expected 'cst u v a:b ...'");
            const int u = vertex(tok[1]), v = vertex(tok[2]);
            std::vector<std::pair<int, int>> pairs;
            for (std::size_t i = 3; i < tok.size(); ++i) {
                const auto c = tok[i].find(':');
                if (c == std::string::npos) at.fail("expected a pair 'a:b', got '" + tok[i] + "'");
                const long long a = to_int(at, tok[i].substr(0, c), "label");
                const long long b = to_int(at, tok[i].substr(c + 1), "label");
                if (a < 0 || b < 0 || a >= *sigma || b >= *sigma) at.fail("label outside the alphabet");
                pairs.emplace_back(static_cast<int>(a), static_cast<int>(b));
            }
            PartialPermutation psi;
            try {
                psi = PartialPermutation::from_pairs(static_cast<int>(*sigma), pairs);
            } catch (const InputError&) {
                at.fail("constraint is not a partial permutation");
            }
            const auto key = std::make_pair(std::min(u, v), std::max(u, v));
            if (csts.count(key)) at.fail("duplicate 'cst' for this vertex pair");
            csts.emplace(key, std::make_pair(ln, u < v ? psi : psi.inverse()));
        } else {
            at.fail("unknown or misplaced directive '" + d + "' for " + (header ? to_string(p) : "?"));
        }
    }
    if (!header) throw InputError("line 1: missing header 'p <problem> <n> <m>'");
    if (static_cast<int>(edges.size()) != m)
        throw InputError("header declares " + std::to_string(m) + " edges, found " + std::to_string(edges.size()));
    if (!k) throw InputError("missing 'param k'");
    const Problem p = out.problem;

    if (p == Problem::Steiner || is_mwcu(p)) {
        GraphBuilder b;
        for (int v = 1; v <= n; ++v) b.add_vertex(v);
        for (const auto& e : edges) b.add_edge(e.u, e.v, e.mult);
        const MultiGraph g = b.build();
        if (p == Problem::Steiner) {
            if (!s_param) throw InputError("missing 'param s'");
            out.steiner = SteinerInstance{g, {}, static_cast<int>(*s_param), static_cast<int>(*k)};
            for (const auto& [v, c] : terminals) out.steiner.terminals.push_back(v);
        } else {
            out.mwcu.g = g;
            out.mwcu.k = static_cast<int>(*k);
            for (const auto& [v, c] : terminals) {
                out.mwcu.terminals.push_back(v);
                out.mwcu.classes.push_back(c);
            }
            out.mwcu.undeletable.assign(undeletable.begin(), undeletable.end());
        }
    } else if (is_ulc(p)) {
        if (!sigma) throw InputError("missing 'sigma'");
        UlcGraph g(static_cast<int>(*sigma));
        for (int v = 1; v <= n; ++v) g.add_vertex(v, doms.count(v) ? doms[v] : g.full());
        for (const auto& e : edges) {
            const LineError at{e.line};
            const auto key = std::make_pair(std::min(e.u, e.v), std::max(e.u, e.v));
            if (g.adjacent(e.u, e.v)) at.fail("duplicate edge");
            auto it = csts.find(key);
            if (it == csts.end()) at.fail("edge has no 'cst' line");
            g.update_edge(key.first, key.second, it->second.second);
        }
        for (const auto& [key, c] : csts)
            if (!g.adjacent(key.first, key.second)) LineError{c.first}.fail("'cst' names a pair that is not an edge");
        out.ulc = UlcInstance{std::move(g), static_cast<int>(*k)};
    } else {
        if (*k < 1 || n % *k != 0) throw InputError("mcc needs k >= 1 dividing n");
        out.mcc.k = static_cast<int>(*k);
        out.mcc.n = static_cast<int>(n / *k);
        for (const auto& e : edges) out.mcc.edges.emplace_back(std::min(e.u, e.v) - 1, std::max(e.u, e.v) - 1);
        try {
            validate_mcc(out.mcc);
        } catch (const InputError& e) {
            throw InputError(std::string("mcc: ") + e.what());
        }
    }
    return out;
}

InstanceFile parse_instance_string(const std::string& text)
{
    std::istringstream in(text);
    return parse_instance(in);
}

InstanceFile read_instance_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw InputError("cannot open '" + path + "'");
    return parse_instance(in);
}

std::string format_instance(const InstanceFile& inst)
{
    std::ostringstream o;
    const Problem p = inst.problem;
    auto graph_lines = [&](const MultiGraph& g, const std::map<int, int>& r) {
        std::vector<std::tuple<int, int, int>> es;
        for (const auto& e : g.edges()) {
            int u = r.at(g.id(e.a)), v = r.at(g.id(e.b));
            es.emplace_back(std::min(u, v), std::max(u, v), e.mult);
        }
        std::sort(es.begin(), es.end());
        o << "p " << to_string(p) << ' ' << g.n() << ' ' << es.size() << '\n';
        for (const auto& [u, v, mult] : es) {
            o << "e " << u << ' ' << v;
            if (mult > 1) o << ' ' << mult;
            o << '\n';
        }
    };
    if (p == Problem::Steiner) {
        const auto& s = inst.steiner;
        const auto r = renumber(s.g.ids());
        graph_lines(s.g, r);
        std::set<int> ts;
        for (int t : s.terminals) ts.insert(r.at(t));
        for (int t : ts) o << "t " << t << '\n';
        o << "param s " << s.s << '\n' << "param k " << s.k << '\n';
    } else if (is_mwcu(p)) {
        const auto& w = inst.mwcu;
        const auto r = renumber(w.g.ids());
        graph_lines(w.g, r);
        std::map<int, int> ts;
        for (std::size_t i = 0; i < w.terminals.size(); ++i) ts[r.at(w.terminals[i])] = w.classes.at(i);
        for (const auto& [t, c] : ts) o << "t " << t << ' ' << c << '\n';
        std::set<int> und;
        for (int v : w.undeletable) und.insert(r.at(v));
        for (int v : und) o << "undeletable " << v << '\n';
        o << "param k " << w.k << '\n';
    } else if (is_ulc(p)) {
        const UlcGraph& g = inst.ulc.g;
        const auto r = renumber(g.ids());
        std::vector<std::pair<int, int>> es; // original ids, ordered by renumbered pair
        for (const auto& [u, v] : g.edges()) es.emplace_back(u, v);
        std::sort(es.begin(), es.end(), [&](const auto& a, const auto& b) {
            return std::make_pair(r.at(a.first), r.at(a.second)) < std::make_pair(r.at(b.first), r.at(b.second));
        });
        o << "p " << to_string(p) << ' ' << g.n() << ' ' << es.size() << '\n';
        for (const auto& [u, v] : es) o << "e " << r.at(u) << ' ' << r.at(v) << '\n';
        o << "sigma " << g.s() << '\n';
        for (int v : g.ids()) {
            if (g.phi(v) == g.full()) continue;
            o << "dom " << r.at(v);
            for (int a = 0; a < g.s(); ++a)
                if (g.phi(v) >> a & 1) o << ' ' << a;
            o << '\n';
        }
        for (const auto& [u, v] : es) {
            o << "cst " << r.at(u) << ' ' << r.at(v);
            for (const auto& [a, b] : g.constraint(u, v).pairs()) o << ' ' << a << ':' << b;
            o << '\n';
        }
        o << "param k " << inst.ulc.k << '\n';
    } else {
        const auto& c = inst.mcc;
        const auto es = normalized(c.edges);
        o << "p mcc " << c.k * c.n << ' ' << es.size() << '\n';
        for (const auto& [u, v] : es) o << "e " << u + 1 << ' ' << v + 1 << '\n';
        o << "param k " << c.k << '\n';
    }
    return o.str();
}

SolutionReport run_solver(const InstanceFile& inst, SolveMode mode, const SolverConfig& cfg_in)
{
    const Problem p = inst.problem;
    if (p == Problem::Mcc) throw InputError("mcc instances are reduced, not solved");
    SolverConfig cfg = cfg_in;
    if (mode == SolveMode::Randomized) cfg.family = FamilyChoice::Randomized;
    SolutionReport rep;
    rep.problem = p;
    rep.mode = mode;
    rep.family = to_string(cfg.family);
    rep.seed = cfg.seed;
    rep.delta = cfg.delta;
    SolveContext ctx(cfg);
    bool feasible = false;
    const auto start = std::chrono::steady_clock::now();

    if (mode == SolveMode::BruteForce) {
        rep.family = "none";
        if (p == Problem::Steiner) {
            if (auto a = oracle_steiner(inst.steiner)) {
                feasible = true;
                rep.edges = normalized(a->pairs);
                rep.size = a->size;
            }
        } else if (p == Problem::Emwcu) {
            if (auto a = oracle_mwcu_edge(inst.mwcu)) {
                feasible = true;
                rep.edges = normalized(a->pairs);
                rep.size = a->size;
            }
        } else if (p == Problem::Nmwcu) {
            if (auto a = oracle_mwcu_node(inst.mwcu)) {
                feasible = true;
                rep.vertices = a->vertices;
                rep.size = a->size;
            }
        } else if (p == Problem::Nulc) {
            if (auto a = oracle_ulc_node(inst.ulc)) {
                feasible = true;
                rep.vertices = a->vertices;
                rep.labels = a->labels;
                rep.size = a->size;
            }
        } else if (auto a = oracle_ulc_edge(inst.ulc)) {
            feasible = true;
            rep.edges = a->edges;
            rep.labels = a->labels;
            rep.size = a->size;
        }
    } else if (p == Problem::Steiner) {
        rep.q = cfg.q_override > 0 ? cfg.q_override : steiner_q(inst.steiner.k);
        const auto r = solve_steiner(inst.steiner, ctx);
        if ((feasible = r.feasible)) {
            rep.edges = r.cut.pairs;
            rep.size = r.cut.cost;
        }
    } else if (is_mwcu(p)) {
        const auto th = mwcu_thresholds(inst.mwcu.k, cfg);
        rep.q = th.q;
        rep.t = th.t;
        if (p == Problem::Emwcu) {
            const auto r = solve_emwcu(inst.mwcu, ctx);
            if ((feasible = r.feasible)) {
                rep.edges = r.cut.pairs;
                rep.size = r.cut.cost;
            }
        } else {
            const auto r = solve_nmwcu(inst.mwcu, ctx);
            if ((feasible = r.feasible)) {
                rep.vertices = r.cut.ids;
                rep.size = r.cut.size();
            }
        }
    } else {
        const auto th = ulc_thresholds(inst.ulc.k, inst.ulc.g.s(), cfg);
        rep.q = th.q;
        rep.t = th.t;
        if (p == Problem::Nulc) {
            const auto r = solve_nulc(inst.ulc, ctx);
            if ((feasible = r.feasible)) {
                rep.vertices = r.sol.x;
                rep.labels = r.sol.labels;
                rep.size = static_cast<std::int64_t>(r.sol.x.size());
            }
        } else {
            const auto r = solve_eulc(inst.ulc, ctx);
            if ((feasible = r.feasible)) {
                rep.edges = r.edges;
                rep.labels = r.labels;
                rep.size = static_cast<std::int64_t>(r.edges.size());
            }
        }
    }
    rep.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    rep.stats = ctx.stats();
    rep.failure_bound = ctx.stats().failure_bound;
    rep.exact = ctx.stats().exact;
    if (feasible)
        rep.answer = "yes";
    else if (mode != SolveMode::BruteForce && (ctx.stats().randomized_sites > 0 || !ctx.stats().exact))
        rep.answer = "unknown-monte-carlo";
    else
        rep.answer = "no";
    return rep;
}

std::string report_to_json(const SolutionReport& rep, bool with_stats)
{
    json j;
    j["problem"] = to_string(rep.problem);
    j["answer"] = rep.answer;
    j["size"] = rep.size;
    json sol = json::object();
    if (rep.problem == Problem::Steiner || rep.problem == Problem::Emwcu || rep.problem == Problem::Eulc) {
        sol["edges"] = json::array();
        for (const auto& [u, v] : rep.edges) sol["edges"].push_back({u, v});
    } else {
        sol["vertices"] = rep.vertices;
    }
    if (is_ulc(rep.problem)) {
        sol["labels"] = json::array();
        for (const auto& [v, a] : rep.labels) sol["labels"].push_back({v, a});
    }
    j["solution"] = rep.answer == "yes" ? sol : json(nullptr);
    json prov;
    prov["mode"] = to_string(rep.mode);
    prov["family"] = rep.family;
    prov["family_modes"] = rep.stats.family_modes;
    prov["seed"] = rep.seed;
    prov["delta"] = rep.delta;
    prov["q"] = rep.q;
    prov["t"] = rep.t;
    prov["failure_bound"] = rep.failure_bound;
    prov["exact"] = rep.exact;
    j["provenance"] = prov;
    if (with_stats) {
        const SolveStats& s = rep.stats;
        j["stats"] = {{"branches", s.branches},
                      {"separations", s.separations},
                      {"separation_queries", s.separation_queries},
                      {"brute_force_calls", s.brute_force_calls},
                      {"hc_invocations", s.hc_invocations},
                      {"hc_leaves_max", s.hc_leaves_max},
                      {"hc_leaves_bound_violations", s.hc_leaves_bound_violations},
                      {"max_depth", s.max_depth},
                      {"randomized_sites", s.randomized_sites},
                      {"wall_ms", rep.wall_ms}};
    }
    return j.dump(2) + "\n";
}

SolutionReport report_from_json(const std::string& text)
{
    SolutionReport rep;
    try {
        const json j = json::parse(text);
        rep.problem = problem_from_string(j.at("problem").get<std::string>());
        rep.answer = j.at("answer").get<std::string>();
        if (rep.answer != "yes" && rep.answer != "no" && rep.answer != "unknown-monte-carlo")
            throw InputError("unknown answer '" + rep.answer + "'");
        rep.size = j.at("size").get<std::int64_t>();
        const json& sol = j.at("solution");
        if (rep.answer == "yes") {
            if (sol.contains("edges"))
                for (const auto& e : sol.at("edges")) rep.edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
            if (sol.contains("vertices")) rep.vertices = sol.at("vertices").get<std::vector<int>>();
            if (sol.contains("labels"))
                for (const auto& l : sol.at("labels")) rep.labels[l.at(0).get<int>()] = l.at(1).get<int>();
        }
        if (j.contains("provenance")) {
            const json& pr = j.at("provenance");
            rep.mode = solve_mode_from_string(pr.value("mode", std::string("exact")));
            rep.family = pr.value("family", std::string());
            rep.seed = pr.value("seed", std::uint64_t{0});
            rep.delta = pr.value("delta", 0.0);
            rep.q = pr.value("q", std::int64_t{0});
            rep.t = pr.value("t", std::int64_t{0});
            rep.failure_bound = pr.value("failure_bound", 0.0);
            rep.exact = pr.value("exact", true);
        }
    } catch (const json::exception& e) {
        throw InputError(std::string("malformed report: ") + e.what());
    }
    return rep;
}

int exit_code(const SolutionReport& rep)
{
    if (rep.answer == "yes") return 0;
    if (rep.answer == "no") return 2;
    return 3;
}

VerifyOutcome verify_report(const InstanceFile& inst, const SolutionReport& rep)
{
    const Problem p = inst.problem;
    if (rep.problem != p)
        return {false, "report is for " + to_string(rep.problem) + ", instance is " + to_string(p)};
    if (rep.answer != "yes") {
        std::optional<std::int64_t> found;
        try {
            if (p == Problem::Steiner) {
                if (auto a = oracle_steiner(inst.steiner)) found = a->size;
            } else if (p == Problem::Emwcu) {
                if (auto a = oracle_mwcu_edge(inst.mwcu)) found = a->size;
            } else if (p == Problem::Nmwcu) {
                if (auto a = oracle_mwcu_node(inst.mwcu)) found = a->size;
            } else if (p == Problem::Nulc) {
                if (auto a = oracle_ulc_node(inst.ulc)) found = a->size;
            } else if (p == Problem::Eulc) {
                if (auto a = oracle_ulc_edge(inst.ulc)) found = a->size;
            }
        } catch (const SizeError&) {
            return {true, "negative answer not checked: instance exceeds the oracle guards"};
        }
        if (found) return {false, "negative answer, but a solution of size " + std::to_string(*found) + " exists"};
        return {true, "negative answer confirmed by exhaustive search"};
    }

    try {
        if (p == Problem::Steiner || p == Problem::Emwcu) {
            const MultiGraph& g = p == Problem::Steiner ? inst.steiner.g : inst.mwcu.g;
            std::set<std::pair<int, int>> seen;
            std::int64_t cost = 0;
            for (auto [u, v] : rep.edges) {
                if (u > v) std::swap(u, v);
                const int c = g.has(u) && g.has(v) ? g.edge_index_by_id(u, v) : -1;
                if (c < 0)
                    return {false, "edge " + std::to_string(u) + "-" + std::to_string(v) + " is not in the instance"};
                if (!seen.insert({u, v}).second)
                    return {false, "edge " + std::to_string(u) + "-" + std::to_string(v) + " listed twice"};
                cost += g.edges()[c].mult;
            }
            if (cost != rep.size)
                return {false, "size " + std::to_string(rep.size) + " differs from the deleted multiplicity " +
                                   std::to_string(cost)};
            const bool ok = p == Problem::Steiner ? verify_steiner(inst.steiner, rep.edges)
                                                  : verify_emwcu(inst.mwcu, rep.edges);
            if (!ok) return {false, "deleting the edges does not satisfy the instance (or exceeds k)"};
        } else if (p == Problem::Nmwcu) {
            std::set<int> xs(rep.vertices.begin(), rep.vertices.end());
            if (xs.size() != rep.vertices.size()) return {false, "vertex listed twice"};
            for (int v : xs)
                if (!inst.mwcu.g.has(v)) return {false, "vertex " + std::to_string(v) + " is not in the instance"};
            if (static_cast<std::int64_t>(xs.size()) != rep.size)
                return {false, "size " + std::to_string(rep.size) + " differs from the number of deleted vertices"};
            if (!verify_nmwcu(inst.mwcu, rep.vertices))
                return {false, "deleting the vertices does not satisfy the instance (or exceeds k)"};
        } else if (p == Problem::Nulc) {
            if (static_cast<std::int64_t>(rep.vertices.size()) != rep.size)
                return {false, "size " + std::to_string(rep.size) + " differs from the number of deleted vertices"};
            std::string why;
            if (!verify_nulc(inst.ulc, rep.vertices, rep.labels, &why)) return {false, why};
        } else if (p == Problem::Eulc) {
            if (static_cast<std::int64_t>(rep.edges.size()) != rep.size)
                return {false, "size " + std::to_string(rep.size) + " differs from the number of deleted edges"};
            std::string why;
            if (!verify_eulc(inst.ulc, rep.edges, rep.labels, &why)) return {false, why};
        } else {
            return {false, "mcc instances have no reports"};
        }
    } catch (const InputError& e) {
        return {false, e.what()};
    }
    return {true, "solution valid"};
}

} // namespace rc

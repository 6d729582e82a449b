#include "pscard/bench.hpp"

#include "pscard/solver.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace pscard {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    std::size_t e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? "" : s.substr(b, e - b + 1);
}

std::string unquote(const std::string& s) {
    if (s.size() >= 2 && s.front() == '"' && s.back() == '"')
        return s.substr(1, s.size() - 2);
    return s;
}

double ms_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
        .count();
}

} // namespace

std::string BenchRun::family() const {
    auto it = kv.find("family");
    if (it == kv.end())
        throw Error("bench run without a family");
    return it->second;
}

int BenchRun::getInt(const std::string& key, std::optional<int> def) const {
    auto it = kv.find(key);
    if (it == kv.end()) {
        if (def)
            return *def;
        throw Error("bench run is missing '" + key + "'");
    }
    return std::stoi(it->second);
}

std::string BenchRun::getStr(const std::string& key, const std::string& def) const {
    auto it = kv.find(key);
    return it == kv.end() ? def : it->second;
}

std::vector<BenchRun> parse_bench_config(const std::string& text) {
    std::vector<BenchRun> runs;
    std::istringstream in(text);
    std::string line;
    bool inRun = false;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#' || t[0] == '%')
            continue;
        if (t == "[run]") {
            runs.emplace_back();
            inRun = true;
            continue;
        }
        auto eq = t.find('=');
        if (!inRun || eq == std::string::npos)
            throw Error("bench config line " + std::to_string(lineno) +
                        ": expected '[run]' or 'key = value'");
        std::string key = trim(t.substr(0, eq));
        std::string val = unquote(trim(t.substr(eq + 1)));
        runs.back().kv[key] = val;
    }
    return runs;
}

namespace {

struct Timing {
    GroundTheory gt;
    double groundMs = 0.0;
    double solveMs = 0.0;
    SolveResult result;
};

Timing ground_and_solve(const BenchmarkInstance& inst, SolveMode mode) {
    Timing t;
    auto t0 = std::chrono::steady_clock::now();
    Theory th = inst.theory();
    t.gt = ground_theory(th);
    t.groundMs = ms_since(t0);
    auto t1 = std::chrono::steady_clock::now();
    t.result = solve(t.gt, mode);
    t.solveMs = ms_since(t1);
    return t;
}

BenchRow run_vc(const BenchRun& run, std::ostream* log) {
    const int n = run.getInt("n");
    const int m = run.getInt("edges", 2 * n);
    const int graphs = run.getInt("graphs", 1);
    const std::uint64_t seed0 = static_cast<std::uint64_t>(run.getInt("seed", 1));
    const VcEncoding enc = run.getStr("encoding", "catom") == "positional"
                               ? VcEncoding::Positional
                               : VcEncoding::CAtom;
    const std::string kSpec = run.getStr("k", "min");

    BenchRow row;
    row.family = enc == VcEncoding::Positional ? "vertex-cover" : "vertex-cover-catom";
    std::ostringstream ps;
    ps << "n=" << n << " m=" << m << " graphs=" << graphs;
    row.params = ps.str();

    double sumGround = 0.0, sumSolve = 0.0;
    long long sumK = 0;
    for (int gidx = 0; gidx < graphs; ++gidx) {
        const std::uint64_t seed = seed0 + static_cast<std::uint64_t>(gidx);
        const Graph g = random_graph(n, m, seed);
        int k;
        if (kSpec == "min") {
            // iterate k upward with the solver itself
            k = 0;
            for (;; ++k) {
                BenchmarkInstance probe = gen_vertex_cover(g, k, enc);
                Timing t = ground_and_solve(probe, SolveMode::One);
                if (t.result.sat)
                    break;
            }
        } else {
            k = std::stoi(kSpec);
        }
        BenchmarkInstance inst = gen_vertex_cover(g, k, enc);
        Timing t = ground_and_solve(inst, SolveMode::One);
        if (t.result.sat)
            extract_solution(inst, t.gt, t.result.models.front());
        sumGround += t.groundMs;
        sumSolve += t.solveMs;
        sumK += k;
        row.atoms = t.gt.numAtoms();
        row.clauses = t.gt.clauses.size();
        if (log)
            *log << row.family << " seed=" << seed << " k=" << k
                 << (t.result.sat ? " SAT" : " UNSAT") << "\n";
    }
    std::ostringstream res;
    res << "SAT k_avg=" << std::fixed << std::setprecision(2)
        << (static_cast<double>(sumK) / graphs);
    row.result = res.str();
    row.groundMs = sumGround / graphs;
    row.solveMs = sumSolve / graphs;
    return row;
}

} // namespace

std::vector<BenchRow> run_bench(const std::vector<BenchRun>& runs, std::ostream* log) {
    std::vector<BenchRow> rows;
    for (const BenchRun& run : runs) {
        const std::string family = run.family();
        if (family == "vc" || family == "vertex-cover") {
            rows.push_back(run_vc(run, log));
            continue;
        }
        BenchmarkInstance inst;
        SolveMode mode = SolveMode::One;
        const std::string modeStr = run.getStr("mode", "one");
        if (modeStr == "count")
            mode = SolveMode::Count;
        else if (modeStr == "all")
            mode = SolveMode::All;
        if (family == "nqueens") {
            inst = gen_nqueens(run.getInt("n"));
        } else if (family == "pigeonhole") {
            inst = gen_pigeonhole(run.getInt("p"), run.getInt("h"));
        } else if (family == "schur") {
            inst = gen_schur(run.getInt("n"), run.getInt("k"));
        } else {
            throw Error("unknown bench family '" + family + "'");
        }
        Timing t = ground_and_solve(inst, mode);
        BenchRow row;
        row.family = inst.family;
        std::ostringstream ps;
        for (const auto& [k, v] : inst.params)
            ps << k << "=" << v << " ";
        row.params = trim(ps.str());
        row.atoms = t.gt.numAtoms();
        row.clauses = t.gt.clauses.size();
        row.groundMs = t.groundMs;
        row.solveMs = t.solveMs;
        if (mode == SolveMode::Count)
            row.result = std::to_string(t.result.count) + " models";
        else
            row.result = t.result.sat ? "SAT" : "UNSAT";
        if (mode != SolveMode::Count && t.result.sat && !t.result.models.empty())
            extract_solution(inst, t.gt, t.result.models.front());
        if (log)
            *log << row.family << " " << row.params << " " << row.result << "\n";
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string format_report(const std::vector<BenchRow>& rows) {
    std::vector<std::array<std::string, 7>> cells;
    cells.push_back({"family", "params", "result", "atoms", "clauses", "ground_ms", "solve_ms"});
    for (const BenchRow& r : rows) {
        std::ostringstream g, s;
        g << std::fixed << std::setprecision(1) << r.groundMs;
        s << std::fixed << std::setprecision(1) << r.solveMs;
        cells.push_back({r.family, r.params, r.result, std::to_string(r.atoms),
                         std::to_string(r.clauses), g.str(), s.str()});
    }
    std::array<std::size_t, 7> width{};
    for (const auto& row : cells)
        for (std::size_t i = 0; i < row.size(); ++i)
            width[i] = std::max(width[i], row[i].size());
    std::string out;
    for (const auto& row : cells) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            out += row[i];
            if (i + 1 < row.size())
                out += std::string(width[i] - row[i].size() + 2, ' ');
        }
        out += '\n';
    }
    out += '\n';
    for (const auto& row : cells) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            out += row[i];
            if (i + 1 < row.size())
                out += '\t';
        }
        out += '\n';
    }
    return out;
}

} // namespace pscard

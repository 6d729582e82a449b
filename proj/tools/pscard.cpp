#include "pscard/bench.hpp"
#include "pscard/completion.hpp"
#include "pscard/solver.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw pscard::Error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void spill(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw pscard::Error("cannot write '" + path + "'");
    out << text;
}

pscard::Bindings parse_bindings(const std::vector<std::string>& defs) {
    pscard::Bindings b;
    for (const std::string& d : defs) {
        auto eq = d.find('=');
        if (eq == std::string::npos)
            throw pscard::Error("constant binding must look like name=int: '" + d + "'");
        b[d.substr(0, eq)] = std::stoll(d.substr(eq + 1));
    }
    return b;
}

std::string model_line(const pscard::GroundTheory& gt, const pscard::Model& m) {
    std::string line;
    for (pscard::AtomId a = 0; a < gt.numAtoms(); ++a) {
        if (!m.contains(a)) continue;
        if (!line.empty())
            line += ' ';
        line += gt.atomNames[a];
    }
    return line;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"grounder and solver for propositional schemata with cardinality atoms"};
    app.require_subcommand(1);

    auto* ground = app.add_subcommand("ground", "ground a theory to propositional form");
    std::vector<std::string> dataFiles, progFiles, consts;
    std::string groundOut;
    ground->add_option("-d,--data", dataFiles, "data file(s)")->expected(-1);
    ground->add_option("-p,--program", progFiles, "program file(s)")->required()->expected(-1);
    ground->add_option("-c,--const", consts, "symbolic constant binding name=int");
    ground->add_option("-o,--output", groundOut, "output .gnd file")->required();

    auto* solveCmd = app.add_subcommand("solve", "solve a grounded theory");
    std::string gndFile, dimacsOut;
    bool allModels = false, countModels = false;
    solveCmd->add_option("file", gndFile, "grounded theory (.gnd)")->required();
    solveCmd->add_flag("--all", allModels, "enumerate all models");
    solveCmd->add_flag("--count", countModels, "count models only");
    solveCmd->add_option("--dimacs", dimacsOut, "also compile to DIMACS CNF");

    auto* complete = app.add_subcommand("complete", "translate a normal logic program");
    std::string lpFile, psOut;
    complete->add_option("program", lpFile, "logic program (.lp)")->required();
    complete->add_option("-o,--output", psOut, "output program file")->required();

    auto* benchCmd = app.add_subcommand("bench", "run a benchmark suite");
    std::string benchConfig, benchOut;
    bool benchVerbose = false;
    benchCmd->add_option("config", benchConfig, "suite config file")->required();
    benchCmd->add_option("-o,--output", benchOut, "report file")->required();
    benchCmd->add_flag("-v,--verbose", benchVerbose, "log each instance");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*ground) {
            std::vector<std::string> dataTexts, progTexts;
            for (const std::string& f : dataFiles)
                dataTexts.push_back(slurp(f));
            for (const std::string& f : progFiles)
                progTexts.push_back(slurp(f));
            pscard::Theory th =
                pscard::assemble_theory(dataTexts, progTexts, parse_bindings(consts));
            pscard::GroundTheory gt = pscard::ground_theory(th);
            spill(groundOut, pscard::write_gnd(gt));
            std::cerr << "ground: " << gt.numAtoms() << " atoms, " << gt.clauses.size()
                      << " clauses, " << gt.catoms.size() << " c-atoms\n";
            return 0;
        }
        if (*solveCmd) {
            if (allModels && countModels)
                throw pscard::Error("--all and --count are mutually exclusive");
            pscard::GroundTheory gt = pscard::read_gnd(slurp(gndFile));
            if (!dimacsOut.empty())
                spill(dimacsOut, pscard::write_dimacs(pscard::compile_cnf(gt)));
            if (countModels) {
                pscard::SolveResult r = pscard::solve(gt, pscard::SolveMode::Count);
                std::cout << r.count << "\n";
                return 0;
            }
            if (allModels) {
                bool any = false;
                pscard::solve(gt, pscard::SolveMode::All, [&](const pscard::Model& m) {
                    if (!any)
                        std::cout << "SAT\n";
                    any = true;
                    std::cout << model_line(gt, m) << "\n";
                    return true;
                });
                if (!any)
                    std::cout << "UNSAT\n";
                return any ? 10 : 20;
            }
            pscard::SolveResult r = pscard::solve(gt, pscard::SolveMode::One);
            if (!r.sat) {
                std::cout << "UNSAT\n";
                return 20;
            }
            std::cout << "SAT\n" << model_line(gt, r.models.front()) << "\n";
            return 10;
        }
        if (*complete) {
            pscard::NormalProgram p = pscard::parse_lp(slurp(lpFile));
            spill(psOut, pscard::print_translation(pscard::translate(p)));
            return 0;
        }
        if (*benchCmd) {
            auto runs = pscard::parse_bench_config(slurp(benchConfig));
            auto rows = pscard::run_bench(runs, benchVerbose ? &std::cerr : nullptr);
            std::string report = pscard::format_report(rows);
            spill(benchOut, report);
            std::cout << report;
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

#pragma once

#include "pscard/instances.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace pscard {

/// One benchmark run parsed from the config: `[run]` sections of
/// `key = value` lines. A vertex-cover run with graphs = N aggregates N
/// seeded instances into one row.
struct BenchRun {
    std::map<std::string, std::string> kv;

    std::string family() const;
    int getInt(const std::string& key, std::optional<int> def = {}) const;
    std::string getStr(const std::string& key, const std::string& def) const;
};

std::vector<BenchRun> parse_bench_config(const std::string& text);

struct BenchRow {
    std::string family;
    std::string params;
    std::string result;       // SAT / UNSAT / model count / k_G
    std::size_t atoms = 0;    // ground-theory size (last grounded instance)
    std::size_t clauses = 0;
    double groundMs = 0.0;
    double solveMs = 0.0;
};

/// Runs every configured instance through ground + solve. SAT answers are
/// re-verified with the family's direct checker; a failure aborts loudly.
std::vector<BenchRow> run_bench(const std::vector<BenchRun>& runs, std::ostream* log = nullptr);

/// Aligned table plus machine-readable tab-separated rows.
std::string format_report(const std::vector<BenchRow>& rows);

} // namespace pscard

#pragma once

#include "pscard/ground.hpp"

#include <cstdint>
#include <functional>
#include <vector>

namespace pscard {

/// A total truth assignment over a ground theory's atom table.
struct Model {
    std::vector<std::uint8_t> truth; // indexed by AtomId

    static Model ofSize(std::size_t n) { return Model{std::vector<std::uint8_t>(n, 0)}; }
    static Model fromAtoms(std::size_t n, const std::vector<AtomId>& ids);
    static Model fromMask(std::size_t n, std::uint64_t mask);

    bool contains(AtomId a) const { return truth[a] != 0; }
    std::vector<AtomId> trueAtoms() const;
    std::uint64_t mask() const; // requires <= 64 atoms
    bool operator==(const Model& o) const { return truth == o.truth; }
};

/// m <= |M ∩ atoms| <= n, absent bounds meaning 0 / |atoms|.
bool sat_catom(const GroundCAtom& c, const Model& m);

/// Satisfied iff some consequent member is satisfied or some antecedent
/// member is not.
bool sat_clause(const GroundTheory& gt, const GroundClause& cl, const Model& m);

bool check_model(const GroundTheory& gt, const Model& m);

inline constexpr std::size_t kEnumerationGuard = 24;

/// All models, in ascending bit-mask order (bit i = atom i), optionally
/// truncated. Without a limit the atom table may hold at most
/// kEnumerationGuard atoms; enumeration supports at most 63 atoms total.
std::vector<Model> enumerate_models(const GroundTheory& gt,
                                    std::optional<std::uint64_t> limit = {});

/// Same enumeration as bit masks; the workhorse for oracle comparisons.
std::vector<std::uint64_t> enumerate_model_masks(const GroundTheory& gt,
                                                 std::optional<std::uint64_t> limit = {});

/// Plain CNF over the same variables, DIMACS numbering (atom id + 1).
struct CnfTheory {
    std::uint32_t numVars = 0;
    std::vector<std::vector<std::int32_t>> clauses;
};

/// Compiles the supported fragment to CNF without auxiliary variables:
/// clauses whose members are all ordinary atoms (1{p}1), plus single-c-atom
/// clauses T => m{p1..pk}n which expand to the subset clauses
/// C(k,n+1) negative + C(k,k-m+1) positive. Anything else is rejected.
CnfTheory compile_cnf(const GroundTheory& gt, std::uint64_t maxClauses = 1u << 24);

std::string write_dimacs(const CnfTheory& cnf);

} // namespace pscard

#pragma once

#include "pscard/lang.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace pscard {

using AtomId = std::uint32_t;

/// Propositional cardinality atom m { p_1, ..., p_k } n over interned atom
/// ids. m > n is legal and unsatisfiable; an upper bound above k is vacuous.
struct GroundCAtom {
    std::optional<std::int64_t> lower;
    std::optional<std::int64_t> upper;
    std::vector<AtomId> atoms; // nonempty, duplicate-free, expansion order

    bool operator==(const GroundCAtom& o) const {
        return lower == o.lower && upper == o.upper && atoms == o.atoms;
    }
};

/// Extended propositional clause; members index into GroundTheory::catoms.
/// The first anteCount members form the antecedent.
struct GroundClause {
    std::vector<std::uint32_t> members;
    std::uint32_t anteCount = 0;

    std::span<const std::uint32_t> antecedent() const {
        return {members.data(), anteCount};
    }
    std::span<const std::uint32_t> consequent() const {
        return {members.data() + anteCount, members.size() - anteCount};
    }
    bool operator==(const GroundClause& o) const {
        return members == o.members && anteCount == o.anteCount;
    }
};

/// Grounded theory: atom table over the full program-predicate Herbrand
/// base, deduplicated c-atoms, clauses, and the original data atoms (carried
/// for model output; never referenced by clauses).
struct GroundTheory {
    std::vector<std::string> atomNames;
    std::unordered_map<std::string, AtomId> atomIds;
    std::vector<GroundCAtom> catoms;
    std::vector<GroundClause> clauses;
    std::vector<Atom> data;

    std::size_t numAtoms() const { return atomNames.size(); }
    AtomId idOf(const std::string& name) const;
};

/// Constant table of a theory, in enumeration order (symbols sorted, then
/// integers ascending).
class ConstantTable {
public:
    ConstantTable() = default;
    explicit ConstantTable(std::vector<GroundConst> ordered);

    const std::vector<GroundConst>& all() const { return order_; }
    std::size_t size() const { return order_.size(); }
    bool containsInt(std::int64_t v) const { return ints_.count(v) != 0; }
    bool containsSym(const std::string& s) const { return syms_.count(s) != 0; }
    bool contains(const GroundConst& g) const {
        return g.isInt ? containsInt(g.num) : containsSym(g.sym);
    }

private:
    std::vector<GroundConst> order_;
    std::unordered_set<std::int64_t> ints_;
    std::unordered_set<std::string> syms_;
};

using Substitution = std::map<std::string, GroundConst>;

/// Evaluates a term under a substitution. Returns nullopt on a type failure
/// (non-integer operand of an arithmetic operator, unbound variable treated
/// as a bug and asserted). Throws EvalError on signed 64-bit overflow.
std::optional<GroundConst> eval_term(const Term& t, const Substitution& sub);

/// Truth of a ground predefined atom: integer comparisons use standard
/// order, =/!= compare ground values for identity, mixed-type order
/// comparisons and arithmetic failures make the atom false. Arithmetic
/// results feeding a comparison are used as plain integers.
bool eval_predefined(const Atom& a, const Substitution& sub);

/// Incremental grounder. Exposes the per-construct operations for tests;
/// ground_theory() drives the whole transformation.
class Grounder {
public:
    explicit Grounder(const Theory& t);

    /// B^e for a consequent program atom with underscores: 1{b(s^1),...}
    /// with no upper bound, tuples in constant-table order, duplicates
    /// removed.
    GroundCAtom expandExistential(const Atom& b, const Substitution& sub);

    /// Instantiates a c-atom: underscores range over all constants.
    GroundCAtom instantiateCAtom(const CAtom& c, const Substitution& sub);

    GroundTheory run();

    const ConstantTable& constants() const { return table_; }

private:
    friend struct GrounderImpl;
    const Theory& theory_;
    ConstantTable table_;
    GroundTheory out_;
    std::unordered_map<std::string, std::uint32_t> catomIndex_;
    std::unordered_set<std::string> dataSet_; // printed data atoms for membership

    AtomId intern(const std::string& name);
    std::uint32_t internCAtom(GroundCAtom c);
};

GroundTheory ground_theory(const Theory& t);

/// Grounded-theory text format:
///   p gnd <#atoms> <#clauses>
///   a <id> <name>
///   c <m|*> <n|*> <k> <id...>      (index = order of appearance)
///   r <s> <t> <catom-index...>
std::string write_gnd(const GroundTheory& gt);
GroundTheory read_gnd(const std::string& text);

} // namespace pscard

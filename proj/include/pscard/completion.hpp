#pragma once

#include "pscard/lang.hpp"

#include <set>
#include <string>
#include <vector>

namespace pscard {

/// A body literal of a normal logic-program rule. The atom may use a
/// predefined comparison predicate (allowed in bodies, never in heads).
struct BodyLiteral {
    bool positive = true;
    Atom atom;
};

/// Rule in normal form: head p(X) over a tuple of distinct variables; all
/// rules sharing a head predicate use the identical tuple.
struct NormalRule {
    std::string headPred;
    std::vector<std::string> headVars;
    std::vector<BodyLiteral> body;
};

struct NormalProgram {
    std::vector<NormalRule> rules;
    // Extra predicates in the signature beyond those occurring in rules
    // (name, arity); lets an empty program still complete p to p <-> F.
    std::vector<std::pair<std::string, int>> declaredPreds;

    /// All predicates (first-occurrence order), arity included.
    std::vector<std::pair<std::string, int>> predicates() const;
    /// Predicates with no defining rule (the input predicates).
    std::vector<std::string> inputPredicates() const;
    /// Throws SemanticError if the program is not in normal form.
    void validate() const;
};

/// Parses `head :- b1, ..., not c1, ... .` rule text (`%` comments,
/// body-less facts `p(X).` allowed).
NormalProgram parse_lp(const std::string& text);

struct CompletionDisjunct {
    std::vector<std::string> existVars; // body vars not in the head
    std::vector<BodyLiteral> body;
};

/// cc(p): p(X) <-> disjunction of existentially closed rule bodies;
/// predicates without rules complete to F (empty disjunction).
struct CompletionFormula {
    std::string pred;
    std::vector<std::string> headVars;
    std::vector<CompletionDisjunct> disjuncts;
};

std::vector<CompletionFormula> clark_completion(const NormalProgram& p);
std::string to_string(const CompletionFormula& f);

/// Clausal theory T(P): one auxiliary predicate per rule of a defined
/// predicate, the definitional bi-implications split into clauses, and the
/// input predicates turned into data declarations.
struct Translation {
    std::vector<ExtendedClause> clauses;
    std::vector<DataDecl> dataDecls;
    std::vector<std::string> auxPreds; // one per rule of a defined predicate
};

Translation translate(const NormalProgram& p);

/// Program text consumable by parse_program / assemble_theory.
std::string print_translation(const Translation& t);

/// Brute-force supported models of D ∪ P: subsets of the Herbrand base
/// agreeing with D on the input predicates, closed under the rules, with
/// every non-input true atom supported by a rule with true body. Guarded to
/// Herbrand bases of at most 20 atoms.
std::set<std::set<std::string>> supported_models(const NormalProgram& p,
                                                 const std::vector<Atom>& data);

} // namespace pscard

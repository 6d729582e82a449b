#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace pscard {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Syntax error with 1-based source position.
class ParseError : public Error {
public:
    ParseError(const std::string& msg, int line, int col);
    int line() const { return line_; }
    int column() const { return col_; }

private:
    int line_;
    int col_;
};

/// Arithmetic overflow during evaluation. Type failures are not errors
/// (they fold to logical falsity); overflow is always reported.
class EvalError : public Error {
public:
    using Error::Error;
};

/// Violation of a theory-level constraint (arity conflict, c-atom over a
/// non-program predicate, bad bounds, ...).
class SemanticError : public Error {
public:
    using Error::Error;
};

enum class TermKind { Constant, Integer, Variable, Anonymous, Apply };

/// A surface-syntax term. Apply covers the predefined arithmetic
/// operators +, -, *, mod, abs.
struct Term {
    TermKind kind = TermKind::Constant;
    std::string text;          // constant symbol, variable name, or operator
    std::int64_t value = 0;    // Integer payload
    std::vector<Term> args;    // Apply operands

    static Term constant(std::string s);
    static Term integer(std::int64_t v);
    static Term variable(std::string name);
    static Term anonymous();
    static Term apply(std::string op, std::vector<Term> operands);

    bool operator==(const Term& o) const;
};

enum class PredKind { Data, Program, Predefined };

struct Atom {
    std::string pred;
    std::vector<Term> args;
    PredKind kind = PredKind::Program;

    bool operator==(const Atom& o) const;
};

/// Cardinality atom m { inner } n. Bounds are resolved to integers during
/// parsing (symbolic bounds come from the bindings map).
struct CAtom {
    std::optional<std::int64_t> lower;
    std::optional<std::int64_t> upper;
    Atom inner;

    bool operator==(const CAtom& o) const = default;
};

using Member = std::variant<Atom, CAtom>;

/// A universally quantified clause: antecedent conjunction implies
/// consequent disjunction. Empty antecedent is T, empty consequent is F.
struct ExtendedClause {
    std::vector<Member> antecedent;
    std::vector<Member> consequent;

    bool operator==(const ExtendedClause& o) const = default;
};

/// A ground value: an integer or a constant symbol.
struct GroundConst {
    bool isInt = false;
    std::int64_t num = 0;
    std::string sym;

    static GroundConst ofInt(std::int64_t v);
    static GroundConst ofSym(std::string s);

    bool operator==(const GroundConst& o) const;
    // Constant-table order: symbols first (lexicographic), then integers
    // ascending. Fixes the enumeration order of expansions.
    bool operator<(const GroundConst& o) const;
    std::string str() const;
};

struct PredInfo {
    int arity = 0;
    PredKind kind = PredKind::Program;
};

/// A theory (D, P): ground data atoms plus program clauses, with the
/// derived constant table and predicate registry.
struct Theory {
    std::vector<Atom> data;               // deduplicated, input order
    std::vector<ExtendedClause> program;
    std::vector<GroundConst> constants;   // sorted per GroundConst order
    std::vector<std::string> predOrder;   // first occurrence: data files, then program
    std::map<std::string, PredInfo> preds;
};

struct DataDecl {
    std::string pred;
    int arity = 0;
};

struct ParsedProgram {
    std::vector<ExtendedClause> clauses;
    std::vector<DataDecl> dataDecls;
};

using Bindings = std::map<std::string, std::int64_t>;

/// Parses a data file: ground facts `pred(c1,...,cn).`, `%` comments.
std::vector<Atom> parse_data(const std::string& text);

/// Parses a program file. Symbolic constants and c-atom bounds are
/// substituted from `bindings`; predicates in `dataPreds` (or declared via
/// `data pred/arity.` in the text) get kind Data, comparisons Predefined,
/// everything else Program.
ParsedProgram parse_program(const std::string& text, const Bindings& bindings = {},
                            const std::set<std::string>& dataPreds = {});

/// Builds a Theory from data and program texts: resolves predicate kinds
/// across all files, checks arity consistency and c-atom constraints, and
/// collects the constant table.
Theory assemble_theory(const std::vector<std::string>& dataTexts,
                       const std::vector<std::string>& programTexts,
                       const Bindings& bindings = {});

std::string to_string(const Term& t);
std::string to_string(const Atom& a);
std::string to_string(const Member& m);
std::string to_string(const ExtendedClause& c);
std::string print_program(const std::vector<ExtendedClause>& clauses);
std::string print_data(const std::vector<Atom>& atoms);

bool is_predefined_pred(const std::string& name);

} // namespace pscard

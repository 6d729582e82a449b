#include "pscard/lang.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <sstream>

namespace pscard {

ParseError::ParseError(const std::string& msg, int line, int col)
    : Error(msg + " (line " + std::to_string(line) + ", column " + std::to_string(col) + ")"),
      line_(line), col_(col) {}

Term Term::constant(std::string s) {
    Term t;
    t.kind = TermKind::Constant;
    t.text = std::move(s);
    return t;
}
Term Term::integer(std::int64_t v) {
    Term t;
    t.kind = TermKind::Integer;
    t.value = v;
    return t;
}
Term Term::variable(std::string name) {
    Term t;
    t.kind = TermKind::Variable;
    t.text = std::move(name);
    return t;
}
Term Term::anonymous() {
    Term t;
    t.kind = TermKind::Anonymous;
    return t;
}
Term Term::apply(std::string op, std::vector<Term> operands) {
    Term t;
    t.kind = TermKind::Apply;
    t.text = std::move(op);
    t.args = std::move(operands);
    return t;
}

bool Term::operator==(const Term& o) const {
    return kind == o.kind && text == o.text && value == o.value && args == o.args;
}

bool Atom::operator==(const Atom& o) const {
    return pred == o.pred && args == o.args && kind == o.kind;
}

GroundConst GroundConst::ofInt(std::int64_t v) {
    GroundConst g;
    g.isInt = true;
    g.num = v;
    return g;
}
GroundConst GroundConst::ofSym(std::string s) {
    GroundConst g;
    g.isInt = false;
    g.sym = std::move(s);
    return g;
}
bool GroundConst::operator==(const GroundConst& o) const {
    return isInt == o.isInt && (isInt ? num == o.num : sym == o.sym);
}
bool GroundConst::operator<(const GroundConst& o) const {
    if (isInt != o.isInt)
        return !isInt; // symbols sort before integers
    return isInt ? num < o.num : sym < o.sym;
}
std::string GroundConst::str() const {
    return isInt ? std::to_string(num) : sym;
}

bool is_predefined_pred(const std::string& name) {
    return name == "=" || name == "!=" || name == "<" || name == "<=" || name == ">" ||
           name == ">=";
}

namespace {

enum class Tok {
    Ident,     // lowercase identifier
    Var,       // uppercase identifier
    Int,
    LParen,
    RParen,
    LBrace,
    RBrace,
    Comma,
    Semi,
    Dot,
    Slash,
    Underscore,
    Arrow,     // ->
    RelOp,     // = != < <= > >=
    Plus,
    Minus,
    Star,
    End,
};

struct Token {
    Tok kind = Tok::End;
    std::string text;
    std::int64_t value = 0;
    int line = 1;
    int col = 1;
};

class Lexer {
public:
    explicit Lexer(const std::string& text) : src_(text) { advance(); }

    const Token& peek() const { return tok_; }

    Token next() {
        Token t = tok_;
        advance();
        return t;
    }

private:
    void advance() {
        skipSpace();
        tok_.line = line_;
        tok_.col = col_;
        if (pos_ >= src_.size()) {
            tok_.kind = Tok::End;
            tok_.text.clear();
            return;
        }
        char c = src_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            lexInt();
            return;
        }
        if (c == '_' ) {
            get();
            if (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
                fail("'_' must stand alone");
            tok_.kind = Tok::Underscore;
            tok_.text = "_";
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::string s;
            while (pos_ < src_.size() &&
                   (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
                s += get();
            tok_.kind = std::isupper(static_cast<unsigned char>(c)) ? Tok::Var : Tok::Ident;
            tok_.text = std::move(s);
            return;
        }
        switch (c) {
        case '(': get(); tok_.kind = Tok::LParen; return;
        case ')': get(); tok_.kind = Tok::RParen; return;
        case '{': get(); tok_.kind = Tok::LBrace; return;
        case '}': get(); tok_.kind = Tok::RBrace; return;
        case ',': get(); tok_.kind = Tok::Comma; return;
        case ';': get(); tok_.kind = Tok::Semi; return;
        case '.': get(); tok_.kind = Tok::Dot; return;
        case '/': get(); tok_.kind = Tok::Slash; return;
        case '+': get(); tok_.kind = Tok::Plus; return;
        case '*': get(); tok_.kind = Tok::Star; return;
        case '-':
            get();
            if (pos_ < src_.size() && src_[pos_] == '>') {
                get();
                tok_.kind = Tok::Arrow;
                return;
            }
            tok_.kind = Tok::Minus;
            return;
        case '=': get(); tok_.kind = Tok::RelOp; tok_.text = "="; return;
        case '!':
            get();
            if (pos_ < src_.size() && src_[pos_] == '=') {
                get();
                tok_.kind = Tok::RelOp;
                tok_.text = "!=";
                return;
            }
            fail("expected '=' after '!'");
            return;
        case '<':
            get();
            tok_.kind = Tok::RelOp;
            tok_.text = "<";
            if (pos_ < src_.size() && src_[pos_] == '=') {
                get();
                tok_.text = "<=";
            }
            return;
        case '>':
            get();
            tok_.kind = Tok::RelOp;
            tok_.text = ">";
            if (pos_ < src_.size() && src_[pos_] == '=') {
                get();
                tok_.text = ">=";
            }
            return;
        default:
            fail(std::string("unexpected character '") + c + "'");
        }
    }

    void lexInt() {
        std::string digits;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])))
            digits += get();
        std::int64_t v = 0;
        auto [p, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), v);
        if (ec != std::errc() || p != digits.data() + digits.size())
            fail("integer literal out of range");
        tok_.kind = Tok::Int;
        tok_.value = v;
        tok_.text = std::move(digits);
    }

    void skipSpace() {
        while (pos_ < src_.size()) {
            char c = src_[pos_];
            if (c == '%') {
                while (pos_ < src_.size() && src_[pos_] != '\n')
                    ++pos_;
            } else if (c == '\n') {
                ++pos_;
                ++line_;
                col_ = 1;
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                get();
            } else {
                break;
            }
        }
    }

    char get() {
        char c = src_[pos_++];
        ++col_;
        return c;
    }

    [[noreturn]] void fail(const std::string& msg) { throw ParseError(msg, line_, col_); }

    const std::string& src_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
    Token tok_;
};

// Keywords that cannot serve as predicate or constant symbols.
bool reserved_ident(const std::string& s) {
    return s == "mod" || s == "abs" || s == "data";
}

class Parser {
public:
    Parser(const std::string& text, const Bindings* bindings) : lex_(text), bindings_(bindings) {}

    std::vector<Atom> parseDataFile() {
        std::vector<Atom> out;
        while (lex_.peek().kind != Tok::End) {
            Token t = expect(Tok::Ident, "fact");
            if (reserved_ident(t.text))
                fail(t, "'" + t.text + "' is reserved");
            Atom a;
            a.pred = t.text;
            a.kind = PredKind::Data;
            if (lex_.peek().kind == Tok::LParen) {
                lex_.next();
                for (;;) {
                    a.args.push_back(parseGroundArg());
                    if (lex_.peek().kind == Tok::Comma) {
                        lex_.next();
                        continue;
                    }
                    break;
                }
                expect(Tok::RParen, "')'");
            }
            expect(Tok::Dot, "'.'");
            if (std::find(out.begin(), out.end(), a) == out.end())
                out.push_back(std::move(a));
        }
        return out;
    }

    ParsedProgram parseProgramFile() {
        ParsedProgram out;
        while (lex_.peek().kind != Tok::End) {
            if (lex_.peek().kind == Tok::Ident && lex_.peek().text == "data") {
                lex_.next();
                Token p = expect(Tok::Ident, "predicate name");
                expect(Tok::Slash, "'/'");
                Token n = expect(Tok::Int, "arity");
                expect(Tok::Dot, "'.'");
                out.dataDecls.push_back({p.text, static_cast<int>(n.value)});
                continue;
            }
            out.clauses.push_back(parseClause());
        }
        return out;
    }

private:
    Token expect(Tok k, const std::string& what) {
        Token t = lex_.next();
        if (t.kind != k)
            fail(t, "expected " + what);
        return t;
    }

    [[noreturn]] void fail(const Token& t, const std::string& msg) {
        throw ParseError(msg, t.line, t.col);
    }

    Term parseGroundArg() {
        Token t = lex_.next();
        if (t.kind == Tok::Int)
            return Term::integer(t.value);
        if (t.kind == Tok::Minus) {
            Token n = expect(Tok::Int, "integer");
            return Term::integer(-n.value);
        }
        if (t.kind == Tok::Ident) {
            if (reserved_ident(t.text))
                fail(t, "'" + t.text + "' is reserved");
            return Term::constant(t.text);
        }
        if (t.kind == Tok::Var)
            fail(t, "variable in a fact");
        if (t.kind == Tok::Underscore)
            fail(t, "underscore in a fact");
        fail(t, "expected a constant");
    }

    // clause := [members] ['->' [members]] '.'
    // Without '->' all members are consequents (T antecedent).
    ExtendedClause parseClause() {
        ExtendedClause cl;
        bool sawArrow = false;
        if (lex_.peek().kind == Tok::Arrow) {
            lex_.next();
            sawArrow = true;
        } else {
            bool truthAntecedent = false;
            if (lex_.peek().kind == Tok::Var && lex_.peek().text == "T") {
                // "T ->" truth antecedent; a variable named T in a comparison
                // ("T < X -> ...") is recognized by the token after it.
                Token t = lex_.next();
                if (lex_.peek().kind == Tok::Arrow) {
                    lex_.next();
                    truthAntecedent = true;
                    sawArrow = true;
                } else {
                    cl.antecedent.push_back(parseAtomOrComparison(t));
                }
            } else {
                cl.antecedent.push_back(parseMember());
            }
            if (!truthAntecedent) {
                if (lex_.peek().kind == Tok::Semi) {
                    // consequent-only disjunction: B1 ; B2 ; ... .
                    cl.consequent = std::move(cl.antecedent);
                    cl.antecedent.clear();
                    while (lex_.peek().kind == Tok::Semi) {
                        lex_.next();
                        cl.consequent.push_back(parseMember());
                    }
                    sawArrow = true; // consequents are complete
                } else {
                    while (lex_.peek().kind == Tok::Comma) {
                        lex_.next();
                        cl.antecedent.push_back(parseMember());
                    }
                    if (lex_.peek().kind == Tok::Arrow) {
                        lex_.next();
                        sawArrow = true;
                    } else {
                        // consequent-only clause
                        cl.consequent = std::move(cl.antecedent);
                        cl.antecedent.clear();
                    }
                }
            }
        }
        if (sawArrow && lex_.peek().kind != Tok::Dot) {
            bool falsum = false;
            if (lex_.peek().kind == Tok::Var && lex_.peek().text == "F") {
                Token f = lex_.next();
                if (lex_.peek().kind == Tok::Dot)
                    falsum = true;
                else
                    cl.consequent.push_back(parseAtomOrComparison(f));
            } else {
                cl.consequent.push_back(parseMember());
            }
            if (!falsum) {
                while (lex_.peek().kind == Tok::Semi) {
                    lex_.next();
                    cl.consequent.push_back(parseMember());
                }
            }
        }
        Token dot = lex_.next();
        if (dot.kind != Tok::Dot)
            fail(dot, "expected '.'");
        checkAntecedentUnderscores(cl, dot);
        return cl;
    }

    void checkAntecedentUnderscores(const ExtendedClause& cl, const Token& at) {
        for (const Member& m : cl.antecedent)
            if (const Atom* a = std::get_if<Atom>(&m))
                for (const Term& t : a->args)
                    if (containsAnonymous(t))
                        fail(at, "underscore in antecedent atom " + a->pred);
    }

    static bool containsAnonymous(const Term& t) {
        if (t.kind == TermKind::Anonymous)
            return true;
        for (const Term& a : t.args)
            if (containsAnonymous(a))
                return true;
        return false;
    }

    Member parseMember() {
        const Token& t = lex_.peek();
        // c-atom: optional bound then '{'
        if (t.kind == Tok::LBrace)
            return parseCAtom(std::nullopt);
        if (t.kind == Tok::Int || t.kind == Tok::Minus ||
            (t.kind == Tok::Ident && !reserved_ident(t.text))) {
            // Distinguish "bound {" from the start of a term/atom.
            Token first = lex_.next();
            if (lex_.peek().kind == Tok::LBrace)
                return parseCAtom(resolveBound(first));
            return parseAtomOrComparison(first);
        }
        if (t.kind == Tok::Var || t.kind == Tok::LParen || (t.kind == Tok::Ident && t.text == "abs")) {
            Token first = lex_.next();
            return parseAtomOrComparison(first);
        }
        Token bad = lex_.next();
        fail(bad, "expected an atom, comparison or c-atom");
    }

    std::int64_t resolveBound(const Token& t) {
        std::int64_t v = 0;
        if (t.kind == Tok::Int) {
            v = t.value;
        } else if (t.kind == Tok::Minus) {
            Token n = expect(Tok::Int, "integer bound");
            v = -n.value;
        } else if (t.kind == Tok::Ident) {
            if (!bindings_ || !bindings_->count(t.text))
                fail(t, "unknown symbolic bound '" + t.text + "'");
            v = bindings_->at(t.text);
        } else {
            fail(t, "expected a bound");
        }
        if (v < 0)
            fail(t, "c-atom bound is negative");
        return v;
    }

    Member parseCAtom(std::optional<std::int64_t> lower) {
        expect(Tok::LBrace, "'{'");
        Token p = expect(Tok::Ident, "predicate in c-atom");
        if (reserved_ident(p.text))
            fail(p, "'" + p.text + "' is reserved");
        CAtom c;
        c.lower = lower;
        c.inner.pred = p.text;
        if (lex_.peek().kind == Tok::LParen) {
            lex_.next();
            for (;;) {
                c.inner.args.push_back(parseArg());
                if (lex_.peek().kind == Tok::Comma) {
                    lex_.next();
                    continue;
                }
                break;
            }
            expect(Tok::RParen, "')'");
        }
        Token close = expect(Tok::RBrace, "'}'");
        Tok k = lex_.peek().kind;
        if (k == Tok::Int || k == Tok::Minus ||
            (k == Tok::Ident && !reserved_ident(lex_.peek().text)))
            c.upper = resolveBound(lex_.next());
        if (!c.lower && !c.upper)
            fail(close, "c-atom needs at least one bound");
        if (c.lower && c.upper && *c.lower > *c.upper)
            fail(close, "c-atom lower bound exceeds upper bound");
        return Member(std::move(c));
    }

    // Called with the first token already consumed. Decides between an
    // ordinary atom p(...) and a comparison term RELOP term.
    Member parseAtomOrComparison(const Token& first) {
        if (first.kind == Tok::Ident && !reserved_ident(first.text) &&
            lex_.peek().kind == Tok::LParen) {
            Atom a;
            a.pred = first.text;
            lex_.next();
            for (;;) {
                a.args.push_back(parseArg());
                if (lex_.peek().kind == Tok::Comma) {
                    lex_.next();
                    continue;
                }
                break;
            }
            expect(Tok::RParen, "')'");
            return Member(std::move(a));
        }
        // 0-ary atom if an identifier is directly followed by a member/clause
        // delimiter.
        if (first.kind == Tok::Ident && !reserved_ident(first.text)) {
            Tok k = lex_.peek().kind;
            if (k == Tok::Comma || k == Tok::Semi || k == Tok::Dot || k == Tok::Arrow ||
                k == Tok::End) {
                Atom a;
                a.pred = first.text;
                return Member(std::move(a));
            }
        }
        Term lhs = parseTermFrom(first, false);
        Token op = lex_.next();
        if (op.kind != Tok::RelOp)
            fail(op, "expected a comparison operator");
        Term rhs = parseTerm(false);
        Atom a;
        a.pred = op.text;
        a.kind = PredKind::Predefined;
        a.args = {std::move(lhs), std::move(rhs)};
        return Member(std::move(a));
    }

    // An atom argument: a whole-argument underscore or an underscore-free
    // term (underscore is never an arithmetic operand).
    Term parseArg() {
        Token t = lex_.peek();
        Term arg = parseTerm(true);
        if (arg.kind != TermKind::Anonymous && containsAnonymous(arg))
            fail(t, "underscore inside an arithmetic term");
        return arg;
    }

    // additive := multiplicative (('+'|'-') multiplicative)*
    Term parseTerm(bool allowAnonymous) { return parseTermFrom(lex_.next(), allowAnonymous); }

    Term parseTermFrom(const Token& first, bool allowAnonymous) {
        Term t = parseMulFrom(first, allowAnonymous);
        for (;;) {
            Tok k = lex_.peek().kind;
            if (k == Tok::Plus || k == Tok::Minus) {
                Token op = lex_.next();
                Term rhs = parseMul(allowAnonymous);
                t = Term::apply(op.kind == Tok::Plus ? "+" : "-", {std::move(t), std::move(rhs)});
            } else {
                return t;
            }
        }
    }

    Term parseMul(bool allowAnonymous) { return parseMulFrom(lex_.next(), allowAnonymous); }

    Term parseMulFrom(const Token& first, bool allowAnonymous) {
        Term t = parsePrimaryFrom(first, allowAnonymous);
        for (;;) {
            if (lex_.peek().kind == Tok::Star) {
                lex_.next();
                Term rhs = parsePrimary(allowAnonymous);
                t = Term::apply("*", {std::move(t), std::move(rhs)});
            } else if (lex_.peek().kind == Tok::Ident && lex_.peek().text == "mod") {
                lex_.next();
                Term rhs = parsePrimary(allowAnonymous);
                t = Term::apply("mod", {std::move(t), std::move(rhs)});
            } else {
                return t;
            }
        }
    }

    Term parsePrimary(bool allowAnonymous) { return parsePrimaryFrom(lex_.next(), allowAnonymous); }

    Term parsePrimaryFrom(const Token& t, bool allowAnonymous) {
        switch (t.kind) {
        case Tok::Int:
            return Term::integer(t.value);
        case Tok::Minus: {
            Token n = expect(Tok::Int, "integer after unary '-'");
            return Term::integer(-n.value);
        }
        case Tok::Var:
            return Term::variable(t.text);
        case Tok::Underscore:
            if (!allowAnonymous)
                fail(t, "underscore not allowed here");
            return Term::anonymous();
        case Tok::LParen: {
            Term inner = parseTerm(allowAnonymous);
            expect(Tok::RParen, "')'");
            return inner;
        }
        case Tok::Ident:
            if (t.text == "abs") {
                expect(Tok::LParen, "'('");
                Term inner = parseTerm(allowAnonymous);
                expect(Tok::RParen, "')'");
                return Term::apply("abs", {std::move(inner)});
            }
            if (reserved_ident(t.text))
                fail(t, "'" + t.text + "' is reserved");
            if (bindings_ && bindings_->count(t.text))
                return Term::integer(bindings_->at(t.text));
            return Term::constant(t.text);
        default:
            fail(t, "expected a term");
        }
    }

    Lexer lex_;
    const Bindings* bindings_;
};

void resolve_atom_kind(Atom& a, const std::set<std::string>& dataPreds) {
    if (is_predefined_pred(a.pred))
        a.kind = PredKind::Predefined;
    else if (dataPreds.count(a.pred))
        a.kind = PredKind::Data;
    else
        a.kind = PredKind::Program;
}

void resolve_kinds(std::vector<ExtendedClause>& clauses, const std::set<std::string>& dataPreds) {
    for (ExtendedClause& cl : clauses) {
        for (auto* side : {&cl.antecedent, &cl.consequent}) {
            for (Member& m : *side) {
                if (Atom* a = std::get_if<Atom>(&m)) {
                    resolve_atom_kind(*a, dataPreds);
                } else {
                    CAtom& c = std::get<CAtom>(m);
                    resolve_atom_kind(c.inner, dataPreds);
                    if (c.inner.kind != PredKind::Program)
                        throw SemanticError("c-atom over non-program predicate '" + c.inner.pred +
                                            "'");
                }
            }
        }
    }
}

int needs_parens(const Term& parent, const Term& child, bool rightSide) {
    if (child.kind != TermKind::Apply || child.text == "abs")
        return false;
    auto prec = [](const std::string& op) { return (op == "*" || op == "mod") ? 2 : 1; };
    int pp = prec(parent.text);
    int cp = prec(child.text);
    if (cp < pp)
        return true;
    // left-associative operators: parenthesize equal precedence on the right
    return rightSide && cp == pp;
}

} // namespace

std::string to_string(const Term& t) {
    switch (t.kind) {
    case TermKind::Constant:
        return t.text;
    case TermKind::Integer:
        return std::to_string(t.value);
    case TermKind::Variable:
        return t.text;
    case TermKind::Anonymous:
        return "_";
    case TermKind::Apply: {
        if (t.text == "abs")
            return "abs(" + to_string(t.args[0]) + ")";
        std::string l = to_string(t.args[0]);
        std::string r = to_string(t.args[1]);
        if (needs_parens(t, t.args[0], false))
            l = "(" + l + ")";
        if (needs_parens(t, t.args[1], true))
            r = "(" + r + ")";
        return l + " " + t.text + " " + r;
    }
    }
    return "?";
}

std::string to_string(const Atom& a) {
    if (a.kind == PredKind::Predefined)
        return to_string(a.args[0]) + " " + a.pred + " " + to_string(a.args[1]);
    if (a.args.empty())
        return a.pred;
    std::string s = a.pred + "(";
    for (std::size_t i = 0; i < a.args.size(); ++i) {
        if (i)
            s += ",";
        s += to_string(a.args[i]);
    }
    return s + ")";
}

std::string to_string(const Member& m) {
    if (const Atom* a = std::get_if<Atom>(&m))
        return to_string(*a);
    const CAtom& c = std::get<CAtom>(m);
    std::string s;
    if (c.lower)
        s += std::to_string(*c.lower) + " ";
    s += "{ " + to_string(c.inner) + " }";
    if (c.upper)
        s += " " + std::to_string(*c.upper);
    return s;
}

std::string to_string(const ExtendedClause& c) {
    std::string s;
    for (std::size_t i = 0; i < c.antecedent.size(); ++i) {
        if (i)
            s += ", ";
        s += to_string(c.antecedent[i]);
    }
    if (!c.antecedent.empty() || c.consequent.empty())
        s += s.empty() ? "-> " : " -> ";
    if (c.consequent.empty()) {
        s += "F";
    } else {
        for (std::size_t i = 0; i < c.consequent.size(); ++i) {
            if (i)
                s += " ; ";
            s += to_string(c.consequent[i]);
        }
    }
    return s + ".";
}

std::string print_program(const std::vector<ExtendedClause>& clauses) {
    std::string s;
    for (const ExtendedClause& c : clauses)
        s += to_string(c) + "\n";
    return s;
}

std::string print_data(const std::vector<Atom>& atoms) {
    std::string s;
    for (const Atom& a : atoms)
        s += to_string(a) + ".\n";
    return s;
}

std::vector<Atom> parse_data(const std::string& text) {
    Parser p(text, nullptr);
    std::vector<Atom> atoms = p.parseDataFile();
    std::map<std::string, std::size_t> arity;
    for (const Atom& a : atoms) {
        auto [it, fresh] = arity.emplace(a.pred, a.args.size());
        if (!fresh && it->second != a.args.size())
            throw SemanticError("arity conflict for predicate '" + a.pred + "'");
    }
    return atoms;
}

ParsedProgram parse_program(const std::string& text, const Bindings& bindings,
                            const std::set<std::string>& dataPreds) {
    Parser p(text, &bindings);
    ParsedProgram out = p.parseProgramFile();
    std::set<std::string> dp = dataPreds;
    for (const DataDecl& d : out.dataDecls)
        dp.insert(d.pred);
    resolve_kinds(out.clauses, dp);
    return out;
}

namespace {

void collect_term(const Term& t, std::vector<GroundConst>& consts) {
    switch (t.kind) {
    case TermKind::Constant:
        consts.push_back(GroundConst::ofSym(t.text));
        break;
    case TermKind::Integer:
        consts.push_back(GroundConst::ofInt(t.value));
        break;
    case TermKind::Apply:
        for (const Term& a : t.args)
            collect_term(a, consts);
        break;
    default:
        break;
    }
}

void register_pred(Theory& th, const std::string& pred, int arity, PredKind kind) {
    auto it = th.preds.find(pred);
    if (it == th.preds.end()) {
        th.preds[pred] = {arity, kind};
        th.predOrder.push_back(pred);
        return;
    }
    if (it->second.arity != arity)
        throw SemanticError("arity conflict for predicate '" + pred + "': " +
                            std::to_string(it->second.arity) + " vs " + std::to_string(arity));
    if (kind == PredKind::Data && it->second.kind == PredKind::Program)
        throw SemanticError("predicate '" + pred + "' used before its data declaration");
}

} // namespace

Theory assemble_theory(const std::vector<std::string>& dataTexts,
                       const std::vector<std::string>& programTexts, const Bindings& bindings) {
    Theory th;
    std::set<std::string> dataPreds;
    for (const std::string& dt : dataTexts) {
        for (Atom& a : parse_data(dt)) {
            dataPreds.insert(a.pred);
            if (std::find(th.data.begin(), th.data.end(), a) == th.data.end())
                th.data.push_back(std::move(a));
        }
    }
    std::vector<ParsedProgram> parsed;
    for (const std::string& pt : programTexts) {
        Parser p(pt, &bindings);
        parsed.push_back(p.parseProgramFile());
        for (const DataDecl& d : parsed.back().dataDecls)
            dataPreds.insert(d.pred);
    }

    for (const Atom& a : th.data)
        register_pred(th, a.pred, static_cast<int>(a.args.size()), PredKind::Data);
    for (ParsedProgram& pp : parsed) {
        for (const DataDecl& d : pp.dataDecls)
            register_pred(th, d.pred, d.arity, PredKind::Data);
    }
    for (ParsedProgram& pp : parsed) {
        resolve_kinds(pp.clauses, dataPreds);
        for (ExtendedClause& cl : pp.clauses) {
            for (auto* side : {&cl.antecedent, &cl.consequent}) {
                for (Member& m : *side) {
                    const Atom& a =
                        std::holds_alternative<Atom>(m) ? std::get<Atom>(m) : std::get<CAtom>(m).inner;
                    if (a.kind != PredKind::Predefined)
                        register_pred(th, a.pred, static_cast<int>(a.args.size()), a.kind);
                }
            }
            th.program.push_back(std::move(cl));
        }
    }

    std::vector<GroundConst> consts;
    for (const Atom& a : th.data)
        for (const Term& t : a.args)
            collect_term(t, consts);
    for (const ExtendedClause& cl : th.program)
        for (const auto* side : {&cl.antecedent, &cl.consequent})
            for (const Member& m : *side) {
                const Atom& a =
                    std::holds_alternative<Atom>(m) ? std::get<Atom>(m) : std::get<CAtom>(m).inner;
                for (const Term& t : a.args)
                    collect_term(t, consts);
            }
    std::sort(consts.begin(), consts.end());
    consts.erase(std::unique(consts.begin(), consts.end()), consts.end());
    th.constants = std::move(consts);

    if (th.constants.empty()) {
        // Variable-free theories without constants are fine (nothing to
        // instantiate); anything quantified needs a domain.
        auto needsDomain = [](const Term& t) {
            auto rec = [](const Term& u, auto&& self) -> bool {
                if (u.kind == TermKind::Variable || u.kind == TermKind::Anonymous)
                    return true;
                for (const Term& a : u.args)
                    if (self(a, self))
                        return true;
                return false;
            };
            return rec(t, rec);
        };
        for (const ExtendedClause& cl : th.program)
            for (const auto* side : {&cl.antecedent, &cl.consequent})
                for (const Member& m : *side) {
                    const Atom& a = std::holds_alternative<Atom>(m) ? std::get<Atom>(m)
                                                                    : std::get<CAtom>(m).inner;
                    for (const Term& t : a.args)
                        if (needsDomain(t))
                            throw SemanticError(
                                "theory uses variables or underscores but has no constants");
                }
    }
    return th;
}

} // namespace pscard

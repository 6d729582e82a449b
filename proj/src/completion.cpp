#include "pscard/completion.hpp"

#include <algorithm>
#include <cassert>
#include <cctype>
#include <map>
#include <unordered_map>
#include <unordered_set>

namespace pscard {

namespace {

// Minimal tokenizer for the rule format.
struct LpToken {
    enum Kind { Ident, Var, Int, LParen, RParen, Comma, Dot, If, RelOp, End } kind = End;
    std::string text;
    std::int64_t value = 0;
    int line = 1, col = 1;
};

class LpLexer {
public:
    explicit LpLexer(const std::string& s) : src_(s) { advance(); }
    const LpToken& peek() const { return tok_; }
    LpToken next() {
        LpToken t = tok_;
        advance();
        return t;
    }

private:
    void advance() {
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
                ++pos_;
                ++col_;
            } else {
                break;
            }
        }
        tok_.line = line_;
        tok_.col = col_;
        if (pos_ >= src_.size()) {
            tok_.kind = LpToken::End;
            return;
        }
        char c = src_[pos_];
        auto get = [&] {
            ++col_;
            return src_[pos_++];
        };
        if (std::isdigit(static_cast<unsigned char>(c)) ||
            (c == '-' && pos_ + 1 < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_ + 1])))) {
            std::string d;
            if (c == '-')
                d += get();
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])))
                d += get();
            tok_.kind = LpToken::Int;
            tok_.value = std::stoll(d);
            tok_.text = d;
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::string s;
            while (pos_ < src_.size() &&
                   (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
                s += get();
            tok_.kind = std::isupper(static_cast<unsigned char>(c)) ? LpToken::Var : LpToken::Ident;
            tok_.text = std::move(s);
            return;
        }
        switch (c) {
        case '(': get(); tok_.kind = LpToken::LParen; return;
        case ')': get(); tok_.kind = LpToken::RParen; return;
        case ',': get(); tok_.kind = LpToken::Comma; return;
        case '.': get(); tok_.kind = LpToken::Dot; return;
        case ':':
            get();
            if (pos_ < src_.size() && src_[pos_] == '-') {
                get();
                tok_.kind = LpToken::If;
                return;
            }
            throw ParseError("expected ':-'", line_, col_);
        case '=': get(); tok_.kind = LpToken::RelOp; tok_.text = "="; return;
        case '!':
            get();
            if (pos_ < src_.size() && src_[pos_] == '=') {
                get();
                tok_.kind = LpToken::RelOp;
                tok_.text = "!=";
                return;
            }
            throw ParseError("expected '=' after '!'", line_, col_);
        case '<':
            get();
            tok_.kind = LpToken::RelOp;
            tok_.text = "<";
            if (pos_ < src_.size() && src_[pos_] == '=') {
                get();
                tok_.text = "<=";
            }
            return;
        case '>':
            get();
            tok_.kind = LpToken::RelOp;
            tok_.text = ">";
            if (pos_ < src_.size() && src_[pos_] == '=') {
                get();
                tok_.text = ">=";
            }
            return;
        default:
            throw ParseError(std::string("unexpected character '") + c + "'", line_, col_);
        }
    }

    const std::string& src_;
    std::size_t pos_ = 0;
    int line_ = 1, col_ = 1;
    LpToken tok_;
};

Term lp_term(const LpToken& t) {
    switch (t.kind) {
    case LpToken::Int:
        return Term::integer(t.value);
    case LpToken::Var:
        return Term::variable(t.text);
    case LpToken::Ident:
        return Term::constant(t.text);
    default:
        throw ParseError("expected a term", t.line, t.col);
    }
}

} // namespace

NormalProgram parse_lp(const std::string& text) {
    NormalProgram p;
    LpLexer lex(text);
    auto expect = [&](LpToken::Kind k, const char* what) {
        LpToken t = lex.next();
        if (t.kind != k)
            throw ParseError(std::string("expected ") + what, t.line, t.col);
        return t;
    };
    auto parseAtom = [&](const LpToken& first) -> Atom {
        if (first.kind == LpToken::Ident && lex.peek().kind != LpToken::RelOp &&
            first.text != "not") {
            Atom a;
            a.pred = first.text;
            if (lex.peek().kind == LpToken::LParen) {
                lex.next();
                for (;;) {
                    a.args.push_back(lp_term(lex.next()));
                    if (lex.peek().kind == LpToken::Comma) {
                        lex.next();
                        continue;
                    }
                    break;
                }
                expect(LpToken::RParen, "')'");
            }
            return a;
        }
        // comparison: term RELOP term
        Term lhs = lp_term(first);
        LpToken op = lex.next();
        if (op.kind != LpToken::RelOp)
            throw ParseError("expected a comparison operator", op.line, op.col);
        Term rhs = lp_term(lex.next());
        Atom a;
        a.pred = op.text;
        a.kind = PredKind::Predefined;
        a.args = {std::move(lhs), std::move(rhs)};
        return a;
    };

    while (lex.peek().kind != LpToken::End) {
        LpToken head = expect(LpToken::Ident, "rule head");
        NormalRule r;
        r.headPred = head.text;
        if (lex.peek().kind == LpToken::LParen) {
            lex.next();
            for (;;) {
                LpToken v = lex.next();
                if (v.kind != LpToken::Var)
                    throw ParseError("rule heads use variable tuples", v.line, v.col);
                r.headVars.push_back(v.text);
                if (lex.peek().kind == LpToken::Comma) {
                    lex.next();
                    continue;
                }
                break;
            }
            expect(LpToken::RParen, "')'");
        }
        if (lex.peek().kind == LpToken::If) {
            lex.next();
            for (;;) {
                BodyLiteral lit;
                LpToken first = lex.next();
                if (first.kind == LpToken::Ident && first.text == "not") {
                    lit.positive = false;
                    first = lex.next();
                }
                lit.atom = parseAtom(first);
                r.body.push_back(std::move(lit));
                if (lex.peek().kind == LpToken::Comma) {
                    lex.next();
                    continue;
                }
                break;
            }
        }
        expect(LpToken::Dot, "'.'");
        p.rules.push_back(std::move(r));
    }
    p.validate();
    return p;
}

std::vector<std::pair<std::string, int>> NormalProgram::predicates() const {
    std::vector<std::pair<std::string, int>> out;
    auto add = [&](const std::string& name, int arity) {
        for (auto& [n, a] : out) {
            if (n == name) {
                if (a != arity)
                    throw SemanticError("arity conflict for predicate '" + name + "'");
                return;
            }
        }
        out.emplace_back(name, arity);
    };
    for (const NormalRule& r : rules) {
        add(r.headPred, static_cast<int>(r.headVars.size()));
        for (const BodyLiteral& l : r.body)
            if (l.atom.kind != PredKind::Predefined)
                add(l.atom.pred, static_cast<int>(l.atom.args.size()));
    }
    for (const auto& [n, a] : declaredPreds)
        add(n, a);
    return out;
}

std::vector<std::string> NormalProgram::inputPredicates() const {
    // Declared predicates count as defined (by zero rules); only predicates
    // occurring solely in bodies are input.
    std::set<std::string> defined;
    for (const NormalRule& r : rules)
        defined.insert(r.headPred);
    for (const auto& [n, a] : declaredPreds)
        defined.insert(n);
    std::vector<std::string> out;
    for (const auto& [n, a] : predicates())
        if (!defined.count(n))
            out.push_back(n);
    return out;
}

void NormalProgram::validate() const {
    std::map<std::string, std::vector<std::string>> headTuples;
    for (const NormalRule& r : rules) {
        if (is_predefined_pred(r.headPred))
            throw SemanticError("predefined predicate in a rule head");
        std::set<std::string> seen;
        for (const std::string& v : r.headVars)
            if (!seen.insert(v).second)
                throw SemanticError("rule head repeats variable '" + v + "'");
        auto it = headTuples.find(r.headPred);
        if (it == headTuples.end())
            headTuples.emplace(r.headPred, r.headVars);
        else if (it->second != r.headVars)
            throw SemanticError("rules for '" + r.headPred +
                                "' do not share one head variable tuple");
        for (const BodyLiteral& l : r.body)
            if (l.atom.kind == PredKind::Predefined && l.atom.args.size() != 2)
                throw SemanticError("comparison atoms are binary");
    }
    predicates(); // arity consistency
}

namespace {

std::vector<std::string> rule_exist_vars(const NormalRule& r) {
    std::set<std::string> headSet(r.headVars.begin(), r.headVars.end());
    std::vector<std::string> out;
    auto addTerm = [&](const Term& t) {
        if (t.kind == TermKind::Variable && !headSet.count(t.text) &&
            std::find(out.begin(), out.end(), t.text) == out.end())
            out.push_back(t.text);
    };
    for (const BodyLiteral& l : r.body)
        for (const Term& t : l.atom.args)
            addTerm(t);
    return out;
}

std::string literal_str(const BodyLiteral& l) {
    std::string s = l.positive ? "" : "not ";
    if (l.atom.kind == PredKind::Predefined)
        return s + to_string(l.atom.args[0]) + " " + l.atom.pred + " " + to_string(l.atom.args[1]);
    return s + to_string(l.atom);
}

} // namespace

std::vector<CompletionFormula> clark_completion(const NormalProgram& p) {
    p.validate();
    std::vector<CompletionFormula> out;
    for (const auto& [pred, arity] : p.predicates()) {
        CompletionFormula f;
        f.pred = pred;
        bool haveHead = false;
        for (const NormalRule& r : p.rules) {
            if (r.headPred != pred)
                continue;
            if (!haveHead) {
                f.headVars = r.headVars;
                haveHead = true;
            }
            CompletionDisjunct d;
            d.existVars = rule_exist_vars(r);
            d.body = r.body;
            f.disjuncts.push_back(std::move(d));
        }
        if (!haveHead)
            for (int i = 0; i < arity; ++i)
                f.headVars.push_back("X" + std::to_string(i + 1));
        out.push_back(std::move(f));
    }
    return out;
}

std::string to_string(const CompletionFormula& f) {
    std::string s = f.pred;
    if (!f.headVars.empty()) {
        s += '(';
        for (std::size_t i = 0; i < f.headVars.size(); ++i) {
            if (i)
                s += ',';
            s += f.headVars[i];
        }
        s += ')';
    }
    s += " <-> ";
    if (f.disjuncts.empty())
        return s + "F";
    for (std::size_t i = 0; i < f.disjuncts.size(); ++i) {
        if (i)
            s += " | ";
        const CompletionDisjunct& d = f.disjuncts[i];
        std::string body;
        if (d.body.empty()) {
            body = "T";
        } else {
            for (std::size_t j = 0; j < d.body.size(); ++j) {
                if (j)
                    body += " & ";
                body += literal_str(d.body[j]);
            }
        }
        if (!d.existVars.empty()) {
            std::string ev;
            for (std::size_t j = 0; j < d.existVars.size(); ++j) {
                if (j)
                    ev += ',';
                ev += d.existVars[j];
            }
            s += "exists(" + ev + ") (" + body + ")";
        } else {
            s += f.disjuncts.size() > 1 ? "(" + body + ")" : body;
        }
    }
    return s;
}

Translation translate(const NormalProgram& p) {
    p.validate();
    Translation out;
    std::set<std::string> taken;
    for (const auto& [n, a] : p.predicates())
        taken.insert(n);

    // defined predicates in first-head-occurrence order; declared predicates
    // without rules count as defined by zero rules and complete to F
    std::vector<std::string> defined;
    for (const NormalRule& r : p.rules)
        if (std::find(defined.begin(), defined.end(), r.headPred) == defined.end())
            defined.push_back(r.headPred);
    for (const auto& [n, a] : p.declaredPreds)
        if (std::find(defined.begin(), defined.end(), n) == defined.end())
            defined.push_back(n);

    for (const std::string& pred : defined) {
        std::vector<const NormalRule*> rules;
        for (const NormalRule& r : p.rules)
            if (r.headPred == pred)
                rules.push_back(&r);
        if (rules.empty()) {
            // cc'(p) with an empty disjunction: p(X) => F
            int arity = 0;
            for (const auto& [n, a] : p.predicates())
                if (n == pred)
                    arity = a;
            ExtendedClause cl;
            Atom head;
            head.pred = pred;
            for (int i = 0; i < arity; ++i)
                head.args.push_back(Term::variable("X" + std::to_string(i + 1)));
            cl.antecedent.push_back(Member(std::move(head)));
            out.clauses.push_back(std::move(cl));
            continue;
        }
        const std::vector<std::string>& headVars = rules.front()->headVars;

        std::vector<std::string> auxNames;
        std::vector<std::vector<std::string>> auxVars;
        for (std::size_t i = 0; i < rules.size(); ++i) {
            std::string name = "d_" + pred + "_" + std::to_string(i + 1);
            while (taken.count(name))
                name += "_";
            taken.insert(name);
            auxNames.push_back(name);
            out.auxPreds.push_back(name);
            std::vector<std::string> vars = headVars;
            for (const std::string& v : rule_exist_vars(*rules[i]))
                vars.push_back(v);
            auxVars.push_back(std::move(vars));
        }

        auto auxAtom = [&](std::size_t i) {
            Atom a;
            a.pred = auxNames[i];
            for (const std::string& v : auxVars[i])
                a.args.push_back(Term::variable(v));
            return a;
        };
        Atom headAtom;
        headAtom.pred = pred;
        for (const std::string& v : headVars)
            headAtom.args.push_back(Term::variable(v));

        // psi(r): d_r(X,Y_r) <-> B(r), split into clauses with negative
        // literals shuttled across the implication.
        for (std::size_t i = 0; i < rules.size(); ++i) {
            const NormalRule& r = *rules[i];
            for (const BodyLiteral& l : r.body) {
                ExtendedClause cl;
                cl.antecedent.push_back(Member(auxAtom(i)));
                if (l.positive)
                    cl.consequent.push_back(Member(l.atom));
                else
                    cl.antecedent.push_back(Member(l.atom));
                out.clauses.push_back(std::move(cl));
            }
            ExtendedClause back;
            for (const BodyLiteral& l : r.body)
                if (l.positive)
                    back.antecedent.push_back(Member(l.atom));
            back.consequent.push_back(Member(auxAtom(i)));
            for (const BodyLiteral& l : r.body)
                if (!l.positive)
                    back.consequent.push_back(Member(l.atom));
            out.clauses.push_back(std::move(back));
        }

        // cc'(p): d_r(X,Y_r) => p(X), and p(X) => disjunction of d_r(X,_).
        for (std::size_t i = 0; i < rules.size(); ++i) {
            ExtendedClause cl;
            cl.antecedent.push_back(Member(auxAtom(i)));
            cl.consequent.push_back(Member(headAtom));
            out.clauses.push_back(std::move(cl));
        }
        ExtendedClause choice;
        choice.antecedent.push_back(Member(headAtom));
        for (std::size_t i = 0; i < rules.size(); ++i) {
            Atom a;
            a.pred = auxNames[i];
            for (const std::string& v : headVars)
                a.args.push_back(Term::variable(v));
            for (std::size_t j = headVars.size(); j < auxVars[i].size(); ++j)
                a.args.push_back(Term::anonymous());
            choice.consequent.push_back(Member(std::move(a)));
        }
        out.clauses.push_back(std::move(choice));
    }

    for (const auto& [n, a] : p.predicates()) {
        bool isDefined = std::find(defined.begin(), defined.end(), n) != defined.end();
        if (!isDefined)
            out.dataDecls.push_back({n, a});
    }
    return out;
}

std::string print_translation(const Translation& t) {
    std::string s;
    for (const DataDecl& d : t.dataDecls)
        s += "data " + d.pred + "/" + std::to_string(d.arity) + ".\n";
    s += print_program(t.clauses);
    return s;
}

namespace {

// Independent predefined evaluation for the supported-model oracle (kept
// separate from the grounder's evaluator on purpose).
bool oracle_cmp(const std::string& op, const Term& l, const Term& r,
                const std::map<std::string, Term>& sub) {
    auto val = [&](const Term& t) -> Term {
        if (t.kind == TermKind::Variable)
            return sub.at(t.text);
        return t;
    };
    Term a = val(l), b = val(r);
    bool bothInt = a.kind == TermKind::Integer && b.kind == TermKind::Integer;
    if (op == "=")
        return a.kind == b.kind && (bothInt ? a.value == b.value : a.text == b.text);
    if (op == "!=")
        return !(a.kind == b.kind && (bothInt ? a.value == b.value : a.text == b.text));
    if (!bothInt)
        return false;
    if (op == "<")
        return a.value < b.value;
    if (op == "<=")
        return a.value <= b.value;
    if (op == ">")
        return a.value > b.value;
    return op == ">=" ? a.value >= b.value : false;
}

std::string oracle_name(const std::string& pred, const std::vector<Term>& args,
                        const std::map<std::string, Term>& sub) {
    std::string s = pred;
    if (args.empty())
        return s;
    s += '(';
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (i)
            s += ',';
        const Term& t = args[i].kind == TermKind::Variable ? sub.at(args[i].text) : args[i];
        s += t.kind == TermKind::Integer ? std::to_string(t.value) : t.text;
    }
    return s + ')';
}

} // namespace

std::set<std::set<std::string>> supported_models(const NormalProgram& p,
                                                 const std::vector<Atom>& data) {
    p.validate();
    auto preds = p.predicates();
    std::set<std::string> inputSet;
    for (const std::string& n : p.inputPredicates())
        inputSet.insert(n);
    for (const Atom& a : data) {
        bool known = false;
        for (auto& [n, ar] : preds)
            known = known || (n == a.pred && ar == static_cast<int>(a.args.size()));
        if (!known)
            preds.emplace_back(a.pred, static_cast<int>(a.args.size()));
        if (!inputSet.count(a.pred)) {
            bool occurs = false;
            for (const NormalRule& r : p.rules) {
                if (r.headPred == a.pred)
                    occurs = true;
            }
            if (occurs)
                throw SemanticError("data atom over a defined predicate '" + a.pred + "'");
            inputSet.insert(a.pred);
        }
    }

    // constants of P and D
    std::vector<Term> consts;
    auto addConst = [&](const Term& t) {
        if (t.kind == TermKind::Variable)
            return;
        if (std::find(consts.begin(), consts.end(), t) == consts.end())
            consts.push_back(t);
    };
    for (const NormalRule& r : p.rules)
        for (const BodyLiteral& l : r.body)
            for (const Term& t : l.atom.args)
                addConst(t);
    for (const Atom& a : data)
        for (const Term& t : a.args)
            addConst(t);

    // Herbrand base
    std::vector<std::string> hb;
    std::map<std::string, std::size_t> hbIndex;
    std::uint32_t inputMask = 0, programMask = 0;
    for (const auto& [pred, arity] : preds) {
        std::vector<std::size_t> odo(static_cast<std::size_t>(arity), 0);
        const bool isInput = inputSet.count(pred) != 0;
        if (arity > 0 && consts.empty())
            continue;
        for (;;) {
            std::string name = pred;
            if (arity > 0) {
                name += '(';
                for (std::size_t i = 0; i < odo.size(); ++i) {
                    if (i)
                        name += ',';
                    const Term& c = consts[odo[i]];
                    name += c.kind == TermKind::Integer ? std::to_string(c.value) : c.text;
                }
                name += ')';
            }
            if (hb.size() >= 20)
                throw Error("Herbrand base exceeds the 20-atom oracle guard");
            hbIndex[name] = hb.size();
            (isInput ? inputMask : programMask) |= std::uint32_t(1) << hb.size();
            hb.push_back(name);
            if (arity == 0)
                break;
            std::size_t i = odo.size();
            bool done = true;
            while (i > 0) {
                --i;
                if (++odo[i] < consts.size()) {
                    done = false;
                    break;
                }
                odo[i] = 0;
            }
            if (done)
                break;
        }
    }

    std::uint32_t dataMask = 0;
    for (const Atom& a : data) {
        std::map<std::string, Term> empty;
        dataMask |= std::uint32_t(1) << hbIndex.at(oracle_name(a.pred, a.args, empty));
    }

    // ground rule instances with true predefined parts
    struct Instance {
        std::uint32_t head = 0, pos = 0, neg = 0;
    };
    std::vector<Instance> instances;
    for (const NormalRule& r : p.rules) {
        std::vector<std::string> vars = r.headVars;
        for (const std::string& v : rule_exist_vars(r))
            vars.push_back(v);
        if (!vars.empty() && consts.empty())
            continue;
        std::vector<std::size_t> odo(vars.size(), 0);
        for (;;) {
            std::map<std::string, Term> sub;
            for (std::size_t i = 0; i < vars.size(); ++i)
                sub[vars[i]] = consts[odo[i]];
            bool ok = true;
            Instance inst;
            for (const BodyLiteral& l : r.body) {
                if (l.atom.kind == PredKind::Predefined) {
                    bool t = oracle_cmp(l.atom.pred, l.atom.args[0], l.atom.args[1], sub);
                    if (l.positive ? !t : t) {
                        ok = false;
                        break;
                    }
                    continue;
                }
                std::uint32_t bit =
                    std::uint32_t(1) << hbIndex.at(oracle_name(l.atom.pred, l.atom.args, sub));
                (l.positive ? inst.pos : inst.neg) |= bit;
            }
            if (ok) {
                std::vector<Term> headArgs;
                for (const std::string& v : r.headVars)
                    headArgs.push_back(sub.at(v));
                std::map<std::string, Term> empty;
                inst.head = std::uint32_t(1)
                            << hbIndex.at(oracle_name(r.headPred, headArgs, empty));
                instances.push_back(inst);
            }
            if (vars.empty())
                break;
            std::size_t i = odo.size();
            bool done = true;
            while (i > 0) {
                --i;
                if (++odo[i] < consts.size()) {
                    done = false;
                    break;
                }
                odo[i] = 0;
            }
            if (done)
                break;
        }
    }

    // enumerate program-atom subsets; the input part is pinned to D
    std::vector<std::size_t> programBits;
    for (std::size_t i = 0; i < hb.size(); ++i)
        if (programMask & (std::uint32_t(1) << i))
            programBits.push_back(i);

    std::set<std::set<std::string>> out;
    const std::uint64_t end = std::uint64_t(1) << programBits.size();
    for (std::uint64_t sel = 0; sel < end; ++sel) {
        std::uint32_t m = dataMask;
        for (std::size_t i = 0; i < programBits.size(); ++i)
            if (sel & (std::uint64_t(1) << i))
                m |= std::uint32_t(1) << programBits[i];
        std::uint32_t supported = 0;
        bool model = true;
        for (const Instance& inst : instances) {
            const bool bodyTrue = (inst.pos & ~m) == 0 && (inst.neg & m) == 0;
            if (bodyTrue) {
                supported |= inst.head;
                if (!(inst.head & m)) {
                    model = false;
                    break;
                }
            }
        }
        if (!model)
            continue;
        if ((m & programMask & ~supported) != 0)
            continue; // an unsupported program atom is true
        std::set<std::string> names;
        for (std::size_t i = 0; i < hb.size(); ++i)
            if (m & (std::uint32_t(1) << i))
                names.insert(hb[i]);
        out.insert(std::move(names));
    }
    return out;
}

} // namespace pscard

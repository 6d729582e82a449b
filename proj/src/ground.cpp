#include "pscard/ground.hpp"

#include <algorithm>
#include <cassert>
#include <charconv>
#include <sstream>

namespace pscard {

AtomId GroundTheory::idOf(const std::string& name) const {
    auto it = atomIds.find(name);
    if (it == atomIds.end())
        throw Error("unknown atom '" + name + "'");
    return it->second;
}

ConstantTable::ConstantTable(std::vector<GroundConst> ordered) : order_(std::move(ordered)) {
    for (const GroundConst& g : order_) {
        if (g.isInt)
            ints_.insert(g.num);
        else
            syms_.insert(g.sym);
    }
}

namespace {

std::optional<std::int64_t> arith(const std::string& op, std::int64_t a, std::int64_t b) {
    std::int64_t r = 0;
    if (op == "+") {
        if (__builtin_add_overflow(a, b, &r))
            throw EvalError("integer overflow in '+'");
        return r;
    }
    if (op == "-") {
        if (__builtin_sub_overflow(a, b, &r))
            throw EvalError("integer overflow in '-'");
        return r;
    }
    if (op == "*") {
        if (__builtin_mul_overflow(a, b, &r))
            throw EvalError("integer overflow in '*'");
        return r;
    }
    if (op == "mod") {
        if (b == 0)
            return std::nullopt; // undefined, folds to falsity
        if (b == -1)
            return 0;
        return a % b;
    }
    throw Error("unknown operator '" + op + "'");
}

bool predef_truth(const std::string& op, const std::optional<GroundConst>& l,
                  const std::optional<GroundConst>& r) {
    if (!l || !r)
        return false; // type failure in an argument
    if (op == "=")
        return *l == *r;
    if (op == "!=")
        return !(*l == *r);
    if (!l->isInt || !r->isInt)
        return false; // order comparisons require integers
    if (op == "<")
        return l->num < r->num;
    if (op == "<=")
        return l->num <= r->num;
    if (op == ">")
        return l->num > r->num;
    if (op == ">=")
        return l->num >= r->num;
    throw Error("unknown comparison '" + op + "'");
}

// Compiled term: variables resolved to slot indices for fast instantiation.
struct CTerm {
    enum Kind { Const, Slot, Op } kind = Const;
    GroundConst value;
    int slot = -1;
    std::string op;
    std::vector<CTerm> args;
};

std::optional<GroundConst> eval_cterm(const CTerm& t, const std::vector<GroundConst>& slots) {
    switch (t.kind) {
    case CTerm::Const:
        return t.value;
    case CTerm::Slot:
        return slots[static_cast<std::size_t>(t.slot)];
    case CTerm::Op: {
        if (t.op == "abs") {
            auto v = eval_cterm(t.args[0], slots);
            if (!v || !v->isInt)
                return std::nullopt;
            if (v->num == INT64_MIN)
                throw EvalError("integer overflow in 'abs'");
            return GroundConst::ofInt(v->num < 0 ? -v->num : v->num);
        }
        auto a = eval_cterm(t.args[0], slots);
        auto b = eval_cterm(t.args[1], slots);
        if (!a || !b || !a->isInt || !b->isInt)
            return std::nullopt;
        auto r = arith(t.op, a->num, b->num);
        if (!r)
            return std::nullopt;
        return GroundConst::ofInt(*r);
    }
    }
    return std::nullopt;
}

struct CArg {
    bool anon = false;
    bool isApply = false; // in-theory rule applies to function results
    CTerm term;
};

struct CompiledAtom {
    PredKind kind = PredKind::Program;
    std::string pred;
    std::vector<CArg> args;
    bool hasAnon = false;
    bool hasApply = false;
    int maxSlot = -1; // highest slot used by non-anon args
};

struct CompiledMember {
    bool isCAtom = false;
    std::optional<std::int64_t> lower, upper;
    CompiledAtom atom;
};

class SlotMap {
public:
    int slotOf(const std::string& var) {
        auto it = map_.find(var);
        if (it != map_.end())
            return it->second;
        int s = static_cast<int>(map_.size());
        map_.emplace(var, s);
        return s;
    }
    std::optional<int> find(const std::string& var) const {
        auto it = map_.find(var);
        return it == map_.end() ? std::nullopt : std::optional<int>(it->second);
    }
    std::size_t size() const { return map_.size(); }

private:
    std::map<std::string, int> map_;
};

CTerm compile_term(const Term& t, SlotMap& slots) {
    CTerm c;
    switch (t.kind) {
    case TermKind::Constant:
        c.kind = CTerm::Const;
        c.value = GroundConst::ofSym(t.text);
        break;
    case TermKind::Integer:
        c.kind = CTerm::Const;
        c.value = GroundConst::ofInt(t.value);
        break;
    case TermKind::Variable:
        c.kind = CTerm::Slot;
        c.slot = slots.slotOf(t.text);
        break;
    case TermKind::Apply:
        c.kind = CTerm::Op;
        c.op = t.text;
        for (const Term& a : t.args)
            c.args.push_back(compile_term(a, slots));
        break;
    case TermKind::Anonymous:
        throw SemanticError("underscore inside an arithmetic term");
    }
    return c;
}

int cterm_max_slot(const CTerm& t) {
    int m = t.kind == CTerm::Slot ? t.slot : -1;
    for (const CTerm& a : t.args)
        m = std::max(m, cterm_max_slot(a));
    return m;
}

CompiledAtom compile_atom(const Atom& a, SlotMap& slots) {
    CompiledAtom out;
    out.kind = a.kind;
    out.pred = a.pred;
    for (const Term& arg : a.args) {
        CArg ca;
        if (arg.kind == TermKind::Anonymous) {
            ca.anon = true;
            out.hasAnon = true;
        } else {
            ca.isApply = arg.kind == TermKind::Apply;
            out.hasApply = out.hasApply || ca.isApply;
            ca.term = compile_term(arg, slots);
            out.maxSlot = std::max(out.maxSlot, cterm_max_slot(ca.term));
        }
        out.args.push_back(std::move(ca));
    }
    return out;
}

std::string compose_name(const std::string& pred, const std::vector<GroundConst>& args) {
    if (args.empty())
        return pred;
    std::string s = pred;
    s += '(';
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (i)
            s += ',';
        s += args[i].str();
    }
    s += ')';
    return s;
}

} // namespace

std::optional<GroundConst> eval_term(const Term& t, const Substitution& sub) {
    switch (t.kind) {
    case TermKind::Constant:
        return GroundConst::ofSym(t.text);
    case TermKind::Integer:
        return GroundConst::ofInt(t.value);
    case TermKind::Variable: {
        auto it = sub.find(t.text);
        if (it == sub.end())
            throw SemanticError("unbound variable '" + t.text + "'");
        return it->second;
    }
    case TermKind::Anonymous:
        throw SemanticError("cannot evaluate an underscore");
    case TermKind::Apply: {
        if (t.text == "abs") {
            auto v = eval_term(t.args[0], sub);
            if (!v || !v->isInt)
                return std::nullopt;
            if (v->num == INT64_MIN)
                throw EvalError("integer overflow in 'abs'");
            return GroundConst::ofInt(v->num < 0 ? -v->num : v->num);
        }
        auto a = eval_term(t.args[0], sub);
        auto b = eval_term(t.args[1], sub);
        if (!a || !b || !a->isInt || !b->isInt)
            return std::nullopt;
        auto r = arith(t.text, a->num, b->num);
        if (!r)
            return std::nullopt;
        return GroundConst::ofInt(*r);
    }
    }
    return std::nullopt;
}

bool eval_predefined(const Atom& a, const Substitution& sub) {
    if (!is_predefined_pred(a.pred))
        throw SemanticError("'" + a.pred + "' is not a predefined predicate");
    std::optional<GroundConst> l, r;
    try {
        l = eval_term(a.args[0], sub);
        r = eval_term(a.args[1], sub);
    } catch (const EvalError&) {
        throw; // overflow is always reported
    }
    return predef_truth(a.pred, l, r);
}

Grounder::Grounder(const Theory& t) : theory_(t), table_(t.constants) {
    for (const Atom& a : t.data) {
        std::vector<GroundConst> args;
        for (const Term& arg : a.args) {
            if (arg.kind == TermKind::Integer)
                args.push_back(GroundConst::ofInt(arg.value));
            else
                args.push_back(GroundConst::ofSym(arg.text));
        }
        dataSet_.insert(compose_name(a.pred, args));
    }
}

AtomId Grounder::intern(const std::string& name) {
    auto it = out_.atomIds.find(name);
    if (it != out_.atomIds.end())
        return it->second;
    AtomId id = static_cast<AtomId>(out_.atomNames.size());
    out_.atomNames.push_back(name);
    out_.atomIds.emplace(name, id);
    return id;
}

std::uint32_t Grounder::internCAtom(GroundCAtom c) {
    std::string key;
    key += c.lower ? std::to_string(*c.lower) : "*";
    key += '|';
    key += c.upper ? std::to_string(*c.upper) : "*";
    for (AtomId a : c.atoms) {
        key += ',';
        key += std::to_string(a);
    }
    auto it = catomIndex_.find(key);
    if (it != catomIndex_.end())
        return it->second;
    std::uint32_t idx = static_cast<std::uint32_t>(out_.catoms.size());
    out_.catoms.push_back(std::move(c));
    catomIndex_.emplace(std::move(key), idx);
    return idx;
}

// Implementation state for one run(); holds compiled clauses and the
// per-instance scratch.
struct GrounderImpl {
    Grounder& g;
    std::vector<GroundConst> slots;

    explicit GrounderImpl(Grounder& gr) : g(gr) {}

    // Evaluates the non-anonymous args of an atom. Returns false on a type
    // failure or (for program/data atoms) a function result outside the
    // theory's constants; `out` then has no meaning.
    bool groundArgs(const CompiledAtom& a, std::vector<std::optional<GroundConst>>& out) {
        out.clear();
        bool checkTable = a.kind != PredKind::Predefined;
        for (const CArg& arg : a.args) {
            if (arg.anon) {
                out.push_back(std::nullopt);
                continue;
            }
            auto v = eval_cterm(arg.term, slots);
            if (!v)
                return false;
            if (checkTable && arg.isApply && !g.table_.contains(*v))
                return false;
            out.push_back(std::move(v));
        }
        return true;
    }

    // Expands anonymous positions over the constant table; returns the
    // distinct ground names in enumeration order. Pre: groundArgs succeeded.
    std::vector<std::string> expandNames(const CompiledAtom& a,
                                         const std::vector<std::optional<GroundConst>>& fixed) {
        std::vector<std::size_t> anonPos;
        for (std::size_t i = 0; i < a.args.size(); ++i)
            if (a.args[i].anon)
                anonPos.push_back(i);
        std::vector<GroundConst> argv(a.args.size());
        for (std::size_t i = 0; i < a.args.size(); ++i)
            if (fixed[i])
                argv[i] = *fixed[i];
        std::vector<std::string> names;
        const auto& consts = g.table_.all();
        if (anonPos.empty()) {
            names.push_back(compose_name(a.pred, argv));
            return names;
        }
        if (consts.empty())
            throw SemanticError("existential expansion over an empty constant table");
        std::vector<std::size_t> odo(anonPos.size(), 0);
        for (;;) {
            for (std::size_t i = 0; i < anonPos.size(); ++i)
                argv[anonPos[i]] = consts[odo[i]];
            names.push_back(compose_name(a.pred, argv));
            std::size_t i = anonPos.size();
            while (i > 0) {
                --i;
                if (++odo[i] < consts.size())
                    break;
                odo[i] = 0;
                if (i == 0)
                    goto done;
            }
        }
    done:
        std::vector<std::string> uniq;
        for (std::string& n : names)
            if (std::find(uniq.begin(), uniq.end(), n) == uniq.end())
                uniq.push_back(std::move(n));
        return uniq;
    }
};

GroundCAtom Grounder::expandExistential(const Atom& b, const Substitution& sub) {
    if (table_.size() == 0)
        throw SemanticError("existential expansion over an empty constant table");
    SlotMap sm;
    CompiledAtom ca = compile_atom(b, sm);
    GrounderImpl impl(*this);
    impl.slots.resize(sm.size());
    for (const auto& [var, val] : sub) {
        if (auto s = sm.find(var))
            impl.slots[static_cast<std::size_t>(*s)] = val;
    }
    std::vector<std::optional<GroundConst>> fixed;
    if (!impl.groundArgs(ca, fixed))
        throw SemanticError("existential atom arguments do not evaluate");
    GroundCAtom out;
    out.lower = 1;
    for (const std::string& n : impl.expandNames(ca, fixed))
        out.atoms.push_back(intern(n));
    return out;
}

GroundCAtom Grounder::instantiateCAtom(const CAtom& c, const Substitution& sub) {
    if ((c.lower && *c.lower < 0) || (c.upper && *c.upper < 0))
        throw SemanticError("c-atom bound is negative");
    SlotMap sm;
    CompiledAtom ca = compile_atom(c.inner, sm);
    GrounderImpl impl(*this);
    impl.slots.resize(sm.size());
    for (const auto& [var, val] : sub) {
        if (auto s = sm.find(var))
            impl.slots[static_cast<std::size_t>(*s)] = val;
    }
    std::vector<std::optional<GroundConst>> fixed;
    if (!impl.groundArgs(ca, fixed))
        throw SemanticError("c-atom arguments do not evaluate");
    GroundCAtom out;
    out.lower = c.lower;
    out.upper = c.upper;
    for (const std::string& n : impl.expandNames(ca, fixed))
        out.atoms.push_back(intern(n));
    return out;
}

GroundTheory Grounder::run() {
    out_ = GroundTheory{};
    catomIndex_.clear();
    out_.data = theory_.data;

    GrounderImpl impl(*this);

    for (const ExtendedClause& clause : theory_.program) {
        SlotMap sm;
        std::vector<CompiledMember> members;
        std::vector<bool> inAnte;
        auto compileSide = [&](const std::vector<Member>& side, bool ante) {
            for (const Member& m : side) {
                CompiledMember cm;
                if (const Atom* a = std::get_if<Atom>(&m)) {
                    cm.atom = compile_atom(*a, sm);
                } else {
                    const CAtom& c = std::get<CAtom>(m);
                    if ((c.lower && *c.lower < 0) || (c.upper && *c.upper < 0))
                        throw SemanticError("c-atom bound is negative");
                    cm.isCAtom = true;
                    cm.lower = c.lower;
                    cm.upper = c.upper;
                    cm.atom = compile_atom(c.inner, sm);
                }
                members.push_back(std::move(cm));
                inAnte.push_back(ante);
            }
        };
        compileSide(clause.antecedent, true);
        compileSide(clause.consequent, false);

        const int nSlots = static_cast<int>(sm.size());
        impl.slots.assign(static_cast<std::size_t>(nSlots), GroundConst{});

        // Members whose truth can prune the substitution subtree as soon as
        // their variables are bound: false antecedent or true consequent
        // drops the instance.
        std::vector<std::vector<std::size_t>> checkAt(static_cast<std::size_t>(nSlots) + 1);
        for (std::size_t i = 0; i < members.size(); ++i) {
            const CompiledMember& cm = members[i];
            if (cm.isCAtom || cm.atom.hasAnon)
                continue;
            bool evaluable = cm.atom.kind != PredKind::Program || cm.atom.hasApply;
            if (!evaluable)
                continue;
            checkAt[static_cast<std::size_t>(cm.atom.maxSlot + 1)].push_back(i);
        }

        std::vector<std::optional<GroundConst>> scratch;
        // Truth of a fully bound, evaluable atom member.
        auto memberTruth = [&](const CompiledMember& cm) -> std::optional<bool> {
            if (!impl.groundArgs(cm.atom, scratch))
                return false;
            switch (cm.atom.kind) {
            case PredKind::Predefined: {
                std::optional<GroundConst> l = scratch[0], r = scratch[1];
                return predef_truth(cm.atom.pred, l, r);
            }
            case PredKind::Data: {
                std::vector<GroundConst> argv;
                for (auto& v : scratch)
                    argv.push_back(*v);
                return dataSet_.count(compose_name(cm.atom.pred, argv)) != 0;
            }
            case PredKind::Program:
                return std::nullopt; // arguments valid; truth open
            }
            return std::nullopt;
        };

        auto emitInstance = [&]() {
            std::vector<std::uint32_t> ante, cons;
            for (std::size_t i = 0; i < members.size(); ++i) {
                const CompiledMember& cm = members[i];
                auto side = [&](GroundCAtom ca) {
                    std::uint32_t idx = internCAtom(std::move(ca));
                    (inAnte[i] ? ante : cons).push_back(idx);
                };
                if (cm.isCAtom) {
                    if (!impl.groundArgs(cm.atom, scratch)) {
                        // empty atom set: count 0, truth decided statically
                        bool truth = cm.lower.value_or(0) <= 0;
                        if (inAnte[i] ? !truth : truth)
                            return; // drop instance
                        continue;   // member vanishes
                    }
                    GroundCAtom ca;
                    ca.lower = cm.lower;
                    ca.upper = cm.upper;
                    for (const std::string& n : impl.expandNames(cm.atom, scratch))
                        ca.atoms.push_back(intern(n));
                    side(std::move(ca));
                    continue;
                }
                if (cm.atom.kind == PredKind::Program) {
                    if (!impl.groundArgs(cm.atom, scratch)) {
                        if (inAnte[i])
                            return; // false antecedent member: tautology
                        continue;   // false consequent member vanishes
                    }
                    if (cm.atom.hasAnon) {
                        // existential consequent atom -> 1{...} with no upper
                        GroundCAtom ca;
                        ca.lower = 1;
                        for (const std::string& n : impl.expandNames(cm.atom, scratch))
                            ca.atoms.push_back(intern(n));
                        side(std::move(ca));
                    } else {
                        std::vector<GroundConst> argv;
                        for (auto& v : scratch)
                            argv.push_back(*v);
                        GroundCAtom ca;
                        ca.lower = 1;
                        ca.upper = 1;
                        ca.atoms.push_back(intern(compose_name(cm.atom.pred, argv)));
                        side(std::move(ca));
                    }
                    continue;
                }
                // data or predefined member: evaluated away
                bool truth;
                if (cm.atom.kind == PredKind::Data && cm.atom.hasAnon) {
                    // existential over data: true iff some expansion is in D
                    if (!impl.groundArgs(cm.atom, scratch)) {
                        truth = false;
                    } else {
                        truth = false;
                        for (const std::string& n : impl.expandNames(cm.atom, scratch))
                            if (dataSet_.count(n)) {
                                truth = true;
                                break;
                            }
                    }
                } else {
                    std::optional<bool> t = memberTruth(cm);
                    assert(t.has_value());
                    truth = *t;
                }
                if (inAnte[i]) {
                    if (!truth)
                        return; // drop instance
                } else {
                    if (truth)
                        return; // tautology
                }
            }
            GroundClause gc;
            gc.anteCount = static_cast<std::uint32_t>(ante.size());
            gc.members = std::move(ante);
            gc.members.insert(gc.members.end(), cons.begin(), cons.end());
            out_.clauses.push_back(std::move(gc));
        };

        // prune checks for members bound at this depth
        auto pruned = [&](std::size_t depth) {
            for (std::size_t i : checkAt[depth]) {
                std::optional<bool> t = memberTruth(members[i]);
                if (!t)
                    continue; // program atom with valid args: no pruning
                if (inAnte[i] ? !*t : *t)
                    return true;
            }
            return false;
        };

        auto enumerate = [&](auto&& self, int depth) -> void {
            if (depth == nSlots) {
                emitInstance();
                return;
            }
            for (const GroundConst& gc : table_.all()) {
                impl.slots[static_cast<std::size_t>(depth)] = gc;
                if (pruned(static_cast<std::size_t>(depth) + 1))
                    continue;
                self(self, depth + 1);
            }
        };
        if (pruned(0))
            continue;
        enumerate(enumerate, 0);
    }

    // The atom table covers the full Herbrand base of the program
    // predicates; atoms never mentioned by a clause are unconstrained.
    for (const std::string& pred : theory_.predOrder) {
        const PredInfo& info = theory_.preds.at(pred);
        if (info.kind != PredKind::Program)
            continue;
        const auto& consts = table_.all();
        if (info.arity == 0) {
            intern(pred);
            continue;
        }
        if (consts.empty())
            continue;
        std::vector<std::size_t> odo(static_cast<std::size_t>(info.arity), 0);
        std::vector<GroundConst> argv(static_cast<std::size_t>(info.arity));
        for (;;) {
            for (std::size_t i = 0; i < odo.size(); ++i)
                argv[i] = consts[odo[i]];
            intern(compose_name(pred, argv));
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

    return std::move(out_);
}

GroundTheory ground_theory(const Theory& t) {
    Grounder g(t);
    return g.run();
}

std::string write_gnd(const GroundTheory& gt) {
    std::string s;
    s += "p gnd " + std::to_string(gt.numAtoms()) + " " + std::to_string(gt.clauses.size()) + "\n";
    for (std::size_t i = 0; i < gt.atomNames.size(); ++i)
        s += "a " + std::to_string(i) + " " + gt.atomNames[i] + "\n";
    for (const GroundCAtom& c : gt.catoms) {
        s += "c ";
        s += c.lower ? std::to_string(*c.lower) : "*";
        s += ' ';
        s += c.upper ? std::to_string(*c.upper) : "*";
        s += ' ';
        s += std::to_string(c.atoms.size());
        for (AtomId a : c.atoms) {
            s += ' ';
            s += std::to_string(a);
        }
        s += '\n';
    }
    for (const GroundClause& r : gt.clauses) {
        s += "r " + std::to_string(r.anteCount) + " " +
             std::to_string(r.members.size() - r.anteCount);
        for (std::uint32_t m : r.members) {
            s += ' ';
            s += std::to_string(m);
        }
        s += '\n';
    }
    return s;
}

GroundTheory read_gnd(const std::string& text) {
    GroundTheory gt;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    bool sawHeader = false;
    std::size_t nAtoms = 0, nClauses = 0;
    auto fail = [&](const std::string& msg) {
        throw Error("gnd format error at line " + std::to_string(lineno) + ": " + msg);
    };
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string tag;
        if (!(ls >> tag))
            continue;
        if (tag == "p") {
            std::string fmt;
            if (!(ls >> fmt >> nAtoms >> nClauses) || fmt != "gnd")
                fail("bad header");
            sawHeader = true;
        } else if (tag == "a") {
            if (!sawHeader)
                fail("atom before header");
            std::size_t id;
            std::string name;
            if (!(ls >> id >> name))
                fail("bad atom line");
            if (id != gt.atomNames.size())
                fail("atom ids must be dense and ascending");
            gt.atomNames.push_back(name);
            if (!gt.atomIds.emplace(name, static_cast<AtomId>(id)).second)
                fail("duplicate atom name '" + name + "'");
        } else if (tag == "c") {
            if (!sawHeader)
                fail("c-atom before header");
            std::string ms, ns;
            std::size_t k;
            if (!(ls >> ms >> ns >> k))
                fail("bad c-atom line");
            GroundCAtom c;
            auto parseBound = [&](const std::string& b) -> std::optional<std::int64_t> {
                if (b == "*")
                    return std::nullopt;
                std::int64_t v = 0;
                auto [p, ec] = std::from_chars(b.data(), b.data() + b.size(), v);
                if (ec != std::errc() || p != b.data() + b.size() || v < 0)
                    fail("bad bound '" + b + "'");
                return v;
            };
            c.lower = parseBound(ms);
            c.upper = parseBound(ns);
            if (k == 0)
                fail("c-atom needs at least one atom");
            std::unordered_set<AtomId> seen;
            for (std::size_t i = 0; i < k; ++i) {
                std::size_t id;
                if (!(ls >> id))
                    fail("c-atom atom count mismatch");
                if (id >= gt.atomNames.size())
                    fail("atom id out of range");
                if (!seen.insert(static_cast<AtomId>(id)).second)
                    fail("duplicate atom in c-atom");
                c.atoms.push_back(static_cast<AtomId>(id));
            }
            std::size_t extra;
            if (ls >> extra)
                fail("trailing tokens on c-atom line");
            gt.catoms.push_back(std::move(c));
        } else if (tag == "r") {
            if (!sawHeader)
                fail("clause before header");
            std::size_t s, t;
            if (!(ls >> s >> t))
                fail("bad clause line");
            GroundClause r;
            r.anteCount = static_cast<std::uint32_t>(s);
            for (std::size_t i = 0; i < s + t; ++i) {
                std::size_t idx;
                if (!(ls >> idx))
                    fail("clause member count mismatch");
                if (idx >= gt.catoms.size())
                    fail("c-atom index out of range");
                r.members.push_back(static_cast<std::uint32_t>(idx));
            }
            std::size_t extra;
            if (ls >> extra)
                fail("trailing tokens on clause line");
            gt.clauses.push_back(std::move(r));
        } else {
            fail("unknown construct '" + tag + "'");
        }
    }
    if (!sawHeader)
        fail("missing header");
    if (gt.atomNames.size() != nAtoms)
        fail("atom count does not match header");
    if (gt.clauses.size() != nClauses)
        fail("clause count does not match header");
    return gt;
}

} // namespace pscard

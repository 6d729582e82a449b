#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pscard/completion.hpp"
#include "pscard/propcore.hpp"

#include <algorithm>
#include <random>

using namespace pscard;

TEST_CASE("rule parsing") {
    NormalProgram p = parse_lp("p(X) :- e(X,Y), not p(Y).\nq :- not p(a) . % comment\n");
    REQUIRE(p.rules.size() == 2);
    CHECK(p.rules[0].headPred == "p");
    CHECK(p.rules[0].headVars == std::vector<std::string>{"X"});
    REQUIRE(p.rules[0].body.size() == 2);
    CHECK(p.rules[0].body[0].positive);
    CHECK_FALSE(p.rules[0].body[1].positive);
    CHECK(p.rules[1].headVars.empty());
    CHECK(p.inputPredicates() == std::vector<std::string>{"e"});
}

TEST_CASE("normal form violations") {
    CHECK_THROWS_AS(parse_lp("p(a) :- q."), ParseError);            // head not a variable tuple
    CHECK_THROWS_AS(parse_lp("p(X,X) :- q."), SemanticError);       // repeated head variable
    CHECK_THROWS_AS(parse_lp("p(X) :- q. p(Y) :- r."), SemanticError); // differing head tuples
    CHECK_THROWS_AS(parse_lp("p(X) :- q(a). q :- p(a)."), SemanticError); // arity conflict
}

TEST_CASE("comparisons are allowed in bodies") {
    NormalProgram p = parse_lp("p(X) :- e(X,Y), X != Y.");
    CHECK(p.rules[0].body[1].atom.kind == PredKind::Predefined);
    CHECK(p.rules[0].body[1].atom.pred == "!=");
}

TEST_CASE("Clark completion") {
    {
        NormalProgram p = parse_lp("p :- not q.\nq :- not p.");
        auto cc = clark_completion(p);
        REQUIRE(cc.size() == 2);
        CHECK(to_string(cc[0]) == "p <-> not q");
        CHECK(to_string(cc[1]) == "q <-> not p");
    }
    {
        NormalProgram p;
        p.declaredPreds.push_back({"p", 0});
        auto cc = clark_completion(p);
        REQUIRE(cc.size() == 1);
        CHECK(to_string(cc[0]) == "p <-> F");
    }
    {
        NormalProgram p = parse_lp("p :- p.");
        auto cc = clark_completion(p);
        REQUIRE(cc.size() == 1);
        CHECK(to_string(cc[0]) == "p <-> p");
    }
    {
        NormalProgram p = parse_lp("p(X) :- e(X,Y), not p(Y).\np(X) :- f(X).");
        auto cc = clark_completion(p);
        CHECK(to_string(cc[0]) ==
              "p(X) <-> exists(Y) (e(X,Y) & not p(Y)) | (f(X))");
    }
}

TEST_CASE("translation of a single recursive rule") {
    NormalProgram p = parse_lp("p(X) :- e(X,Y), not p(Y).");
    Translation t = translate(p);
    CHECK(print_translation(t) == "data e/2.\n"
                                  "d_p_1(X,Y) -> e(X,Y).\n"
                                  "d_p_1(X,Y), p(Y) -> F.\n"
                                  "e(X,Y) -> d_p_1(X,Y) ; p(Y).\n"
                                  "d_p_1(X,Y) -> p(X).\n"
                                  "p(X) -> d_p_1(X,_).\n");
}

TEST_CASE("translation of an empty program over a declared predicate") {
    NormalProgram p;
    p.declaredPreds.push_back({"p", 0});
    Translation t = translate(p);
    CHECK(print_translation(t) == "p -> F.\n");
}

TEST_CASE("auxiliary predicate names never collide") {
    NormalProgram p = parse_lp("d_p_1(X) :- q(X).\np(X) :- q(X).");
    Translation t = translate(p);
    for (const std::string& aux : t.auxPreds) {
        int count = 0;
        for (const auto& [n, a] : p.predicates())
            count += n == aux ? 1 : 0;
        CHECK(count == 0);
    }
}

TEST_CASE("translation output parses and grounds") {
    NormalProgram p = parse_lp("p :- not q.\nq :- not p.");
    Translation t = translate(p);
    Theory th = assemble_theory({}, {print_translation(t)});
    GroundTheory gt = ground_theory(th);
    std::set<std::set<std::string>> restricted;
    for (const Model& m : enumerate_models(gt)) {
        std::set<std::string> names;
        for (AtomId a : m.trueAtoms()) {
            const std::string& n = gt.atomNames[a];
            if (n == "p" || n == "q")
                names.insert(n);
        }
        restricted.insert(names);
    }
    CHECK(restricted == std::set<std::set<std::string>>{{"p"}, {"q"}});
}

TEST_CASE("supported models by brute force") {
    {
        NormalProgram p = parse_lp("p :- not q.\nq :- not p.");
        auto models = supported_models(p, {});
        CHECK(models == std::set<std::set<std::string>>{{"p"}, {"q"}});
    }
    {
        NormalProgram p = parse_lp("p :- p.");
        auto models = supported_models(p, {});
        CHECK(models == std::set<std::set<std::string>>{{}, {"p"}});
    }
    {
        NormalProgram p; // empty program, one input fact
        Atom e;
        e.pred = "e";
        e.kind = PredKind::Data;
        e.args = {Term::constant("a")};
        auto models = supported_models(p, {e});
        CHECK(models == std::set<std::set<std::string>>{{"e(a)"}});
    }
}

TEST_CASE("translation size stays linear in the program") {
    std::mt19937_64 rng(2024);
    for (int iter = 0; iter < 50; ++iter) {
        std::string text;
        const int nRules = 1 + static_cast<int>(rng() % 4);
        std::size_t totalLits = 0;
        for (int r = 0; r < nRules; ++r) {
            const int nLits = 1 + static_cast<int>(rng() % 3);
            totalLits += static_cast<std::size_t>(nLits);
            std::string body;
            for (int l = 0; l < nLits; ++l) {
                if (l)
                    body += ", ";
                if (rng() % 2)
                    body += "not ";
                body += std::string(1, static_cast<char>('e' + rng() % 3)) + "(X)";
            }
            text += "p(X) :- " + body + ".\n";
        }
        Translation t = translate(parse_lp(text));
        CHECK(t.clauses.size() <=
              2 * totalLits + 2 * static_cast<std::size_t>(nRules) + 1);
    }
}

// ---------------------------------------------------------------------------
// Theorem 4 witness: supported models of D ∪ P equal the models of the
// translated theory restricted to the Herbrand base of P.
// ---------------------------------------------------------------------------

namespace {

struct LpCase {
    NormalProgram prog;
    std::vector<Atom> data;
    std::string dataText;
};

std::optional<LpCase> random_lp(std::mt19937_64& rng) {
    auto pick = [&](std::uint64_t n) { return rng() % n; };
    const std::size_t nConsts = 1 + pick(3);
    std::vector<std::string> consts;
    for (std::size_t i = 0; i < nConsts; ++i)
        consts.push_back(std::string(1, static_cast<char>('a' + i)));

    struct Pred {
        std::string name;
        std::size_t arity;
    };
    std::vector<Pred> preds;
    const std::size_t nPreds = 2 + pick(2);
    for (std::size_t i = 0; i < nPreds; ++i)
        preds.push_back({std::string(1, static_cast<char>('p' + i)), pick(2) ? 1u : 0u});
    if (pick(3) == 0)
        preds[0].arity = 2;

    // one fixed head tuple per predicate
    const char* tuple[] = {"", "(X)", "(X,Y)"};
    auto headOf = [&](const Pred& p) { return p.name + tuple[p.arity]; };

    std::string text;
    const std::size_t nRules = 1 + pick(4);
    std::set<std::string> headPreds;
    for (std::size_t r = 0; r < nRules; ++r) {
        const Pred& hp = preds[pick(preds.size())];
        headPreds.insert(hp.name);
        std::string body;
        const std::size_t nLits = 1 + pick(3);
        const char* vars[] = {"X", "Y", "Z"};
        for (std::size_t l = 0; l < nLits; ++l) {
            if (l)
                body += ", ";
            if (pick(6) == 0) {
                body += std::string(vars[pick(hp.arity + 1)]) + " != " +
                        consts[pick(consts.size())];
                continue;
            }
            if (pick(3) == 0)
                body += "not ";
            const Pred& bp = preds[pick(preds.size())];
            std::string args;
            if (bp.arity > 0) {
                args = "(";
                for (std::size_t a = 0; a < bp.arity; ++a) {
                    if (a)
                        args += ",";
                    if (pick(3) == 0)
                        args += consts[pick(consts.size())];
                    else
                        args += vars[pick(3)];
                }
                args += ")";
            }
            body += bp.name + args;
        }
        text += headOf(hp) + " :- " + body + ".\n";
    }

    LpCase out;
    try {
        out.prog = parse_lp(text);
    } catch (const Error&) {
        return std::nullopt;
    }

    // random data over the input predicates
    std::string dataText;
    for (const Pred& p : preds) {
        if (headPreds.count(p.name))
            continue;
        if (p.arity == 0) {
            if (pick(2)) {
                dataText += p.name + ".\n";
                Atom a;
                a.pred = p.name;
                a.kind = PredKind::Data;
                out.data.push_back(a);
            }
            continue;
        }
        std::vector<std::vector<std::string>> tuples;
        for (const std::string& c1 : consts) {
            if (p.arity == 1)
                tuples.push_back({c1});
            else
                for (const std::string& c2 : consts)
                    tuples.push_back({c1, c2});
        }
        for (const auto& tup : tuples) {
            if (pick(3) != 0)
                continue;
            Atom a;
            a.pred = p.name;
            a.kind = PredKind::Data;
            std::string s = p.name + "(";
            for (std::size_t i = 0; i < tup.size(); ++i) {
                if (i)
                    s += ",";
                s += tup[i];
                a.args.push_back(Term::constant(tup[i]));
            }
            dataText += s + ").\n";
            out.data.push_back(a);
        }
    }
    out.dataText = dataText;

    // keep both oracles exhaustive
    std::size_t hb = 0;
    for (const Pred& p : preds) {
        std::size_t sz = 1;
        for (std::size_t i = 0; i < p.arity; ++i)
            sz *= consts.size();
        hb += sz;
    }
    if (hb > 14)
        return std::nullopt;
    return out;
}

std::set<std::set<std::string>> pipeline_models(const LpCase& c) {
    Translation t = translate(c.prog);
    Theory th = assemble_theory({c.dataText}, {print_translation(t)});
    GroundTheory gt = ground_theory(th);
    if (gt.numAtoms() > 22)
        throw Error("table too large for the witness oracle");
    std::set<std::string> hbPreds;
    for (const auto& [n, a] : c.prog.predicates())
        hbPreds.insert(n);
    std::set<std::string> dataNames;
    for (const Atom& a : c.data)
        dataNames.insert(to_string(a));
    std::set<std::set<std::string>> out;
    for (std::uint64_t mask : enumerate_model_masks(gt, std::uint64_t(1) << 23)) {
        std::set<std::string> names = dataNames;
        for (std::size_t i = 0; i < gt.numAtoms(); ++i) {
            if (!(mask & (std::uint64_t(1) << i)))
                continue;
            const std::string& n = gt.atomNames[i];
            const std::string pred = n.substr(0, n.find('('));
            if (hbPreds.count(pred))
                names.insert(n);
        }
        out.insert(std::move(names));
    }
    return out;
}

} // namespace

TEST_CASE("Theorem 4 witness on random normal programs") {
    std::mt19937_64 rng(88);
    int done = 0;
    while (done < 60) {
        auto c = random_lp(rng);
        if (!c)
            continue;
        CAPTURE(print_translation(translate(c->prog)));
        CAPTURE(c->dataText);
        std::set<std::set<std::string>> expected;
        try {
            expected = supported_models(c->prog, c->data);
        } catch (const Error&) {
            continue; // oracle guard
        }
        std::set<std::set<std::string>> actual;
        try {
            actual = pipeline_models(*c);
        } catch (const Error&) {
            continue; // table guard
        }
        REQUIRE(expected == actual);
        ++done;
    }
}

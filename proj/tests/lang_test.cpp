#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pscard/lang.hpp"

using namespace pscard;

TEST_CASE("data facts") {
    auto atoms = parse_data("vtx(a). edge(a,b).");
    REQUIRE(atoms.size() == 2);
    CHECK(atoms[0].pred == "vtx");
    CHECK(atoms[0].args == std::vector<Term>{Term::constant("a")});
    CHECK(atoms[1].pred == "edge");
    CHECK(atoms[1].kind == PredKind::Data);

    CHECK(parse_data("").empty());

    auto pos = parse_data("pos(1). pos(2). pos(3).");
    REQUIRE(pos.size() == 3);
    CHECK(pos[2].args == std::vector<Term>{Term::integer(3)});
}

TEST_CASE("data facts deduplicate and keep order") {
    auto atoms = parse_data("p(b). p(a). p(b).");
    REQUIRE(atoms.size() == 2);
    CHECK(to_string(atoms[0]) == "p(b)");
    CHECK(to_string(atoms[1]) == "p(a)");
}

TEST_CASE("data errors") {
    CHECK_THROWS_AS(parse_data("p(X)."), ParseError);
    CHECK_THROWS_AS(parse_data("p(_)."), ParseError);
    CHECK_THROWS_AS(parse_data("p(a"), ParseError);
    CHECK_THROWS_AS(parse_data("p(a). p(a,b)."), SemanticError);
    CHECK_THROWS_AS(parse_data("p(1+1)."), ParseError); // facts are literal
    try {
        parse_data("p(a).\nq(Y).");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
        CHECK(e.column() == 3);
    }
}

TEST_CASE("negative integers are constants") {
    auto atoms = parse_data("t(-3).");
    CHECK(atoms[0].args == std::vector<Term>{Term::integer(-3)});
}

TEST_CASE("clause with variables") {
    auto pp = parse_program("q(B,C) -> p(A).");
    REQUIRE(pp.clauses.size() == 1);
    const ExtendedClause& cl = pp.clauses[0];
    REQUIRE(cl.antecedent.size() == 1);
    REQUIRE(cl.consequent.size() == 1);
    const Atom& ante = std::get<Atom>(cl.antecedent[0]);
    CHECK(ante.pred == "q");
    CHECK(ante.kind == PredKind::Program);
    CHECK(ante.args == std::vector<Term>{Term::variable("B"), Term::variable("C")});
    CHECK(std::get<Atom>(cl.consequent[0]).pred == "p");
}

TEST_CASE("existential consequent and equality disjunct") {
    auto pp = parse_program("p(X) -> q(X,_) ; X = a.");
    REQUIRE(pp.clauses.size() == 1);
    const ExtendedClause& cl = pp.clauses[0];
    REQUIRE(cl.consequent.size() == 2);
    const Atom& ex = std::get<Atom>(cl.consequent[0]);
    CHECK(ex.args[1] == Term::anonymous());
    const Atom& eq = std::get<Atom>(cl.consequent[1]);
    CHECK(eq.kind == PredKind::Predefined);
    CHECK(eq.pred == "=");
}

TEST_CASE("c-atom with symbolic upper bound") {
    Bindings b{{"k", 3}};
    auto pp = parse_program("{ invc(_) } k.", b);
    REQUIRE(pp.clauses.size() == 1);
    const ExtendedClause& cl = pp.clauses[0];
    CHECK(cl.antecedent.empty());
    REQUIRE(cl.consequent.size() == 1);
    const CAtom& c = std::get<CAtom>(cl.consequent[0]);
    CHECK_FALSE(c.lower.has_value());
    CHECK(c.upper == 3);
    CHECK(c.inner.pred == "invc");
    CHECK(c.inner.args == std::vector<Term>{Term::anonymous()});
}

TEST_CASE("symbolic constants in argument position resolve from bindings") {
    Bindings b{{"k", 7}};
    auto pp = parse_program("-> size(k).", b);
    const Atom& a = std::get<Atom>(pp.clauses[0].consequent[0]);
    CHECK(a.args == std::vector<Term>{Term::integer(7)});
}

TEST_CASE("program errors") {
    CHECK_THROWS_AS(parse_program("{ p(_) } k."), ParseError);     // unknown bound
    CHECK_THROWS_AS(parse_program("p(_) -> q."), ParseError);      // antecedent underscore
    CHECK_THROWS_AS(parse_program("{ p(_) }."), ParseError);       // no bound at all
    CHECK_THROWS_AS(parse_program("3 { p(_) } 1."), ParseError);   // lower > upper
    Bindings b{{"k", -1}};
    CHECK_THROWS_AS(parse_program("{ p(_) } k.", b), ParseError);  // negative bound
    CHECK_THROWS_AS(parse_program("p(X + _)."), ParseError);       // underscore in arithmetic
    CHECK_THROWS_AS(parse_program("1 { d(_) } 1.", {}, {"d"}), SemanticError);
    CHECK_THROWS_AS(parse_program("1 { X = a } 1."), ParseError);
}

TEST_CASE("truth constants versus variables named T and F") {
    auto pp = parse_program("T -> p(a). q(b) -> F. T < X -> p(X).");
    CHECK(pp.clauses[0].antecedent.empty());
    CHECK(pp.clauses[0].consequent.size() == 1);
    CHECK(pp.clauses[1].consequent.empty());
    const Atom& cmp = std::get<Atom>(pp.clauses[2].antecedent[0]);
    CHECK(cmp.pred == "<");
    CHECK(cmp.args[0] == Term::variable("T"));
}

TEST_CASE("consequent-only clause and empty consequent") {
    auto pp = parse_program("p(a).\nq(a) ->.");
    CHECK(pp.clauses[0].antecedent.empty());
    CHECK(pp.clauses[0].consequent.size() == 1);
    CHECK(pp.clauses[1].antecedent.size() == 1);
    CHECK(pp.clauses[1].consequent.empty());
}

TEST_CASE("zero-ary atoms") {
    auto pp = parse_program("p -> q ; r.");
    CHECK(std::get<Atom>(pp.clauses[0].antecedent[0]).pred == "p");
    CHECK(std::get<Atom>(pp.clauses[0].consequent[1]).pred == "r");
}

TEST_CASE("arithmetic precedence and printing") {
    auto pp = parse_program("q(R,C), q(R+I,C-I) -> F.");
    const Atom& a = std::get<Atom>(pp.clauses[0].antecedent[1]);
    CHECK(a.args[0] == Term::apply("+", {Term::variable("R"), Term::variable("I")}));
    CHECK(to_string(a) == "q(R + I,C - I)");

    auto pp2 = parse_program("-> p(1 + 2 * 3) ; p((1 + 2) * 3) ; p(abs(X - 4) mod 2).");
    CHECK(to_string(pp2.clauses[0]) == "p(1 + 2 * 3) ; p((1 + 2) * 3) ; p(abs(X - 4) mod 2).");
}

TEST_CASE("data declarations register data predicates") {
    auto pp = parse_program("data e/2.\np(X) -> e(X,_).");
    REQUIRE(pp.dataDecls.size() == 1);
    CHECK(pp.dataDecls[0].pred == "e");
    CHECK(pp.dataDecls[0].arity == 2);
    CHECK(std::get<Atom>(pp.clauses[0].consequent[0]).kind == PredKind::Data);
}

TEST_CASE("round trip: print then reparse is the identity on the AST") {
    const char* corpus[] = {
        "q(b,c) -> p(a). p(X) -> q(X,_) ; X = a.",
        "vpos(I,X) -> vtx(X).\nvtx(X) -> vpos(_,X).\n"
        "vpos(I,X), vpos(J,X) -> I = J.\n"
        "edge(X,Y), vpos(I,X), vpos(J,Y), size(K) -> I <= K ; J <= K.",
        "invc(X) -> vtx(X). { invc(_) } 3. edge(X,Y) -> invc(X) ; invc(Y).",
        "q(R,C), q(R+I,C+I) -> F.\npos(R) -> q(R,_).",
        "pigeon(P) -> 1 { in(P,_) } 1. hole(H) -> { in(_,H) } 1.",
        "-> F.",
        "p ; q. 2 { r(X,_) } 2.",
    };
    for (const char* text : corpus) {
        CAPTURE(text);
        auto first = parse_program(text);
        std::string printed = print_program(first.clauses);
        auto second = parse_program(printed);
        CHECK(first.clauses == second.clauses);
        CHECK(print_program(second.clauses) == printed);
    }
}

TEST_CASE("parsing is deterministic") {
    const std::string text = "p(X) -> q(X,_) ; X = a.";
    CHECK(parse_program(text).clauses == parse_program(text).clauses);
}

TEST_CASE("theory assembly: constants, kinds, arity") {
    Theory th = assemble_theory({"vtx(v1). vtx(v2). pos(1). pos(2)."},
                                {"vpos(I,X) -> vtx(X).\nvtx(X) -> vpos(_,X)."});
    // symbols sorted first, then integers ascending
    REQUIRE(th.constants.size() == 4);
    CHECK(th.constants[0].str() == "v1");
    CHECK(th.constants[1].str() == "v2");
    CHECK(th.constants[2].str() == "1");
    CHECK(th.constants[3].str() == "2");
    CHECK(th.preds.at("vtx").kind == PredKind::Data);
    CHECK(th.preds.at("pos").kind == PredKind::Data);
    CHECK(th.preds.at("vpos").kind == PredKind::Program);
    CHECK(th.preds.at("vpos").arity == 2);
    // kind resolution is total over the registry
    for (const auto& [name, info] : th.preds) {
        bool partitioned = info.kind == PredKind::Data || info.kind == PredKind::Program;
        CHECK(partitioned);
    }
}

TEST_CASE("theory assembly errors") {
    CHECK_THROWS_AS(assemble_theory({"p(a)."}, {"-> p(a,b)."}), SemanticError);
    CHECK_THROWS_AS(assemble_theory({"d(a)."}, {"-> 1 { d(_) } 1."}), SemanticError);
    // variables need a nonempty constant table
    CHECK_THROWS_AS(assemble_theory({}, {"p(X) -> q(X)."}), SemanticError);
    // constant-free propositional theories are fine
    CHECK_NOTHROW(assemble_theory({}, {"p -> q. q -> F."}));
}

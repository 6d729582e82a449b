#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pscard/propcore.hpp"

#include <algorithm>
#include <random>

using namespace pscard;

namespace {

GroundTheory make_atoms(std::size_t n) {
    GroundTheory gt;
    for (std::size_t i = 0; i < n; ++i) {
        gt.atomNames.push_back("x" + std::to_string(i));
        gt.atomIds.emplace(gt.atomNames.back(), static_cast<AtomId>(i));
    }
    return gt;
}

std::uint32_t add_catom(GroundTheory& gt, std::optional<std::int64_t> lower,
                        std::optional<std::int64_t> upper, std::vector<AtomId> atoms) {
    gt.catoms.push_back({lower, upper, std::move(atoms)});
    return static_cast<std::uint32_t>(gt.catoms.size() - 1);
}

void add_clause(GroundTheory& gt, std::vector<std::uint32_t> ante,
                std::vector<std::uint32_t> cons) {
    GroundClause cl;
    cl.anteCount = static_cast<std::uint32_t>(ante.size());
    cl.members = std::move(ante);
    cl.members.insert(cl.members.end(), cons.begin(), cons.end());
    gt.clauses.push_back(std::move(cl));
}

std::vector<std::uint64_t> cnf_models(const CnfTheory& cnf) {
    std::vector<std::uint64_t> out;
    REQUIRE(cnf.numVars <= 20);
    for (std::uint64_t m = 0; m < (std::uint64_t(1) << cnf.numVars); ++m) {
        bool ok = true;
        for (const auto& cl : cnf.clauses) {
            bool sat = false;
            for (std::int32_t lit : cl) {
                const std::uint64_t bit = std::uint64_t(1) << (std::abs(lit) - 1);
                if (lit > 0 ? (m & bit) != 0 : (m & bit) == 0) {
                    sat = true;
                    break;
                }
            }
            if (!sat) {
                ok = false;
                break;
            }
        }
        if (ok)
            out.push_back(m);
    }
    return out;
}

} // namespace

TEST_CASE("c-atom satisfaction") {
    Model empty = Model::ofSize(3);
    Model justA = Model::fromAtoms(3, {0});
    Model ac = Model::fromAtoms(3, {0, 2});
    Model abc = Model::fromAtoms(3, {0, 1, 2});

    GroundCAtom one1{1, 1, {0}};
    CHECK(sat_catom(one1, justA));
    CHECK_FALSE(sat_catom(one1, empty));

    GroundCAtom vacuous{0, std::nullopt, {0, 1}};
    CHECK(sat_catom(vacuous, empty));
    CHECK(sat_catom(vacuous, abc));

    GroundCAtom two2{2, 2, {0, 1, 2}};
    CHECK(sat_catom(two2, ac));
    CHECK_FALSE(sat_catom(two2, abc));

    GroundCAtom never{2, 1, {0, 1, 2}}; // m > n holds for no model
    CHECK_FALSE(sat_catom(never, empty));
    CHECK_FALSE(sat_catom(never, ac));
    CHECK_FALSE(sat_catom(never, abc));
}

TEST_CASE("1{p}1 behaves exactly like p") {
    GroundCAtom c{1, 1, {2}};
    for (std::uint64_t m = 0; m < 16; ++m) {
        Model mod = Model::fromMask(4, m);
        CHECK(sat_catom(c, mod) == mod.contains(2));
    }
}

TEST_CASE("widening bounds never unsatisfies a c-atom") {
    std::mt19937_64 rng(7);
    for (int iter = 0; iter < 200; ++iter) {
        const std::size_t n = 1 + rng() % 6;
        std::vector<AtomId> atoms;
        for (std::size_t i = 0; i < n; ++i)
            atoms.push_back(static_cast<AtomId>(i));
        std::int64_t lo = static_cast<std::int64_t>(rng() % (n + 2));
        std::int64_t hi = lo + static_cast<std::int64_t>(rng() % (n + 1));
        GroundCAtom tight{lo, hi, atoms};
        GroundCAtom wide{std::max<std::int64_t>(0, lo - 1), hi + 1, atoms};
        for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << n); ++mask) {
            Model mod = Model::fromMask(n, mask);
            if (sat_catom(tight, mod))
                CHECK(sat_catom(wide, mod));
        }
    }
}

TEST_CASE("clause satisfaction") {
    GroundTheory gt = make_atoms(2);
    const auto a1 = add_catom(gt, 1, 1, {0});
    const auto b1 = add_catom(gt, 1, 1, {1});
    const auto oneOf = add_catom(gt, 1, 1, {0, 1});
    const auto bothOf = add_catom(gt, 2, 2, {0, 1});

    GroundClause tf; // T => F
    CHECK_FALSE(sat_clause(gt, tf, Model::ofSize(2)));
    CHECK_FALSE(sat_clause(gt, tf, Model::fromAtoms(2, {0, 1})));

    GroundClause imp; // x0 => x1
    imp.members = {a1, b1};
    imp.anteCount = 1;
    CHECK(sat_clause(gt, imp, Model::fromAtoms(2, {0, 1})));
    CHECK(sat_clause(gt, imp, Model::ofSize(2)));
    CHECK_FALSE(sat_clause(gt, imp, Model::fromAtoms(2, {0})));

    GroundClause counts; // 1{a,b}1 => 2{a,b}2
    counts.members = {oneOf, bothOf};
    counts.anteCount = 1;
    CHECK_FALSE(sat_clause(gt, counts, Model::fromAtoms(2, {0})));
    CHECK(sat_clause(gt, counts, Model::fromAtoms(2, {0, 1})));
}

TEST_CASE("model checking and enumeration on the worked example") {
    Theory t = assemble_theory({}, {"q(b,c) -> p(a).\np(X) -> q(X,_) ; X = a."});
    GroundTheory gt = ground_theory(t);

    Model m1 = Model::fromAtoms(gt.numAtoms(), {gt.idOf("p(a)"), gt.idOf("q(b,c)")});
    CHECK(check_model(gt, m1));
    Model m2 = Model::fromAtoms(gt.numAtoms(), {gt.idOf("p(b)")});
    CHECK_FALSE(check_model(gt, m2)); // second clause violated
    CHECK(check_model(GroundTheory{}, Model::ofSize(0)));

    auto models = enumerate_models(gt);
    auto has = [&](const Model& m) {
        return std::find(models.begin(), models.end(), m) != models.end();
    };
    CHECK(has(m1));
    CHECK(has(Model::fromAtoms(gt.numAtoms(), {gt.idOf("p(b)"), gt.idOf("p(c)"),
                                               gt.idOf("q(b,a)"), gt.idOf("q(c,c)")})));
}

TEST_CASE("enumeration corner cases") {
    GroundTheory falsum = make_atoms(2);
    add_clause(falsum, {}, {});
    CHECK(enumerate_models(falsum).empty());

    GroundTheory unconstrained = make_atoms(3);
    CHECK(enumerate_models(unconstrained).size() == 8);
    CHECK(enumerate_models(unconstrained, std::uint64_t(3)).size() == 3);

    GroundTheory big = make_atoms(kEnumerationGuard + 1);
    CHECK_THROWS_AS(enumerate_models(big), Error);
    CHECK(enumerate_models(big, std::uint64_t(1)).size() == 1);
}

TEST_CASE("CNF compilation of single c-atoms") {
    {
        GroundTheory gt = make_atoms(3);
        add_clause(gt, {}, {add_catom(gt, std::nullopt, 1, {0, 1, 2})});
        CnfTheory cnf = compile_cnf(gt);
        REQUIRE(cnf.clauses.size() == 3); // C(3,2)
        CHECK(cnf.clauses[0] == std::vector<std::int32_t>{-1, -2});
        CHECK(cnf.clauses[1] == std::vector<std::int32_t>{-1, -3});
        CHECK(cnf.clauses[2] == std::vector<std::int32_t>{-2, -3});
    }
    {
        GroundTheory gt = make_atoms(3);
        add_clause(gt, {}, {add_catom(gt, 1, std::nullopt, {0, 1, 2})});
        CnfTheory cnf = compile_cnf(gt);
        REQUIRE(cnf.clauses.size() == 1);
        CHECK(cnf.clauses[0] == std::vector<std::int32_t>{1, 2, 3});
    }
    {
        GroundTheory gt = make_atoms(3);
        add_clause(gt, {}, {add_catom(gt, 2, 2, {0, 1, 2})});
        CnfTheory cnf = compile_cnf(gt);
        CHECK(cnf.clauses.size() == 6); // 3 positive + 3 negative
        auto models = cnf_models(cnf);
        std::vector<std::uint64_t> expected;
        for (std::uint64_t m = 0; m < 8; ++m)
            if (sat_catom(gt.catoms[0], Model::fromMask(3, m)))
                expected.push_back(m);
        CHECK(models == expected);
        CHECK(expected == std::vector<std::uint64_t>{3, 5, 6}); // ab, ac, bc
    }
}

TEST_CASE("CNF compilation of ordinary clauses") {
    GroundTheory gt = make_atoms(3);
    const auto a = add_catom(gt, 1, 1, {0});
    const auto b = add_catom(gt, 1, 1, {1});
    const auto c = add_catom(gt, 1, 1, {2});
    add_clause(gt, {a, b}, {c});
    CnfTheory cnf = compile_cnf(gt);
    REQUIRE(cnf.clauses.size() == 1);
    CHECK(cnf.clauses[0] == std::vector<std::int32_t>{-1, -2, 3});
}

TEST_CASE("CNF compiler rejects shapes outside the fragment") {
    GroundTheory gt = make_atoms(3);
    const auto big = add_catom(gt, 1, 2, {0, 1, 2});
    const auto b = add_catom(gt, 1, 1, {1});
    add_clause(gt, {big}, {b});
    CHECK_THROWS_AS(compile_cnf(gt), Error);

    GroundTheory gt2 = make_atoms(3);
    const auto c1 = add_catom(gt2, 1, 2, {0, 1});
    const auto c2 = add_catom(gt2, 1, 1, {2});
    add_clause(gt2, {}, {c1, c2});
    CHECK_THROWS_AS(compile_cnf(gt2), Error);
}

TEST_CASE("CNF clause-count law and model equivalence on random c-atoms") {
    std::mt19937_64 rng(42);
    auto binom = [](std::int64_t n, std::int64_t k) -> std::uint64_t {
        if (k < 0 || k > n)
            return 0;
        std::uint64_t r = 1;
        for (std::int64_t i = 1; i <= k; ++i)
            r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
        return r;
    };
    for (int iter = 0; iter < 300; ++iter) {
        const std::int64_t k = 1 + static_cast<std::int64_t>(rng() % 8);
        std::optional<std::int64_t> m, n;
        if (rng() % 2)
            m = static_cast<std::int64_t>(rng() % (k + 2)); // up to k+1
        if (!m || rng() % 2) {
            n = static_cast<std::int64_t>(rng() % (k + 2));
            if (m && *n < *m)
                std::swap(*m, *n);
        }
        GroundTheory gt = make_atoms(static_cast<std::size_t>(k));
        std::vector<AtomId> atoms;
        for (std::int64_t i = 0; i < k; ++i)
            atoms.push_back(static_cast<AtomId>(i));
        add_clause(gt, {}, {add_catom(gt, m, n, atoms)});
        CnfTheory cnf = compile_cnf(gt);

        std::uint64_t expectCount = 0;
        if (n)
            expectCount += binom(k, *n + 1);
        if (m && *m > 0)
            expectCount += binom(k, k - *m + 1);
        CHECK(cnf.clauses.size() == expectCount);
        CHECK(cnf_models(cnf) == enumerate_model_masks(gt));
    }
}

TEST_CASE("an unreachable lower bound compiles to an unsatisfiable CNF") {
    GroundTheory gt = make_atoms(2);
    add_clause(gt, {}, {add_catom(gt, 4, std::nullopt, {0, 1})});
    CnfTheory cnf = compile_cnf(gt);
    CHECK(cnf_models(cnf).empty());
    CHECK(enumerate_model_masks(gt).empty());
}

TEST_CASE("CNF equivalence on random fragment theories") {
    std::mt19937_64 rng(4242);
    for (int iter = 0; iter < 500; ++iter) {
        const std::size_t nAtoms = 2 + rng() % 11; // up to 12
        GroundTheory gt = make_atoms(nAtoms);
        std::vector<std::uint32_t> ordinary;
        for (std::size_t i = 0; i < nAtoms; ++i)
            ordinary.push_back(add_catom(gt, 1, 1, {static_cast<AtomId>(i)}));
        const std::size_t nClauses = 1 + rng() % 6;
        for (std::size_t ci = 0; ci < nClauses; ++ci) {
            if (rng() % 3 == 0) {
                const std::size_t sz = 1 + rng() % nAtoms;
                std::vector<AtomId> pool;
                for (std::size_t i = 0; i < nAtoms; ++i)
                    pool.push_back(static_cast<AtomId>(i));
                for (std::size_t i = 0; i < sz; ++i)
                    std::swap(pool[i], pool[i + rng() % (nAtoms - i)]);
                pool.resize(sz);
                std::sort(pool.begin(), pool.end());
                std::optional<std::int64_t> m, n;
                if (rng() % 2)
                    m = static_cast<std::int64_t>(rng() % (sz + 2));
                if (!m || rng() % 2) {
                    n = static_cast<std::int64_t>(rng() % (sz + 1));
                    if (m && *n < *m)
                        std::swap(*m, *n);
                }
                add_clause(gt, {}, {add_catom(gt, m, n, pool)});
            } else {
                std::vector<std::uint32_t> ante, cons;
                const std::size_t na = rng() % 3, nc = rng() % 3;
                for (std::size_t i = 0; i < na; ++i)
                    ante.push_back(ordinary[rng() % nAtoms]);
                for (std::size_t i = 0; i < nc; ++i)
                    cons.push_back(ordinary[rng() % nAtoms]);
                add_clause(gt, std::move(ante), std::move(cons));
            }
        }
        CnfTheory cnf = compile_cnf(gt);
        CHECK(cnf_models(cnf) == enumerate_model_masks(gt));
    }
}

TEST_CASE("DIMACS output is bit-exact") {
    GroundTheory gt = make_atoms(2);
    const auto a = add_catom(gt, 1, 1, {0});
    const auto b = add_catom(gt, 1, 1, {1});
    add_clause(gt, {a}, {b});
    add_clause(gt, {}, {a});
    CHECK(write_dimacs(compile_cnf(gt)) == "p cnf 2 2\n-1 2 0\n1 0\n");
}

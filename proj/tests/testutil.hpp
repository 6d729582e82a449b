#pragma once

// Shared helpers for building and randomizing ground theories in tests.

#include "pscard/ground.hpp"

#include <random>

namespace pscard::testutil {

inline GroundTheory make_atoms(std::size_t n) {
    GroundTheory gt;
    for (std::size_t i = 0; i < n; ++i) {
        gt.atomNames.push_back("x" + std::to_string(i));
        gt.atomIds.emplace(gt.atomNames.back(), static_cast<AtomId>(i));
    }
    return gt;
}

inline std::uint32_t add_catom(GroundTheory& gt, std::optional<std::int64_t> lower,
                               std::optional<std::int64_t> upper, std::vector<AtomId> atoms) {
    gt.catoms.push_back({lower, upper, std::move(atoms)});
    return static_cast<std::uint32_t>(gt.catoms.size() - 1);
}

inline void add_clause(GroundTheory& gt, std::vector<std::uint32_t> ante,
                       std::vector<std::uint32_t> cons) {
    GroundClause cl;
    cl.anteCount = static_cast<std::uint32_t>(ante.size());
    cl.members = std::move(ante);
    cl.members.insert(cl.members.end(), cons.begin(), cons.end());
    gt.clauses.push_back(std::move(cl));
}

/// Random propositional theory with cardinality atoms. Bounds are free-form:
/// absent, vacuous, or even m > n (legal and unsatisfiable).
inline GroundTheory random_ground_theory(std::mt19937_64& rng, std::size_t maxAtoms,
                                         std::size_t maxClauses) {
    const std::size_t nAtoms = 1 + rng() % maxAtoms;
    GroundTheory gt = make_atoms(nAtoms);
    const std::size_t nCatoms = 1 + rng() % (2 * maxClauses);
    for (std::size_t i = 0; i < nCatoms; ++i) {
        const std::size_t sz = 1 + rng() % std::min<std::size_t>(nAtoms, 5);
        std::vector<AtomId> pool;
        for (std::size_t a = 0; a < nAtoms; ++a)
            pool.push_back(static_cast<AtomId>(a));
        for (std::size_t a = 0; a < sz; ++a)
            std::swap(pool[a], pool[a + rng() % (nAtoms - a)]);
        pool.resize(sz);
        std::optional<std::int64_t> m, n;
        const int shape = static_cast<int>(rng() % 4);
        if (shape == 0 || shape == 3)
            m = static_cast<std::int64_t>(rng() % (sz + 2));
        if (shape == 1 || shape == 3)
            n = static_cast<std::int64_t>(rng() % (sz + 2));
        if (!m && !n)
            m = 1;
        add_catom(gt, m, n, std::move(pool));
    }
    const std::size_t nClauses = 1 + rng() % maxClauses;
    for (std::size_t i = 0; i < nClauses; ++i) {
        std::vector<std::uint32_t> ante, cons;
        const std::size_t na = rng() % 3;
        std::size_t nc = rng() % 3;
        if (na == 0 && nc == 0)
            nc = 1;
        for (std::size_t j = 0; j < na; ++j)
            ante.push_back(static_cast<std::uint32_t>(rng() % gt.catoms.size()));
        for (std::size_t j = 0; j < nc; ++j)
            cons.push_back(static_cast<std::uint32_t>(rng() % gt.catoms.size()));
        add_clause(gt, std::move(ante), std::move(cons));
    }
    return gt;
}

} // namespace pscard::testutil

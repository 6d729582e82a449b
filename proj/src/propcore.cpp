#include "pscard/propcore.hpp"

#include <algorithm>
#include <bit>

namespace pscard {

Model Model::fromAtoms(std::size_t n, const std::vector<AtomId>& ids) {
    Model m = ofSize(n);
    for (AtomId a : ids)
        m.truth[a] = 1;
    return m;
}

Model Model::fromMask(std::size_t n, std::uint64_t mask) {
    Model m = ofSize(n);
    for (std::size_t i = 0; i < n; ++i)
        m.truth[i] = (mask >> i) & 1u;
    return m;
}

std::vector<AtomId> Model::trueAtoms() const {
    std::vector<AtomId> out;
    for (std::size_t i = 0; i < truth.size(); ++i)
        if (truth[i])
            out.push_back(static_cast<AtomId>(i));
    return out;
}

std::uint64_t Model::mask() const {
    if (truth.size() > 64)
        throw Error("model too large for a 64-bit mask");
    std::uint64_t m = 0;
    for (std::size_t i = 0; i < truth.size(); ++i)
        if (truth[i])
            m |= std::uint64_t(1) << i;
    return m;
}

bool sat_catom(const GroundCAtom& c, const Model& m) {
    std::int64_t count = 0;
    for (AtomId a : c.atoms)
        count += m.contains(a) ? 1 : 0;
    if (c.lower && count < *c.lower)
        return false;
    if (c.upper && count > *c.upper)
        return false;
    return true;
}

bool sat_clause(const GroundTheory& gt, const GroundClause& cl, const Model& m) {
    for (std::uint32_t idx : cl.consequent())
        if (sat_catom(gt.catoms[idx], m))
            return true;
    for (std::uint32_t idx : cl.antecedent())
        if (!sat_catom(gt.catoms[idx], m))
            return true;
    return false;
}

bool check_model(const GroundTheory& gt, const Model& m) {
    for (const GroundClause& cl : gt.clauses)
        if (!sat_clause(gt, cl, m))
            return false;
    return true;
}

namespace {

// Mask-based clause evaluation for the exhaustive oracle.
struct MaskEval {
    struct CAtomMask {
        std::uint64_t atoms = 0;
        std::int64_t lower = 0;   // effective, 0 when absent
        std::int64_t upper = 0;   // effective, k when absent
    };
    std::vector<CAtomMask> catoms;
    const GroundTheory* gt = nullptr;

    explicit MaskEval(const GroundTheory& g) : gt(&g) {
        for (const GroundCAtom& c : g.catoms) {
            CAtomMask cm;
            for (AtomId a : c.atoms)
                cm.atoms |= std::uint64_t(1) << a;
            cm.lower = c.lower.value_or(0);
            cm.upper = c.upper.value_or(static_cast<std::int64_t>(c.atoms.size()));
            catoms.push_back(cm);
        }
    }

    bool satCAtom(std::uint32_t idx, std::uint64_t m) const {
        const CAtomMask& c = catoms[idx];
        std::int64_t count = std::popcount(c.atoms & m);
        return count >= c.lower && count <= c.upper;
    }

    bool satClause(const GroundClause& cl, std::uint64_t m) const {
        for (std::uint32_t idx : cl.consequent())
            if (satCAtom(idx, m))
                return true;
        for (std::uint32_t idx : cl.antecedent())
            if (!satCAtom(idx, m))
                return true;
        return false;
    }

    bool check(std::uint64_t m) const {
        for (const GroundClause& cl : gt->clauses)
            if (!satClause(cl, m))
                return false;
        return true;
    }
};

} // namespace

std::vector<std::uint64_t> enumerate_model_masks(const GroundTheory& gt,
                                                 std::optional<std::uint64_t> limit) {
    std::size_t n = gt.numAtoms();
    if (n > 63)
        throw Error("too many atoms for exhaustive enumeration (" + std::to_string(n) + ")");
    if (!limit && n > kEnumerationGuard)
        throw Error("atom count " + std::to_string(n) + " exceeds the oracle guard (" +
                    std::to_string(kEnumerationGuard) + "); pass a limit to override");
    MaskEval ev(gt);
    std::vector<std::uint64_t> out;
    const std::uint64_t end = std::uint64_t(1) << n;
    for (std::uint64_t m = 0; m < end; ++m) {
        if (ev.check(m)) {
            out.push_back(m);
            if (limit && out.size() >= *limit)
                break;
        }
    }
    return out;
}

std::vector<Model> enumerate_models(const GroundTheory& gt, std::optional<std::uint64_t> limit) {
    std::vector<Model> out;
    for (std::uint64_t m : enumerate_model_masks(gt, limit))
        out.push_back(Model::fromMask(gt.numAtoms(), m));
    return out;
}

namespace {

bool is_ordinary(const GroundCAtom& c) {
    return c.atoms.size() == 1 && c.lower == 1 && c.upper == 1;
}

std::uint64_t binom(std::uint64_t n, std::uint64_t k) {
    if (k > n)
        return 0;
    k = std::min(k, n - k);
    std::uint64_t r = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        // r * (n - k + i) / i stays integral
        std::uint64_t m = n - k + i;
        if (r > UINT64_MAX / m)
            throw Error("CNF clause count overflows");
        r = r * m / i;
    }
    return r;
}

// Emits one clause per size-`pick` subset of `atoms`, literals mapped by f.
template <typename F>
void for_subsets(const std::vector<AtomId>& atoms, std::size_t pick, F&& emit) {
    if (pick > atoms.size())
        return;
    std::vector<std::size_t> idx(pick);
    for (std::size_t i = 0; i < pick; ++i)
        idx[i] = i;
    for (;;) {
        emit(idx);
        std::size_t i = pick;
        while (i > 0) {
            --i;
            if (idx[i] + (pick - i) < atoms.size()) {
                ++idx[i];
                for (std::size_t j = i + 1; j < pick; ++j)
                    idx[j] = idx[j - 1] + 1;
                break;
            }
            if (i == 0)
                return;
        }
        if (pick == 0)
            return;
    }
}

} // namespace

CnfTheory compile_cnf(const GroundTheory& gt, std::uint64_t maxClauses) {
    CnfTheory cnf;
    cnf.numVars = static_cast<std::uint32_t>(gt.numAtoms());

    // Pre-count to guard against the subset blow-up.
    std::uint64_t total = 0;
    auto countCAtom = [&](const GroundCAtom& c) {
        std::uint64_t k = c.atoms.size();
        if (c.upper && static_cast<std::uint64_t>(*c.upper) < k)
            total += binom(k, static_cast<std::uint64_t>(*c.upper) + 1);
        if (c.lower && *c.lower > 0) {
            std::int64_t need = static_cast<std::int64_t>(k) - *c.lower + 1;
            total += need >= 0 ? binom(k, static_cast<std::uint64_t>(need)) : 1;
        }
    };
    for (const GroundClause& cl : gt.clauses) {
        bool ordinary = true;
        for (std::uint32_t idx : cl.members)
            ordinary = ordinary && is_ordinary(gt.catoms[idx]);
        if (ordinary) {
            total += 1;
        } else if (cl.anteCount == 0 && cl.members.size() == 1) {
            countCAtom(gt.catoms[cl.members[0]]);
        } else {
            throw Error("clause outside the CNF compiler fragment");
        }
        if (total > maxClauses)
            throw Error("CNF exceeds " + std::to_string(maxClauses) + " clauses");
    }

    for (const GroundClause& cl : gt.clauses) {
        bool ordinary = true;
        for (std::uint32_t idx : cl.members)
            ordinary = ordinary && is_ordinary(gt.catoms[idx]);
        if (ordinary) {
            std::vector<std::int32_t> lits;
            for (std::uint32_t idx : cl.antecedent())
                lits.push_back(-static_cast<std::int32_t>(gt.catoms[idx].atoms[0] + 1));
            for (std::uint32_t idx : cl.consequent())
                lits.push_back(static_cast<std::int32_t>(gt.catoms[idx].atoms[0] + 1));
            cnf.clauses.push_back(std::move(lits));
            continue;
        }
        const GroundCAtom& c = gt.catoms[cl.members[0]];
        const std::size_t k = c.atoms.size();
        if (c.upper && static_cast<std::uint64_t>(*c.upper) < k) {
            // no (n+1)-subset may be all true
            for_subsets(c.atoms, static_cast<std::size_t>(*c.upper) + 1,
                        [&](const std::vector<std::size_t>& idx) {
                            std::vector<std::int32_t> lits;
                            for (std::size_t i : idx)
                                lits.push_back(-static_cast<std::int32_t>(c.atoms[i] + 1));
                            cnf.clauses.push_back(std::move(lits));
                        });
        }
        if (c.lower && *c.lower > 0) {
            std::int64_t need = static_cast<std::int64_t>(k) - *c.lower + 1;
            if (need < 0) {
                cnf.clauses.push_back({}); // more atoms required than exist
            } else {
                // every (k-m+1)-subset contains a true atom
                for_subsets(c.atoms, static_cast<std::size_t>(need),
                            [&](const std::vector<std::size_t>& idx) {
                                std::vector<std::int32_t> lits;
                                for (std::size_t i : idx)
                                    lits.push_back(static_cast<std::int32_t>(c.atoms[i] + 1));
                                cnf.clauses.push_back(std::move(lits));
                            });
            }
        }
    }
    return cnf;
}

std::string write_dimacs(const CnfTheory& cnf) {
    std::string s = "p cnf " + std::to_string(cnf.numVars) + " " +
                    std::to_string(cnf.clauses.size()) + "\n";
    for (const auto& cl : cnf.clauses) {
        for (std::int32_t l : cl) {
            s += std::to_string(l);
            s += ' ';
        }
        s += "0\n";
    }
    return s;
}

} // namespace pscard

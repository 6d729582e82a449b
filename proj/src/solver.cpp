#include "pscard/solver.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>

namespace pscard {

Solver::Solver(const GroundTheory& gt) : gt_(gt) {
    const std::size_t nAtoms = gt.numAtoms();
    values_.assign(nAtoms, Tri::Unknown);
    satLevel_.assign(gt.clauses.size(), -1);
    inDirty_.assign(gt.catoms.size(), 0);
    score_.assign(nAtoms, 0.0);
    consOcc_.assign(nAtoms, 0);
    anteOcc_.assign(nAtoms, 0);

    catoms_.reserve(gt.catoms.size());
    for (const GroundCAtom& c : gt.catoms) {
        CatomRT rt;
        rt.hasLower = c.lower.has_value();
        rt.hasUpper = c.upper.has_value();
        rt.lower = c.lower.value_or(0);
        rt.upper = c.upper.value_or(static_cast<std::int64_t>(c.atoms.size()));
        rt.begin = static_cast<std::uint32_t>(atomList_.size());
        atomList_.insert(atomList_.end(), c.atoms.begin(), c.atoms.end());
        rt.end = static_cast<std::uint32_t>(atomList_.size());
        rt.numUnknown = static_cast<std::int32_t>(c.atoms.size());
        catoms_.push_back(rt);
    }

    // CSR atom -> c-atom occurrences
    std::vector<std::uint32_t> cnt(nAtoms + 1, 0);
    for (AtomId a : atomList_)
        ++cnt[a + 1];
    atomOccsStart_.assign(nAtoms + 1, 0);
    for (std::size_t i = 0; i < nAtoms; ++i)
        atomOccsStart_[i + 1] = atomOccsStart_[i] + cnt[i + 1];
    atomOccs_.assign(atomList_.size(), 0);
    {
        std::vector<std::uint32_t> fill(atomOccsStart_.begin(), atomOccsStart_.end() - 1);
        for (std::uint32_t ci = 0; ci < catoms_.size(); ++ci)
            for (std::uint32_t i = catoms_[ci].begin; i < catoms_[ci].end; ++i)
                atomOccs_[fill[atomList_[i]]++] = ci;
    }

    // CSR c-atom -> clauses (duplicates when a clause repeats a member)
    std::vector<std::uint32_t> ccnt(gt.catoms.size() + 1, 0);
    for (const GroundClause& cl : gt.clauses)
        for (std::uint32_t m : cl.members)
            ++ccnt[m + 1];
    catomClausesStart_.assign(gt.catoms.size() + 1, 0);
    for (std::size_t i = 0; i < gt.catoms.size(); ++i)
        catomClausesStart_[i + 1] = catomClausesStart_[i] + ccnt[i + 1];
    catomClauses_.assign(catomClausesStart_.back(), 0);
    {
        std::vector<std::uint32_t> fill(catomClausesStart_.begin(), catomClausesStart_.end() - 1);
        for (std::uint32_t cli = 0; cli < gt.clauses.size(); ++cli)
            for (std::uint32_t m : gt.clauses[cli].members)
                catomClauses_[fill[m]++] = cli;
    }
}

Solver::CAtomStatus Solver::catomStatus(std::uint32_t idx) const {
    const CatomRT& c = catoms_[idx];
    const std::int64_t lo = c.numTrue;
    const std::int64_t hi = c.numTrue + c.numUnknown;
    if (hi < c.lower || lo > c.upper)
        return CAtomStatus::FixedFalse;
    if (lo >= c.lower && hi <= c.upper)
        return CAtomStatus::FixedTrue;
    return CAtomStatus::Open;
}

void Solver::assume(AtomId atom, bool value) {
    if (rootDone_)
        throw Error("assumptions must precede propagation");
    if (values_[atom] != Tri::Unknown) {
        if ((values_[atom] == Tri::True) != value)
            throw Error("contradictory assumption on atom " + std::to_string(atom));
        return;
    }
    assignAtom(atom, value);
}

void Solver::assignAtom(AtomId a, bool v) {
    assert(values_[a] == Tri::Unknown);
    values_[a] = v ? Tri::True : Tri::False;
    trail_.push_back(a);
    ++stats_.propagations;
    for (std::uint32_t k = atomOccsStart_[a]; k < atomOccsStart_[a + 1]; ++k) {
        std::uint32_t ci = atomOccs_[k];
        CatomRT& c = catoms_[ci];
        --c.numUnknown;
        if (v)
            ++c.numTrue;
        if (!inDirty_[ci]) {
            inDirty_[ci] = 1;
            dirty_.push_back(ci);
        }
    }
}

bool Solver::forceCAtom(std::uint32_t ci, bool mustHold) {
    CatomRT& c = catoms_[ci];
    const std::uint8_t bit = mustHold ? kMustTrue : kMustFalse;
    if (!(c.oblig & bit)) {
        if (c.oblig != 0)
            return false; // must both hold and not hold
        c.oblig |= bit;
        obligTrail_.push_back({ci, bit});
    }
    return applyObligation(ci);
}

bool Solver::applyObligation(std::uint32_t ci) {
    CatomRT& c = catoms_[ci];
    const CAtomStatus st = catomStatus(ci);
    const std::int64_t lo = c.numTrue;
    const std::int64_t hi = c.numTrue + c.numUnknown;
    if (c.oblig == kMustTrue) {
        if (st == CAtomStatus::FixedTrue)
            return true;
        if (st == CAtomStatus::FixedFalse)
            return false;
        if (lo == c.upper) { // no room for another true atom
            for (std::uint32_t i = c.begin; i < c.end; ++i)
                if (values_[atomList_[i]] == Tri::Unknown)
                    assignAtom(atomList_[i], false);
        } else if (hi == c.lower) { // every unknown atom is needed
            for (std::uint32_t i = c.begin; i < c.end; ++i)
                if (values_[atomList_[i]] == Tri::Unknown)
                    assignAtom(atomList_[i], true);
        }
        return true;
    }
    if (c.oblig == kMustFalse) {
        if (st == CAtomStatus::FixedFalse)
            return true;
        if (st == CAtomStatus::FixedTrue)
            return false;
        if (lo >= c.lower) {
            // the count cannot drop below the lower bound; it must overshoot
            if (hi == c.upper + 1)
                for (std::uint32_t i = c.begin; i < c.end; ++i)
                    if (values_[atomList_[i]] == Tri::Unknown)
                        assignAtom(atomList_[i], true);
        } else if (hi <= c.upper) {
            // the count cannot exceed the upper bound; it must undershoot
            if (lo == c.lower - 1)
                for (std::uint32_t i = c.begin; i < c.end; ++i)
                    if (values_[atomList_[i]] == Tri::Unknown)
                        assignAtom(atomList_[i], false);
        }
        return true;
    }
    return c.oblig == 0;
}

bool Solver::recheckClause(std::uint32_t cl) {
    if (satLevel_[cl] >= 0)
        return true;
    const GroundClause& clause = gt_.clauses[cl];
    std::uint32_t openIdx = 0;
    bool openIsAnte = false;
    std::uint32_t openCount = 0;
    for (std::uint32_t i = 0; i < clause.members.size(); ++i) {
        const std::uint32_t ci = clause.members[i];
        const bool ante = i < clause.anteCount;
        const CAtomStatus st = catomStatus(ci);
        if (st == CAtomStatus::Open) {
            // a repeated open member is the same obligation, not a second one
            if (openCount == 0) {
                openIdx = ci;
                openIsAnte = ante;
                openCount = 1;
            } else if (ci != openIdx || ante != openIsAnte) {
                openCount = 2;
            }
            continue;
        }
        const bool holds = st == CAtomStatus::FixedTrue;
        if (ante ? !holds : holds) {
            satLevel_[cl] = level();
            satTrail_.push_back(cl);
            return true;
        }
    }
    if (openCount == 0) {
        ++stats_.conflicts;
        return false;
    }
    if (openCount == 1)
        return forceCAtom(openIdx, !openIsAnte);
    return true;
}

bool Solver::propagate() {
    while (dirtyHead_ < dirty_.size()) {
        const std::uint32_t ci = dirty_[dirtyHead_++];
        inDirty_[ci] = 0;
        if (catoms_[ci].oblig != 0 && !applyObligation(ci))
            return false;
        for (std::uint32_t k = catomClausesStart_[ci]; k < catomClausesStart_[ci + 1]; ++k)
            if (!recheckClause(catomClauses_[k]))
                return false;
    }
    return true;
}

bool Solver::propagateRoot() {
    if (!rootDone_) {
        rootDone_ = true;
        // examine every clause once; later rechecks are change-driven
        for (std::uint32_t cl = 0; cl < gt_.clauses.size(); ++cl) {
            if (!recheckClause(cl) || !propagate()) {
                rootConflict_ = true;
                break;
            }
        }
        if (!rootConflict_ && !propagate())
            rootConflict_ = true;
        if (!rootConflict_) {
            for (std::uint32_t cl = 0; cl < gt_.clauses.size(); ++cl)
                if (satLevel_[cl] < 0)
                    rootActive_.push_back(cl);
        }
    }
    return !rootConflict_;
}

void Solver::undoTo(std::size_t trailSize, std::size_t obligSize, std::size_t satSize) {
    while (trail_.size() > trailSize) {
        const AtomId a = trail_.back();
        trail_.pop_back();
        const bool wasTrue = values_[a] == Tri::True;
        values_[a] = Tri::Unknown;
        for (std::uint32_t k = atomOccsStart_[a]; k < atomOccsStart_[a + 1]; ++k) {
            CatomRT& c = catoms_[atomOccs_[k]];
            ++c.numUnknown;
            if (wasTrue)
                --c.numTrue;
        }
    }
    while (obligTrail_.size() > obligSize) {
        auto [ci, bit] = obligTrail_.back();
        obligTrail_.pop_back();
        catoms_[ci].oblig &= static_cast<std::uint8_t>(~bit);
    }
    while (satTrail_.size() > satSize) {
        satLevel_[satTrail_.back()] = -1;
        satTrail_.pop_back();
    }
    for (std::uint32_t ci : dirty_)
        inDirty_[ci] = 0;
    dirty_.clear();
    dirtyHead_ = 0;
}

std::uint64_t Solver::assignmentHash() const {
    std::uint64_t h = 1469598103934665603ull;
    for (AtomId a : trail_) {
        h ^= (std::uint64_t(a) << 2) | (values_[a] == Tri::True ? 1u : 2u);
        h *= 1099511628211ull;
    }
    return h;
}

bool Solver::backtrack() {
    for (;;) {
        while (!decisions_.empty() && decisions_.back().flipped) {
            const Frame& f = decisions_.back();
            undoTo(f.trailSize, f.obligSize, f.satSize);
            decisions_.pop_back();
        }
        if (decisions_.empty())
            return false;
        Frame& f = decisions_.back();
        undoTo(f.trailSize, f.obligSize, f.satSize);
        assert(assignmentHash() == f.snapshotHash);
        f.flipped = true;
        assignAtom(f.atom, !f.firstValue);
        if (propagate())
            return true;
    }
}

std::pair<AtomId, bool> Solver::pickBranch() {
    std::fill(score_.begin(), score_.end(), 0.0);
    std::fill(consOcc_.begin(), consOcc_.end(), 0);
    std::fill(anteOcc_.begin(), anteOcc_.end(), 0);
    for (std::uint32_t cl : rootActive_) {
        if (satLevel_[cl] >= 0)
            continue;
        const GroundClause& clause = gt_.clauses[cl];
        std::uint32_t open = 0;
        for (std::uint32_t ci : clause.members)
            if (catomStatus(ci) == CAtomStatus::Open)
                ++open;
        if (open == 0)
            continue;
        const double w = std::ldexp(1.0, -static_cast<int>(std::min<std::uint32_t>(open, 60)));
        for (std::uint32_t i = 0; i < clause.members.size(); ++i) {
            const std::uint32_t ci = clause.members[i];
            if (catomStatus(ci) != CAtomStatus::Open)
                continue;
            const CatomRT& c = catoms_[ci];
            const bool ante = i < clause.anteCount;
            for (std::uint32_t k = c.begin; k < c.end; ++k) {
                const AtomId a = atomList_[k];
                if (values_[a] != Tri::Unknown)
                    continue;
                score_[a] += w;
                if (ante)
                    ++anteOcc_[a];
                else
                    ++consOcc_[a];
            }
        }
    }
    AtomId best = 0;
    double bestScore = -1.0;
    bool found = false;
    for (AtomId a = 0; a < values_.size(); ++a) {
        if (values_[a] != Tri::Unknown)
            continue;
        if (!found || score_[a] > bestScore) {
            found = true;
            best = a;
            bestScore = score_[a];
        }
    }
    assert(found);
    return {best, consOcc_[best] > anteOcc_[best]};
}

Model Solver::currentModel() const {
    Model m = Model::ofSize(values_.size());
    for (std::size_t i = 0; i < values_.size(); ++i)
        m.truth[i] = values_[i] == Tri::True ? 1 : 0;
    return m;
}

SolveResult Solver::solve(SolveMode mode, const std::function<bool(const Model&)>& onModel) {
    SolveResult res;
    if (!propagateRoot())
        return res;
    for (;;) {
        if (trail_.size() == values_.size()) {
            res.sat = true;
            ++res.count;
            if (onModel || mode != SolveMode::Count) {
                Model m = currentModel();
                assert(check_model(gt_, m));
                if (!onModel && (mode == SolveMode::All || mode == SolveMode::One))
                    res.models.push_back(m);
                if (onModel && !onModel(m))
                    return res;
            }
            if (mode == SolveMode::One)
                return res;
            if (!backtrack())
                return res;
            continue;
        }
        auto [atom, firstValue] = pickBranch();
        Frame f;
        f.atom = atom;
        f.firstValue = firstValue;
        f.trailSize = trail_.size();
        f.obligSize = obligTrail_.size();
        f.satSize = satTrail_.size();
#ifndef NDEBUG
        f.snapshotHash = assignmentHash();
#endif
        decisions_.push_back(f);
        ++stats_.decisions;
        assignAtom(atom, firstValue);
        if (!propagate() && !backtrack())
            return res;
    }
}

SolveResult solve(const GroundTheory& gt, SolveMode mode,
                  const std::function<bool(const Model&)>& onModel) {
    Solver s(gt);
    return s.solve(mode, onModel);
}

} // namespace pscard

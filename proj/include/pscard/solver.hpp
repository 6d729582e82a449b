#pragma once

#include "pscard/ground.hpp"
#include "pscard/propcore.hpp"

#include <cstdint>
#include <functional>
#include <vector>

namespace pscard {

enum class SolveMode { One, All, Count };

struct SolveResult {
    bool sat = false;
    std::uint64_t count = 0;
    std::vector<Model> models; // filled in All mode when no callback is given
};

struct SolverStats {
    std::uint64_t decisions = 0;
    std::uint64_t propagations = 0;
    std::uint64_t conflicts = 0;
};

/// Complete Davis-Putnam style search over a propositional theory with
/// native cardinality propagation: per-c-atom true/unknown counters,
/// chronological backtracking, no learning. One instance owns its state;
/// the ground theory itself is never modified.
class Solver {
public:
    enum class Tri : std::int8_t { False = 0, True = 1, Unknown = -1 };
    enum class CAtomStatus { FixedTrue, FixedFalse, Open };

    explicit Solver(const GroundTheory& gt);

    /// Root-level assumption; takes effect before search. Throws if the
    /// atom is already assumed the other way.
    void assume(AtomId atom, bool value);

    /// Propagates root assumptions to fixpoint. Returns false on conflict.
    bool propagateRoot();

    Tri value(AtomId atom) const { return values_[atom]; }

    /// Status of the c-atom with the given index in the theory's table,
    /// under the current partial assignment.
    CAtomStatus catomStatus(std::uint32_t idx) const;

    /// Runs the search. onModel (if given) is called for every model; a
    /// false return stops the search early.
    SolveResult solve(SolveMode mode, const std::function<bool(const Model&)>& onModel = {});

    const SolverStats& stats() const { return stats_; }

private:
    struct CatomRT {
        std::int64_t lower = 0, upper = 0;
        bool hasLower = false, hasUpper = false;
        std::uint32_t begin = 0, end = 0; // range in atomList_
        std::int32_t numTrue = 0, numUnknown = 0;
        std::uint8_t oblig = 0; // 1 = must hold, 2 = must not hold
    };
    struct Frame {
        AtomId atom = 0;
        bool firstValue = false;
        bool flipped = false;
        std::size_t trailSize = 0, obligSize = 0, satSize = 0;
        std::uint64_t snapshotHash = 0;
    };
    static constexpr std::uint8_t kMustTrue = 1;
    static constexpr std::uint8_t kMustFalse = 2;

    const GroundTheory& gt_;
    std::vector<Tri> values_;
    std::vector<AtomId> trail_;
    std::vector<AtomId> atomList_;                  // flat c-atom membership
    std::vector<CatomRT> catoms_;
    std::vector<std::uint32_t> atomOccs_, atomOccsStart_;   // atom -> c-atoms
    std::vector<std::uint32_t> catomClauses_, catomClausesStart_; // c-atom -> clauses
    std::vector<std::int32_t> satLevel_;            // -1 = not satisfied
    std::vector<std::uint32_t> satTrail_;
    std::vector<std::pair<std::uint32_t, std::uint8_t>> obligTrail_;
    std::vector<std::uint32_t> rootActive_;    // clauses not satisfied at root
    std::vector<Frame> decisions_;
    std::vector<std::uint32_t> dirty_;
    std::size_t dirtyHead_ = 0;
    std::vector<std::uint8_t> inDirty_;
    SolverStats stats_;
    bool rootDone_ = false;
    bool rootConflict_ = false;
    std::vector<double> score_;
    std::vector<std::int32_t> consOcc_, anteOcc_;

    int level() const { return static_cast<int>(decisions_.size()); }
    void assignAtom(AtomId a, bool v);
    bool propagate();
    bool recheckClause(std::uint32_t cl);
    bool forceCAtom(std::uint32_t c, bool mustHold);
    bool applyObligation(std::uint32_t c);
    void undoTo(std::size_t trailSize, std::size_t obligSize, std::size_t satSize);
    bool backtrack();
    std::pair<AtomId, bool> pickBranch();
    std::uint64_t assignmentHash() const;
    Model currentModel() const;
};

/// Convenience wrapper: fresh solver, single call.
SolveResult solve(const GroundTheory& gt, SolveMode mode,
                  const std::function<bool(const Model&)>& onModel = {});

} // namespace pscard

#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "propp/modes.hpp"

namespace propp {

// The unique 4-tuple of directions, consecutive in rotor order, whose
// prefix influence sums all increase within a phase.
struct Block {
    std::array<Dir, 4> dirs;
    std::array<bool, 4> increasing;  // type signature, true = ->
};

struct PhaseRow {
    long long lo;
    long long hi;  // -1 for the open final phase [max EX, T]
    Block block;
};

// Schedule of odd chips realizing MAXCON: at each used extremal time, the
// 0..3 directions sent, with the whole direction stream obeying the rotor
// sequence along increasing t (the orientation of the worst-case tables).
struct BlockConfiguration {
    Vertex vertex;
    RotorSequence seq;
    std::vector<std::pair<long long, std::vector<Dir>>> schedule;  // ascending t
    Rational contribution;
    std::vector<PhaseRow> phases;

    std::vector<long long> used_times() const;
    int odd_chip_count() const;
};

/// Block of the phase [lo, hi] (hi < 0 for the final phase). Throws
/// std::logic_error if no type signature matches, which would indicate a
/// violated invariant upstream.
Block block_of_phase(const ModeProfile& profile, long long lo, long long hi);

BlockConfiguration block_configuration(Vertex x, const RotorSequence& seq);

/// Contribution of the block configuration (Lemma-BC value); >= 0.
Rational maxcon(Vertex x, const RotorSequence& seq);

/// Minimal contribution via the mirror symmetries:
/// -maxcon((-x1,x2)) for circular and x-alternating sequences,
/// -maxcon((x1,-x2)) for y-alternating ones.
Rational mincon(Vertex x, const RotorSequence& seq);

/// Exhaustive oracle: maximum over all 4 rotor phases x 4^|EX| odd-chip
/// residue choices, evaluated exactly. Intended for small |x|inf.
Rational brute_force_maxcon(Vertex x, const RotorSequence& seq);

// Enumeration of abstract mode patterns (relative extrema order + initial
// monotonicities) filtered by the two influence-sum properties, counting
// how many extremal times the induced block configuration actually uses.
struct AbstractModeReport {
    long long unimodal_total = 0;
    long long unimodal_valid = 0;
    int unimodal_max_used = 0;
    long long bimodal_total = 0;
    long long bimodal_valid = 0;
    int bimodal_max_used = 0;
};

AbstractModeReport enumerate_abstract_modes();

}  // namespace propp

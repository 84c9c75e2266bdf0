#pragma once

#include <map>
#include <string>
#include <vector>

#include "propp/kernel.hpp"
#include "propp/lattice.hpp"
#include "propp/rational.hpp"

namespace propp {

// Propp machine state. Chip counts are nonnegative integers; rotors are
// stored sparsely with a configurable default for never-touched vertices.
struct ProppState {
    RotorSequence seq = RotorSequence::clockwise();
    std::map<Vertex, long long> chips;
    std::map<Vertex, Dir> rotors;
    Dir default_rotor = Dir::NE;
    long long time = 0;

    Dir rotor_at(Vertex v) const;
};

struct LinearState {
    std::map<Vertex, Rational> chips;
    long long time = 0;
};

/// One synchronous step: a vertex with k chips and rotor a sends them in
/// directions a, next(a), ..., next^{k-1}(a) and ends with rotor next^k(a).
ProppState propp_step(const ProppState& s);

/// One linear step: every pile splits into four exact quarters.
LinearState linear_step(const LinearState& s);

LinearState to_linear(const ProppState& s);

/// Throws std::invalid_argument unless all chips sit on vertices ~ time.
void check_parity(const ProppState& s);

struct ProppTrace {
    ProppState initial;
    std::vector<std::map<Vertex, long long>> counts;  // counts[t] = f(.,t), t = 0..T
};

ProppTrace run_with_trace(const ProppState& initial, long long steps);

/// f(0,T) - E(0,T), both machines run from the same even initial state.
Rational discrepancy(const ProppState& initial, long long horizon);

/// Per-vertex contributions from the occupation record: chip i of a vertex
/// (in forward time) moved in direction next^i(arr0) and contributes
/// inf_single at reverse time T - s_i. Sums to the discrepancy.
std::map<Vertex, Rational> contribution_from_trace(const ProppTrace& trace, long long horizon);

// Prescribed chip counts modulo 4. Residue 0 is required wherever x !~ t.
struct OddChipSchedule {
    std::map<std::pair<Vertex, long long>, int> entries;  // (x, t) -> 0..3

    void validate(long long horizon) const;
};

/// Build an even initial configuration whose Propp run satisfies
/// f(x,t) == pi(x,t) (mod 4) for all t <= horizon and all x with
/// |x|_1 <= window. Rotors (sparse + default) are taken from
/// `rotor_template`; horizon is capped at 6 to bound pile sizes.
ProppState mod4_forcing_construct(const OddChipSchedule& schedule, long long horizon,
                                  long long window, const ProppState& rotor_template);

// JSON snapshot {time, chips:[[x1,x2,count]...], rotors:[[x1,x2,dir]...]}
// plus the rotor sequence and default rotor.
std::string state_to_json(const ProppState& s);
ProppState state_from_json(const std::string& text);
ProppState load_state(const std::string& path);
void save_state(const ProppState& s, const std::string& path);

}  // namespace propp

#pragma once

#include <array>
#include <functional>
#include <vector>

#include "propp/kernel.hpp"
#include "propp/lattice.hpp"
#include "propp/rational.hpp"

namespace propp {

// Integer quartic in t, ascending coefficients c[0] + c[1] t + ... + c[4] t^4.
// May degenerate to lower degree or to the zero polynomial.
struct QuarticPoly {
    std::array<Int, 5> c{};

    bool is_zero() const;
    int degree() const;  // -1 for the zero polynomial
    Int eval(long long t) const;

    friend QuarticPoly operator+(const QuarticPoly& p, const QuarticPoly& q);
};

/// Sign polynomial of the discrete derivative of inf_single(x,a,.):
/// sign p(x,a,t) == sign (inf(x,a,t+2) - inf(x,a,t)) wherever the shared
/// positive factor is defined (t >= max(1, |x|inf - 2), t ~ x).
QuarticPoly p_poly(Vertex x, Dir a);

/// Number of sign changes between consecutive nonzero coefficients.
/// Throws std::invalid_argument on the zero polynomial.
int descartes_variations(const QuarticPoly& p);

/// Coefficients of q(t + b); used as a certified scan stop: zero sign
/// variations of the shifted polynomial means no real roots beyond b.
QuarticPoly taylor_shift(const QuarticPoly& q, long long b);

enum class ExtremumKind { Min, Max };

struct Extremum {
    long long t;
    ExtremumKind kind;

    friend bool operator==(const Extremum&, const Extremum&) = default;
};

/// Locate all monotonicity changes of an influence function whose discrete
/// derivative has the sign of `dp`, by exact sign scanning over the
/// parity-valid integers. Ambiguous (flat) stretches resolve to the first
/// time. `inf_at` is consulted once, at the first scanned time, to anchor
/// the boundary against the all-zero prefix; it is never called for large t.
std::vector<Extremum> scan_extrema(Vertex x, const QuarticPoly& dp,
                                   const std::function<Rational(long long)>& inf_at);

std::vector<Extremum> dir_extrema(Vertex x, Dir a);
std::vector<Extremum> pair_extrema(Vertex x, Dir a, Dir b);

/// Algebraic test for inf_single(x,a,.) having a strictly bimodal shape:
/// -a1x1 > a2x2 and 2 a2x2 > -a1x1, or the same with the roles swapped.
/// This is the Lemma-INF-style sandwich with the boundary cases resolved
/// against the exact scan (which is normative); the norm gate of the
/// literal statement is dropped because boundary minima at t = |x|inf make
/// it undercount for small vertices.
bool strict_bimodality_criterion(Vertex x, Dir a);

// Monotone direction of an influence function inside a phase, derived from
// its own extrema: increasing right after a minimum / before a maximum.
// Flat only for identically-zero functions (symmetric pair sums).
enum class Mono { Increasing, Decreasing, Flat };

/// hi < 0 means the unbounded final phase.
Mono mono_in_phase(const std::vector<Extremum>& extrema, long long lo, long long hi);

struct ModeProfile {
    Vertex vertex;
    RotorSequence seq;
    // Indexed by static_cast<int>(Dir).
    std::array<std::vector<Extremum>, 4> dir_extrema;
    // Pairs (R1,R2) and (R2,R3) of seq; the other two consecutive pairs are
    // their negations (times equal, kinds flipped).
    std::array<std::vector<Extremum>, 2> pair_extrema;
    std::vector<long long> extremal_times;  // sorted union

    bool dir_strictly_bimodal(Dir a) const {
        return dir_extrema[static_cast<int>(a)].size() == 2;
    }

    /// Monotone direction of the ordered consecutive pair (seq[i], seq[i+1])
    /// on phase [lo, hi].
    Mono pair_mono(int i, long long lo, long long hi) const;
};

/// Compute all extremal times of x under seq: the union over the four
/// single directions and the two independent consecutive pairs.
ModeProfile extremal_times(Vertex x, const RotorSequence& seq);

}  // namespace propp

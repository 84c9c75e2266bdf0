#pragma once

#include <span>

#include "propp/lattice.hpp"
#include "propp/rational.hpp"

namespace propp {

/// Probability that a simple random walk started at x sits at the origin
/// after t steps: 4^-t C(t,(t+x1)/2) C(t,(t+x2)/2) when x ~ t and
/// |x|inf <= t, else 0. Negative t yields 0.
Rational h_prob(Vertex x, long long t);

/// Influence of one Propp move from x in direction a on the origin,
/// t steps before measurement: H(x+a, t-1) - H(x, t). Total for t >= 0.
Rational inf_single(Vertex x, Dir a, long long t);

/// Sum of inf_single over a list of distinct directions (at most four).
/// Any list of distinct directions is consecutive under some rotor
/// sequence; duplicates are rejected.
Rational inf_seq(Vertex x, std::span<const Dir> dirs, long long t);

/// Closed form ((a1 x1 a2 x2)/t^2 - (a1 x1 + a2 x2)/t) H(x,t), t >= 1.
/// Equal to inf_single wherever both are defined.
Rational inf_closed_form(Vertex x, Dir a, long long t);

// Double-precision fast path (log-gamma based). Only used behind the
// explicit --float flag; cross-checked against the exact values on a
// sample by the callers that enable it.
double h_prob_fp(Vertex x, long long t);
double inf_single_fp(Vertex x, Dir a, long long t);

}  // namespace propp

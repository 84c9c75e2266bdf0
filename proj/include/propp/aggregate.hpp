#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "propp/blockcfg.hpp"

namespace propp {

enum class Regime { Circular, NonCircular, PerVertexBest };

std::string to_string(Regime r);
Regime parse_regime(std::string_view s);

/// Representative sequence used for a fixed-sequence regime.
RotorSequence regime_sequence(Regime r);

struct SumReport {
    long long radius = 0;
    Regime regime = Regime::Circular;
    Rational partial_sum;
    std::vector<Rational> ring_subtotals;  // index = ring radius, 0..radius
    bool float_path = false;
    double float_sum = 0.0;
};

struct GridSumOptions {
    int threads = 1;
    std::string checkpoint_path;  // empty = no checkpointing
    bool float_path = false;      // double fast path, cross-checked on a sample
};

/// Exact sum of maxcon over all vertices with |x|inf <= radius.
/// Deterministic and independent of the thread count: ring subtotals are
/// computed in a fixed vertex order and combined in ring order.
SumReport grid_sum(long long radius, Regime regime, const GridSumOptions& opt = {});

void write_ring_csv(const SumReport& report, std::ostream& os);
std::string sum_report_json(const SumReport& report);

// Checkpoint files hold one completed ring per line: "R;regime;num;den".
void append_checkpoint_line(const std::string& path, long long ring, Regime regime,
                            const Rational& subtotal);
/// Ring subtotals already present for this regime (any line order).
std::vector<std::optional<Rational>> load_checkpoint(const std::string& path,
                                                     Regime regime, long long radius);

// Enclosing intervals for the maximizers of H(x,t)/t and H(x,t)/t^2.
struct TmaxBounds {
    Rational t_lo, t_hi;    // (x1^2+x2^2)/4 - 2 .. + 1
    Rational tp_lo, tp_hi;  // (x1^2+x2^2)/6 - 1 .. + 2
};

TmaxBounds t_max_bounds(Vertex x);

// Certified upper bounds for the tail sum beyond the cutoff, following the
// displayed estimate chain with 800 replaced by the cutoff. Finite sums are
// exact rationals; the arctan/log/pi terms are evaluated in directed-rounding
// MPFR arithmetic and converted upward to rationals, so every field is a
// true upper bound.
struct TailReport {
    long long cutoff = 0;
    Rational e1a, e1b, e1c;  // the three E1 pieces
    Rational e1;             // e1a + e1b + e1c
    Rational e2;
    Rational e;              // 4 e1 + 2 e2
};

/// Requires cutoff >= 88 (the constants 17 and 217 hold from there on).
TailReport tail_bound(long long cutoff);

std::string tail_report_json(const TailReport& report);

struct C2Interval {
    Rational lower;  // grid sum
    Rational upper;  // grid sum + tail bound
};

C2Interval c2_interval(const SumReport& sum, const TailReport& tail);

// Per-vertex export rows backing the data renditions of the worst-case
// figures: maxcon, used times, odd chips, scheduled directions.
void write_vertex_csv(long long radius, const RotorSequence& seq, std::ostream& os);

}  // namespace propp

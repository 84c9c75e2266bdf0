#include <doctest.h>

#include <stdexcept>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "propp/aggregate.hpp"

using namespace propp;

TEST_CASE("t_max_bounds hold against an exact scan") {
    for (long long x1 = 0; x1 <= 12; ++x1)
        for (long long x2 = x1; x2 <= 12; ++x2) {
            if (((x1 - x2) & 1LL) != 0 || (x1 == 0 && x2 == 0)) continue;
            if (linf_norm({x1, x2}) < 6) continue;
            const Vertex x{x1, x2};
            const auto b = t_max_bounds(x);
            const long long n2 = x1 * x1 + x2 * x2;
            // exact scan of H/t and H/t^2 over the parity grid
            long long best_t = -1, best_tp = -1;
            Rational best_v(0), best_vp(0);
            int changes_t = 0;
            Rational prev(0);
            bool increasing = true;
            const long long lo = linf_norm(x);
            for (long long t = lo; t <= n2 + 24; t += 2) {
                const Rational h = h_prob(x, t);
                Rational v = h / to_rational_ll(t);
                Rational vp = v / to_rational_ll(t);
                if (best_t < 0 || v >= best_v) {
                    best_v = v;
                    best_t = t;
                }
                if (best_tp < 0 || vp >= best_vp) {
                    best_vp = vp;
                    best_tp = t;
                }
                if (t > lo) {
                    if (increasing && v < prev) {
                        increasing = false;
                        ++changes_t;
                    } else if (!increasing && v > prev) {
                        increasing = true;
                        ++changes_t;
                    }
                }
                prev = v;
            }
            CHECK(changes_t <= 1);  // unimodal over the scanned range
            CHECK(to_rational_ll(best_t) >= b.t_lo);
            CHECK(to_rational_ll(best_t) <= b.t_hi);
            CHECK(to_rational_ll(best_tp) >= b.tp_lo);
            CHECK(to_rational_ll(best_tp) <= b.tp_hi);
        }
}

TEST_CASE("tail bounds at the published cutoff") {
    const auto rep = tail_bound(800);
    CHECK(rep.e2 <= Rational(11, 10000));
    CHECK(rep.e1a <= Rational(46, 10000));
    CHECK(rep.e1 <= Rational(380, 10000));
    CHECK(rep.e <= Rational(16, 100));
    CHECK(rep.e == 4 * rep.e1 + 2 * rep.e2);
    CHECK(rep.e1 == rep.e1a + rep.e1b + rep.e1c);
    CHECK_THROWS_AS(tail_bound(87), std::invalid_argument);
}

TEST_CASE("tail bound scales with the cutoff") {
    const auto a = tail_bound(100);
    const auto b = tail_bound(200);
    CHECK(b.e < a.e);
    CHECK(a.e > 0);
}

TEST_CASE("grid_sum small radii") {
    GridSumOptions opt;
    opt.threads = 2;
    const auto r0 = grid_sum(0, Regime::Circular, opt);
    CHECK(r0.partial_sum == 0);

    const auto r6c = grid_sum(6, Regime::Circular, opt);
    const auto r6n = grid_sum(6, Regime::NonCircular, opt);
    const auto r6b = grid_sum(6, Regime::PerVertexBest, opt);
    CHECK(r6c.partial_sum > 0);
    CHECK(r6b.partial_sum >= r6c.partial_sum);
    CHECK(r6b.partial_sum >= r6n.partial_sum);

    // thread invariance (exact arithmetic, fixed reduction order)
    GridSumOptions opt1;
    opt1.threads = 1;
    const auto again = grid_sum(6, Regime::Circular, opt1);
    CHECK(again.partial_sum == r6c.partial_sum);

    // monotone ring prefix sums
    Rational acc(0);
    for (const auto& s : r6c.ring_subtotals) {
        CHECK(s >= 0);
        acc += s;
    }
    CHECK(acc == r6c.partial_sum);
}

TEST_CASE("float fast path approximates the exact sum") {
    GridSumOptions opt;
    opt.threads = 2;
    opt.float_path = true;
    const auto fp = grid_sum(6, Regime::Circular, opt);
    const auto ex = grid_sum(6, Regime::Circular, {});
    CHECK(fp.float_sum == doctest::Approx(to_double(ex.partial_sum)).epsilon(1e-9));
}

TEST_CASE("checkpoint round trip and resume") {
    const std::string path = "test_checkpoint_tmp.txt";
    std::remove(path.c_str());
    GridSumOptions opt;
    opt.threads = 1;
    opt.checkpoint_path = path;
    const auto full = grid_sum(5, Regime::NonCircular, opt);
    const auto loaded = load_checkpoint(path, Regime::NonCircular, 5);
    for (long long r = 0; r <= 5; ++r) {
        REQUIRE(loaded[static_cast<size_t>(r)].has_value());
        CHECK(*loaded[static_cast<size_t>(r)] == full.ring_subtotals[static_cast<size_t>(r)]);
    }
    // resuming reuses every ring
    const auto resumed = grid_sum(5, Regime::NonCircular, opt);
    CHECK(resumed.partial_sum == full.partial_sum);
    // other regimes ignore these lines
    const auto other = load_checkpoint(path, Regime::Circular, 5);
    for (const auto& s : other) CHECK_FALSE(s.has_value());
    std::remove(path.c_str());
}

TEST_CASE("c2 interval composition") {
    SumReport sum;
    sum.radius = 800;
    sum.regime = Regime::Circular;
    sum.partial_sum = Rational(7832, 1000);  // published circular grid value
    const auto tail = tail_bound(800);
    const auto c2 = c2_interval(sum, tail);
    CHECK(c2.lower == sum.partial_sum);
    CHECK(c2.upper == sum.partial_sum + tail.e);
    CHECK(c2.upper > Rational(7985, 1000) - Rational(1, 1000));
    CHECK(c2.upper < Rational(7985, 1000) + Rational(2, 1000));

    SumReport wrong = sum;
    wrong.radius = 400;
    CHECK_THROWS_AS(c2_interval(wrong, tail), std::invalid_argument);
}

TEST_CASE("csv and json exports") {
    const auto rep = grid_sum(3, Regime::Circular, {});
    std::ostringstream os;
    write_ring_csv(rep, os);
    CHECK(os.str().find("ring,numerator,denominator,decimal") == 0);
    const auto j = sum_report_json(rep);
    CHECK(j.find("\"radius\": 3") != std::string::npos);

    std::ostringstream vs;
    write_vertex_csv(2, RotorSequence::clockwise(), vs);
    CHECK(vs.str().find("x1,x2,numerator") == 0);
}

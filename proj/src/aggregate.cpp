#include "propp/aggregate.hpp"

#include <mpfr.h>

#include <atomic>
#include <cmath>
#include <fstream>
#include <mutex>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

namespace propp {

std::string to_string(Regime r) {
    switch (r) {
        case Regime::Circular: return "circular";
        case Regime::NonCircular: return "noncircular";
        case Regime::PerVertexBest: return "best";
    }
    throw std::invalid_argument("to_string: bad regime");
}

Regime parse_regime(std::string_view s) {
    if (s == "circular") return Regime::Circular;
    if (s == "noncircular" || s == "non-circular") return Regime::NonCircular;
    if (s == "best" || s == "per-vertex-best") return Regime::PerVertexBest;
    throw std::invalid_argument("parse_regime: expected circular/noncircular/best");
}

RotorSequence regime_sequence(Regime r) {
    switch (r) {
        case Regime::Circular: return RotorSequence::clockwise();
        case Regime::NonCircular: return RotorSequence::parse("NE,NW,SE,SW");
        case Regime::PerVertexBest: break;
    }
    throw std::invalid_argument("regime_sequence: per-vertex-best has no single sequence");
}

namespace {

std::vector<Vertex> ring_vertices(long long r) {
    std::vector<Vertex> vs;
    if (r == 0) {
        vs.push_back({0, 0});
        return vs;
    }
    for (long long x1 = -r; x1 <= r; ++x1)
        for (long long x2 : {-r, r})
            if (((x1 - x2) & 1LL) == 0) vs.push_back({x1, x2});
    for (long long x2 = -r + 1; x2 <= r - 1; ++x2)
        for (long long x1 : {-r, r})
            if (((x1 - x2) & 1LL) == 0) vs.push_back({x1, x2});
    return vs;
}

Rational vertex_maxcon(Vertex v, Regime regime) {
    if (regime == Regime::PerVertexBest) {
        Rational best(0);
        for (const auto& seq : RotorSequence::all()) {
            Rational m = maxcon(v, seq);
            if (m > best) best = m;
        }
        return best;
    }
    return maxcon(v, regime_sequence(regime));
}

double vertex_maxcon_fp(Vertex v, const RotorSequence& seq) {
    // Same schedule machinery (scans are exact either way); influence sums
    // in double precision.
    BlockConfiguration cfg = block_configuration(v, seq);
    double s = 0;
    for (const auto& [t, dirs] : cfg.schedule)
        for (Dir d : dirs) s += inf_single_fp(v, d, t);
    return s;
}

double vertex_maxcon_fp(Vertex v, Regime regime) {
    if (regime == Regime::PerVertexBest) {
        double best = 0;
        for (const auto& seq : RotorSequence::all()) best = std::max(best, vertex_maxcon_fp(v, seq));
        return best;
    }
    return vertex_maxcon_fp(v, regime_sequence(regime));
}

}  // namespace

SumReport grid_sum(long long radius, Regime regime, const GridSumOptions& opt) {
    if (radius < 0) throw std::invalid_argument("grid_sum: negative radius");
    if (opt.float_path && !opt.checkpoint_path.empty())
        throw std::invalid_argument("grid_sum: checkpointing requires the exact path");

    SumReport rep;
    rep.radius = radius;
    rep.regime = regime;
    rep.float_path = opt.float_path;
    rep.ring_subtotals.assign(static_cast<size_t>(radius) + 1, Rational(0));

    std::vector<std::optional<Rational>> done(static_cast<size_t>(radius) + 1);
    if (!opt.checkpoint_path.empty())
        done = load_checkpoint(opt.checkpoint_path, regime, radius);

    std::vector<double> fp_rings(static_cast<size_t>(radius) + 1, 0.0);
    std::atomic<long long> next_ring{0};
    std::atomic<long long> sample_counter{0};
    std::mutex ckpt_mutex;
    std::atomic<bool> failed{false};
    std::string failure;
    std::mutex failure_mutex;

    auto worker = [&]() {
        try {
            for (long long r; (r = next_ring.fetch_add(1)) <= radius;) {
                if (failed.load()) return;
                if (done[static_cast<size_t>(r)]) {
                    rep.ring_subtotals[static_cast<size_t>(r)] = *done[static_cast<size_t>(r)];
                    continue;
                }
                if (opt.float_path) {
                    double acc = 0;
                    for (Vertex v : ring_vertices(r)) {
                        const double fp = vertex_maxcon_fp(v, regime);
                        acc += fp;
                        // 1-in-128 exact cross-check of the fast path.
                        if (sample_counter.fetch_add(1) % 128 == 0) {
                            const double ex = to_double(vertex_maxcon(v, regime));
                            if (std::abs(fp - ex) > 1e-9 * (std::abs(ex) + 1e-15))
                                throw std::runtime_error("float fast path diverged from exact value");
                        }
                    }
                    fp_rings[static_cast<size_t>(r)] = acc;
                } else {
                    Rational acc(0);
                    for (Vertex v : ring_vertices(r)) acc += vertex_maxcon(v, regime);
                    rep.ring_subtotals[static_cast<size_t>(r)] = acc;
                    if (!opt.checkpoint_path.empty()) {
                        std::lock_guard<std::mutex> lock(ckpt_mutex);
                        append_checkpoint_line(opt.checkpoint_path, r, regime, acc);
                    }
                }
            }
        } catch (const std::exception& e) {
            std::lock_guard<std::mutex> lock(failure_mutex);
            failed = true;
            failure = e.what();
        }
    };

    const int nt = std::max(1, opt.threads);
    std::vector<std::thread> pool;
    for (int i = 0; i < nt - 1; ++i) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
    if (failed) throw std::runtime_error("grid_sum: " + failure);

    Rational total(0);
    double fp_total = 0;
    for (long long r = 0; r <= radius; ++r) {
        total += rep.ring_subtotals[static_cast<size_t>(r)];
        fp_total += fp_rings[static_cast<size_t>(r)];
    }
    rep.partial_sum = total;
    rep.float_sum = fp_total;
    return rep;
}

void write_ring_csv(const SumReport& report, std::ostream& os) {
    os << "ring,numerator,denominator,decimal\n";
    for (size_t r = 0; r < report.ring_subtotals.size(); ++r) {
        const Rational& q = report.ring_subtotals[r];
        os << r << "," << q.get_num().get_str() << "," << q.get_den().get_str() << ","
           << decimal_string(q, 12) << "\n";
    }
}

std::string sum_report_json(const SumReport& report) {
    nlohmann::json j;
    j["radius"] = report.radius;
    j["regime"] = to_string(report.regime);
    if (report.float_path) {
        j["float"] = true;
        j["sum"] = report.float_sum;
    } else {
        j["sum"] = {{"numerator", report.partial_sum.get_num().get_str()},
                    {"denominator", report.partial_sum.get_den().get_str()},
                    {"decimal", decimal_string(report.partial_sum, 12)}};
        auto& rings = j["rings"] = nlohmann::json::array();
        for (size_t r = 0; r < report.ring_subtotals.size(); ++r) {
            const Rational& q = report.ring_subtotals[r];
            rings.push_back({{"ring", r},
                             {"numerator", q.get_num().get_str()},
                             {"denominator", q.get_den().get_str()}});
        }
    }
    return j.dump(2);
}

void append_checkpoint_line(const std::string& path, long long ring, Regime regime,
                            const Rational& subtotal) {
    std::ofstream out(path, std::ios::app);
    if (!out) throw std::runtime_error("cannot open checkpoint file: " + path);
    out << ring << ";" << to_string(regime) << ";" << subtotal.get_num().get_str() << ";"
        << subtotal.get_den().get_str() << "\n";
}

std::vector<std::optional<Rational>> load_checkpoint(const std::string& path, Regime regime,
                                                     long long radius) {
    std::vector<std::optional<Rational>> out(static_cast<size_t>(radius) + 1);
    std::ifstream in(path);
    if (!in) return out;  // nothing yet; the file appears on first append
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string ring_s, regime_s, num_s, den_s;
        if (!std::getline(ss, ring_s, ';') || !std::getline(ss, regime_s, ';') ||
            !std::getline(ss, num_s, ';') || !std::getline(ss, den_s))
            throw std::runtime_error("malformed checkpoint line: " + line);
        if (regime_s != to_string(regime)) continue;
        const long long r = std::stoll(ring_s);
        if (r < 0 || r > radius) continue;
        Rational q{Int(num_s), Int(den_s)};
        q.canonicalize();
        out[static_cast<size_t>(r)] = q;
    }
    return out;
}

TmaxBounds t_max_bounds(Vertex x) {
    if (x == Vertex{0, 0}) throw std::invalid_argument("t_max_bounds: x must be nonzero");
    const Int n2 = to_int(x.x1) * to_int(x.x1) + to_int(x.x2) * to_int(x.x2);
    TmaxBounds b;
    b.t_lo = Rational(n2, Int(4)) - 2;
    b.t_hi = Rational(n2, Int(4)) + 1;
    b.tp_lo = Rational(n2, Int(6)) - 1;
    b.tp_hi = Rational(n2, Int(6)) + 2;
    b.t_lo.canonicalize();
    b.t_hi.canonicalize();
    b.tp_lo.canonicalize();
    b.tp_hi.canonicalize();
    return b;
}

namespace {

// Minimal RAII + directed-rounding helpers over MPFR, 256-bit precision.
struct Mpfr {
    mpfr_t v;
    Mpfr() { mpfr_init2(v, 256); }
    explicit Mpfr(long s) : Mpfr() { mpfr_set_si(v, s, MPFR_RNDN); }
    Mpfr(const Mpfr& o) : Mpfr() { mpfr_set(v, o.v, MPFR_RNDN); }
    Mpfr& operator=(const Mpfr& o) {
        mpfr_set(v, o.v, MPFR_RNDN);
        return *this;
    }
    ~Mpfr() { mpfr_clear(v); }
};

Rational to_rational(const Mpfr& x) {
    if (mpfr_zero_p(x.v)) return Rational(0);
    Int mant;
    const mpfr_exp_t e = mpfr_get_z_2exp(mant.get_mpz_t(), x.v);
    Rational q;
    if (e >= 0) {
        q = Rational(mant * (Int(1) << static_cast<unsigned long>(e)));
    } else {
        q = Rational(mant, Int(1) << static_cast<unsigned long>(-e));
    }
    q.canonicalize();
    return q;
}

}  // namespace

TailReport tail_bound(long long cutoff) {
    if (cutoff < 88)
        throw std::invalid_argument("tail_bound: cutoff must be >= 88 (the 17/217 envelopes hold there)");
    TailReport rep;
    rep.cutoff = cutoff;
    const Int c(static_cast<long>(cutoff));
    const Int c2 = c * c;

    // E2 chain: sum over the truncated column block plus the far block,
    // each bounded by its closed integral form.
    rep.e2 = Rational(Int(434), 3 * c2) + Rational(Int(1519), 3 * c2);
    rep.e2.canonicalize();

    // E1b: 17 * sum_{x2=0..c} 1/(x2^2+c^2), exact.
    {
        Rational acc(0);
        for (long long x2 = 0; x2 <= cutoff; ++x2) {
            Rational term(Int(17), to_int(x2) * to_int(x2) + c2);
            term.canonicalize();
            acc += term;
        }
        rep.e1b = acc;
    }

    // E1a: (17/2) sum_{x1=1..c} ((pi - 2 atan(c/x1))(c^2+x1^2) - 2 c x1)
    //                            / ((x1^2+c^2) x1^2), rounded upward.
    {
        Mpfr pi_up;
        mpfr_const_pi(pi_up.v, MPFR_RNDU);
        Mpfr acc(0);
        Mpfr q, at, head, num;
        for (long long x1 = 1; x1 <= cutoff; ++x1) {
            mpfr_set_si(q.v, static_cast<long>(cutoff), MPFR_RNDD);
            mpfr_div_si(q.v, q.v, static_cast<long>(x1), MPFR_RNDD);
            mpfr_atan(at.v, q.v, MPFR_RNDD);          // lower bound of atan(c/x1)
            mpfr_mul_ui(at.v, at.v, 2, MPFR_RNDD);
            mpfr_sub(head.v, pi_up.v, at.v, MPFR_RNDU);  // upper bound of pi - 2 atan
            const Int cc = c2 + to_int(x1) * to_int(x1);
            mpfr_mul_z(num.v, head.v, cc.get_mpz_t(), MPFR_RNDU);
            mpfr_sub_si(num.v, num.v, static_cast<long>(2 * cutoff * x1), MPFR_RNDU);
            if (mpfr_sgn(num.v) < 0) mpfr_set_zero(num.v, 1);
            const Int den = cc * to_int(x1) * to_int(x1);
            mpfr_div_z(num.v, num.v, den.get_mpz_t(), MPFR_RNDU);
            mpfr_add(acc.v, acc.v, num.v, MPFR_RNDU);
        }
        mpfr_mul_ui(acc.v, acc.v, 17, MPFR_RNDU);
        mpfr_div_ui(acc.v, acc.v, 2, MPFR_RNDU);
        rep.e1a = to_rational(acc);
    }

    // E1c: (17/2) [ (ln(2c^2) - 2 ln c)/c + (pi/2)/c
    //               - (ln(2(c+1)^2) - 2 ln(c+1))/(c+1) ], rounded upward.
    {
        Mpfr a, b, first, second, sub, acc;
        mpfr_set_z(a.v, Int(2 * c2).get_mpz_t(), MPFR_RNDU);
        mpfr_log(a.v, a.v, MPFR_RNDU);
        mpfr_set_si(b.v, static_cast<long>(cutoff), MPFR_RNDD);
        mpfr_log(b.v, b.v, MPFR_RNDD);
        mpfr_mul_ui(b.v, b.v, 2, MPFR_RNDD);
        mpfr_sub(first.v, a.v, b.v, MPFR_RNDU);
        mpfr_div_si(first.v, first.v, static_cast<long>(cutoff), MPFR_RNDU);

        mpfr_const_pi(second.v, MPFR_RNDU);
        mpfr_div_ui(second.v, second.v, 2, MPFR_RNDU);
        mpfr_div_si(second.v, second.v, static_cast<long>(cutoff), MPFR_RNDU);

        const Int c1 = c + 1;
        mpfr_set_z(a.v, Int(2 * c1 * c1).get_mpz_t(), MPFR_RNDD);
        mpfr_log(a.v, a.v, MPFR_RNDD);
        mpfr_set_z(b.v, c1.get_mpz_t(), MPFR_RNDU);
        mpfr_log(b.v, b.v, MPFR_RNDU);
        mpfr_mul_ui(b.v, b.v, 2, MPFR_RNDU);
        mpfr_sub(sub.v, a.v, b.v, MPFR_RNDD);  // lower bound of the subtracted tail
        mpfr_div_si(sub.v, sub.v, static_cast<long>(cutoff + 1), MPFR_RNDD);
        if (mpfr_sgn(sub.v) < 0) mpfr_set_zero(sub.v, 1);

        mpfr_add(acc.v, first.v, second.v, MPFR_RNDU);
        mpfr_sub(acc.v, acc.v, sub.v, MPFR_RNDU);
        mpfr_mul_ui(acc.v, acc.v, 17, MPFR_RNDU);
        mpfr_div_ui(acc.v, acc.v, 2, MPFR_RNDU);
        rep.e1c = to_rational(acc);
    }

    rep.e1 = rep.e1a + rep.e1b + rep.e1c;
    rep.e = 4 * rep.e1 + 2 * rep.e2;
    return rep;
}

std::string tail_report_json(const TailReport& rep) {
    nlohmann::json j;
    j["cutoff"] = rep.cutoff;
    auto put = [&](const char* key, const Rational& q) {
        j[key] = {{"numerator", q.get_num().get_str()},
                  {"denominator", q.get_den().get_str()},
                  {"decimal", decimal_string(q, 12)}};
    };
    put("e1a", rep.e1a);
    put("e1b", rep.e1b);
    put("e1c", rep.e1c);
    put("e1", rep.e1);
    put("e2", rep.e2);
    put("e", rep.e);
    return j.dump(2);
}

C2Interval c2_interval(const SumReport& sum, const TailReport& tail) {
    if (sum.radius != tail.cutoff)
        throw std::invalid_argument("c2_interval: sum radius and tail cutoff differ");
    if (sum.float_path) throw std::invalid_argument("c2_interval: requires an exact sum");
    return {sum.partial_sum, sum.partial_sum + tail.e};
}

void write_vertex_csv(long long radius, const RotorSequence& seq, std::ostream& os) {
    os << "x1,x2,numerator,denominator,decimal,used_times,odd_chips,schedule\n";
    for (long long x1 = -radius; x1 <= radius; ++x1) {
        for (long long x2 = -radius; x2 <= radius; ++x2) {
            if (((x1 - x2) & 1LL) != 0) continue;
            BlockConfiguration cfg = block_configuration({x1, x2}, seq);
            os << x1 << "," << x2 << "," << cfg.contribution.get_num().get_str() << ","
               << cfg.contribution.get_den().get_str() << ","
               << decimal_string(cfg.contribution, 9) << "," << cfg.schedule.size() << ","
               << cfg.odd_chip_count() << ",";
            bool first_t = true;
            for (const auto& [t, dirs] : cfg.schedule) {
                if (!first_t) os << ";";
                first_t = false;
                os << t << ":";
                for (Dir d : dirs) os << to_string(d);
            }
            os << "\n";
        }
    }
}

}  // namespace propp

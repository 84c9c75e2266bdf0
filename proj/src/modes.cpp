#include "propp/modes.hpp"

#include <algorithm>
#include <stdexcept>

namespace propp {

bool QuarticPoly::is_zero() const {
    return std::all_of(c.begin(), c.end(), [](const Int& v) { return sgn(v) == 0; });
}

int QuarticPoly::degree() const {
    for (int d = 4; d >= 0; --d)
        if (sgn(c[static_cast<size_t>(d)]) != 0) return d;
    return -1;
}

Int QuarticPoly::eval(long long t) const {
    const long tl = static_cast<long>(t);
    Int acc = c[4];
    for (int i = 3; i >= 0; --i) acc = acc * tl + c[static_cast<size_t>(i)];
    return acc;
}

QuarticPoly operator+(const QuarticPoly& p, const QuarticPoly& q) {
    QuarticPoly r;
    for (size_t i = 0; i < 5; ++i) r.c[i] = p.c[i] + q.c[i];
    return r;
}

QuarticPoly p_poly(Vertex x, Dir a) {
    auto s = dir_step(a);
    const Int u = to_int(s[0] * x.x1);  // A1 x1
    const Int v = to_int(s[1] * x.x2);  // A2 x2
    const Int X = to_int(x.x1) * to_int(x.x1);
    const Int Y = to_int(x.x2) * to_int(x.x2);
    const Int uv = u * v;
    const Int spv = u + v;
    QuarticPoly p;
    p.c[4] = 4 * spv;
    p.c[3] = -spv * (X + Y) - 6 * uv + 19 * spv;
    p.c[2] = uv * (X + Y) - 4 * spv * (X + Y) - 23 * uv + 30 * spv;
    p.c[1] = spv * X * Y + 4 * uv * (X + Y) - 4 * spv * (X + Y) - 32 * uv + 16 * spv;
    p.c[0] = -uv * X * Y + 4 * uv * (X + Y) - 16 * uv;
    return p;
}

int descartes_variations(const QuarticPoly& p) {
    if (p.is_zero()) throw std::invalid_argument("descartes_variations: zero polynomial");
    int count = 0, last = 0;
    for (const Int& ci : p.c) {
        int s = sgn(ci);
        if (s == 0) continue;
        if (last != 0 && s != last) ++count;
        last = s;
    }
    return count;
}

QuarticPoly taylor_shift(const QuarticPoly& q, long long b) {
    const long bl = static_cast<long>(b);
    QuarticPoly r = q;
    for (int i = 0; i < 4; ++i)
        for (int j = 3; j >= i; --j)
            r.c[static_cast<size_t>(j)] += bl * r.c[static_cast<size_t>(j) + 1];
    return r;
}

namespace {

// Horner in __int128 when provably overflow-free for |t| <= bound.
bool int128_safe(const QuarticPoly& p, long long bound) {
    Int acc(0);
    Int b = to_int(bound);
    for (int i = 4; i >= 0; --i) acc = acc * b + abs(p.c[static_cast<size_t>(i)]);
    static const Int lim = (Int(1) << 126);
    return acc < lim;
}

struct Int128Poly {
    __int128 c[5];

    static Int128Poly from(const QuarticPoly& p) {
        Int128Poly r{};
        for (size_t i = 0; i < 5; ++i) {
            const Int& v = p.c[i];
            const bool neg = sgn(v) < 0;
            Int av = abs(v);
            const unsigned long lo = mpz_get_ui(av.get_mpz_t());  // low 64 bits
            Int hi = av >> 64;
            __int128 m = (static_cast<unsigned __int128>(mpz_get_ui(hi.get_mpz_t())) << 64) |
                         static_cast<unsigned __int128>(lo);
            r.c[i] = neg ? -m : m;
        }
        return r;
    }

    int sign_at(long long t) const {
        __int128 acc = c[4];
        for (int i = 3; i >= 0; --i) acc = acc * t + c[i];
        return acc > 0 ? 1 : acc < 0 ? -1 : 0;
    }
};

}  // namespace

std::vector<Extremum> scan_extrema(Vertex x, const QuarticPoly& dp,
                                   const std::function<Rational(long long)>& inf_at) {
    std::vector<Extremum> out;
    if (dp.is_zero()) return out;  // identically-zero influence (x = 0 or symmetric pair sums)

    const long long norm = linf_norm(x);
    const long long parity_min = (norm % 2 != 0) ? 1 : 2;
    const long long t_first = std::max(parity_min, norm - 2);

    // The influence vanishes below |x|inf; anchoring the scan with the value
    // at t_first covers the boundary cases |x|inf <= 2 where the shared
    // positive factor of the derivative identity is not defined earlier.
    long long last_t = t_first - 2;
    int last_sign = 0;
    {
        Rational v0 = inf_at(t_first);
        if (sgn(v0) != 0) last_sign = sgn(v0);
    }

    long long bound = x.x1 * x.x1 + x.x2 * x.x2 + 64;
    if (((bound - t_first) & 1LL) != 0) ++bound;

    long long t = t_first;
    while (true) {
        if (int128_safe(dp, bound)) {
            Int128Poly fp = Int128Poly::from(dp);
            for (; t <= bound; t += 2) {
                int s = fp.sign_at(t);
                if (s == 0) continue;
                if (last_sign != 0 && s != last_sign)
                    out.push_back({last_t + 2, last_sign < 0 ? ExtremumKind::Min : ExtremumKind::Max});
                last_sign = s;
                last_t = t;
            }
        } else {
            for (; t <= bound; t += 2) {
                int s = sgn(dp.eval(t));
                if (s == 0) continue;
                if (last_sign != 0 && s != last_sign)
                    out.push_back({last_t + 2, last_sign < 0 ? ExtremumKind::Min : ExtremumKind::Max});
                last_sign = s;
                last_t = t;
            }
        }
        // Certified stop: no sign variations after shifting means no real
        // roots beyond `bound`, hence no further monotonicity change.
        if (descartes_variations(taylor_shift(dp, bound)) == 0) break;
        bound *= 2;
    }
    return out;
}

std::vector<Extremum> dir_extrema(Vertex x, Dir a) {
    return scan_extrema(x, p_poly(x, a),
                        [&](long long t) { return inf_single(x, a, t); });
}

std::vector<Extremum> pair_extrema(Vertex x, Dir a, Dir b) {
    return scan_extrema(x, p_poly(x, a) + p_poly(x, b), [&](long long t) {
        return inf_single(x, a, t) + inf_single(x, b, t);
    });
}

bool strict_bimodality_criterion(Vertex x, Dir a) {
    auto s = dir_step(a);
    const long long u = s[0] * x.x1;
    const long long v = s[1] * x.x2;
    return (-u > v && 2 * v > -u) || (-v > u && 2 * u > -v);
}

Mono mono_in_phase(const std::vector<Extremum>& extrema, long long lo, long long hi) {
    if (extrema.empty()) return Mono::Flat;
    const Extremum* prev = nullptr;
    for (const auto& e : extrema)
        if (e.t <= lo) prev = &e;
    if (prev != nullptr)
        return prev->kind == ExtremumKind::Min ? Mono::Increasing : Mono::Decreasing;
    for (const auto& e : extrema)
        if (hi >= 0 && e.t >= hi)
            return e.kind == ExtremumKind::Max ? Mono::Increasing : Mono::Decreasing;
    throw std::logic_error("mono_in_phase: extremum strictly inside a phase");
}

Mono ModeProfile::pair_mono(int i, long long lo, long long hi) const {
    const int k = ((i % 4) + 4) % 4;
    Mono m = propp::mono_in_phase(pair_extrema[static_cast<size_t>(k % 2)], lo, hi);
    if (k >= 2 && m != Mono::Flat)  // (R3,R4) = -(R1,R2), (R4,R1) = -(R2,R3)
        m = (m == Mono::Increasing) ? Mono::Decreasing : Mono::Increasing;
    return m;
}

ModeProfile extremal_times(Vertex x, const RotorSequence& seq) {
    ModeProfile p{.vertex = x, .seq = seq, .dir_extrema = {}, .pair_extrema = {}, .extremal_times = {}};
    if (x == Vertex{0, 0}) return p;  // all influences vanish identically
    for (int d = 0; d < kDirCount; ++d)
        p.dir_extrema[static_cast<size_t>(d)] = propp::dir_extrema(x, static_cast<Dir>(d));
    p.pair_extrema[0] = propp::pair_extrema(x, seq.at(0), seq.at(1));
    p.pair_extrema[1] = propp::pair_extrema(x, seq.at(1), seq.at(2));
    std::vector<long long> ts;
    for (const auto& v : p.dir_extrema)
        for (const auto& e : v) ts.push_back(e.t);
    for (const auto& v : p.pair_extrema)
        for (const auto& e : v) ts.push_back(e.t);
    std::sort(ts.begin(), ts.end());
    ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
    p.extremal_times = std::move(ts);
    return p;
}

}  // namespace propp

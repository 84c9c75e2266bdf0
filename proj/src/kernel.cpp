#include "propp/kernel.hpp"

#include <cmath>
#include <set>
#include <stdexcept>

namespace propp {

Rational h_prob(Vertex x, long long t) {
    if (t < 0 || !in_lattice(x) || !parity_match(x, t) || linf_norm(x) > t) return Rational(0);
    Int b1, b2;
    mpz_bin_uiui(b1.get_mpz_t(), static_cast<unsigned long>(t),
                 static_cast<unsigned long>((t + x.x1) / 2));
    mpz_bin_uiui(b2.get_mpz_t(), static_cast<unsigned long>(t),
                 static_cast<unsigned long>((t + x.x2) / 2));
    Int den;
    mpz_ui_pow_ui(den.get_mpz_t(), 4, static_cast<unsigned long>(t));
    Rational r(b1 * b2, den);
    r.canonicalize();
    return r;
}

Rational inf_single(Vertex x, Dir a, long long t) {
    return h_prob(x + a, t - 1) - h_prob(x, t);
}

Rational inf_seq(Vertex x, std::span<const Dir> dirs, long long t) {
    if (dirs.size() > 4) throw std::invalid_argument("inf_seq: at most four directions");
    std::set<Dir> uniq(dirs.begin(), dirs.end());
    if (uniq.size() != dirs.size())
        throw std::invalid_argument("inf_seq: directions must be distinct to obey a rotor sequence");
    Rational sum(0);
    for (Dir a : dirs) sum += inf_single(x, a, t);
    return sum;
}

Rational inf_closed_form(Vertex x, Dir a, long long t) {
    if (t < 1) throw std::invalid_argument("inf_closed_form: t >= 1 required");
    auto s = dir_step(a);
    const Int u = to_int(s[0] * x.x1);
    const Int v = to_int(s[1] * x.x2);
    const Int tt = to_int(t);
    // (uv/t^2 - (u+v)/t) H(x,t) = (uv - (u+v) t) / t^2 * H(x,t)
    Rational factor(u * v - (u + v) * tt, tt * tt);
    factor.canonicalize();
    return factor * h_prob(x, t);
}

double h_prob_fp(Vertex x, long long t) {
    if (t < 0 || !in_lattice(x) || !parity_match(x, t) || linf_norm(x) > t) return 0.0;
    if (t == 0) return 1.0;
    const double td = static_cast<double>(t);
    auto logbin = [td, t](long long k) {
        return std::lgamma(td + 1.0) - std::lgamma(static_cast<double>(k) + 1.0) -
               std::lgamma(static_cast<double>(t - k) + 1.0);
    };
    const double lg =
        logbin((t + x.x1) / 2) + logbin((t + x.x2) / 2) - td * std::log(4.0);
    return std::exp(lg);
}

double inf_single_fp(Vertex x, Dir a, long long t) {
    return h_prob_fp(x + a, t - 1) - h_prob_fp(x, t);
}

}  // namespace propp

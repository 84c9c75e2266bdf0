#include "propp/rational.hpp"

#include <stdexcept>

namespace propp {

std::string decimal_string(const Rational& q, int digits) {
    if (digits < 0) throw std::invalid_argument("decimal_string: negative digits");
    const bool neg = sgn(q) < 0;
    Int num = abs(q.get_num());
    const Int& den = q.get_den();
    Int scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
    Int scaled = num * scale;
    Int whole, rem;
    mpz_fdiv_qr(whole.get_mpz_t(), rem.get_mpz_t(), scaled.get_mpz_t(), den.get_mpz_t());
    if (2 * rem >= den) whole += 1;  // half away from zero (value is nonnegative here)
    Int ip = whole / scale;
    Int fp = whole % scale;
    std::string out = neg && (whole != 0) ? "-" : "";
    out += ip.get_str();
    if (digits > 0) {
        std::string frac = fp.get_str();
        out += "." + std::string(static_cast<size_t>(digits) - frac.size(), '0') + frac;
    }
    return out;
}

std::string fraction_string(const Rational& q) {
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

double to_double(const Rational& q) { return q.get_d(); }

}  // namespace propp

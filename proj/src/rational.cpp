#include "ellik/rational.hpp"

#include <stdexcept>

namespace ellik {

const char* to_string(Sign s) {
    switch (s) {
        case Sign::Negative: return "negative";
        case Sign::Zero: return "zero";
        case Sign::Positive: return "positive";
        case Sign::Indeterminate: return "indeterminate";
    }
    return "indeterminate";
}

Rational make_rational(long num, long den) {
    if (den == 0) throw std::invalid_argument("make_rational: zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

const PiEnclosure& PiEnclosure::get() {
    static const PiEnclosure enclosure = [] {
        // pi truncated to 70 decimals.
        const mpz_class digits(
            "31415926535897932384626433832795028841971693993751058209749445923078164");
        mpz_class scale;
        mpz_ui_pow_ui(scale.get_mpz_t(), 10, 70);
        PiEnclosure e;
        e.lo = Rational(digits, scale);
        e.lo.canonicalize();
        e.hi = Rational(digits + 1, scale);
        e.hi.canonicalize();
        return e;
    }();
    return enclosure;
}

void PiLinear::enclose(Rational& lo, Rational& hi) const {
    const PiEnclosure& pi = PiEnclosure::get();
    const Rational a = p * pi.lo + q;
    const Rational b = p * pi.hi + q;
    if (a <= b) {
        lo = a;
        hi = b;
    } else {
        lo = b;
        hi = a;
    }
}

Sign PiLinear::sign() const {
    if (sgn(p) == 0) return sign_of(q);
    Rational lo;
    Rational hi;
    enclose(lo, hi);
    if (sgn(lo) > 0) return Sign::Positive;
    if (sgn(hi) < 0) return Sign::Negative;
    // pi is irrational, so p != 0 rules out an exact zero.
    return Sign::Indeterminate;
}

double PiLinear::approx() const { return p.get_d() * 3.141592653589793 + q.get_d(); }

std::string to_string(const PiLinear& v) { return "(" + v.p.get_str() + ")*pi + (" + v.q.get_str() + ")"; }

}  // namespace ellik

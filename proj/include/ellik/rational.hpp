#pragma once

// Exact rationals (GMP) and numbers of the form p*pi + q with rational p, q.

#include <gmpxx.h>

#include <string>

namespace ellik {

using Rational = mpq_class;

enum class Sign { Negative, Zero, Positive, Indeterminate };

const char* to_string(Sign s);

inline Sign sign_of(const Rational& q) {
    const int s = sgn(q);
    return s < 0 ? Sign::Negative : (s > 0 ? Sign::Positive : Sign::Zero);
}

/// num/den, reduced.
Rational make_rational(long num, long den = 1);

std::string to_string(const Rational& q);

/// Within one ulp (GMP truncates toward zero).
inline double to_double(const Rational& q) { return q.get_d(); }

/// Rational enclosure lo < pi < hi, width 1e-70.
struct PiEnclosure {
    Rational lo;
    Rational hi;
    static const PiEnclosure& get();
};

/// p*pi + q.
struct PiLinear {
    Rational p;
    Rational q;

    PiLinear() = default;
    PiLinear(Rational pi_coeff, Rational constant) : p(std::move(pi_coeff)), q(std::move(constant)) {}

    PiLinear operator+(const PiLinear& o) const { return {p + o.p, q + o.q}; }
    PiLinear operator-(const PiLinear& o) const { return {p - o.p, q - o.q}; }
    PiLinear operator*(const Rational& s) const { return {p * s, q * s}; }
    bool operator==(const PiLinear& o) const { return p == o.p && q == o.q; }

    /// Certified sign through the pi enclosure; Indeterminate if the
    /// enclosed interval straddles zero.
    Sign sign() const;
    /// Interval [lo, hi] containing the value.
    void enclose(Rational& lo, Rational& hi) const;
    double approx() const;
};

std::string to_string(const PiLinear& v);

}  // namespace ellik

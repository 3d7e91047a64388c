#pragma once

// Q1(x) = K(sqrt x)/ln(c/sqrt(1-x)), Q2(r) = K(r)/ln(1+4/r'),
// D(x) = K(sqrt x) - ln(1+4/sqrt(1-x)), their analytic derivatives, the
// sharp constants, and the margins of the logarithmic bounds for K.
//
// Margins follow one convention: bound minus quantity (or the reverse) so
// that a nonnegative margin means the inequality holds. Each margin comes
// with `scale`, the size of the terms that cancel in it; rounding error is
// of order epsilon * scale.
//
// Templates are instantiated for double and DoubleDouble.

#include <optional>
#include <string>

#include "ellik/elliptic.hpp"
#include "ellik/rational.hpp"
#include "ellik/real.hpp"

namespace ellik {

template <class Real>
struct Evaluated {
    Real value;
    Real scale;
};

template <class Real>
struct SharpConstants {
    Real c0;         // 3 Gamma(1/4)^2 / (2 (3 ln 2 + 8) sqrt(pi))
    Real p0;         // pi/8 - 2/5
    Real p1;         // ln 5 - pi/2
    Real q2_lower;   // pi / ln 25
    Real c_concave;  // e^{4/3}
    Real k_symmetric;  // K(1/sqrt 2) = Gamma(1/4)^2 / (4 sqrt(pi))

    static SharpConstants compute();
};

/// The constant c of Q1, held through ln c. When ln c is a known rational
/// (c = e^{4/3}) it is kept exactly so that 3 ln c - 4 can vanish exactly.
template <class Real>
struct LogConstant {
    Real ln_c;
    std::optional<Rational> exact_ln_c;

    Real c() const;
    static LogConstant of_value(const Real& c);
    static LogConstant exp_of(const Rational& ln_c);
    /// e^{4/3}, the constant for which Q1 is concave.
    static LogConstant sharp() { return exp_of(Rational(4, 3)); }
};

/// Parses a decimal literal or one of the tokens e^{p/q}, e^p, pi/ln25.
template <class Real>
LogConstant<Real> parse_log_constant(const std::string& text);

// ---- Q1 ------------------------------------------------------------------

template <class Real>
Real q1(const Real& x, const LogConstant<Real>& c);

/// Q1'(x), analytic.
template <class Real>
Real q1_first(const Real& x, const LogConstant<Real>& c);

/// Q1''(x) from the hypergeometric display; never a finite difference.
template <class Real>
Evaluated<Real> q1_second_eval(const Real& x, const LogConstant<Real>& c);
template <class Real>
Real q1_second(const Real& x, const LogConstant<Real>& c) {
    return q1_second_eval(x, c).value;
}

/// lim_{x->0+} Q1''(x) = (pi/64)(3 ln c - 4)^2 / ln^3 c; exactly zero when
/// ln c = 4/3 is held exactly.
template <class Real>
Real q1_second_limit(const LogConstant<Real>& c);

// ---- Q2 and D ------------------------------------------------------------

template <class Real>
Real q2(const Real& r);

/// Q2(r) - pi/ln 25 without cancellation as r -> 0.
template <class Real>
Evaluated<Real> q2_excess(const Modulus<Real>& m);

template <class Real>
Real d_func(const Real& x);

template <class Real>
Evaluated<Real> d_first_eval(const Real& x);
template <class Real>
Real d_first(const Real& x) {
    return d_first_eval(x).value;
}

/// h(x) = (9 pi/64)(x+15)^2 F(1/2,1/2;3;x) + (3x+13) sqrt(1-x) - 16(x+7).
template <class Real>
Evaluated<Real> h_eval(const Real& x);
template <class Real>
Real h_func(const Real& x) {
    return h_eval(x).value;
}

/// D''(x) = h(x) / ((x+15)^2 (1-x)^2).
template <class Real>
Evaluated<Real> d_second_eval(const Real& x);
template <class Real>
Real d_second(const Real& x) {
    return d_second_eval(x).value;
}

// ---- cancellation-free pieces --------------------------------------------

/// K(r) - pi/2.
template <class Real>
Real k_excess(const Modulus<Real>& m);
/// ln(1 + 4/r') - ln 5.
template <class Real>
Real log_excess(const Modulus<Real>& m);

// ---- bounds for K --------------------------------------------------------

enum class KFamily { Thm2, Mi3, Kgt, Avv };

/// "thm2", "mi3", "kgt", "avv"; throws std::invalid_argument otherwise.
KFamily parse_k_family(const std::string& name);
const char* to_string(KFamily f);

template <class Real>
struct KBounds {
    Real lower;  // -infinity when the family has no lower bound
    Real upper;
};

template <class Real>
KBounds<Real> k_bounds(const Real& r, KFamily family);

/// K - lower and upper - K, computed without cancellation at r -> 0.
template <class Real>
struct KBoundMargins {
    std::optional<Evaluated<Real>> lower;
    Evaluated<Real> upper;
};

template <class Real>
KBoundMargins<Real> k_bound_margins(const Modulus<Real>& m, KFamily family);

// ---- product inequalities ------------------------------------------------

template <class Real>
struct ProductInequalities {
    Evaluated<Real> mi1;   // mu(r) <= pi c0 ln(e^{4/3}/r)/K(r) - (pi/2) ln(e^{4/3}/r)/ln(e^{4/3}/r')
    Evaluated<Real> mi2;   // K(r) K(r') <= c0^2 ln(e^{4/3}/r) ln(e^{4/3}/r')
    Evaluated<Real> rrkk;  // sqrt(r r') K(r) K(r') <= K(1/sqrt 2)^2 / sqrt 2
    Real scaled_product;   // (2/pi) r r' K(r) K(r')
    Real bound_min_log;    // min(r ln(4/r), r' ln(4/r'))
    Real bound_log_product;  // (2/pi) c0^2 r r' ln(e^{4/3}/r) ln(e^{4/3}/r')
};

template <class Real>
ProductInequalities<Real> product_inequalities(const Modulus<Real>& m);

template <class Real>
ProductInequalities<Real> product_inequalities(const Real& r) {
    return product_inequalities(Modulus<Real>(r));
}

/// mu(r) - (pi/2) ln(1+4/r)/ln(1+4/r'): positive below 1/sqrt 2, negative above.
template <class Real>
Evaluated<Real> mu_log_ratio_gap(const Modulus<Real>& m);

}  // namespace ellik

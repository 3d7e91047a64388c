#pragma once

// Gauss hypergeometric function 2F1(a, b; c; x) for real parameters and
// -1 < x < 1.
//
// x <= 1/2 uses the defining power series. x > 1/2 is mapped to t = 1 - x:
// when c - a - b = m is an integer the logarithmic connection formulas are
// used (m >= 0 directly, m < 0 after the Euler transform
// F = (1-x)^m F(c-a, c-b; c; x)); otherwise the two-branch Gamma connection
// formula. Callers that know t = 1 - x more accurately than x itself should
// use gauss_2f1_one_minus.

#include <cmath>
#include <string>

#include "ellik/real.hpp"
#include "ellik/special.hpp"

namespace ellik {

template <class Real>
struct HypParams {
    Real a;
    Real b;
    Real c;

    HypParams(Real a_, Real b_, Real c_) : a(a_), b(b_), c(c_) {
        long n = 0;
        if (near_integer(c, &n) && n <= 0) {
            throw DomainError("hypergeometric parameter c must not be zero or a negative integer");
        }
    }
};

/// Two-term expansion of F(1/2,1/2;c;1-t) as t -> 0+, c in {1, 2}.
template <class Real>
struct NearOneExpansion {
    Real leading;
    Real correction;
    const char* remainder_order = "O(t^2 ln t)";

    Real value() const { return leading + correction; }
};

enum class NearOneKind { C1, C2 };

namespace hyp_detail {

inline constexpr long kMaxTerms = 1'000'000;
inline constexpr double kSwitchover = 0.5;

template <class Real>
bool nonpositive_integer(const Real& v) {
    long n = 0;
    return near_integer(v, &n) && n <= 0;
}

template <class Real>
Real reciprocal_gamma(const Real& x) {
    if (nonpositive_integer(x)) return Real(0.0);
    return Real(1.0) / gamma_fn(x);
}

template <class Real>
bool converged(const Real& term, const Real& sum, const Real& ratio) {
    using std::abs;
    return abs(to_double(term)) <= RealTraits<Real>::series_tol * abs(to_double(sum)) &&
           abs(to_double(ratio)) < 1.0;
}

[[noreturn]] inline void no_convergence(const char* where) {
    throw ConvergenceError(std::string(where) + ": term cap reached before the series converged");
}

template <class Real>
Real direct_series(const HypParams<Real>& p, const Real& x) {
    Real term = 1.0;
    Real sum = 1.0;
    for (long n = 0; n < kMaxTerms; ++n) {
        const Real dn = static_cast<double>(n);
        const Real ratio = (p.a + dn) * (p.b + dn) / ((p.c + dn) * (dn + 1.0)) * x;
        term = term * ratio;
        if (term == Real(0.0)) return sum;
        sum += term;
        if (converged(term, sum, ratio)) return sum;
    }
    no_convergence("gauss_2f1 series");
}

// c = a + b + m with integer m >= 0, evaluated in t = 1 - x.
template <class Real>
Real log_connection(const Real& a, const Real& b, long m, const Real& t) {
    using std::abs;
    using std::log;
    const Real log_t = log(t);
    const Real dm = static_cast<double>(m);

    if (m == 0) {
        // Gamma(a+b)/(Gamma(a)Gamma(b)) sum (a)_n (b)_n/(n!)^2
        //   [2 psi(n+1) - psi(a+n) - psi(b+n) - ln t] t^n
        Real coef = 1.0;
        Real psi_n1 = digamma(Real(1.0));
        Real psi_a = digamma(a);
        Real psi_b = digamma(b);
        Real power = 1.0;
        Real sum = psi_n1 * 2.0 - psi_a - psi_b - log_t;
        for (long n = 0; n < kMaxTerms; ++n) {
            const Real dn = static_cast<double>(n);
            const Real ratio = (a + dn) * (b + dn) / ((dn + 1.0) * (dn + 1.0));
            coef = coef * ratio;
            power = power * t;
            psi_n1 += Real(1.0) / (dn + 1.0);
            psi_a += Real(1.0) / (a + dn);
            psi_b += Real(1.0) / (b + dn);
            const Real term = coef * power * (psi_n1 * 2.0 - psi_a - psi_b - log_t);
            sum += term;
            if (converged(Real(coef * power * (abs(log_t) + 1.0)), sum, Real(ratio * t))) break;
            if (n + 1 == kMaxTerms) no_convergence("gauss_2f1 log connection");
        }
        return gamma_fn(Real(a + b)) * reciprocal_gamma(a) * reciprocal_gamma(b) * sum;
    }

    // Finite part: Gamma(m)Gamma(a+b+m)/(Gamma(a+m)Gamma(b+m))
    //   sum_{n<m} (a)_n (b)_n / (n! (1-m)_n) t^n
    Real finite = 0.0;
    {
        Real coef = 1.0;
        Real power = 1.0;
        for (long n = 0; n < m; ++n) {
            finite += coef * power;
            if (n + 1 == m) break;
            const Real dn = static_cast<double>(n);
            coef = coef * (a + dn) * (b + dn) / ((dn + 1.0) * (Real(1.0) - dm + dn));
            power = power * t;
        }
    }
    const Real c = a + b + dm;
    finite = finite * gamma_fn(dm) * gamma_fn(c) * reciprocal_gamma(Real(a + dm)) *
             reciprocal_gamma(Real(b + dm));

    // Logarithmic part: -(-t)^m Gamma(c)/(Gamma(a)Gamma(b))
    //   sum (a+m)_n (b+m)_n/(n!(n+m)!) t^n
    //   [ln t - psi(n+1) - psi(n+m+1) + psi(a+n+m) + psi(b+n+m)]
    const Real prefactor = gamma_fn(c) * reciprocal_gamma(a) * reciprocal_gamma(b);
    if (prefactor == Real(0.0)) return finite;

    Real coef = 1.0;
    for (long k = 2; k <= m; ++k) coef = coef / static_cast<double>(k);
    Real psi_n1 = digamma(Real(1.0));
    Real psi_nm1 = digamma(Real(dm + 1.0));
    Real psi_a = digamma(Real(a + dm));
    Real psi_b = digamma(Real(b + dm));
    Real power = 1.0;
    Real sum = coef * (log_t - psi_n1 - psi_nm1 + psi_a + psi_b);
    for (long n = 0; n < kMaxTerms; ++n) {
        const Real dn = static_cast<double>(n);
        const Real ratio = (a + dm + dn) * (b + dm + dn) / ((dn + 1.0) * (dn + dm + 1.0));
        coef = coef * ratio;
        power = power * t;
        psi_n1 += Real(1.0) / (dn + 1.0);
        psi_nm1 += Real(1.0) / (dn + dm + 1.0);
        psi_a += Real(1.0) / (a + dm + dn);
        psi_b += Real(1.0) / (b + dm + dn);
        const Real term = coef * power * (log_t - psi_n1 - psi_nm1 + psi_a + psi_b);
        sum += term;
        if (converged(Real(coef * power * (abs(log_t) + 1.0)), sum, Real(ratio * t))) break;
        if (n + 1 == kMaxTerms) no_convergence("gauss_2f1 log connection");
    }
    Real minus_t_pow = 1.0;
    for (long k = 0; k < m; ++k) minus_t_pow = minus_t_pow * (-t);
    return finite - minus_t_pow * prefactor * sum;
}

template <class Real>
Real evaluate(const HypParams<Real>& p, const Real& x, const Real& t);

// Non-integer s = c - a - b:
// F = Gamma(c)Gamma(s)/(Gamma(c-a)Gamma(c-b)) F(a, b; 1-s; t)
//   + t^s Gamma(c)Gamma(-s)/(Gamma(a)Gamma(b)) F(c-a, c-b; 1+s; t).
template <class Real>
Real gamma_connection(const HypParams<Real>& p, const Real& s, const Real& x, const Real& t) {
    using std::pow;
    const Real gc = gamma_fn(p.c);
    Real result = 0.0;
    const Real w1 = gc * gamma_fn(s) * reciprocal_gamma(Real(p.c - p.a)) * reciprocal_gamma(Real(p.c - p.b));
    if (w1 != Real(0.0)) result += w1 * evaluate(HypParams<Real>(p.a, p.b, Real(1.0) - s), t, x);
    const Real w2 = gc * gamma_fn(Real(-s)) * reciprocal_gamma(p.a) * reciprocal_gamma(p.b);
    if (w2 != Real(0.0)) {
        result += w2 * pow(t, s) * evaluate(HypParams<Real>(Real(p.c - p.a), Real(p.c - p.b), Real(1.0) + s), t, x);
    }
    return result;
}

template <class Real>
Real evaluate(const HypParams<Real>& p, const Real& x, const Real& t) {
    using std::pow;
    if (x == Real(0.0)) return Real(1.0);
    if (nonpositive_integer(p.a) || nonpositive_integer(p.b)) return direct_series(p, x);
    if (to_double(x) < -kSwitchover) {
        // Pfaff: F = (1-x)^{-a} F(a, c-b; c; x/(x-1)).
        const Real y = x / (x - 1.0);
        return pow(t, Real(-p.a)) * evaluate(HypParams<Real>(p.a, Real(p.c - p.b), p.c), y, Real(Real(1.0) - y));
    }
    if (to_double(x) <= kSwitchover) return direct_series(p, x);

    const Real s = p.c - p.a - p.b;
    long m = 0;
    if (near_integer(s, &m)) {
        if (m >= 0) return log_connection(p.a, p.b, m, t);
        // Euler transform: c - (c-a) - (c-b) = -m > 0.
        const Real ca = p.c - p.a;
        const Real cb = p.c - p.b;
        if (nonpositive_integer(ca) || nonpositive_integer(cb)) {
            return pow(t, static_cast<int>(m)) * direct_series(HypParams<Real>(ca, cb, p.c), x);
        }
        return pow(t, static_cast<int>(m)) * log_connection(ca, cb, -m, t);
    }
    return gamma_connection(p, s, x, t);
}

}  // namespace hyp_detail

/// 2F1(a,b;c;x), -1 < x < 1.
template <class Real>
Real gauss_2f1(const HypParams<Real>& p, const Real& x) {
    using std::abs;
    if (!(abs(to_double(x)) < 1.0)) throw DomainError("gauss_2f1: |x| must be < 1");
    return hyp_detail::evaluate(p, x, Real(Real(1.0) - x));
}

/// 2F1(a,b;c;1-t) with the complement t in (0, 2) supplied directly.
template <class Real>
Real gauss_2f1_one_minus(const HypParams<Real>& p, const Real& t) {
    if (!(to_double(t) > 0.0 && to_double(t) < 2.0)) {
        throw DomainError("gauss_2f1: complement t = 1 - x must lie in (0, 2)");
    }
    return hyp_detail::evaluate(p, Real(Real(1.0) - t), t);
}

/// Leading factor (a)_k (b)_k / (c)_k of the k-th derivative.
template <class Real>
Real derivative_factor(const HypParams<Real>& p, int order) {
    Real factor = 1.0;
    for (int j = 0; j < order; ++j) {
        const Real dj = static_cast<double>(j);
        factor = factor * (p.a + dj) * (p.b + dj) / (p.c + dj);
    }
    return factor;
}

template <class Real>
HypParams<Real> shifted(const HypParams<Real>& p, int order) {
    const Real k = static_cast<double>(order);
    return HypParams<Real>(Real(p.a + k), Real(p.b + k), Real(p.c + k));
}

/// d^k/dx^k 2F1 via F' = (ab/c) F(a+1, b+1; c+1; x) applied k times.
template <class Real>
Real gauss_2f1_derivative(const HypParams<Real>& p, const Real& x, int order) {
    if (order < 1) throw DomainError("gauss_2f1_derivative: order must be >= 1");
    return derivative_factor(p, order) * gauss_2f1(shifted(p, order), x);
}

template <class Real>
Real gauss_2f1_derivative_one_minus(const HypParams<Real>& p, const Real& t, int order) {
    if (order < 1) throw DomainError("gauss_2f1_derivative: order must be >= 1");
    return derivative_factor(p, order) * gauss_2f1_one_minus(shifted(p, order), t);
}

/// F(a,b;c;1) = Gamma(c)Gamma(c-a-b)/(Gamma(c-a)Gamma(c-b)) for c > a + b.
template <class Real>
Real near_one_value(const HypParams<Real>& p) {
    const Real s = p.c - p.a - p.b;
    if (!(to_double(s) > 0.0)) throw DomainError("near_one_value: requires c > a + b");
    return gamma_fn(p.c) * gamma_fn(s) * hyp_detail::reciprocal_gamma(Real(p.c - p.a)) *
           hyp_detail::reciprocal_gamma(Real(p.c - p.b));
}

/// R(a,b) = -2 gamma - psi(a) - psi(b).
template <class Real>
Real r_constant(const Real& a, const Real& b) {
    return -RealTraits<Real>::euler_gamma() * 2.0 - digamma(a) - digamma(b);
}

/// Leading term (R(a,b) - ln(1-x))/B(a,b) of F(a,b;a+b;x) as x -> 1-.
template <class Real>
Real log_singular_expansion(const Real& a, const Real& b, const Real& x) {
    using std::log1p;
    if (!(to_double(x) > 0.0 && to_double(x) < 1.0)) {
        throw DomainError("log_singular_expansion: x must lie in (0, 1)");
    }
    return (r_constant(a, b) - log1p(Real(-x))) / beta_fn(a, b);
}

template <class Real>
NearOneExpansion<Real> asymptotic_F_near_one(NearOneKind kind, const Real& t) {
    using std::log;
    if (!(to_double(t) > 0.0 && to_double(t) < 1.0)) {
        throw DomainError("asymptotic_F_near_one: t must lie in (0, 1)");
    }
    const Real pi = RealTraits<Real>::pi();
    const Real log16t = log(Real(16.0) / t);
    if (kind == NearOneKind::C1) {
        return {log16t / pi, t / (pi * 4.0) * (log16t - 2.0)};
    }
    return {Real(4.0) / pi, -(t / pi) * (log16t - 3.0)};
}

}  // namespace ellik

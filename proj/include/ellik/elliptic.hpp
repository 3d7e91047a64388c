#pragma once

// Complete elliptic integrals K(r), E(r) and the Grötzsch ring modulus
// mu(r) = (pi/2) K(r')/K(r).

#include <cmath>

#include "ellik/hypergeom.hpp"
#include "ellik/real.hpp"

namespace ellik {

/// Modulus r in (0,1) with its complement r' = sqrt(1 - r^2). Both r^2 and
/// r'^2 are kept as products (1-r)(1+r) style so neither side suffers
/// cancellation near the endpoints.
template <class Real>
class Modulus {
public:
    explicit Modulus(const Real& r) : Modulus(r, true) {}

    static Modulus from_complement(const Real& rp) {
        Modulus m(rp, true);
        return m.complement();
    }

    /// From x = r^2; t = 1 - x is formed directly so it keeps full relative
    /// accuracy as x -> 1.
    static Modulus from_square(const Real& x) {
        using std::sqrt;
        if (!(x > Real(0.0) && x < Real(1.0))) throw DomainError("x = r^2 must lie in (0, 1)");
        const Real t = Real(1.0) - x;
        return Modulus(sqrt(x), sqrt(t), x, t);
    }

    Modulus complement() const { return Modulus(rp_, r_, t_, x_); }

    const Real& r() const { return r_; }
    const Real& rp() const { return rp_; }
    /// r^2
    const Real& x() const { return x_; }
    /// r'^2 = 1 - r^2
    const Real& t() const { return t_; }

private:
    Modulus(const Real& r, bool) : r_(r) {
        using std::sqrt;
        if (!(r > Real(0.0) && r < Real(1.0))) throw DomainError("modulus r must lie in (0, 1)");
        x_ = r * r;
        t_ = (Real(1.0) - r) * (Real(1.0) + r);
        rp_ = sqrt(t_);
    }
    Modulus(const Real& r, const Real& rp, const Real& x, const Real& t) : r_(r), rp_(rp), x_(x), t_(t) {}

    Real r_;
    Real rp_;
    Real x_;
    Real t_;
};

/// Arithmetic-geometric mean of a, b > 0.
template <class Real>
Real agm(Real a, Real b) {
    using std::abs;
    using std::sqrt;
    if (!(to_double(a) > 0.0 && to_double(b) > 0.0)) throw DomainError("agm: arguments must be positive");
    for (int i = 0; i < 200; ++i) {
        if (abs(to_double(a - b)) <= RealTraits<Real>::series_tol * to_double(a)) break;
        const Real an = (a + b) * 0.5;
        const Real bn = sqrt(a * b);
        if (an == a && bn == b) break;
        a = an;
        b = bn;
    }
    return (a + b) * 0.5;
}

/// K(r) = pi / (2 agm(1, r')).
template <class Real>
Real ellip_k(const Modulus<Real>& m) {
    return RealTraits<Real>::pi() / (agm(Real(1.0), m.rp()) * 2.0);
}

template <class Real>
Real ellip_k(const Real& r) {
    return ellip_k(Modulus<Real>(r));
}

namespace elliptic_detail {

template <class Real>
Real f_of_modulus(const HypParams<Real>& p, const Modulus<Real>& m) {
    return to_double(m.x()) <= 0.5 ? gauss_2f1(p, m.x()) : gauss_2f1_one_minus(p, m.t());
}

}  // namespace elliptic_detail

/// K(r) = (pi/2) F(1/2, 1/2; 1; r^2), independent of the AGM path.
template <class Real>
Real ellip_k_series(const Modulus<Real>& m) {
    const HypParams<Real> p(0.5, 0.5, 1.0);
    return RealTraits<Real>::pi() * 0.5 * elliptic_detail::f_of_modulus(p, m);
}

/// E(r) = (pi/2) F(1/2, -1/2; 1; r^2).
template <class Real>
Real ellip_e(const Modulus<Real>& m) {
    const HypParams<Real> p(0.5, -0.5, 1.0);
    return RealTraits<Real>::pi() * 0.5 * elliptic_detail::f_of_modulus(p, m);
}

template <class Real>
Real ellip_e(const Real& r) {
    return ellip_e(Modulus<Real>(r));
}

/// mu(r) = (pi/2) K(r') / K(r).
template <class Real>
Real grotzsch_mu(const Modulus<Real>& m) {
    return RealTraits<Real>::pi() * 0.5 * ellip_k(m.complement()) / ellip_k(m);
}

template <class Real>
Real grotzsch_mu(const Real& r) {
    return grotzsch_mu(Modulus<Real>(r));
}

/// r in (0,1) with mu(r) = y, by bisection (mu is strictly decreasing).
/// For y >= pi/2 the search runs over ln r; smaller y go through the
/// symmetry mu(r) mu(r') = (pi/2)^2.
template <class Real>
Real mu_inverse(const Real& y) {
    using std::exp;
    using std::log;
    using std::sqrt;
    if (!(to_double(y) > 0.0)) throw DomainError("mu_inverse: y must be positive");
    const Real half_pi = RealTraits<Real>::pi() * 0.5;
    if (to_double(y) < to_double(half_pi)) {
        const Real s = mu_inverse(Real(half_pi * half_pi / y));
        return sqrt((Real(1.0) - s) * (Real(1.0) + s));
    }
    if (to_double(y) > 700.0) throw DomainError("mu_inverse: y too large, r underflows");

    auto mu_at = [](const Real& u) { return grotzsch_mu(Modulus<Real>(exp(u))); };
    // mu(r) < ln(4/r), so u = ln 4 - y lies at or beyond the root.
    Real lo = log(Real(4.0)) - y - 1.0;
    while (mu_at(lo) < y) lo -= 2.0;
    Real hi = log(Real(0.5)) * 0.5;  // ln(1/sqrt 2)
    for (int i = 0; i < 400; ++i) {
        const Real mid = (lo + hi) * 0.5;
        if (mid == lo || mid == hi) break;
        if (mu_at(mid) > y) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    using std::abs;
    return abs(Real(mu_at(lo) - y)) < abs(Real(mu_at(hi) - y)) ? exp(lo) : exp(hi);
}

}  // namespace ellik

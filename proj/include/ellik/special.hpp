#pragma once

// Gamma, digamma and beta for the parameter values the hypergeometric code
// needs. Integer and half-integer arguments are evaluated by exact recurrence
// from Gamma(1), Gamma(1/2), psi(1), psi(1/2); other arguments use the
// Stirling / asymptotic series after an upward shift.

#include <array>
#include <cmath>
#include <string>
#include <type_traits>

#include "ellik/real.hpp"

namespace ellik {

namespace special_detail {

// B_{2k} as numerator/denominator, k = 1..15.
inline constexpr std::array<std::array<double, 2>, 15> kBernoulli = {{
    {1.0, 6.0},
    {-1.0, 30.0},
    {1.0, 42.0},
    {-1.0, 30.0},
    {5.0, 66.0},
    {-691.0, 2730.0},
    {7.0, 6.0},
    {-3617.0, 510.0},
    {43867.0, 798.0},
    {-174611.0, 330.0},
    {854513.0, 138.0},
    {-236364091.0, 2730.0},
    {8553103.0, 6.0},
    {-23749461029.0, 870.0},
    {8615841276005.0, 14322.0},
}};

inline constexpr double kShift = 30.0;

// Returns true and sets twice_x when 2x is an integer.
template <class Real>
bool half_integer(const Real& x, long& twice_x) {
    return near_integer(Real(x * 2.0), &twice_x);
}

template <class Real>
Real lgamma_stirling(Real x) {
    using std::log;
    const Real pi = RealTraits<Real>::pi();
    Real result = (x - 0.5) * log(x) - x + log(pi * 2.0) * 0.5;
    const Real inv = Real(1.0) / x;
    const Real inv2 = inv * inv;
    Real power = inv;
    for (std::size_t k = 0; k < kBernoulli.size(); ++k) {
        const double two_k = 2.0 * static_cast<double>(k + 1);
        const Real coeff = Real(kBernoulli[k][0]) / (kBernoulli[k][1] * two_k * (two_k - 1.0));
        result += coeff * power;
        power = power * inv2;
    }
    return result;
}

template <class Real>
Real digamma_asymptotic(Real x) {
    using std::log;
    Real result = log(x) - Real(0.5) / x;
    const Real inv2 = Real(1.0) / (x * x);
    Real power = inv2;
    for (std::size_t k = 0; k < kBernoulli.size(); ++k) {
        const double two_k = 2.0 * static_cast<double>(k + 1);
        result -= Real(kBernoulli[k][0]) / (kBernoulli[k][1] * two_k) * power;
        power = power * inv2;
    }
    return result;
}

}  // namespace special_detail

/// Gamma function. Poles (non-positive integers) raise DomainError.
template <class Real>
Real gamma_fn(const Real& x) {
    using std::exp;
    using std::sqrt;
    long twice = 0;
    if (special_detail::half_integer(x, twice)) {
        if (twice <= 0 && twice % 2 == 0) {
            throw DomainError("gamma: pole at non-positive integer " + std::to_string(twice / 2));
        }
        // Start from Gamma(1) or Gamma(1/2) and walk to x.
        Real value = twice % 2 == 0 ? Real(1.0) : sqrt(RealTraits<Real>::pi());
        Real z = twice % 2 == 0 ? Real(1.0) : Real(0.5);
        const long steps = twice % 2 == 0 ? (twice - 2) / 2 : (twice - 1) / 2;
        if (steps >= 0) {
            for (long k = 0; k < steps; ++k) {
                value *= z;
                z += 1.0;
            }
        } else {
            for (long k = 0; k < -steps; ++k) {
                z -= 1.0;
                value /= z;
            }
        }
        return value;
    }
    if constexpr (std::is_same_v<Real, double>) {
        return std::tgamma(x);
    } else {
        // Gamma(x) = Gamma(x + k) / (x (x+1) ... (x+k-1)).
        Real z = x;
        Real denom = 1.0;
        while (to_double(z) < special_detail::kShift) {
            denom *= z;
            z += 1.0;
        }
        return exp(special_detail::lgamma_stirling(z)) / denom;
    }
}

/// Digamma psi(x) = Gamma'(x)/Gamma(x). Exact recurrence at integers and
/// half-integers: psi(1) = -gamma, psi(1/2) = -gamma - 2 ln 2.
template <class Real>
Real digamma(const Real& x) {
    long twice = 0;
    if (special_detail::half_integer(x, twice)) {
        if (twice <= 0 && twice % 2 == 0) {
            throw DomainError("digamma: pole at non-positive integer " + std::to_string(twice / 2));
        }
        if (twice <= 128) {
            Real value = -RealTraits<Real>::euler_gamma();
            Real z = 1.0;
            if (twice % 2 != 0) {
                value -= RealTraits<Real>::ln2() * 2.0;
                z = 0.5;
            }
            const long steps = twice % 2 == 0 ? (twice - 2) / 2 : (twice - 1) / 2;
            if (steps >= 0) {
                for (long k = 0; k < steps; ++k) {
                    value += Real(1.0) / z;
                    z += 1.0;
                }
            } else {
                for (long k = 0; k < -steps; ++k) {
                    z -= 1.0;
                    value -= Real(1.0) / z;
                }
            }
            return value;
        }
    }
    // psi(x) = psi(x + k) - sum_{j<k} 1/(x + j).
    Real z = x;
    Real correction = 0.0;
    while (to_double(z) < special_detail::kShift) {
        correction += Real(1.0) / z;
        z += 1.0;
    }
    return special_detail::digamma_asymptotic(z) - correction;
}

template <class Real>
Real beta_fn(const Real& a, const Real& b) {
    return gamma_fn(a) * gamma_fn(b) / gamma_fn(Real(a + b));
}

}  // namespace ellik

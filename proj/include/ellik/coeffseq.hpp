#pragma once

// Exact coefficient sequences behind the concavity and convexity proofs:
// the Wallis ratio W_n, the convolution sums beta_n and the series
// coefficients alpha_n, a_n/b_n, q_n, c_n, together with residuals of the
// recurrences they satisfy. Every residual is an exact rational that must
// vanish.

#include <cstddef>
#include <vector>

#include "ellik/rational.hpp"

namespace ellik {

/// W_n = (2n-1)!!/(2n)!!, from W_0 = 1 and W_{n+1} = (n+1/2)/(n+1) W_n.
/// Memoized; safe to call from several threads.
Rational wallis(std::size_t n);

/// W_n as a double, from the recurrence carried in double-double.
double wallis_double(std::size_t n);

/// lambda_n = (11n-6)(2n+1)^2 / (4 (n+4)(11n-17)(n+1)).
Rational lambda_coeff(std::size_t n);

/// beta_n = sum_{k<n} (11k-17) W_k^2 / ((k+1)(k+2)(k+3)(n-k)), summed
/// directly. n >= 1.
Rational beta_direct(std::size_t n);

/// Directly summed beta_1..beta_{n_max}; entry 0 is unused (zero).
std::vector<Rational> beta_direct_table(std::size_t n_max);

/// beta_n through the first-order recurrence, memoized.
Rational beta_seq(std::size_t n);

/// The W_n^2 term that beta_{n+1} - lambda_n beta_n should equal.
Rational beta_step_closed_form(std::size_t n);

/// beta_{n+1} - lambda_n beta_n - beta_step_closed_form(n), with both beta
/// values summed directly. n >= 2.
Rational beta_recurrence_residual(std::size_t n);
Rational beta_recurrence_residual(std::size_t n, const Rational& beta_n, const Rational& beta_next);

/// phi_i(n) for i in {0,1,2}: sum_{k<n} (k+1/2)^i W_k^2 / ((k+1)^2 (k+2)(k+3)(k+4)).
Rational phi_direct(int i, std::size_t n);
/// The closed forms of phi_i(n) in terms of W_n.
Rational phi_closed_form(int i, std::size_t n);
Rational phi_closed_form_residual(int i, std::size_t n);

/// alpha_n = (5n^3+32n^2+77n+3) W_n^2 / (5(n+1)(n+2)(n+3)) + (9/80) beta_n.
Rational alpha_from_beta(std::size_t n, const Rational& beta_n);
/// alpha_n with beta_n from the memoized recurrence. n >= 1.
Rational alpha_seq(std::size_t n);
/// (3/80)(2n+1)(44n^3+293n^2+263n+840) W_n^2 / ((11n-17)(n+1)^2(n+2)(n+3)(n+4)).
Rational alpha_step_closed_form(std::size_t n);
/// alpha_{n+1} - lambda_n alpha_n - alpha_step_closed_form(n), alpha from
/// directly summed beta. n >= 2.
Rational alpha_recurrence_residual(std::size_t n);
Rational alpha_recurrence_residual(std::size_t n, const Rational& alpha_n, const Rational& alpha_next);

/// Numerator and denominator coefficients of the power series of
/// (15+x)F(1/2,1/2;2;x) and 8(4 - sqrt(1-x)).
Rational thm2_a(std::size_t n);
Rational thm2_b(std::size_t n);
/// a_n/b_n in closed form: 5/8 at n = 0, (64n^2-56n+15) W_n / (8(2n-1)(n+1)) after.
Rational thm2_ratio(std::size_t n);
/// -(1/2)(64n^2-168n+83) / ((n+2)(64n^2-56n+15)), the value of
/// (a_{n+1}/b_{n+1})/(a_n/b_n) - 1. n >= 1.
Rational thm2_ratio_step_sign(std::size_t n);
/// thm2_ratio_step_sign(n) minus the same quotient from thm2_ratio.
Rational thm2_ratio_step_residual(std::size_t n);

/// 4096n^4 - 14848n^3 + 17984n^2 - 8672n + 2025.
Rational thm3_quartic(std::size_t n);
/// q_n = d_n/pi = (9/32) quartic W_n / ((2n-1)(2n-3)(n+1)(n+2)(32n-39)). n >= 2.
Rational thm3_q(std::size_t n);
/// P5(n) from the expansion in powers of n and in powers of n-2.
Rational p5_expanded(const Rational& n);
Rational p5_shifted(const Rational& n);
/// P5(n). Throws std::logic_error if the two expansions disagree. n >= 2.
Rational thm3_d_ratio_sign(std::size_t n);
/// (q_{n+1}/q_n - 1) + 196608 P5(n) / ((32n-7)(n+3) quartic(n)). n >= 2.
Rational thm3_d_ratio_residual(std::size_t n);
/// Certified sign of d_n - 1 = pi q_n - 1.
Sign thm3_dn_minus_one_sign(std::size_t n);

struct DnSignPattern {
    std::size_t n0 = 0;             // last index with d_n - 1 >= 0
    std::size_t checked_to = 0;     // indices 2..checked_to examined
    bool single_change = false;     // nonnegative through n0, negative after
    std::vector<std::size_t> indeterminate;
};

/// Locates the sign change of d_n - 1 over 2 <= n <= n_max.
DnSignPattern thm3_dn_sign_pattern(std::size_t n_max);

/// Coefficient c_n of the power series of
/// h(x) = (9 pi/64)(x+15)^2 F(1/2,1/2;3;x) + (3x+13) sqrt(1-x) - 16(x+7).
PiLinear h_coeff(std::size_t n);

/// f3(x) = 1/32 - (1/16) sum_{n>=1} (4n-1) W_n^2 x^n / ((n+1)(n+2));
/// coefficient of x^n (n = 0 gives 1/32).
Rational f3_coeff(std::size_t n);

/// f5(x) = 1/10 - (3/40)x - (9/640)x^2 - (31/20480)x^3.
Rational f5_value(const Rational& x);

}  // namespace ellik

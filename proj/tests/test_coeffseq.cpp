#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "ellik/coeffseq.hpp"

using ellik::Rational;

namespace {

Rational q(long num, long den = 1) { return ellik::make_rational(num, den); }

// (2n-1)!! / (2n)!! from integer products.
Rational double_factorial_ratio(std::size_t n) {
    mpz_class odd = 1, even = 1;
    for (std::size_t k = 1; k <= n; ++k) {
        odd *= static_cast<unsigned long>(2 * k - 1);
        even *= static_cast<unsigned long>(2 * k);
    }
    Rational r(odd, even);
    r.canonicalize();
    return r;
}

Rational ul(std::size_t n) { return Rational(static_cast<unsigned long>(n)); }

// Power series coefficients of h, built from the three pieces separately:
// F(1/2,1/2;3;x) = sum ((1/2)_k)^2/((3)_k k!) x^k, sqrt(1-x) = sum binom(1/2,k)(-x)^k.
std::vector<ellik::PiLinear> h_series(std::size_t n_max) {
    std::vector<Rational> f(n_max + 1), s(n_max + 1);
    f[0] = 1;
    s[0] = 1;
    for (std::size_t k = 0; k < n_max; ++k) {
        const Rational kk = ul(k);
        f[k + 1] = f[k] * (kk + q(1, 2)) * (kk + q(1, 2)) / ((kk + 3) * (kk + 1));
        s[k + 1] = -s[k] * (q(1, 2) - kk) / (kk + 1);
    }
    // (x+15)^2 = 225 + 30x + x^2
    std::vector<ellik::PiLinear> c(n_max + 1);
    for (std::size_t n = 0; n <= n_max; ++n) {
        Rational p = 225 * f[n];
        if (n >= 1) p += 30 * f[n - 1];
        if (n >= 2) p += f[n - 2];
        Rational r = 13 * s[n];
        if (n >= 1) r += 3 * s[n - 1];
        if (n == 0) r -= 112;
        if (n == 1) r -= 16;
        c[n] = ellik::PiLinear(p * q(9, 64), r);
    }
    return c;
}

}  // namespace

TEST_CASE("Wallis ratio matches double factorials") {
    for (std::size_t n = 0; n <= 60; ++n) {
        CAPTURE(n);
        CHECK(ellik::wallis(n) == double_factorial_ratio(n));
        CHECK(ellik::wallis_double(n) == doctest::Approx(double_factorial_ratio(n).get_d()).epsilon(1e-15));
    }
    CHECK(ellik::wallis(2) == q(3, 8));
}

TEST_CASE("beta by recurrence equals beta by direct sum") {
    CHECK(ellik::beta_seq(1) == q(-17, 6));
    CHECK(ellik::beta_direct(1) == q(-17, 6));
    const auto table = ellik::beta_direct_table(80);
    for (std::size_t n = 1; n <= 80; ++n) {
        CAPTURE(n);
        CHECK(ellik::beta_seq(n) == table[n]);
    }
    CHECK(table[7] == ellik::beta_direct(7));
}

TEST_CASE("recurrence residuals vanish") {
    for (std::size_t n = 2; n <= 120; ++n) {
        CAPTURE(n);
        CHECK(ellik::beta_recurrence_residual(n) == 0);
        CHECK(ellik::alpha_recurrence_residual(n) == 0);
    }
    for (int i = 0; i <= 2; ++i) {
        for (std::size_t n = 1; n <= 60; ++n) {
            CHECK(ellik::phi_closed_form_residual(i, n) == 0);
            CHECK(ellik::phi_direct(i, n) == ellik::phi_closed_form(i, n));
        }
    }
}

TEST_CASE("a perturbed value breaks the recurrence") {
    const Rational b5 = ellik::beta_direct(5), b6 = ellik::beta_direct(6);
    CHECK(ellik::beta_recurrence_residual(5, b5, b6) == 0);
    CHECK(ellik::beta_recurrence_residual(5, b5, b6 + q(1, 1000000)) != 0);
}

TEST_CASE("first four alpha") {
    CHECK(ellik::alpha_seq(1) == q(-3, 40));
    CHECK(ellik::alpha_seq(2) == q(-9, 640));
    CHECK(ellik::alpha_seq(3) == q(-31, 20480));
    CHECK(ellik::alpha_seq(4) == q(243, 163840));
    for (std::size_t n = 4; n <= 300; ++n) CHECK(ellik::alpha_seq(n) > 0);
}

TEST_CASE("f5 is the alpha cubic") {
    // f5(x) = 1/10 + sum_{n<=3} alpha_n x^n
    const Rational x = q(2, 7);
    Rational direct = q(1, 10), power = 1;
    for (std::size_t n = 1; n <= 3; ++n) {
        power *= x;
        direct += ellik::alpha_seq(n) * power;
    }
    CHECK(ellik::f5_value(x) == direct);
    CHECK(ellik::f5_value(1) == q(193, 20480));
    CHECK(ellik::f5_value(0) == q(1, 10));
}

TEST_CASE("thm2 coefficient ratio") {
    CHECK(ellik::thm2_ratio(0) == q(5, 8));
    CHECK(ellik::thm2_ratio(1) == q(23, 32));
    CHECK(ellik::thm2_ratio(2) == q(53, 64));
    CHECK(ellik::thm2_ratio(3) == q(423, 512));
    for (std::size_t n = 0; n <= 40; ++n) {
        CAPTURE(n);
        CHECK(ellik::thm2_ratio(n) == ellik::thm2_a(n) / ellik::thm2_b(n));
        CHECK(ellik::thm2_b(n) > 0);
    }
    // Increasing up to n = 2, decreasing from there on.
    CHECK(ellik::thm2_ratio(1) > ellik::thm2_ratio(0));
    CHECK(ellik::thm2_ratio(2) > ellik::thm2_ratio(1));
    for (std::size_t n = 2; n <= 200; ++n) {
        CHECK(ellik::thm2_ratio(n + 1) < ellik::thm2_ratio(n));
        CHECK(ellik::thm2_ratio_step_residual(n) == 0);
    }
    CHECK(ellik::thm2_ratio_step_sign(1) > 0);
    CHECK(ellik::thm2_ratio_step_sign(2) < 0);
}

TEST_CASE("thm3 sequences") {
    CHECK(ellik::thm3_q(2) == q(10107, 25600));
    CHECK(ellik::thm3_q(3) == q(13749, 38912));
    CHECK(ellik::p5_expanded(2) == q(67235, 131072));
    CHECK(ellik::thm3_d_ratio_sign(2) == q(67235, 131072));
    for (std::size_t n = 2; n <= 150; ++n) {
        CAPTURE(n);
        CHECK(ellik::p5_expanded(ul(n)) == ellik::p5_shifted(ul(n)));
        CHECK(ellik::thm3_d_ratio_residual(n) == 0);
        CHECK(ellik::thm3_d_ratio_sign(n) > 0);
        CHECK(ellik::thm3_quartic(n) > 0);
    }
    const auto pattern = ellik::thm3_dn_sign_pattern(500);
    CHECK(pattern.n0 == 3);
    CHECK(pattern.single_change);
    CHECK(pattern.indeterminate.empty());
    CHECK(ellik::thm3_dn_minus_one_sign(3) == ellik::Sign::Positive);
    CHECK(ellik::thm3_dn_minus_one_sign(4) == ellik::Sign::Negative);
}

TEST_CASE("h coefficients equal the convolution of its three pieces") {
    const auto c = h_series(40);
    for (std::size_t n = 0; n <= 40; ++n) {
        CAPTURE(n);
        CHECK(ellik::h_coeff(n) == c[n]);
    }
    // Positive through n = 3, negative from n = 4.
    for (std::size_t n = 0; n <= 3; ++n) CHECK(ellik::h_coeff(n).sign() == ellik::Sign::Positive);
    for (std::size_t n = 4; n <= 200; ++n) CHECK(ellik::h_coeff(n).sign() == ellik::Sign::Negative);
    // h(0) = (2025/64) pi - 99
    CHECK(ellik::h_coeff(0) == ellik::PiLinear(q(2025, 64), -99));
}

TEST_CASE("f3 partial sums telescope") {
    CHECK(ellik::f3_coeff(0) == q(1, 32));
    CHECK(ellik::f3_coeff(1) == q(-1, 128));
    Rational sum = 0;
    for (std::size_t n = 0; n <= 120; ++n) {
        sum += ellik::f3_coeff(n);
        const Rational w = ellik::wallis(n + 1);
        CAPTURE(n);
        CHECK(sum == ul(n + 1) * w * w / (4 * ul(n + 2)));
    }
}

TEST_CASE("pi linear signs are certified") {
    const ellik::PiLinear a(1, q(-314159265, 100000000));
    CHECK(a.sign() == ellik::Sign::Positive);
    const ellik::PiLinear b(1, q(-314159266, 100000000));
    CHECK(b.sign() == ellik::Sign::Negative);
    CHECK(ellik::PiLinear(0, 0).sign() == ellik::Sign::Zero);
    Rational lo, hi;
    a.enclose(lo, hi);
    CHECK(lo < hi);
    CHECK(hi - lo < q(1, 1000000000));
}

#include "ellik/coeffseq.hpp"

#include <mutex>
#include <stdexcept>
#include <string>

#include "ellik/real.hpp"

namespace ellik {

namespace {

Rational num(std::size_t n) { return Rational(static_cast<unsigned long>(n)); }

Rational frac(long a, long b) { return make_rational(a, b); }

void require(bool ok, const char* what) {
    if (!ok) throw DomainError(what);
}

// A prefix of a sequence defined by a first-order recurrence, extended on
// demand under a lock.
class MemoTable {
public:
    template <class Next>
    Rational get(std::size_t n, Next&& next) {
        std::lock_guard<std::mutex> lock(mutex_);
        while (values_.size() <= n) values_.push_back(next(values_));
        return values_[n];
    }

private:
    std::mutex mutex_;
    std::vector<Rational> values_;
};

MemoTable& wallis_table() {
    static MemoTable table;
    return table;
}

MemoTable& beta_table() {
    static MemoTable table;
    return table;
}

// (11k-17) W_k^2 / ((k+1)(k+2)(k+3)), the numerator sequence of beta.
Rational beta_weight(std::size_t k) {
    const Rational w = wallis(k);
    const Rational kk = num(k);
    return (11 * kk - 17) * w * w / ((kk + 1) * (kk + 2) * (kk + 3));
}

}  // namespace

Rational wallis(std::size_t n) {
    return wallis_table().get(n, [](const std::vector<Rational>& prev) {
        if (prev.empty()) return Rational(1);
        const std::size_t k = prev.size() - 1;
        return Rational(prev.back() * frac(static_cast<long>(2 * k + 1), static_cast<long>(2 * k + 2)));
    });
}

double wallis_double(std::size_t n) {
    static std::mutex mutex;
    static std::vector<double> values;
    static DoubleDouble last = 1.0;
    std::lock_guard<std::mutex> lock(mutex);
    if (values.empty()) values.push_back(1.0);
    while (values.size() <= n) {
        const double k = static_cast<double>(values.size() - 1);
        last = last * (2.0 * k + 1.0) / (2.0 * k + 2.0);
        values.push_back(static_cast<double>(last));
    }
    return values[n];
}

Rational lambda_coeff(std::size_t n) {
    const Rational x = num(n);
    return (11 * x - 6) * (2 * x + 1) * (2 * x + 1) / (4 * (x + 4) * (11 * x - 17) * (x + 1));
}

Rational beta_direct(std::size_t n) {
    require(n >= 1, "beta_direct: n must be at least 1");
    Rational sum = 0;
    for (std::size_t k = 0; k < n; ++k) sum += beta_weight(k) / num(n - k);
    return sum;
}

std::vector<Rational> beta_direct_table(std::size_t n_max) {
    std::vector<Rational> weights(n_max);
    for (std::size_t k = 0; k < n_max; ++k) weights[k] = beta_weight(k);
    std::vector<Rational> beta(n_max + 1);
    for (std::size_t n = 1; n <= n_max; ++n) {
        Rational sum = 0;
        for (std::size_t k = 0; k < n; ++k) sum += weights[k] / num(n - k);
        beta[n] = sum;
    }
    return beta;
}

Rational beta_step_closed_form(std::size_t n) {
    const Rational x = num(n);
    const Rational w = wallis(n);
    const Rational poly = 880 * x * x * x * x + 2404 * x * x * x - 7319 * x * x - 20301 * x - 10404;
    const Rational den = (11 * x - 17) * (x + 1) * (x + 1) * (x + 2) * (x + 3) * (x + 4);
    return -frac(1, 9) * (2 * x + 1) * poly / den * w * w;
}

Rational beta_seq(std::size_t n) {
    require(n >= 1, "beta_seq: n must be at least 1");
    return beta_table().get(n, [](const std::vector<Rational>& prev) {
        const std::size_t m = prev.size();
        if (m == 0) return Rational(0);  // unused slot
        if (m <= 2) return beta_direct(m);
        const std::size_t k = m - 1;
        return Rational(lambda_coeff(k) * prev[k] + beta_step_closed_form(k));
    });
}

Rational beta_recurrence_residual(std::size_t n, const Rational& beta_n, const Rational& beta_next) {
    require(n >= 2, "beta_recurrence_residual: n must be at least 2");
    return beta_next - lambda_coeff(n) * beta_n - beta_step_closed_form(n);
}

Rational beta_recurrence_residual(std::size_t n) {
    return beta_recurrence_residual(n, beta_direct(n), beta_direct(n + 1));
}

Rational phi_direct(int i, std::size_t n) {
    require(i >= 0 && i <= 2, "phi_direct: i must be 0, 1 or 2");
    require(n >= 1, "phi_direct: n must be at least 1");
    Rational sum = 0;
    for (std::size_t k = 0; k < n; ++k) {
        const Rational kk = num(k);
        const Rational w = wallis(k);
        Rational term = w * w / ((kk + 1) * (kk + 1) * (kk + 2) * (kk + 3) * (kk + 4));
        const Rational half = kk + frac(1, 2);
        for (int j = 0; j < i; ++j) term *= half;
        sum += term;
    }
    return sum;
}

Rational phi_closed_form(int i, std::size_t n) {
    require(i >= 0 && i <= 2, "phi_closed_form: i must be 0, 1 or 2");
    const Rational x = num(n);
    const Rational w2 = wallis(n) * wallis(n);
    const Rational cubic = (x + 1) * (x + 2) * (x + 3);
    switch (i) {
        case 2:
            return frac(1, 225) * (2 * x + 1) * (2 * x + 1) * (32 * x * x + 168 * x + 225) / cubic * w2 - frac(1, 6);
        case 1:
            return frac(1, 3) -
                   frac(2, 525) * (2 * x + 1) * (128 * x * x * x + 736 * x * x + 1236 * x + 525) / cubic * w2;
        default:
            return frac(4, 3675) * (2048 * x * x * x * x + 12800 * x * x * x + 25664 * x * x + 18288 * x + 3675) /
                       cubic * w2 -
                   frac(2, 3);
    }
}

Rational phi_closed_form_residual(int i, std::size_t n) { return phi_direct(i, n) - phi_closed_form(i, n); }

Rational alpha_from_beta(std::size_t n, const Rational& beta_n) {
    require(n >= 1, "alpha: n must be at least 1");
    const Rational x = num(n);
    const Rational w = wallis(n);
    return (5 * x * x * x + 32 * x * x + 77 * x + 3) / (5 * (x + 1) * (x + 2) * (x + 3)) * w * w +
           frac(9, 80) * beta_n;
}

Rational alpha_seq(std::size_t n) { return alpha_from_beta(n, beta_seq(n)); }

Rational alpha_step_closed_form(std::size_t n) {
    const Rational x = num(n);
    const Rational w = wallis(n);
    const Rational den = (11 * x - 17) * (x + 1) * (x + 1) * (x + 2) * (x + 3) * (x + 4);
    return frac(3, 80) * (2 * x + 1) * (44 * x * x * x + 293 * x * x + 263 * x + 840) / den * w * w;
}

Rational alpha_recurrence_residual(std::size_t n, const Rational& alpha_n, const Rational& alpha_next) {
    require(n >= 2, "alpha_recurrence_residual: n must be at least 2");
    return alpha_next - lambda_coeff(n) * alpha_n - alpha_step_closed_form(n);
}

Rational alpha_recurrence_residual(std::size_t n) {
    return alpha_recurrence_residual(n, alpha_from_beta(n, beta_direct(n)), alpha_from_beta(n + 1, beta_direct(n + 1)));
}

Rational thm2_a(std::size_t n) {
    if (n == 0) return 15;
    const Rational x = num(n);
    const Rational w = wallis(n);
    return (64 * x * x - 56 * x + 15) / ((2 * x - 1) * (2 * x - 1) * (x + 1)) * w * w;
}

Rational thm2_b(std::size_t n) {
    if (n == 0) return 24;
    const Rational x = num(n);
    return 8 * wallis(n) / (2 * x - 1);
}

Rational thm2_ratio(std::size_t n) {
    if (n == 0) return frac(5, 8);
    const Rational x = num(n);
    return (64 * x * x - 56 * x + 15) / (8 * (2 * x - 1) * (x + 1)) * wallis(n);
}

Rational thm2_ratio_step_sign(std::size_t n) {
    require(n >= 1, "thm2_ratio_step_sign: n must be at least 1");
    const Rational x = num(n);
    return -frac(1, 2) * (64 * x * x - 168 * x + 83) / ((x + 2) * (64 * x * x - 56 * x + 15));
}

Rational thm2_ratio_step_residual(std::size_t n) {
    return thm2_ratio_step_sign(n) - (thm2_ratio(n + 1) / thm2_ratio(n) - 1);
}

Rational thm3_quartic(std::size_t n) {
    const Rational x = num(n);
    return 4096 * x * x * x * x - 14848 * x * x * x + 17984 * x * x - 8672 * x + 2025;
}

Rational thm3_q(std::size_t n) {
    require(n >= 2, "thm3_q: n must be at least 2");
    const Rational x = num(n);
    return frac(9, 32) * thm3_quartic(n) * wallis(n) /
           ((2 * x - 1) * (2 * x - 3) * (x + 1) * (x + 2) * (32 * x - 39));
}

Rational p5_expanded(const Rational& n) {
    return n * n * n * n * n - frac(427, 96) * n * n * n * n + frac(1823, 256) * n * n * n -
           frac(33203, 6144) * n * n + frac(4831, 2048) * n - frac(51165, 131072);
}

Rational p5_shifted(const Rational& n) {
    const Rational m = n - 2;
    return m * m * m * m * m + frac(533, 96) * m * m * m * m + frac(8861, 768) * m * m * m +
           frac(64957, 6144) * m * m + frac(23729, 6144) * m + frac(67235, 131072);
}

Rational thm3_d_ratio_sign(std::size_t n) {
    require(n >= 2, "thm3_d_ratio_sign: n must be at least 2");
    const Rational x = num(n);
    const Rational a = p5_expanded(x);
    if (a != p5_shifted(x)) throw std::logic_error("P5 expansions disagree at n = " + std::to_string(n));
    return a;
}

Rational thm3_d_ratio_residual(std::size_t n) {
    const Rational x = num(n);
    const Rational step = thm3_q(n + 1) / thm3_q(n) - 1;
    return step + 196608 * thm3_d_ratio_sign(n) / ((32 * x - 7) * (x + 3) * thm3_quartic(n));
}

Sign thm3_dn_minus_one_sign(std::size_t n) { return PiLinear(thm3_q(n), -1).sign(); }

DnSignPattern thm3_dn_sign_pattern(std::size_t n_max) {
    DnSignPattern out;
    out.n0 = 1;
    out.checked_to = n_max;
    bool seen_negative = false;
    bool consistent = true;
    for (std::size_t n = 2; n <= n_max; ++n) {
        const Sign s = thm3_dn_minus_one_sign(n);
        if (s == Sign::Indeterminate) {
            out.indeterminate.push_back(n);
            consistent = false;
        } else if (s == Sign::Negative) {
            seen_negative = true;
        } else if (seen_negative) {
            consistent = false;
        } else {
            out.n0 = n;
        }
    }
    out.single_change = consistent && seen_negative && out.n0 >= 2;
    return out;
}

PiLinear h_coeff(std::size_t n) {
    if (n == 0) return {frac(2025, 64), -99};
    if (n == 1) return {frac(1755, 256), frac(-39, 2)};
    const Rational x = num(n);
    const Rational w = wallis(n);
    const Rational odd = (2 * x - 1) * (2 * x - 3);
    const Rational p = frac(9, 32) * thm3_quartic(n) / (odd * odd * (x + 1) * (x + 2)) * w * w;
    const Rational q = -(32 * x - 39) / odd * w;
    return {p, q};
}

Rational f3_coeff(std::size_t n) {
    if (n == 0) return frac(1, 32);
    const Rational x = num(n);
    const Rational w = wallis(n);
    return -frac(1, 16) * (4 * x - 1) / ((x + 1) * (x + 2)) * w * w;
}

Rational f5_value(const Rational& x) {
    return frac(1, 10) - frac(3, 40) * x - frac(9, 640) * x * x - frac(31, 20480) * x * x * x;
}

}  // namespace ellik

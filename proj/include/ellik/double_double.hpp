#pragma once

// Unevaluated sum of two doubles (hi + lo, |lo| <= ulp(hi)/2), giving about
// 106 bits of significand. Arithmetic follows the usual error-free
// transformations (two-sum, fma-based two-product).

#include <cmath>
#include <compare>
#include <concepts>
#include <iosfwd>
#include <string>
#include <string_view>

namespace ellik {

class DoubleDouble {
public:
    constexpr DoubleDouble() = default;
    constexpr DoubleDouble(double x) : hi_(x), lo_(0.0) {}  // NOLINT(google-explicit-constructor)
    template <std::integral I>
    constexpr DoubleDouble(I n) : hi_(static_cast<double>(n)), lo_(0.0) {}  // NOLINT
    constexpr DoubleDouble(double hi, double lo) : hi_(hi), lo_(lo) {}

    constexpr double hi() const { return hi_; }
    constexpr double lo() const { return lo_; }
    explicit constexpr operator double() const { return hi_ + lo_; }

    /// Parses a decimal literal ("0.70710678118654752440", "-1.5e-7").
    /// Throws std::invalid_argument on malformed input.
    static DoubleDouble parse(std::string_view text);

    friend DoubleDouble operator-(DoubleDouble a) { return {-a.hi_, -a.lo_}; }

    friend DoubleDouble operator+(DoubleDouble a, DoubleDouble b);
    friend DoubleDouble operator+(DoubleDouble a, double b);
    friend DoubleDouble operator+(double a, DoubleDouble b) { return b + a; }
    friend DoubleDouble operator-(DoubleDouble a, DoubleDouble b) { return a + (-b); }
    friend DoubleDouble operator-(DoubleDouble a, double b) { return a + (-b); }
    friend DoubleDouble operator-(double a, DoubleDouble b) { return (-b) + a; }
    friend DoubleDouble operator*(DoubleDouble a, DoubleDouble b);
    friend DoubleDouble operator*(DoubleDouble a, double b);
    friend DoubleDouble operator*(double a, DoubleDouble b) { return b * a; }
    friend DoubleDouble operator/(DoubleDouble a, DoubleDouble b);
    friend DoubleDouble operator/(DoubleDouble a, double b);
    friend DoubleDouble operator/(double a, DoubleDouble b) { return DoubleDouble(a) / b; }

    DoubleDouble& operator+=(DoubleDouble b) { return *this = *this + b; }
    DoubleDouble& operator-=(DoubleDouble b) { return *this = *this - b; }
    DoubleDouble& operator*=(DoubleDouble b) { return *this = *this * b; }
    DoubleDouble& operator/=(DoubleDouble b) { return *this = *this / b; }

    friend bool operator==(DoubleDouble a, DoubleDouble b) { return a.hi_ == b.hi_ && a.lo_ == b.lo_; }
    friend std::partial_ordering operator<=>(DoubleDouble a, DoubleDouble b) {
        if (auto c = a.hi_ <=> b.hi_; c != 0) return c;
        return a.lo_ <=> b.lo_;
    }
    friend bool operator==(DoubleDouble a, double b) { return a == DoubleDouble(b); }
    friend std::partial_ordering operator<=>(DoubleDouble a, double b) { return a <=> DoubleDouble(b); }

private:
    double hi_ = 0.0;
    double lo_ = 0.0;
};

namespace dd_detail {

inline DoubleDouble quick_two_sum(double a, double b) {
    const double s = a + b;
    return {s, b - (s - a)};
}

inline DoubleDouble two_sum(double a, double b) {
    const double s = a + b;
    const double bb = s - a;
    return {s, (a - (s - bb)) + (b - bb)};
}

inline DoubleDouble two_prod(double a, double b) {
    const double p = a * b;
    return {p, std::fma(a, b, -p)};
}

}  // namespace dd_detail

inline DoubleDouble operator+(DoubleDouble a, DoubleDouble b) {
    using namespace dd_detail;
    DoubleDouble s = two_sum(a.hi_, b.hi_);
    DoubleDouble t = two_sum(a.lo_, b.lo_);
    double lo = s.lo() + t.hi();
    s = quick_two_sum(s.hi(), lo);
    lo = s.lo() + t.lo();
    return quick_two_sum(s.hi(), lo);
}

inline DoubleDouble operator+(DoubleDouble a, double b) {
    using namespace dd_detail;
    DoubleDouble s = two_sum(a.hi_, b);
    return quick_two_sum(s.hi(), s.lo() + a.lo_);
}

inline DoubleDouble operator*(DoubleDouble a, DoubleDouble b) {
    using namespace dd_detail;
    DoubleDouble p = two_prod(a.hi_, b.hi_);
    return quick_two_sum(p.hi(), p.lo() + (a.hi_ * b.lo_ + a.lo_ * b.hi_));
}

inline DoubleDouble operator*(DoubleDouble a, double b) {
    using namespace dd_detail;
    DoubleDouble p = two_prod(a.hi_, b);
    return quick_two_sum(p.hi(), p.lo() + a.lo_ * b);
}

inline DoubleDouble operator/(DoubleDouble a, DoubleDouble b) {
    // Three-step long division.
    const double q1 = a.hi_ / b.hi_;
    DoubleDouble r = a - b * q1;
    const double q2 = r.hi_ / b.hi_;
    r = r - b * q2;
    const double q3 = r.hi_ / b.hi_;
    return dd_detail::quick_two_sum(q1, q2) + q3;
}

inline DoubleDouble operator/(DoubleDouble a, double b) { return a / DoubleDouble(b); }

// Free functions picked up by argument-dependent lookup in generic code.
inline DoubleDouble abs(DoubleDouble x) { return x.hi() < 0.0 ? -x : x; }
inline DoubleDouble fabs(DoubleDouble x) { return abs(x); }
inline bool isfinite(DoubleDouble x) { return std::isfinite(x.hi()); }
inline bool isnan(DoubleDouble x) { return std::isnan(x.hi()); }
inline DoubleDouble ldexp(DoubleDouble x, int e) { return {std::ldexp(x.hi(), e), std::ldexp(x.lo(), e)}; }
DoubleDouble floor(DoubleDouble x);
DoubleDouble sqrt(DoubleDouble x);
DoubleDouble exp(DoubleDouble x);
DoubleDouble log(DoubleDouble x);
DoubleDouble log1p(DoubleDouble x);
DoubleDouble pow(DoubleDouble x, DoubleDouble y);
DoubleDouble pow(DoubleDouble x, int n);

/// Decimal rendering with `digits` significant digits (scientific when the
/// exponent is outside [-5, digits)).
std::string to_string(DoubleDouble x, int digits = 32);
std::ostream& operator<<(std::ostream& os, DoubleDouble x);

}  // namespace ellik

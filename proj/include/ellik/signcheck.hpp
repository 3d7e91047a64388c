#pragma once

// The auxiliary function H_{f,g} = (f'/g') g - f and two sign tools for
// power series: the sign of S(t) = -sum_{k<=m} a_k t^k + sum_{k>m} a_k t^k
// with a_k >= 0, and the monotonicity of A/B when a_k/b_k is piecewise
// monotone.

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>

#include "ellik/rational.hpp"
#include "ellik/real.hpp"

namespace ellik {

class PatternViolation : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class IndeterminateSign : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

template <class Real>
struct DifferentiablePair {
    std::function<Real(const Real&)> value;
    std::function<Real(const Real&)> derivative;  // analytic
    double lo = 0.0;
    double hi = 1.0;

    bool contains(const Real& x) const { return to_double(x) > lo && to_double(x) < hi; }
};

/// H_{f,g}(x) = (f'(x)/g'(x)) g(x) - f(x).
template <class Real>
Real h_aux(const DifferentiablePair<Real>& f, const DifferentiablePair<Real>& g, const Real& x) {
    if (!f.contains(x) || !g.contains(x)) throw DomainError("h_aux: x outside the common domain");
    const Real gp = g.derivative(x);
    if (to_double(gp) == 0.0) throw DomainError("h_aux: g' vanishes");
    return f.derivative(x) / gp * g.value(x) - f.value(x);
}

/// Coefficient sequence with floating values, certified signs and, when
/// known, exact rational values. Values are cached per stream; copies share
/// the cache, which is guarded by a mutex.
class CoeffStream {
public:
    using ValueFn = std::function<double(std::size_t)>;
    using SignFn = std::function<Sign(std::size_t)>;
    using ExactFn = std::function<Rational(std::size_t)>;

    CoeffStream(std::string name, ValueFn value, SignFn sign = {}, ExactFn exact = {});

    const std::string& name() const { return name_; }
    double value(std::size_t k) const;
    Sign sign(std::size_t k) const;
    bool has_exact() const { return static_cast<bool>(exact_); }
    Rational exact(std::size_t k) const;

    /// Coefficients beyond `degree` are zero.
    CoeffStream& with_degree(std::size_t degree);
    std::optional<std::size_t> degree() const { return degree_; }

    /// Number of leading coefficients examined by pattern checks.
    CoeffStream& with_prefix(std::size_t n);
    std::size_t prefix() const { return prefix_; }

    /// Caller asserts the pattern holds for every index, not just the prefix.
    CoeffStream& with_tail_certificate(bool certified);
    bool tail_certified() const { return tail_certified_; }

    /// Stream of -value with flipped signs.
    CoeffStream negated() const;

private:
    struct Cache;
    std::string name_;
    ValueFn value_;
    SignFn sign_;
    ExactFn exact_;
    std::optional<std::size_t> degree_;
    std::size_t prefix_ = 10000;
    bool tail_certified_ = false;
    std::shared_ptr<Cache> cache_;
};

/// Analytic value of a function at an endpoint, with its sign decided by the
/// caller's analysis rather than by sampling.
struct EndpointLimit {
    double value = 0.0;
    Sign sign = Sign::Indeterminate;
    std::string description;

    static EndpointLimit exact(const Rational& v, std::string description);
    static EndpointLimit exact(const PiLinear& v, std::string description);
    /// Sign is certified only when |value| > error.
    static EndpointLimit approximate(double value, double error, std::string description);
};

struct SeriesValue {
    double value = 0.0;
    double error = 0.0;   // rounding plus truncated tail
    double scale = 0.0;   // sum of |terms|
    std::size_t terms = 0;
};

/// sum_k s_k t^k (or its derivative when `derivative` is set), summed until
/// a term is below 2^-60 of the absolute sum and the terms are shrinking.
/// Throws ConvergenceError after 10^6 terms.
SeriesValue evaluate_series(const CoeffStream& s, double t, bool derivative = false);

struct Bracket {
    double lo = 0.0;
    double hi = 0.0;
    double width() const { return hi - lo; }
};

struct SignAnalysis {
    enum class Verdict { NegativeThroughout, PositiveThroughout, UniqueCrossing };
    Verdict verdict = Verdict::NegativeThroughout;
    std::optional<Bracket> crossing;
    bool crossing_certified = false;  // endpoint signs exceed 10x their error
    std::size_t terms_checked = 0;
    bool tail_certified = false;

    /// "certified" when the caller certified the coefficient tail,
    /// "prefix-verified" otherwise.
    std::string label() const { return tail_certified ? "certified" : "prefix-verified"; }
};

const char* to_string(SignAnalysis::Verdict v);

inline constexpr double kBracketTolerance = 1e-12;

/// Sign of S(t) = sum s_k t^k on (0, r) for a stream with s_k <= 0 for
/// k <= m, s_m < 0 and s_k >= 0 (not all zero) for k > m. Throws
/// PatternViolation when the prefix does not have that shape and
/// IndeterminateSign when the limit S(r-) has no certified sign.
SignAnalysis series_sign_analysis(const CoeffStream& s, std::size_t m, double r, const EndpointLimit& s_at_r);

struct RatioClassification {
    enum class Kind { MonotoneIncreasing, MonotoneDecreasing, IncreasingThenDecreasing, DecreasingThenIncreasing };
    Kind kind = Kind::MonotoneIncreasing;
    std::optional<Bracket> turning_point;
    bool bracket_certified = false;
    std::size_t terms_checked = 0;
    bool tail_certified = false;

    std::string label() const { return tail_certified ? "certified" : "prefix-verified"; }
};

const char* to_string(RatioClassification::Kind k);

/// Monotonicity of A/B on (0, r) for A = sum a_k t^k, B = sum b_k t^k with
/// b_k > 0 and a_k/b_k increasing for k <= m and decreasing for k >= m (or
/// the mirror pattern), decided by the sign of H_{A,B}(r-).
RatioClassification ratio_monotonicity_classify(const CoeffStream& a, const CoeffStream& b, std::size_t m, double r,
                                                const EndpointLimit& h_limit);

}  // namespace ellik

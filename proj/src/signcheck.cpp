#include "ellik/signcheck.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <vector>

namespace ellik {

namespace {

constexpr double kEps = 0x1p-53;
constexpr double kTermTol = 0x1p-60;
constexpr std::size_t kMaxTerms = 1'000'000;
constexpr double kMargin = 10.0;

struct Probe {
    double value = 0.0;
    double error = 0.0;
    bool positive() const { return value > kMargin * error; }
    bool negative() const { return value < -kMargin * error; }
};

struct Located {
    Bracket bracket;
    bool certified = false;
};

// f < 0 just right of lo (lo_certified says whether that is known from an
// evaluation) and f > 0 somewhere before r; returns a bracket of the sign
// change no wider than kBracketTolerance when the evaluations allow it.
Located locate_crossing(const std::function<Probe(double)>& f, double lo, bool lo_certified, double r) {
    Located out;
    double hi = r;
    bool hi_certified = false;
    for (int j = 1; j <= 52; ++j) {
        const double t = r * (1.0 - std::ldexp(1.0, -j));
        if (t <= lo) continue;
        Probe p;
        try {
            p = f(t);
        } catch (const ConvergenceError&) {
            break;
        }
        if (p.positive()) {
            hi = t;
            hi_certified = true;
            break;
        }
        if (p.negative()) {
            lo = t;
            lo_certified = true;
        }
    }
    if (hi_certified) {
        while (hi - lo > kBracketTolerance) {
            const double mid = 0.5 * (lo + hi);
            if (mid <= lo || mid >= hi) break;
            const Probe p = f(mid);
            if (p.positive()) {
                hi = mid;
            } else if (p.negative()) {
                lo = mid;
                lo_certified = true;
            } else {
                // Too close to the root to decide at mid; try the quarter points.
                const double w = 0.25 * (hi - lo);
                const Probe left = f(mid - w);
                const Probe right = f(mid + w);
                bool moved = false;
                if (left.negative()) {
                    lo = mid - w;
                    lo_certified = true;
                    moved = true;
                }
                if (right.positive()) {
                    hi = mid + w;
                    moved = true;
                }
                if (!moved) break;
            }
        }
    }
    out.bracket = {lo, hi};
    out.certified = lo_certified && hi_certified;
    return out;
}

Sign sign_from_double(double v) {
    if (std::isnan(v)) return Sign::Indeterminate;
    return v > 0.0 ? Sign::Positive : (v < 0.0 ? Sign::Negative : Sign::Zero);
}

Sign flip(Sign s) {
    if (s == Sign::Positive) return Sign::Negative;
    if (s == Sign::Negative) return Sign::Positive;
    return s;
}

std::size_t checked_length(const CoeffStream& s) {
    std::size_t n = s.prefix();
    if (s.degree() && *s.degree() + 1 < n) n = *s.degree() + 1;
    return n;
}

}  // namespace

struct CoeffStream::Cache {
    std::mutex mutex;
    std::vector<double> values;
};

CoeffStream::CoeffStream(std::string name, ValueFn value, SignFn sign, ExactFn exact)
    : name_(std::move(name)),
      value_(std::move(value)),
      sign_(std::move(sign)),
      exact_(std::move(exact)),
      cache_(std::make_shared<Cache>()) {}

double CoeffStream::value(std::size_t k) const {
    if (degree_ && k > *degree_) return 0.0;
    std::lock_guard<std::mutex> lock(cache_->mutex);
    auto& v = cache_->values;
    while (v.size() <= k) v.push_back(value_(v.size()));
    return v[k];
}

Sign CoeffStream::sign(std::size_t k) const {
    if (degree_ && k > *degree_) return Sign::Zero;
    if (sign_) return sign_(k);
    if (exact_) return sign_of(exact_(k));
    return sign_from_double(value(k));
}

Rational CoeffStream::exact(std::size_t k) const {
    if (!exact_) throw std::logic_error("coefficient stream " + name_ + " has no exact values");
    if (degree_ && k > *degree_) return 0;
    return exact_(k);
}

CoeffStream& CoeffStream::with_degree(std::size_t degree) {
    degree_ = degree;
    return *this;
}

CoeffStream& CoeffStream::with_prefix(std::size_t n) {
    prefix_ = n;
    return *this;
}

CoeffStream& CoeffStream::with_tail_certificate(bool certified) {
    tail_certified_ = certified;
    return *this;
}

CoeffStream CoeffStream::negated() const {
    const CoeffStream self = *this;
    ExactFn exact;
    if (exact_) exact = [self](std::size_t k) { return Rational(-self.exact(k)); };
    CoeffStream out(
        "-" + name_, [self](std::size_t k) { return -self.value(k); },
        [self](std::size_t k) { return flip(self.sign(k)); }, std::move(exact));
    out.degree_ = degree_;
    out.prefix_ = prefix_;
    out.tail_certified_ = tail_certified_;
    return out;
}

EndpointLimit EndpointLimit::exact(const Rational& v, std::string description) {
    return {v.get_d(), sign_of(v), std::move(description)};
}

EndpointLimit EndpointLimit::exact(const PiLinear& v, std::string description) {
    return {v.approx(), v.sign(), std::move(description)};
}

EndpointLimit EndpointLimit::approximate(double value, double error, std::string description) {
    Sign s = Sign::Indeterminate;
    if (value > error) s = Sign::Positive;
    if (value < -error) s = Sign::Negative;
    return {value, s, std::move(description)};
}

SeriesValue evaluate_series(const CoeffStream& s, double t, bool derivative) {
    SeriesValue out;
    double sum = 0.0;
    double comp = 0.0;  // Neumaier compensation
    double power = 1.0;  // t^k, or t^(k-1) for the derivative
    double prev_mag = std::numeric_limits<double>::infinity();
    double tail = 0.0;
    const auto degree = s.degree();
    std::size_t k = 0;
    for (;; ++k) {
        if (k >= kMaxTerms) throw ConvergenceError("series of " + s.name() + " did not converge in 10^6 terms");
        if (degree && k > *degree) break;
        double term = 0.0;
        if (derivative) {
            if (k > 0) {
                term = static_cast<double>(k) * s.value(k) * power;
                power *= t;
            }
        } else {
            term = s.value(k) * power;
            power *= t;
        }
        const double next = sum + term;
        comp += std::abs(sum) >= std::abs(term) ? (sum - next) + term : (term - next) + sum;
        sum = next;
        const double mag = std::abs(term);
        out.scale += mag;
        if (k >= 8 && mag <= kTermTol * out.scale && mag <= prev_mag) {
            if (prev_mag > 0.0 && std::isfinite(prev_mag)) {
                const double q = mag / prev_mag;
                tail = q < 1.0 ? mag * q / (1.0 - q) : mag;
            }
            break;
        }
        if (power == 0.0 && k > 0) break;
        prev_mag = mag;
    }
    out.value = sum + comp;
    out.terms = k + 1;
    out.error = 8.0 * kEps * out.scale + tail;
    return out;
}

const char* to_string(SignAnalysis::Verdict v) {
    switch (v) {
        case SignAnalysis::Verdict::NegativeThroughout: return "negative-throughout";
        case SignAnalysis::Verdict::PositiveThroughout: return "positive-throughout";
        case SignAnalysis::Verdict::UniqueCrossing: return "unique-crossing";
    }
    return "unknown";
}

const char* to_string(RatioClassification::Kind k) {
    switch (k) {
        case RatioClassification::Kind::MonotoneIncreasing: return "monotone-increasing";
        case RatioClassification::Kind::MonotoneDecreasing: return "monotone-decreasing";
        case RatioClassification::Kind::IncreasingThenDecreasing: return "increasing-then-decreasing";
        case RatioClassification::Kind::DecreasingThenIncreasing: return "decreasing-then-increasing";
    }
    return "unknown";
}

SignAnalysis series_sign_analysis(const CoeffStream& s, std::size_t m, double r, const EndpointLimit& s_at_r) {
    if (!(r > 0.0)) throw DomainError("series_sign_analysis: r must be positive");
    const std::size_t n = checked_length(s);
    if (m >= n) throw PatternViolation("series_sign_analysis: m lies beyond the checked prefix");

    // orientation +1: head <= 0, tail >= 0;
    // orientation -1: the mirror pattern, handled through -S.
    const Sign head = s.sign(m);
    if (head == Sign::Indeterminate) throw IndeterminateSign(s.name() + ": sign of coefficient m undecided");
    if (head == Sign::Zero) throw PatternViolation(s.name() + ": coefficient m must be nonzero");
    const int orientation = head == Sign::Negative ? 1 : -1;
    const Sign head_sign = orientation == 1 ? Sign::Negative : Sign::Positive;
    const Sign tail_sign = flip(head_sign);

    bool tail_nonzero = false;
    for (std::size_t k = 0; k < n; ++k) {
        const Sign sk = s.sign(k);
        if (sk == Sign::Indeterminate) {
            throw IndeterminateSign(s.name() + ": sign of coefficient " + std::to_string(k) + " undecided");
        }
        if (k <= m && sk == tail_sign) {
            throw PatternViolation(s.name() + ": head coefficient " + std::to_string(k) + " has the tail sign");
        }
        if (k > m && sk == head_sign) {
            throw PatternViolation(s.name() + ": tail coefficient " + std::to_string(k) + " has the head sign");
        }
        if (k > m && sk == tail_sign) tail_nonzero = true;
    }
    if (!tail_nonzero) throw PatternViolation(s.name() + ": tail is zero over the checked prefix");

    if (s_at_r.sign == Sign::Indeterminate) {
        throw IndeterminateSign(s.name() + ": endpoint limit has no certified sign (" + s_at_r.description + ")");
    }

    SignAnalysis out;
    out.terms_checked = n;
    out.tail_certified = s.tail_certified() || (s.degree() && *s.degree() < s.prefix());
    const Sign limit = orientation == 1 ? s_at_r.sign : flip(s_at_r.sign);
    if (limit != Sign::Positive) {
        out.verdict =
            orientation == 1 ? SignAnalysis::Verdict::NegativeThroughout : SignAnalysis::Verdict::PositiveThroughout;
        return out;
    }

    out.verdict = SignAnalysis::Verdict::UniqueCrossing;
    const double o = orientation;
    auto f = [&](double t) {
        const SeriesValue v = evaluate_series(s, t);
        return Probe{o * v.value, v.error};
    };
    const Located loc = locate_crossing(f, 0.0, s.sign(0) == head_sign, r);
    out.crossing = loc.bracket;
    out.crossing_certified = loc.certified;
    return out;
}

RatioClassification ratio_monotonicity_classify(const CoeffStream& a, const CoeffStream& b, std::size_t m, double r,
                                                const EndpointLimit& h_limit) {
    if (!(r > 0.0)) throw DomainError("ratio_monotonicity_classify: r must be positive");
    std::size_t n = std::min(checked_length(a), checked_length(b));
    if (n < 2 || m + 1 >= n) throw PatternViolation("ratio_monotonicity_classify: prefix too short for m");

    for (std::size_t k = 0; k < n; ++k) {
        const Sign sb = b.sign(k);
        if (sb == Sign::Indeterminate) throw IndeterminateSign(b.name() + ": sign undecided");
        if (sb != Sign::Positive) throw PatternViolation(b.name() + ": coefficient " + std::to_string(k) + " not positive");
    }

    const bool exact = a.has_exact() && b.has_exact();
    auto step = [&](std::size_t k) -> Sign {
        if (exact) return sign_of(Rational(a.exact(k + 1) / b.exact(k + 1) - a.exact(k) / b.exact(k)));
        const double x0 = a.value(k) / b.value(k);
        const double x1 = a.value(k + 1) / b.value(k + 1);
        const double d = x1 - x0;
        if (std::abs(d) <= 8.0 * kEps * (std::abs(x0) + std::abs(x1))) return Sign::Indeterminate;
        return sign_from_double(d);
    };

    // Steps k -> k+1 for k < m belong to the head, k >= m to the tail.
    bool head_up = false, head_down = false, tail_up = false, tail_down = false;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        const Sign s = step(k);
        if (s == Sign::Indeterminate) {
            throw IndeterminateSign("ratio step " + std::to_string(k) + " undecided in floating point");
        }
        bool& up = k < m ? head_up : tail_up;
        bool& down = k < m ? head_down : tail_down;
        if (s == Sign::Positive) up = true;
        if (s == Sign::Negative) down = true;
    }
    if (!(head_up || head_down || tail_up || tail_down)) {
        throw PatternViolation("ratio_monotonicity_classify: a_k/b_k is constant");
    }
    if ((head_up && head_down) || (tail_up && tail_down) || (head_up && tail_up) || (head_down && tail_down)) {
        throw PatternViolation("ratio_monotonicity_classify: a_k/b_k is not piecewise monotone with turn at m");
    }
    const bool increasing_first = head_up || (!head_down && tail_down);

    if (h_limit.sign == Sign::Indeterminate) {
        throw IndeterminateSign("H_{A,B} endpoint limit has no certified sign (" + h_limit.description + ")");
    }

    RatioClassification out;
    out.terms_checked = n;
    out.tail_certified = a.tail_certified() && b.tail_certified();
    using Kind = RatioClassification::Kind;
    if (increasing_first && h_limit.sign != Sign::Negative) {
        out.kind = Kind::MonotoneIncreasing;
        return out;
    }
    if (!increasing_first && h_limit.sign != Sign::Positive) {
        out.kind = Kind::MonotoneDecreasing;
        return out;
    }
    out.kind = increasing_first ? Kind::IncreasingThenDecreasing : Kind::DecreasingThenIncreasing;

    // (A/B)' has the sign of G = A'B - AB'; the turning point is where G
    // changes sign.
    const double o = increasing_first ? -1.0 : 1.0;
    auto f = [&](double t) {
        const SeriesValue av = evaluate_series(a, t);
        const SeriesValue ad = evaluate_series(a, t, true);
        const SeriesValue bv = evaluate_series(b, t);
        const SeriesValue bd = evaluate_series(b, t, true);
        const double g = ad.value * bv.value - av.value * bd.value;
        const double err = ad.error * std::abs(bv.value) + std::abs(ad.value) * bv.error +
                           av.error * std::abs(bd.value) + std::abs(av.value) * bd.error +
                           4.0 * kEps * (std::abs(ad.value * bv.value) + std::abs(av.value * bd.value));
        return Probe{o * g, err};
    };
    const Sign first = step(0);
    const bool lo_certified = increasing_first ? first == Sign::Positive : first == Sign::Negative;
    const Located loc = locate_crossing(f, 0.0, lo_certified, r);
    out.turning_point = loc.bracket;
    out.bracket_certified = loc.certified;
    return out;
}

}  // namespace ellik

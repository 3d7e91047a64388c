#include "ellik/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <mutex>
#include <random>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "ellik/coeffseq.hpp"
#include "ellik/elliptic.hpp"
#include "ellik/hypergeom.hpp"
#include "ellik/signcheck.hpp"
#include "ellik/special.hpp"

namespace ellik {

namespace {

using DD = DoubleDouble;

// Rounding error of a combination is taken as kKappa * epsilon * scale; a
// margin inside kUndecided times that error has no decided sign.
constexpr double kKappa = 64.0;
constexpr double kUndecided = 10.0;

struct PointMargin {
    double value = 0.0;
    double error = 0.0;
    bool extended = false;
    bool failed_evaluation = false;
};

enum class PointClass { Fails, Undecided, Holds };

PointClass classify(const PointMargin& m) {
    if (m.failed_evaluation || !std::isfinite(m.value)) return PointClass::Undecided;
    if (std::abs(m.value) <= kUndecided * m.error) return PointClass::Undecided;
    return m.value > 0.0 ? PointClass::Holds : PointClass::Fails;
}

template <class Real>
PointMargin margin_of(const Evaluated<Real>& e, double sign = 1.0) {
    using std::abs;
    PointMargin m;
    m.value = sign * to_double(e.value);
    m.error = kKappa * RealTraits<Real>::epsilon * to_double(abs(e.scale));
    m.extended = std::is_same_v<Real, DD>;
    return m;
}

// The worse of two margins: a failure beats an undecided sign beats a pass;
// ties go to the smaller value.
PointMargin worse(const PointMargin& a, const PointMargin& b) {
    const PointClass ca = classify(a);
    const PointClass cb = classify(b);
    if (ca != cb) return ca < cb ? a : b;
    return a.value <= b.value ? a : b;
}

bool in_extended_zone(double p) { return std::min(p, 1.0 - p) < kExtendedZone; }

template <class Real>
LogConstant<Real> constant_as(const LogConstant<DD>& c) {
    if constexpr (std::is_same_v<Real, DD>) {
        return c;
    } else {
        if (c.exact_ln_c) return LogConstant<double>::exp_of(*c.exact_ln_c);
        return {to_double(c.ln_c), std::nullopt};
    }
}

// Evaluates f at p in double, or in double-double inside the endpoint zones,
// under extended precision, or when the double result is undecided.
template <class F>
PointMargin evaluate_point(double p, Precision precision, const F& f) {
    try {
        if (precision == Precision::Double && !in_extended_zone(p)) {
            const PointMargin m = f(p);
            if (classify(m) != PointClass::Undecided) return m;
        }
        return f(DD(p));
    } catch (const std::exception&) {
        PointMargin m;
        m.value = std::numeric_limits<double>::quiet_NaN();
        m.failed_evaluation = true;
        return m;
    }
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

struct Outcome {
    double worst_margin = 0.0;
    double worst_point = 0.0;
    Status status = Status::Pass;
    std::string notes;
};

Outcome reduce(const std::vector<double>& points, const std::vector<PointMargin>& margins, const std::string& what) {
    Outcome out;
    std::size_t fails = 0, undecided = 0, errors = 0, extended = 0;
    std::size_t worst = 0;
    for (std::size_t i = 0; i < margins.size(); ++i) {
        const PointMargin& m = margins[i];
        const PointClass c = classify(m);
        if (c == PointClass::Fails) ++fails;
        if (c == PointClass::Undecided) ++undecided;
        if (m.failed_evaluation) ++errors;
        if (m.extended) ++extended;
        if (i == 0 || c < classify(margins[worst]) ||
            (c == classify(margins[worst]) && m.value < margins[worst].value)) {
            worst = i;
        }
    }
    if (!margins.empty()) {
        out.worst_margin = margins[worst].value;
        out.worst_point = points[worst];
    }
    out.status = fails > 0 ? Status::Fail : (undecided > 0 ? Status::Indeterminate : Status::Pass);
    std::ostringstream os;
    os << what << "; " << margins.size() << " points (" << extended << " in double-double)";
    if (fails > 0) os << "; fails at " << fails;
    if (undecided > 0) os << "; undecided at " << undecided;
    if (errors > 0) os << "; evaluation errors at " << errors;
    if (!margins.empty()) os << "; worst error estimate " << fmt(margins[worst].error);
    out.notes = os.str();
    return out;
}

template <class F>
std::vector<PointMargin> sweep(const std::vector<double>& points, const VerifyOptions& options, const F& f) {
    std::vector<PointMargin> margins(points.size());
    parallel_for(
        points.size(), [&](std::size_t i) { margins[i] = evaluate_point(points[i], options.precision, f); },
        options.threads);
    return margins;
}

template <class F>
Outcome pointwise(const std::vector<double>& points, const VerifyOptions& options, const std::string& what,
                  const F& f) {
    return reduce(points, sweep(points, options, f), what);
}

// Strict monotonicity by consecutive comparison: margin_i = dir * (v_{i+1} - v_i).
template <class F>
Outcome monotone(const std::vector<double>& points, const VerifyOptions& options, double dir, const std::string& what,
                 const F& f) {
    struct Value {
        DD v = 0.0;
        double err = 0.0;
        bool extended = false;
        bool failed = false;
    };
    auto eval = [&](double p, bool force_dd) {
        Value out;
        try {
            if (!force_dd && options.precision == Precision::Double && !in_extended_zone(p)) {
                const Evaluated<double> e = f(p);
                out.v = e.value;
                out.err = kKappa * RealTraits<double>::epsilon * std::abs(e.scale);
            } else {
                const Evaluated<DD> e = f(DD(p));
                out.v = e.value;
                out.err = kKappa * RealTraits<DD>::epsilon * std::abs(to_double(e.scale));
                out.extended = true;
            }
        } catch (const std::exception&) {
            out.failed = true;
        }
        return out;
    };
    std::vector<Value> values(points.size());
    parallel_for(points.size(), [&](std::size_t i) { values[i] = eval(points[i], false); }, options.threads);

    std::vector<PointMargin> margins(points.size() > 0 ? points.size() - 1 : 0);
    auto pair_margin = [&](std::size_t i) {
        PointMargin m;
        m.value = dir * to_double(values[i + 1].v - values[i].v);
        m.error = values[i].err + values[i + 1].err;
        m.extended = values[i].extended || values[i + 1].extended;
        m.failed_evaluation = values[i].failed || values[i + 1].failed;
        return m;
    };
    for (std::size_t i = 0; i + 1 < points.size(); ++i) {
        margins[i] = pair_margin(i);
        if (classify(margins[i]) == PointClass::Undecided && !margins[i].failed_evaluation && !margins[i].extended) {
            values[i] = eval(points[i], true);
            values[i + 1] = eval(points[i + 1], true);
            margins[i] = pair_margin(i);
            if (i > 0) margins[i - 1] = pair_margin(i - 1);
        }
    }
    std::vector<double> left(points.begin(), points.end() - (points.empty() ? 0 : 1));
    return reduce(left, margins, what);
}

// Tolerance claims: margin = tol - |err|.
Outcome tolerance(double err, double tol, double point, const std::string& notes) {
    Outcome out;
    out.worst_margin = tol - std::abs(err);
    out.worst_point = point;
    out.status = std::isfinite(err) && std::abs(err) < tol ? Status::Pass : Status::Fail;
    out.notes = notes;
    return out;
}

Outcome exact_residuals(std::size_t nonzero, std::size_t first_bad, std::size_t last, const std::string& notes) {
    Outcome out;
    out.worst_margin = -static_cast<double>(nonzero);
    out.worst_point = static_cast<double>(nonzero > 0 ? first_bad : last);
    out.status = nonzero == 0 ? Status::Pass : Status::Fail;
    out.notes = notes + (nonzero == 0 ? "; all residuals exactly zero"
                                      : "; " + std::to_string(nonzero) + " nonzero residuals, first at index " +
                                            std::to_string(first_bad));
    return out;
}

Outcome combine_outcomes(const Outcome& a, const Outcome& b) {
    Outcome out = a;
    if (b.status == Status::Fail || (b.status == Status::Indeterminate && a.status == Status::Pass)) {
        out.status = b.status;
        out.worst_margin = b.worst_margin;
        out.worst_point = b.worst_point;
    }
    out.notes = a.notes + "; " + b.notes;
    return out;
}

template <class Real>
Modulus<Real> modulus(const Real& r) {
    return Modulus<Real>(r);
}

// ---- thm1 suite ---------------------------------------------------------

Outcome thm1_concavity(const GridSpec& g, const VerifyOptions& o) {
    const auto points = g.samples();
    return pointwise(points, o, "margin -Q1''(x), analytic", [&](auto x) {
        using Real = decltype(x);
        return margin_of(q1_second_eval(x, constant_as<Real>(o.c)), -1.0);
    });
}

Outcome thm1_sharpness(const GridSpec&, const VerifyOptions& o) {
    const DD limit = q1_second_limit(o.c);
    Outcome out;
    out.worst_point = 0.0;
    out.worst_margin = -to_double(limit);
    if (o.c.exact_ln_c) {
        const Rational d = 3 * *o.c.exact_ln_c - 4;
        out.status = sign_of(d) == Sign::Zero ? Status::Pass : Status::Fail;
        out.notes = "ln c = " + to_string(*o.c.exact_ln_c) + " held exactly; 3 ln c - 4 = " + to_string(d);
        return out;
    }
    const double err = kKappa * RealTraits<DD>::epsilon * to_double(limit);
    out.status = to_double(limit) > kUndecided * err ? Status::Fail : Status::Indeterminate;
    out.notes = "limit Q1''(0+) = " + fmt(to_double(limit)) + " for decimal c; zero only at c = e^{4/3}";
    return out;
}

Outcome thm1_necessity(const GridSpec&, const VerifyOptions&) {
    const DD ln_sharp = DD(4.0) / 3.0;
    struct Case {
        const char* name;
        LogConstant<DD> c;
    };
    const std::vector<Case> cases = {
        {"0.95 e^{4/3}", {ln_sharp + log(DD(0.95)), std::nullopt}},
        {"1.05 e^{4/3}", {ln_sharp + log(DD(1.05)), std::nullopt}},
        {"3.5", LogConstant<DD>::of_value(DD(3.5))},
        {"4", LogConstant<DD>::of_value(DD(4.0))},
        {"e^2", LogConstant<DD>::exp_of(Rational(2))},
    };
    constexpr double floor_value = 1e-6;
    Outcome out;
    out.worst_margin = std::numeric_limits<double>::infinity();
    std::ostringstream notes;
    notes << "limit Q1''(0+) must exceed " << floor_value << ":";
    for (const Case& c : cases) {
        const double v = to_double(q1_second_limit(c.c));
        notes << " c = " << c.name << " -> " << fmt(v) << ";";
        if (v - floor_value < out.worst_margin) {
            out.worst_margin = v - floor_value;
            out.worst_point = to_double(c.c.c());
        }
    }
    out.status = out.worst_margin > 0.0 ? Status::Pass : Status::Fail;
    out.notes = notes.str();
    return out;
}

Outcome thm1_midpoint(const GridSpec&, const VerifyOptions& o) {
    constexpr std::size_t pairs = 1000;
    std::vector<double> ts(pairs);
    for (std::size_t i = 0; i < pairs; ++i) ts[i] = static_cast<double>(i + 1) / (2.0 * (pairs + 1));
    return pointwise(ts, o, "1000 pairs t in (0, 1/2): min of Q1(1/2) - AM and AM - GM of Q1(t), Q1(1-t)",
                     [&](auto t) {
                         using Real = decltype(t);
                         using std::sqrt;
                         const LogConstant<Real> c = constant_as<Real>(o.c);
                         const Real a = q1(t, c);
                         const Real b = q1(Real(Real(1.0) - t), c);
                         const Real mid = q1(Real(0.5), c);
                         const Real am = (a + b) * 0.5;
                         const Real gm = sqrt(Real(a * b));
                         const Real s = a + b + mid;
                         return worse(margin_of(Evaluated<Real>{mid - am, s}), margin_of(Evaluated<Real>{am - gm, s}));
                     });
}

// Q1(0+) = (pi/2)/ln c; near 1, K = ln 4 + ell + O(t ln t) with ell = -(1/2) ln t,
// so Q1 - 1 = (ln 4 - ln c)/(ln c + ell) up to O(t ln t).
Outcome thm1_endpoints(const GridSpec&, const VerifyOptions& o) {
    const DD pi = RealTraits<DD>::pi();
    const double x0 = 1e-12;
    const double t1 = 1e-10;
    const double e0 = to_double(q1(DD(x0), o.c) - pi * 0.5 / o.c.ln_c);
    const DD ell = -log(DD(t1)) * 0.5;
    const DD q_one = q1(DD(1.0) - t1, o.c);
    const double e1 = to_double(q_one - 1.0 - (RealTraits<DD>::ln2() * 2.0 - o.c.ln_c) / (o.c.ln_c + ell));
    const Outcome a = tolerance(e0, 1e-10, x0, "|Q1(1e-12) - (pi/2)/ln c| = " + fmt(std::abs(e0)) + " (tol 1e-10)");
    const Outcome b = tolerance(e1, 1e-8, 1.0 - t1,
                                "Q1(1 - 1e-10) - 1 = " + fmt(to_double(q_one - 1.0)) +
                                    ", off the (ln 4 - ln c)/(ln c + ell) approach by " + fmt(std::abs(e1)) + " (tol 1e-8)");
    Outcome out = combine_outcomes(a, b);
    if (a.status == Status::Pass && b.status == Status::Pass) {
        out.worst_margin = std::min(a.worst_margin, b.worst_margin);
        out.worst_point = a.worst_margin <= b.worst_margin ? x0 : 1.0 - t1;
    }
    return out;
}

// ---- thm2 suite ---------------------------------------------------------

Outcome thm2_monotone(const GridSpec& g, const VerifyOptions& o) {
    return monotone(g.samples(), o, 1.0, "variable r; consecutive differences of Q2(r) - pi/ln 25",
                    [](auto r) { return q2_excess(modulus(r)); });
}

Outcome thm2_bounds(const GridSpec& g, const VerifyOptions& o) {
    return pointwise(g.samples(), o, "variable r; min of K - (pi/ln 25) ln(1+4/r') and ln(1+4/r') - K", [](auto r) {
        const auto m = k_bound_margins(modulus(r), KFamily::Thm2);
        return worse(margin_of(*m.lower), margin_of(m.upper));
    });
}

Outcome thm2_endpoints(const GridSpec&, const VerifyOptions&) {
    const DD q2_lower = SharpConstants<DD>::compute().q2_lower;
    const double r0 = 1e-8;
    const double r1 = 1.0 - 1e-10;
    const double e0 = to_double(q2(DD(r0)) - q2_lower);
    const double e1 = to_double(q2(DD(r1)) - 1.0);
    const Outcome a = tolerance(e0, 1e-6, r0, "|Q2(1e-8) - pi/ln 25| = " + fmt(std::abs(e0)) + " (tol 1e-6)");
    const Outcome b = tolerance(e1, 1e-3, r1, "|Q2(1 - 1e-10) - 1| = " + fmt(std::abs(e1)) + " (tol 1e-3)");
    Outcome out = combine_outcomes(a, b);
    if (a.status == Status::Pass && b.status == Status::Pass) {
        out.worst_margin = std::min(a.worst_margin, b.worst_margin);
        out.worst_point = a.worst_margin <= b.worst_margin ? r0 : r1;
    }
    return out;
}

Outcome thm2_h_at_zero(const GridSpec&, const VerifyOptions&) {
    const DD v = RealTraits<DD>::ln5() * (15.0 / 24.0) - 1.0;
    Outcome out;
    out.worst_margin = to_double(v);
    out.worst_point = 0.0;
    out.status = to_double(v) > kUndecided * kKappa * RealTraits<DD>::epsilon ? Status::Pass : Status::Fail;
    out.notes = "H at 0+ equals (15/24) ln 5 - 1 = " + fmt(to_double(v));
    return out;
}

Outcome thm2_ratio_classify(const GridSpec&, const VerifyOptions&) {
    constexpr std::size_t prefix = 2000;
    const CoeffStream a = CoeffStream(
                              "a", [](std::size_t n) { return thm2_a(n).get_d(); }, {},
                              [](std::size_t n) { return thm2_a(n); })
                              .with_prefix(prefix)
                              .with_tail_certificate(true);
    const CoeffStream b = CoeffStream(
                              "b", [](std::size_t n) { return thm2_b(n).get_d(); }, {},
                              [](std::size_t n) { return thm2_b(n); })
                              .with_prefix(prefix)
                              .with_tail_certificate(true);
    const double h1 = -64.0 / RealTraits<double>::pi();
    const EndpointLimit limit = EndpointLimit::approximate(h1, 1e-12, "H_{A,B}(1-) = -64/pi");
    Outcome out;
    try {
        const RatioClassification rc = ratio_monotonicity_classify(a, b, 2, 1.0, limit);
        const bool ok = rc.kind == RatioClassification::Kind::IncreasingThenDecreasing && rc.turning_point;
        out.status = ok ? Status::Pass : Status::Fail;
        out.worst_margin = -h1;
        out.worst_point = rc.turning_point ? 0.5 * (rc.turning_point->lo + rc.turning_point->hi) : 0.0;
        std::ostringstream os;
        os << "a_n/b_n peaks at n = 2; A/B " << to_string(rc.kind) << " (" << rc.label() << ", "
           << rc.terms_checked << " terms)";
        if (rc.turning_point) {
            os << "; turning point in [" << fmt(rc.turning_point->lo) << ", " << fmt(rc.turning_point->hi) << "]"
               << (rc.bracket_certified ? "" : " (bracket uncertified)");
        }
        out.notes = os.str();
    } catch (const PatternViolation& e) {
        out.status = Status::Fail;
        out.notes = e.what();
    } catch (const IndeterminateSign& e) {
        out.status = Status::Indeterminate;
        out.notes = e.what();
    }
    return out;
}

// ---- thm3 suite ---------------------------------------------------------

Outcome thm3_convexity(const GridSpec& g, const VerifyOptions& o) {
    return pointwise(g.samples(), o, "margin D''(x) = h(x)/((x+15)^2 (1-x)^2)",
                     [](auto x) { return margin_of(d_second_eval(x)); });
}

CoeffStream h_stream() {
    return CoeffStream(
               "h", [](std::size_t n) { return h_coeff(n).approx(); }, [](std::size_t n) { return h_coeff(n).sign(); })
        .with_prefix(2000)
        .with_tail_certificate(true);
}

Outcome thm3_h_nonnegative(const GridSpec& g, const VerifyOptions& o) {
    Outcome series;
    try {
        const SignAnalysis sa =
            series_sign_analysis(h_stream().negated(), 3, 1.0, EndpointLimit::exact(Rational(0), "h(1-) = 0"));
        const bool ok = sa.verdict == SignAnalysis::Verdict::NegativeThroughout;
        series.status = ok ? Status::Pass : Status::Fail;
        series.notes = std::string("-h series: ") + to_string(sa.verdict) + " (" + sa.label() + ", " +
                       std::to_string(sa.terms_checked) + " coefficients)";
    } catch (const PatternViolation& e) {
        series.status = Status::Fail;
        series.notes = e.what();
    } catch (const IndeterminateSign& e) {
        series.status = Status::Indeterminate;
        series.notes = e.what();
    }
    const Outcome grid = pointwise(g.samples(), o, "grid margin h(x)", [](auto x) { return margin_of(h_eval(x)); });
    Outcome out = combine_outcomes(grid, series);
    if (series.status == Status::Pass) {
        out.worst_margin = grid.worst_margin;
        out.worst_point = grid.worst_point;
    }
    return out;
}

Outcome thm3_h_limit(const GridSpec&, const VerifyOptions&) {
    const DD pi = RealTraits<DD>::pi();
    const DD g5 = near_one_value(HypParams<DD>(0.5, 0.5, 3.0));
    const DD limit = pi * (9.0 / 64.0) * 256.0 * g5 - 128.0;
    const double near = to_double(h_func(DD(1.0 - 1e-8)));
    return tolerance(to_double(limit), 1e-20, 1.0,
                     "h(1-) = (9 pi/64) 256 F(1/2,1/2;3;1) - 128 = " + fmt(to_double(limit)) +
                         "; for reference h(1 - 1e-8) = " + fmt(near) + " since h ~ 16 sqrt(1-x)");
}

Outcome thm3_dprime_zero(const GridSpec&, const VerifyOptions&) {
    const DD p0 = SharpConstants<DD>::compute().p0;
    const double x = 1e-16;
    const double diff = to_double(d_first(DD(x)) - p0);
    Outcome out = tolerance(diff, 1e-12, x, "|D'(1e-16) - (pi/8 - 2/5)| = " + fmt(std::abs(diff)));
    if (!(to_double(p0) < 0.0)) {
        out.status = Status::Fail;
        out.notes += "; pi/8 - 2/5 is not negative";
    }
    return out;
}

struct Root {
    double lo = 0.0;
    double hi = 0.0;
    std::size_t changes = 0;
    bool undecided = false;
};

// Sign changes of D' on the grid, then bisection of the single change in
// double-double.
Root dprime_root(const GridSpec& g, const VerifyOptions& o) {
    const auto points = g.samples();
    const auto margins = sweep(points, o, [](auto x) { return margin_of(d_first_eval(x)); });
    Root out;
    int prev = 0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        const PointClass c = classify(margins[i]);
        if (c == PointClass::Undecided) {
            out.undecided = true;
            continue;
        }
        const int s = c == PointClass::Holds ? 1 : -1;
        if (prev != 0 && s != prev) {
            ++out.changes;
            if (out.changes == 1) {
                std::size_t j = i;
                while (j > 0 && classify(margins[j - 1]) == PointClass::Undecided) --j;
                out.lo = points[j > 0 ? j - 1 : 0];
                out.hi = points[i];
            }
        }
        prev = s;
    }
    if (out.changes == 1) {
        DD lo = out.lo;
        DD hi = out.hi;
        while (to_double(hi - lo) > 1e-13) {
            const DD mid = (lo + hi) * 0.5;
            const Evaluated<DD> v = d_first_eval(mid);
            if (std::abs(to_double(v.value)) <= kUndecided * kKappa * RealTraits<DD>::epsilon * to_double(v.scale)) {
                lo = hi = mid;
                break;
            }
            (to_double(v.value) < 0.0 ? lo : hi) = mid;
        }
        out.lo = to_double(lo);
        out.hi = to_double(hi);
    }
    return out;
}

Outcome thm3_dprime_unimodal(const GridSpec& g, const VerifyOptions& o) {
    const Root root = dprime_root(g, o);
    Outcome out;
    const double width = root.hi - root.lo;
    out.worst_point = 0.5 * (root.lo + root.hi);
    out.worst_margin = 1e-10 - width;
    std::ostringstream os;
    os << "sign changes of D' on the grid: " << root.changes;
    if (root.changes == 1) os << "; root in [" << fmt(root.lo) << ", " << fmt(root.hi) << "], width " << fmt(width);
    if (root.undecided) os << "; some grid signs undecided";
    out.notes = os.str();
    if (root.changes != 1 || !(width < 1e-10)) {
        out.status = Status::Fail;
    } else {
        out.status = root.undecided ? Status::Indeterminate : Status::Pass;
    }
    return out;
}

// ---- corollaries ---------------------------------------------------------

Outcome cor_mi1(const GridSpec& g, const VerifyOptions& o) {
    return pointwise(g.samples(), o, "variable r; pi c0 ln(e^{4/3}/r)/K - (pi/2) ln(e^{4/3}/r)/ln(e^{4/3}/r') - mu",
                     [](auto r) { return margin_of(product_inequalities(modulus(r)).mi1); });
}

Outcome cor_mi2(const GridSpec& g, const VerifyOptions& o) {
    return pointwise(g.samples(), o, "variable r; c0^2 ln(e^{4/3}/r) ln(e^{4/3}/r') - K K'",
                     [](auto r) { return margin_of(product_inequalities(modulus(r)).mi2); });
}

Outcome cor_rrkk(const GridSpec& g, const VerifyOptions& o) {
    return pointwise(g.samples(), o, "variable r; K(1/sqrt 2)^2/sqrt 2 - sqrt(r r') K K'",
                     [](auto r) { return margin_of(product_inequalities(modulus(r)).rrkk); });
}

Outcome cor_mi3(const GridSpec& g, const VerifyOptions& o) {
    return pointwise(g.samples(), o, "variable r; both sides of the e^{4/3} logarithmic bounds", [](auto r) {
        const auto m = k_bound_margins(modulus(r), KFamily::Mi3);
        return worse(margin_of(*m.lower), margin_of(m.upper));
    });
}

Outcome cor_avv(const GridSpec& g, const VerifyOptions& o) {
    return pointwise(g.samples(), o, "variable r; ln(1+4/r') - p1 (1 - r) - K",
                     [](auto r) { return margin_of(k_bound_margins(modulus(r), KFamily::Avv).upper); });
}

Outcome cor_kgt(const GridSpec& g, const VerifyOptions& o) {
    return pointwise(g.samples(), o, "variable r; both sides of ln(1+4/r') - p1 + p r^2 with p = p0, p1", [](auto r) {
        const auto m = k_bound_margins(modulus(r), KFamily::Kgt);
        return worse(margin_of(*m.lower), margin_of(m.upper));
    });
}

Outcome cor_sharpness(const GridSpec&, const VerifyOptions&) {
    using std::sqrt;
    const DD r = sqrt(DD(0.5));
    const auto p = product_inequalities(Modulus<DD>(r));
    const double worst = std::max({std::abs(to_double(p.mi1.value)), std::abs(to_double(p.mi2.value)),
                                   std::abs(to_double(p.rrkk.value))});
    return tolerance(worst, 1e-10, to_double(r),
                     "at r = 1/sqrt 2: Mi-1 " + fmt(to_double(p.mi1.value)) + ", Mi-2 " + fmt(to_double(p.mi2.value)) +
                         ", rr'KK' " + fmt(to_double(p.rrkk.value)));
}

Outcome cor_kky_max(const GridSpec& g, const VerifyOptions& o) {
    const auto points = g.samples();
    std::vector<double> values(points.size());
    parallel_for(
        points.size(),
        [&](std::size_t i) {
            values[i] = in_extended_zone(points[i]) || o.precision == Precision::Extended
                            ? to_double(product_inequalities(Modulus<DD>(points[i])).bound_log_product)
                            : product_inequalities(Modulus<double>(points[i])).bound_log_product;
        },
        o.threads);
    const auto it = std::max_element(values.begin(), values.end());
    const DD gq = gamma_fn(DD(0.25));
    const DD pi = RealTraits<DD>::pi();
    const double target = to_double(gq * gq * gq * gq / (pi * pi * 16.0));
    const double err = *it - target;
    Outcome out = tolerance(err, 1e-4, points[static_cast<std::size_t>(it - values.begin())],
                            "variable r; max over grid of (2/pi) c0^2 r r' ln(e^{4/3}/r) ln(e^{4/3}/r') = " + fmt(*it) +
                                ", Gamma(1/4)^4/(16 pi^2) = " + fmt(target));
    return out;
}

Outcome cor_kk_bounds(const GridSpec& g, const VerifyOptions& o) {
    return pointwise(g.samples(), o, "variable r; both upper bounds of (2/pi) r r' K K'", [](auto r) {
        using Real = decltype(r);
        const auto p = product_inequalities(modulus(r));
        const Real s = p.bound_min_log + p.scaled_product;
        const Real sy = p.bound_log_product + p.scaled_product;
        return worse(margin_of(Evaluated<Real>{p.bound_min_log - p.scaled_product, s}),
                     margin_of(Evaluated<Real>{p.bound_log_product - p.scaled_product, sy}));
    });
}

Outcome cor_kk_incomparable(const GridSpec& g, const VerifyOptions& o) {
    const auto points = g.samples();
    const auto margins = sweep(points, o, [](auto r) {
        using Real = decltype(r);
        const auto p = product_inequalities(modulus(r));
        return margin_of(Evaluated<Real>{p.bound_min_log - p.bound_log_product, p.bound_min_log + p.bound_log_product});
    });
    std::size_t a_above = 0, y_above = 0;
    double first_a = 0.0, first_y = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        const PointClass c = classify(margins[i]);
        if (c == PointClass::Holds && a_above++ == 0) first_a = points[i];
        if (c == PointClass::Fails && y_above++ == 0) first_y = points[i];
    }
    Outcome out;
    out.status = a_above > 0 && y_above > 0 ? Status::Pass : Status::Fail;
    out.worst_margin = static_cast<double>(std::min(a_above, y_above));
    out.worst_point = first_y;
    out.notes = "variable r; min-log bound larger at " + std::to_string(a_above) + " points (first r = " +
                fmt(first_a) + "), log-product bound larger at " + std::to_string(y_above) + " points (first r = " +
                fmt(first_y) + ")";
    return out;
}

Outcome cor_kgt_sharpness(const GridSpec& g, const VerifyOptions& o) {
    // g(r) - p0 = (K - pi/2 - (pi/8) r^2 - (ln(1+4/r') - ln 5 - (2/5) r^2)) / r^2
    auto excess = [](auto r) {
        using Real = decltype(r);
        const auto m = k_bound_margins(modulus(r), KFamily::Kgt);
        const Real x = r * r;
        return Evaluated<Real>{m.lower->value / x, m.lower->scale / x};
    };
    const Outcome mono = monotone(g.samples(), o, 1.0, "variable r; (K - ln(1+4/r') + p1)/r^2 increasing", excess);
    const double near0 = to_double(excess(DD(1e-3)).value);
    const Outcome inf = tolerance(near0, 1e-6, 1e-3, "g(1e-3) - p0 = " + fmt(near0));
    const SharpConstants<DD> k = SharpConstants<DD>::compute();
    const double r_top = g.samples().back();
    const double top = to_double(excess(DD(r_top)).value + k.p0 - k.p1);
    const Outcome sup = tolerance(top, 1e-3, r_top, "g(" + fmt(r_top) + ") - p1 = " + fmt(top));
    Outcome out = combine_outcomes(combine_outcomes(mono, inf), sup);
    if (!(top < 0.0)) {
        out.status = Status::Fail;
        out.notes += "; g exceeds p1 at the top of the grid";
    }
    return out;
}

Outcome cor_log_concavity(const GridSpec& g, const VerifyOptions& o) {
    GridSpec u = g;
    u.spacing = Spacing::Uniform;
    const auto xs = u.samples();
    std::vector<DD> phi(xs.size());
    parallel_for(
        xs.size(),
        [&](std::size_t i) {
            using std::log;
            using std::log1p;
            const Modulus<DD> m = Modulus<DD>::from_square(DD(xs[i]));
            phi[i] = log1p(DD(-xs[i])) * 0.25 + log(ellip_k(m));
        },
        o.threads);
    std::vector<PointMargin> margins;
    std::vector<double> centers;
    for (std::size_t i = 1; i + 1 < xs.size(); ++i) {
        PointMargin m;
        m.value = -to_double(phi[i - 1] - phi[i] * 2.0 + phi[i + 1]);
        m.error = 4.0 * kKappa * RealTraits<DD>::epsilon *
                  (std::abs(to_double(phi[i - 1])) + 2.0 * std::abs(to_double(phi[i])) + std::abs(to_double(phi[i + 1])) + 1.0);
        m.extended = true;
        margins.push_back(m);
        centers.push_back(xs[i]);
    }
    return reduce(centers, margins, "uniform grid in x; minus the second difference of ln((1-x)^{1/4} K(sqrt x))");
}

Outcome cor_mu_ratio(const GridSpec& g, const VerifyOptions& o) {
    return pointwise(g.samples(), o, "variable r; (mu(r) - (pi/2) ln(1+4/r)/ln(1+4/r')) sign(1/sqrt 2 - r)",
                     [](auto r) {
                         using Real = decltype(r);
                         using std::sqrt;
                         const double side = r < sqrt(Real(0.5)) ? 1.0 : -1.0;
                         return margin_of(mu_log_ratio_gap(modulus(r)), side);
                     });
}

// ---- sequences -----------------------------------------------------------

template <class F>
Outcome residual_scan(std::size_t first, std::size_t last, const std::string& notes, const F& residual) {
    std::size_t nonzero = 0, first_bad = 0;
    for (std::size_t n = first; n <= last; ++n) {
        if (sign_of(residual(n)) != Sign::Zero && nonzero++ == 0) first_bad = n;
    }
    return exact_residuals(nonzero, first_bad, last, notes);
}

Outcome seq_beta_recurrence(const GridSpec&, const VerifyOptions&) {
    const auto beta = beta_direct_table(501);
    return residual_scan(2, 500, "beta_{n+1} - lambda_n beta_n - step(n), beta from the defining sum, n = 2..500",
                         [&](std::size_t n) { return beta_recurrence_residual(n, beta[n], beta[n + 1]); });
}

Outcome seq_alpha_recurrence(const GridSpec&, const VerifyOptions&) {
    const auto beta = beta_direct_table(501);
    return residual_scan(2, 500, "alpha_{n+1} - lambda_n alpha_n - step(n), n = 2..500", [&](std::size_t n) {
        return alpha_recurrence_residual(n, alpha_from_beta(n, beta[n]), alpha_from_beta(n + 1, beta[n + 1]));
    });
}

Outcome seq_phi(const GridSpec&, const VerifyOptions&) {
    // Running sums keep this linear in n.
    std::size_t nonzero = 0, first_bad = 0;
    for (int i = 0; i <= 2; ++i) {
        Rational sum = 0;
        for (std::size_t n = 1; n <= 200; ++n) {
            const std::size_t k = n - 1;
            const Rational kk(static_cast<unsigned long>(k));
            const Rational w = wallis(k);
            Rational term = w * w / ((kk + 1) * (kk + 1) * (kk + 2) * (kk + 3) * (kk + 4));
            for (int j = 0; j < i; ++j) term *= kk + Rational(1, 2);
            sum += term;
            if (sign_of(Rational(sum - phi_closed_form(i, n))) != Sign::Zero && nonzero++ == 0) first_bad = n;
        }
    }
    return exact_residuals(nonzero, first_bad, 200, "phi_i(n) sum minus closed form, i = 0, 1, 2, n = 1..200");
}

Outcome seq_alpha_values(const GridSpec&, const VerifyOptions&) {
    const Rational expected[] = {make_rational(-3, 40), make_rational(-9, 640), make_rational(-31, 20480),
                                 make_rational(243, 163840)};
    return residual_scan(1, 4, "alpha_1..alpha_4 against -3/40, -9/640, -31/20480, 243/163840",
                         [&](std::size_t n) { return Rational(alpha_from_beta(n, beta_direct(n)) - expected[n - 1]); });
}

Outcome seq_alpha_positive(const GridSpec&, const VerifyOptions&) {
    constexpr std::size_t last = 10000;
    std::size_t bad = 0, first_bad = 0;
    for (std::size_t n = 4; n <= last; ++n) {
        if (sign_of(alpha_seq(n)) != Sign::Positive && bad++ == 0) first_bad = n;
    }
    Outcome out = exact_residuals(bad, first_bad, last, "alpha_n > 0 for n = 4..10000 via the exact recurrence");
    if (bad == 0) out.notes = "alpha_n > 0 for n = 4..10000 via the exact recurrence";
    return out;
}

Outcome seq_ratio_peak(const GridSpec&, const VerifyOptions&) {
    constexpr std::size_t last = 2000;
    std::size_t bad = 0, first_bad = 0;
    auto flag = [&](bool ok, std::size_t n) {
        if (!ok && bad++ == 0) first_bad = n;
    };
    flag(thm2_ratio(1) > thm2_ratio(0), 0);
    flag(thm2_ratio(2) > thm2_ratio(1), 1);
    for (std::size_t n = 1; n <= last; ++n) {
        flag(sign_of(thm2_ratio_step_residual(n)) == Sign::Zero, n);
        if (n >= 2) flag(sign_of(thm2_ratio_step_sign(n)) == Sign::Negative, n);
    }
    Outcome out = exact_residuals(bad, first_bad, last,
                                  "a_n/b_n rises for n = 0..2 and falls for n = 2..2000; step identity exact");
    return out;
}

Outcome seq_p5(const GridSpec&, const VerifyOptions&) {
    std::size_t bad = 0, first_bad = 0;
    if (p5_expanded(Rational(2)) != make_rational(67235, 131072)) bad = 1;
    for (std::size_t n = 2; n <= 500; ++n) {
        try {
            const Rational p = thm3_d_ratio_sign(n);
            if ((sign_of(p) != Sign::Positive || sign_of(thm3_d_ratio_residual(n)) != Sign::Zero) && bad++ == 0) {
                first_bad = n;
            }
        } catch (const std::logic_error&) {
            if (bad++ == 0) first_bad = n;
        }
    }
    return exact_residuals(bad, first_bad, 500,
                           "P5(2) = 67235/131072; expanded and shifted P5 agree and d_{n+1}/d_n - 1 matches, n = 2..500");
}

Outcome seq_dn_sign(const GridSpec&, const VerifyOptions&) {
    const DnSignPattern p = thm3_dn_sign_pattern(2000);
    Outcome out;
    out.worst_point = static_cast<double>(p.n0);
    out.worst_margin = p.single_change && p.n0 == 3 ? 0.0 : -1.0;
    out.status = p.indeterminate.empty() ? (p.single_change && p.n0 == 3 ? Status::Pass : Status::Fail)
                                         : Status::Indeterminate;
    out.notes = "pi q_n - 1 changes sign once, last positive at n0 = " + std::to_string(p.n0) + ", checked to n = " +
                std::to_string(p.checked_to);
    return out;
}

Outcome seq_f3(const GridSpec&, const VerifyOptions&) {
    // f3 = (9/32) F(1/2,1/2;3;x) - (1/4) F(1/2,1/2;2;x); the coefficient of
    // x^n in F(1/2,1/2;c;x) is W_n^2 n!/(c)_n.
    std::size_t bad = 0, first_bad = 0;
    Rational partial = 0;
    for (std::size_t n = 0; n <= 500; ++n) {
        const Rational x(static_cast<unsigned long>(n));
        const Rational w2 = wallis(n) * wallis(n);
        const Rational oracle = Rational(9, 32) * w2 * 2 / ((x + 1) * (x + 2)) - Rational(1, 4) * w2 / (x + 1);
        partial += f3_coeff(n);
        const Rational w1 = wallis(n + 1);
        const Rational closed = (x + 1) * w1 * w1 / (4 * (x + 2));
        if ((f3_coeff(n) != oracle || partial != closed) && bad++ == 0) first_bad = n;
    }
    return exact_residuals(
        bad, first_bad, 500,
        "f3 coefficients against the hypergeometric coefficients, and sum_{k<=n} = (n+1) W_{n+1}^2/(4(n+2)) -> 0");
}

Outcome seq_h_coeffs(const GridSpec&, const VerifyOptions&) {
    // h = (9 pi/64)(x+15)^2 G(x) + (3x+13) sqrt(1-x) - 16(x+7), with
    // G_n = 2 W_n^2/((n+1)(n+2)) and sqrt(1-x)_n = -W_n/(2n-1).
    auto g = [](long n) -> Rational {
        if (n < 0) return 0;
        const Rational x(n);
        const Rational w = wallis(static_cast<std::size_t>(n));
        return 2 * w * w / ((x + 1) * (x + 2));
    };
    auto s = [](long n) -> Rational {
        if (n < 0) return 0;
        return -wallis(static_cast<std::size_t>(n)) / Rational(2 * n - 1);
    };
    std::size_t bad = 0, first_bad = 0;
    for (long n = 0; n <= 200; ++n) {
        const Rational p = Rational(9, 64) * (225 * g(n) + 30 * g(n - 1) + g(n - 2));
        Rational q = 13 * s(n) + 3 * s(n - 1);
        if (n == 0) q -= 112;
        if (n == 1) q -= 16;
        const PiLinear c = h_coeff(static_cast<std::size_t>(n));
        if (!(c.p == p && c.q == q) && bad++ == 0) first_bad = static_cast<std::size_t>(n);
    }
    return exact_residuals(bad, first_bad, 200, "h coefficients against the product expansion, n = 0..200");
}

// ---- asymptotics ---------------------------------------------------------

Outcome asym_agm_vs_series(const GridSpec& g, const VerifyOptions& o) {
    std::vector<double> points;
    for (double p : g.samples()) {
        if (p >= 1e-3 && p <= 1.0 - 1e-3) points.push_back(p);
    }
    return pointwise(points, o, "variable r in [1e-3, 1-1e-3]; 1e-13 - |K_agm/K_series - 1|", [](auto r) {
        using Real = decltype(r);
        using std::abs;
        const Modulus<Real> m(r);
        const Real rel = abs(Real(ellip_k(m) / ellip_k_series(m) - 1.0));
        PointMargin pm;
        pm.value = 1e-13 - to_double(rel);
        pm.extended = std::is_same_v<Real, DD>;
        return pm;
    });
}

Outcome asym_near_one(const GridSpec&, const VerifyOptions&) {
    const double ts[] = {1e-2, 1e-3, 1e-4};
    double worst = 0.0;
    std::ostringstream notes;
    notes << "fitted exponent of |F - two-term expansion| / ln(1/t):";
    for (const auto& [kind, c, name] : {std::tuple{NearOneKind::C1, 1.0, "c = 1"}, {NearOneKind::C2, 2.0, "c = 2"}}) {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (double t : ts) {
            const DD f = gauss_2f1_one_minus(HypParams<DD>(0.5, 0.5, c), DD(t));
            const DD e = asymptotic_F_near_one(kind, DD(t)).value();
            const double res = std::abs(to_double(f - e));
            const double lx = std::log(t);
            const double ly = std::log(res / std::log(1.0 / t));
            sx += lx;
            sy += ly;
            sxx += lx * lx;
            sxy += lx * ly;
        }
        const double slope = (3.0 * sxy - sx * sy) / (3.0 * sxx - sx * sx);
        notes << " " << name << " -> " << fmt(slope) << ";";
        worst = std::max(worst, std::abs(slope - 2.0));
    }
    return tolerance(worst, 0.1, 0.0, notes.str());
}

// Five-point central differences in double-double.
template <class F>
DD fd1(const F& f, double x, double h) {
    return (f(DD(x - 2 * h)) - f(DD(x + 2 * h)) + (f(DD(x + h)) - f(DD(x - h))) * 8.0) / (12.0 * h);
}

template <class F>
DD fd2(const F& f, double x, double h) {
    return (-f(DD(x - 2 * h)) - f(DD(x + 2 * h)) + (f(DD(x + h)) + f(DD(x - h))) * 16.0 - f(DD(x)) * 30.0) /
           (12.0 * h * h);
}

Outcome asym_derivatives_fd(const GridSpec&, const VerifyOptions& o) {
    std::mt19937_64 rng(20240607);
    std::uniform_real_distribution<double> dist(0.02, 0.98);
    std::vector<double> xs(100);
    for (double& x : xs) x = dist(rng);
    const LogConstant<double> c = constant_as<double>(o.c);
    const LogConstant<DD> cd = o.c;
    std::vector<double> worst(xs.size(), 0.0);
    parallel_for(
        xs.size(),
        [&](std::size_t i) {
            const double x = xs[i];
            const double h = 1e-4 * std::min(x, 1.0 - x);
            auto rel = [](double a, DD b) { return std::abs(a - to_double(b)) / std::abs(to_double(b)); };
            auto q1f = [&](DD y) { return q1(y, cd); };
            auto df = [](DD y) { return d_func(y); };
            auto kf = [](DD y) { return gauss_2f1(HypParams<DD>(0.5, 0.5, 1.0), y); };
            double w = 0.0;
            w = std::max(w, rel(q1_first(x, c), fd1(q1f, x, h)));
            w = std::max(w, rel(q1_second(x, c), fd2(q1f, x, h)));
            w = std::max(w, rel(d_first(x), fd1(df, x, h)));
            w = std::max(w, rel(d_second(x), fd2(df, x, h)));
            w = std::max(w, rel(gauss_2f1_derivative(HypParams<double>(0.5, 0.5, 1.0), x, 1), fd1(kf, x, h)));
            w = std::max(w, rel(gauss_2f1_derivative(HypParams<double>(0.5, 0.5, 1.0), x, 2), fd2(kf, x, h)));
            worst[i] = w;
        },
        o.threads);
    const auto it = std::max_element(worst.begin(), worst.end());
    return tolerance(*it, 1e-6, xs[static_cast<std::size_t>(it - worst.begin())],
                     "100 seeded points in (0.02, 0.98): Q1', Q1'', D', D'', F', F'' against five-point differences "
                     "in double-double; worst relative gap " +
                         fmt(*it));
}

Outcome asym_contiguous(const GridSpec&, const VerifyOptions&) {
    double worst = 0.0, at = 0.0;
    for (int i = 1; i <= 99; ++i) {
        const double x = i / 100.0;
        const Modulus<double> m = Modulus<double>::from_square(x);
        const double k = ellip_k(m), kp = ellip_k(m.complement());
        const double e = ellip_e(m), ep = ellip_e(m.complement());
        const double legendre = std::abs(e * kp + ep * k - k * kp - RealTraits<double>::pi() / 2) / (k * kp);
        double contiguous = 0.0;
        for (const auto& [a, b, c] : {std::tuple{0.5, 0.5, 1.0}, {0.5, 0.5, 3.0}, {1.5, 0.5, 2.5}}) {
            const double fm = gauss_2f1(HypParams<double>(a - 1, b, c), x);
            const double f0 = gauss_2f1(HypParams<double>(a, b, c), x);
            const double fp = gauss_2f1(HypParams<double>(a + 1, b, c), x);
            const double t1 = (c - a) * fm, t2 = (2 * a - c + (b - a) * x) * f0, t3 = a * (x - 1) * fp;
            contiguous =
                std::max(contiguous, std::abs(t1 + t2 + t3) / (std::abs(t1) + std::abs(t2) + std::abs(t3)));
        }
        const double w = std::max(legendre, contiguous);
        if (w > worst) {
            worst = w;
            at = x;
        }
    }
    return tolerance(worst, 1e-12, at,
                     "Legendre relation E K' + E' K - K K' = pi/2 and the contiguous relation in a, x = 0.01..0.99; "
                     "worst relative residual " +
                         fmt(worst));
}

Outcome asym_overlap(const GridSpec&, const VerifyOptions&) {
    double worst = 0.0, at = 0.0;
    for (const auto& [a, b, c] : {std::tuple{0.5, 0.5, 1.0}, {0.5, 0.5, 3.0}, {1.5, 1.5, 2.0}, {0.5, -0.5, 1.0},
                                  {0.3, 0.7, 1.5}}) {
        for (double x : {0.5, 0.55, 0.6, 0.65, 0.7}) {
            const HypParams<double> p(a, b, c);
            const double direct = hyp_detail::direct_series(p, x);
            const double s = c - a - b;
            long m = 0;
            double conn = 0.0;
            if (near_integer(s, &m)) {
                conn = m >= 0 ? hyp_detail::log_connection(a, b, m, 1.0 - x)
                              : std::pow(1.0 - x, static_cast<int>(m)) *
                                    hyp_detail::log_connection(c - a, c - b, -m, 1.0 - x);
            } else {
                conn = hyp_detail::gamma_connection(p, s, x, 1.0 - x);
            }
            const double rel = std::abs(direct - conn) / std::abs(direct);
            if (rel > worst) {
                worst = rel;
                at = x;
            }
        }
    }
    // Small-x kernels against their direct forms at the switch point.
    for (double r : {0.3162, 0.3163}) {
        const Modulus<DD> m(r);
        const double series = to_double(k_excess(m));
        const double direct = to_double(ellip_k(m) - RealTraits<DD>::pi() * 0.5);
        worst = std::max(worst, std::abs(series - direct) / std::abs(direct));
    }
    return tolerance(worst, 1e-12, at,
                     "direct series against the connection formulas on [0.5, 0.7] and K - pi/2 kernels at the "
                     "switch; worst relative gap " +
                         fmt(worst));
}

// ---- registry ------------------------------------------------------------

using Runner = Outcome (*)(const GridSpec&, const VerifyOptions&);

struct Entry {
    ClaimInfo info;
    Runner run;
};

const std::vector<Entry>& entries() {
    static const std::vector<Entry> list = {
        {{"thm1-concavity", "thm1", "Q1'' < 0 on the grid at the configured c"}, thm1_concavity},
        {{"thm1-sharpness", "thm1", "lim Q1''(0+) <= 0 at the configured c"}, thm1_sharpness},
        {{"thm1-necessity", "thm1", "lim Q1''(0+) > 0 for c off e^{4/3}"}, thm1_necessity},
        {{"thm1-midpoint", "thm1", "midpoint and AM-GM inequalities for Q1(t), Q1(1-t)"}, thm1_midpoint},
        {{"thm1-endpoints", "thm1", "Q1(0+) = (pi/2)/ln c and Q1(1-) = 1"}, thm1_endpoints},
        {{"thm2-monotone", "thm2", "Q2 strictly increasing"}, thm2_monotone},
        {{"thm2-bounds", "thm2", "(pi/ln 25) ln(1+4/r') < K < ln(1+4/r')"}, thm2_bounds},
        {{"thm2-endpoints", "thm2", "Q2 near its limits pi/ln 25 and 1"}, thm2_endpoints},
        {{"thm2-h-at-zero", "thm2", "H_{A,B}(0+) > 0"}, thm2_h_at_zero},
        {{"thm2-ratio-classify", "thm2", "A/B increases then decreases"}, thm2_ratio_classify},
        {{"thm3-convexity", "thm3", "D'' > 0 on the grid"}, thm3_convexity},
        {{"thm3-h-nonnegative", "thm3", "h > 0 on (0,1) by the series sign lemma"}, thm3_h_nonnegative},
        {{"thm3-h-limit", "thm3", "h(1-) = 0"}, thm3_h_limit},
        {{"thm3-dprime-zero", "thm3", "D'(0+) = pi/8 - 2/5 < 0"}, thm3_dprime_zero},
        {{"thm3-dprime-unimodal", "thm3", "D' has exactly one zero"}, thm3_dprime_unimodal},
        {{"cor-mi1", "corollaries", "mu bound from K and the e^{4/3} logarithms"}, cor_mi1},
        {{"cor-mi2", "corollaries", "K K' <= c0^2 ln(e^{4/3}/r) ln(e^{4/3}/r')"}, cor_mi2},
        {{"cor-rrkk", "corollaries", "sqrt(r r') K K' <= K(1/sqrt 2)^2/sqrt 2"}, cor_rrkk},
        {{"cor-mi3", "corollaries", "logarithmic bounds with constants 3pi/8 and 21pi/64"}, cor_mi3},
        {{"cor-avv", "corollaries", "K < ln(1+4/r') - p1 (1 - r)"}, cor_avv},
        {{"cor-kgt", "corollaries", "ln(1+4/r') - p1 + p0 r^2 < K < ln(1+4/r') - p1 + p1 r^2"}, cor_kgt},
        {{"cor-sharpness", "corollaries", "product inequalities are equalities at r = 1/sqrt 2"}, cor_sharpness},
        {{"cor-kky-max", "corollaries", "maximum of the log-product bound is Gamma(1/4)^4/(16 pi^2)"}, cor_kky_max},
        {{"cor-kk-bounds", "corollaries", "(2/pi) r r' K K' below both upper bounds"}, cor_kk_bounds},
        {{"cor-kk-incomparable", "corollaries", "neither upper bound of (2/pi) r r' K K' dominates"},
         cor_kk_incomparable},
        {{"cor-kgt-sharpness", "corollaries", "(K - ln(1+4/r') + p1)/r^2 increases from p0 to p1"},
         cor_kgt_sharpness},
        {{"cor-log-concavity", "corollaries", "(1-x)^{1/4} K(sqrt x) log-concave"}, cor_log_concavity},
        {{"cor-mu-ratio", "corollaries", "mu against (pi/2) ln(1+4/r)/ln(1+4/r'), reversing at 1/sqrt 2"},
         cor_mu_ratio},
        {{"seq-beta-recurrence", "sequences", "beta recurrence"}, seq_beta_recurrence},
        {{"seq-alpha-recurrence", "sequences", "alpha recurrence"}, seq_alpha_recurrence},
        {{"seq-phi-closed-form", "sequences", "phi_i closed forms"}, seq_phi},
        {{"seq-alpha-values", "sequences", "alpha_1..alpha_4"}, seq_alpha_values},
        {{"seq-alpha-positive", "sequences", "alpha_n > 0 for n >= 4"}, seq_alpha_positive},
        {{"seq-ratio-peak", "sequences", "a_n/b_n peaks at n = 2"}, seq_ratio_peak},
        {{"seq-p5", "sequences", "P5 and the d_n ratio"}, seq_p5},
        {{"seq-dn-sign", "sequences", "pi q_n - 1 changes sign once"}, seq_dn_sign},
        {{"seq-f3", "sequences", "f3 coefficients and partial sums"}, seq_f3},
        {{"seq-h-coeffs", "sequences", "h coefficients"}, seq_h_coeffs},
        {{"asym-agm-vs-series", "asymptotics", "AGM and series K agree"}, asym_agm_vs_series},
        {{"asym-near-one-residual", "asymptotics", "two-term expansion remainder ~ t^2 ln(1/t)"}, asym_near_one},
        {{"asym-derivatives-fd", "asymptotics", "analytic derivatives against finite differences"},
         asym_derivatives_fd},
        {{"asym-contiguous", "asymptotics", "Legendre and contiguous relations"}, asym_contiguous},
        {{"asym-overlap", "asymptotics", "evaluation branches agree where they overlap"}, asym_overlap},
    };
    return list;
}

}  // namespace

// ---- grid ----------------------------------------------------------------

const char* to_string(Spacing s) { return s == Spacing::Uniform ? "uniform" : "log-endpoint-refined"; }

Spacing parse_spacing(const std::string& name) {
    if (name == "uniform") return Spacing::Uniform;
    if (name == "log-endpoint-refined" || name == "refined") return Spacing::LogEndpointRefined;
    throw std::invalid_argument("unknown spacing: " + name);
}

const char* to_string(Status s) {
    switch (s) {
        case Status::Pass: return "pass";
        case Status::Fail: return "fail";
        case Status::Indeterminate: return "indeterminate";
    }
    return "unknown";
}

void GridSpec::validate() const {
    if (!(lo > 0.0 && hi < 1.0 && lo < hi)) throw DomainError("grid needs 0 < lo < hi < 1");
    if (points < 2) throw DomainError("grid needs at least 2 points");
}

std::vector<double> GridSpec::samples() const {
    validate();
    std::vector<double> raw;
    raw.reserve(points + 1802);
    const double step = (hi - lo) / static_cast<double>(points - 1);
    for (std::size_t i = 0; i < points; ++i) raw.push_back(i + 1 == points ? hi : lo + step * static_cast<double>(i));
    if (spacing == Spacing::LogEndpointRefined) {
        for (int j = 0; j <= 900; ++j) {
            const double d = std::pow(10.0, -3.0 - j / 100.0);
            if (lo <= kExtendedZone) raw.push_back(d);
            if (hi >= 1.0 - kExtendedZone) raw.push_back(1.0 - d);
        }
    }
    std::sort(raw.begin(), raw.end());
    std::vector<double> out;
    out.reserve(raw.size());
    for (double p : raw) {
        if (!out.empty() && p - out.back() <= 1e-6 * std::min(p, 1.0 - p)) continue;
        out.push_back(p);
    }
    return out;
}

// ---- threads -------------------------------------------------------------

unsigned worker_count(unsigned requested) {
    unsigned n = requested != 0 ? requested : std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("ELLIK_THREADS")) {
        char* end = nullptr;
        const long cap = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && cap > 0) n = std::min<unsigned>(n, static_cast<unsigned>(cap));
    }
    return n;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body, unsigned threads) {
    const std::size_t workers = std::min<std::size_t>(worker_count(threads), std::max<std::size_t>(n, 1));
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t begin = n * w / workers;
        const std::size_t end = n * (w + 1) / workers;
        pool.emplace_back([&, begin, end] {
            try {
                for (std::size_t i = begin; i < end; ++i) body(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

// ---- registry ------------------------------------------------------------

const std::vector<ClaimInfo>& claim_registry() {
    static const std::vector<ClaimInfo> infos = [] {
        std::vector<ClaimInfo> out;
        for (const Entry& e : entries()) out.push_back(e.info);
        return out;
    }();
    return infos;
}

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = {"thm1", "thm2", "thm3", "corollaries", "sequences", "asymptotics"};
    return names;
}

VerificationReport verify(const std::string& claim_id, const GridSpec& grid, const VerifyOptions& options) {
    grid.validate();
    const auto& list = entries();
    const auto it = std::find_if(list.begin(), list.end(), [&](const Entry& e) { return e.info.id == claim_id; });
    if (it == list.end()) throw std::invalid_argument("unknown claim: " + claim_id);
    const auto start = std::chrono::steady_clock::now();
    const Outcome o = it->run(grid, options);
    const auto stop = std::chrono::steady_clock::now();
    VerificationReport r;
    r.claim_id = claim_id;
    r.grid = grid;
    r.worst_margin = o.worst_margin;
    r.worst_point = o.worst_point;
    r.status = o.status;
    r.notes = o.notes;
    r.precision = options.precision;
    r.runtime_ms = std::chrono::duration<double, std::milli>(stop - start).count();
    return r;
}

std::vector<VerificationReport> verify_suite(const std::string& suite, const GridSpec& grid,
                                             const VerifyOptions& options) {
    const auto& names = suite_names();
    if (suite != "all" && std::find(names.begin(), names.end(), suite) == names.end()) {
        throw std::invalid_argument("unknown suite: " + suite);
    }
    std::vector<VerificationReport> out;
    for (const Entry& e : entries()) {
        if (suite == "all" || e.info.suite == suite) out.push_back(verify(e.info.id, grid, options));
    }
    return out;
}

}  // namespace ellik

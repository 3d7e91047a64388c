#include "ellik/bounds.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "ellik/hypergeom.hpp"
#include "ellik/special.hpp"

namespace ellik {

namespace {

// Below this x the kernels switch from "value minus its limit" to series
// that start at the first nonvanishing term.
constexpr double kSmall = 0.1;

template <class Real>
Real pi() {
    return RealTraits<Real>::pi();
}

template <class Real>
Real rational_to_real(const Rational& q) {
    return Real(q.get_num().get_d()) / Real(q.get_den().get_d());
}

template <class Real>
Real mag(const Real& v) {
    using std::abs;
    return abs(v);
}

// F(a,b;c;x) with the complement t = 1 - x kept separately.
template <class Real>
Real hyp(double a, double b, double c, const Real& x, const Real& t) {
    const HypParams<Real> p(a, b, c);
    return to_double(x) <= 0.5 ? gauss_2f1(p, x) : gauss_2f1_one_minus(p, t);
}

// F(a,b;c;x) - 1 without cancellation for small x.
template <class Real>
Evaluated<Real> hyp_minus_one(double a, double b, double c, const Real& x, const Real& t) {
    if (to_double(x) > 0.5) {
        const Real f = hyp(a, b, c, x, t);
        return {f - 1.0, mag(f) + 1.0};
    }
    Real term = 1.0;
    Real sum = 0.0;
    for (long n = 1; n < 100000; ++n) {
        const double k = static_cast<double>(n - 1);
        term = term * ((a + k) * (b + k) / ((c + k) * static_cast<double>(n))) * x;
        sum += term;
        if (mag(to_double(term)) <= RealTraits<Real>::series_tol * mag(to_double(sum))) break;
    }
    return {sum, mag(sum)};
}

// (pi/2) sum_{n >= first} W_n^2 x^n
template <class Real>
Real k_series_tail(const Real& x, int first) {
    Real w2x = 1.0;  // W_n^2 x^n
    Real sum = 0.0;
    for (int n = 1; n < 100000; ++n) {
        const double f = (2.0 * n - 1.0) / (2.0 * n);
        w2x = w2x * (f * f) * x;
        if (n < first) continue;
        sum += w2x;
        if (mag(to_double(w2x)) <= RealTraits<Real>::series_tol * mag(to_double(sum))) break;
    }
    return pi<Real>() * 0.5 * sum;
}

// log1p(y) - y
template <class Real>
Real log1p_minus_identity(const Real& y) {
    using std::log1p;
    if (mag(to_double(y)) > 0.1) return log1p(y) - y;
    Real power = y * y;
    Real sum = 0.0;
    for (int k = 2; k < 400; ++k) {
        const Real term = power / static_cast<double>(k);
        sum += (k % 2 == 0) ? -term : term;
        if (mag(to_double(term)) <= RealTraits<Real>::series_tol * mag(to_double(sum))) break;
        power = power * y;
    }
    return sum;
}

// ln(e^{4/3}/r) = 4/3 - (1/2) ln x, with ln x taken from whichever of x, t
// is accurate.
template <class Real>
Real log_sharp_over(const Real& x, const Real& t) {
    using std::log;
    using std::log1p;
    const Real ln_x = to_double(x) < 0.5 ? log(x) : log1p(Real(-t));
    return Real(4.0) / 3.0 - ln_x * 0.5;
}

// -(1/2) ln(1 - x)
template <class Real>
Real half_log_inverse(const Real& x, const Real& t) {
    using std::log;
    using std::log1p;
    return (to_double(x) < 0.5 ? log1p(Real(-x)) : log(t)) * -0.5;
}

template <class Real>
Evaluated<Real> k_excess_eval(const Modulus<Real>& m) {
    if (to_double(m.x()) <= kSmall) {
        const Real v = k_series_tail(m.x(), 1);
        return {v, v};
    }
    const Real k = ellip_k(m);
    return {k - pi<Real>() * 0.5, k + pi<Real>() * 0.5};
}

// K - pi/2 - (pi/8) x
template <class Real>
Evaluated<Real> k_excess2_eval(const Modulus<Real>& m) {
    if (to_double(m.x()) <= kSmall) {
        const Real v = k_series_tail(m.x(), 2);
        return {v, v};
    }
    const Real k = ellip_k(m);
    const Real lin = pi<Real>() / 8.0 * m.x();
    return {k - pi<Real>() * 0.5 - lin, k + pi<Real>() * 0.5 + lin};
}

// ln(1 + 4/r') - ln 5 = log1p(4x / (5 r'(1 + r')))
template <class Real>
Real log_excess_y(const Modulus<Real>& m) {
    return m.x() * 4.0 / (m.rp() * (Real(1.0) + m.rp()) * 5.0);
}

template <class Real>
Evaluated<Real> log_excess_eval(const Modulus<Real>& m) {
    using std::log1p;
    const Real v = log1p(log_excess_y(m));
    return {v, v};
}

// ln(1 + 4/r') - ln 5 - (2/5) x
template <class Real>
Evaluated<Real> log_excess2_eval(const Modulus<Real>& m) {
    const Real y = log_excess_y(m);
    const Real rp = m.rp();
    const Real opr = Real(1.0) + rp;
    const Real a = log1p_minus_identity(y);
    const Real b = m.x() * m.x() * 0.4 * (Real(2.0) + rp) / (rp * opr * opr);
    return {a + b, mag(a) + mag(b)};
}

template <class Real>
Evaluated<Real> combine(std::initializer_list<std::pair<Real, Evaluated<Real>>> terms) {
    Real v = 0.0;
    Real s = 0.0;
    for (const auto& [w, e] : terms) {
        v += w * e.value;
        s += mag(w) * (e.scale + mag(e.value));
    }
    return {v, s};
}

template <class Real>
void require_unit(const Real& v, const char* what) {
    if (!(to_double(v) > 0.0 && to_double(v) < 1.0)) throw DomainError(what);
}

template <class Real>
Evaluated<Real> exact_value(const Real& v) {
    return {v, Real(0.0)};
}

}  // namespace

// ---- constants -----------------------------------------------------------

template <class Real>
SharpConstants<Real> SharpConstants<Real>::compute() {
    using std::exp;
    using std::log;
    using std::sqrt;
    const Real p = pi<Real>();
    const Real ln2 = RealTraits<Real>::ln2();
    const Real ln5 = RealTraits<Real>::ln5();
    const Real g = gamma_fn(Real(0.25));
    const Real sqrt_pi = sqrt(p);
    SharpConstants out;
    out.c0 = g * g * 3.0 / ((ln2 * 3.0 + 8.0) * sqrt_pi * 2.0);
    out.p0 = p / 8.0 - Real(2.0) / 5.0;
    out.p1 = ln5 - p * 0.5;
    out.q2_lower = p / (ln5 * 2.0);
    out.c_concave = exp(Real(4.0) / 3.0);
    out.k_symmetric = g * g / (sqrt_pi * 4.0);
    return out;
}

template <class Real>
Real LogConstant<Real>::c() const {
    using std::exp;
    return exp(ln_c);
}

template <class Real>
LogConstant<Real> LogConstant<Real>::of_value(const Real& c) {
    using std::log;
    if (!(to_double(c) > 0.0)) throw DomainError("constant c must be positive");
    return {log(c), std::nullopt};
}

template <class Real>
LogConstant<Real> LogConstant<Real>::exp_of(const Rational& ln_c) {
    return {rational_to_real<Real>(ln_c), ln_c};
}

template <class Real>
LogConstant<Real> parse_log_constant(const std::string& raw) {
    std::string text;
    for (char ch : raw) {
        if (!std::isspace(static_cast<unsigned char>(ch))) text += ch;
    }
    if (text.empty()) throw std::invalid_argument("empty constant");
    if (text == "pi/ln25") return LogConstant<Real>::of_value(Real(pi<Real>() / (RealTraits<Real>::ln5() * 2.0)));
    if (text == "e") return LogConstant<Real>::exp_of(Rational(1));
    if (text.rfind("e^", 0) == 0) {
        std::string e = text.substr(2);
        if (e.size() >= 2 && ((e.front() == '{' && e.back() == '}') || (e.front() == '(' && e.back() == ')'))) {
            e = e.substr(1, e.size() - 2);
        }
        const auto slash = e.find('/');
        auto integer = [&](const std::string& s) {
            std::size_t used = 0;
            const long v = std::stol(s, &used);
            if (used != s.size()) throw std::invalid_argument("malformed exponent in " + raw);
            return v;
        };
        try {
            if (slash == std::string::npos) return LogConstant<Real>::exp_of(Rational(integer(e)));
            const long den = integer(e.substr(slash + 1));
            if (den == 0) throw std::invalid_argument("zero denominator in " + raw);
            return LogConstant<Real>::exp_of(make_rational(integer(e.substr(0, slash)), den));
        } catch (const std::logic_error&) {
            throw std::invalid_argument("malformed constant: " + raw);
        }
    }
    try {
        return LogConstant<Real>::of_value(real_from_string<Real>(text));
    } catch (const DomainError&) {
        throw;
    } catch (const std::exception&) {
        throw std::invalid_argument("malformed constant: " + raw);
    }
}

// ---- Q1 ------------------------------------------------------------------

template <class Real>
Real q1(const Real& x, const LogConstant<Real>& c) {
    require_unit(x, "q1: x must lie in (0, 1)");
    if (to_double(c.ln_c) < 0.0) throw DomainError("q1: c must be at least 1");
    if (to_double(c.ln_c) == 0.0 && to_double(x) < 1e-300) throw DomainError("q1: c = 1 is singular as x -> 0");
    const Real t = Real(1.0) - x;
    const Real k = ellip_k(Modulus<Real>::from_square(x));
    return k / (c.ln_c + half_log_inverse(x, t));
}

template <class Real>
Real q1_first(const Real& x, const LogConstant<Real>& c) {
    require_unit(x, "q1_first: x must lie in (0, 1)");
    if (!(to_double(c.ln_c) > 0.0)) throw DomainError("q1_first: c must exceed 1");
    const Real t = Real(1.0) - x;
    const Real l = c.ln_c + half_log_inverse(x, t);
    const Real k = pi<Real>() * 0.5 * hyp(0.5, 0.5, 1.0, x, t);
    const Real kp = pi<Real>() / 8.0 * hyp(1.5, 1.5, 2.0, x, t);
    return (kp * l - k / (t * 2.0)) / (l * l);
}

// (2/pi) Q1'' t^2 L^3 = (9/32) G5 L^2 - (1/4) G3 L - (1/2) F (L - 1), with
// G5 = F(1/2,1/2;3;x), G3 = F(1/2,1/2;2;x), F = F(1/2,1/2;1;x), L = ln(c/sqrt t).
// Splitting each F into 1 + (F - 1) leaves (1/32)(3L - 4)^2, where
// 3L - 4 = (3 ln c - 4) + 3 ell, ell = -(1/2) ln t.
template <class Real>
Evaluated<Real> q1_second_eval(const Real& x, const LogConstant<Real>& c) {
    require_unit(x, "q1_second: x must lie in (0, 1)");
    if (!(to_double(c.ln_c) > 0.0)) throw DomainError("q1_second: c must exceed 1");
    const Real t = Real(1.0) - x;
    const Real ell = half_log_inverse(x, t);
    const Real l = c.ln_c + ell;
    const Real d = c.exact_ln_c ? rational_to_real<Real>(Rational(3 * *c.exact_ln_c - 4)) : c.ln_c * 3.0 - 4.0;
    const Real u = d + ell * 3.0;
    const Real head = u * u / 32.0;

    const Evaluated<Real> g5 = hyp_minus_one(0.5, 0.5, 3.0, x, t);
    const Evaluated<Real> g3 = hyp_minus_one(0.5, 0.5, 2.0, x, t);
    const Evaluated<Real> f1 = hyp_minus_one(0.5, 0.5, 1.0, x, t);
    const Real lm1 = l - 1.0;
    const Real a = g5.value * (l * l) * (9.0 / 32.0);
    const Real b = g3.value * l * 0.25;
    const Real e = f1.value * lm1 * 0.5;
    const Real num = head + a - b - e;
    const Real scale = head + (g5.scale * (l * l) * (9.0 / 32.0)) + g3.scale * l * 0.25 + f1.scale * mag(lm1) * 0.5 +
                       mag(d) * mag(u) / 16.0;

    const Real den = t * t * l * l * l;
    const Real factor = pi<Real>() * 0.5 / den;
    return {num * factor, scale * factor};
}

template <class Real>
Real q1_second_limit(const LogConstant<Real>& c) {
    if (!(to_double(c.ln_c) > 0.0)) throw DomainError("q1_second_limit: c must exceed 1");
    const Real d = c.exact_ln_c ? rational_to_real<Real>(Rational(3 * *c.exact_ln_c - 4)) : c.ln_c * 3.0 - 4.0;
    return pi<Real>() / 64.0 * d * d / (c.ln_c * c.ln_c * c.ln_c);
}

// ---- Q2 and D ------------------------------------------------------------

template <class Real>
Real q2(const Real& r) {
    using std::log1p;
    const Modulus<Real> m(r);
    return ellip_k(m) / log1p(Real(Real(4.0) / m.rp()));
}

template <class Real>
Evaluated<Real> q2_excess(const Modulus<Real>& m) {
    using std::log1p;
    const Evaluated<Real> lower = k_bound_margins(m, KFamily::Thm2).lower.value();
    const Real l = log1p(Real(Real(4.0) / m.rp()));
    return {lower.value / l, lower.scale / l};
}

template <class Real>
Real d_func(const Real& x) {
    using std::log1p;
    const Modulus<Real> m = Modulus<Real>::from_square(x);
    return ellip_k(m) - log1p(Real(Real(4.0) / m.rp()));
}

template <class Real>
Evaluated<Real> d_first_eval(const Real& x) {
    using std::sqrt;
    require_unit(x, "d_first: x must lie in (0, 1)");
    const Real t = Real(1.0) - x;
    const Real a = pi<Real>() / 8.0 * hyp(1.5, 1.5, 2.0, x, t);
    const Real b = (Real(4.0) - sqrt(t)) * 2.0 / ((x + 15.0) * t);
    return {a - b, a + b};
}

template <class Real>
Evaluated<Real> h_eval(const Real& x) {
    using std::sqrt;
    if (!(to_double(x) >= 0.0 && to_double(x) < 1.0)) throw DomainError("h: x must lie in [0, 1)");
    const Real t = Real(1.0) - x;
    const Real xp = x + 15.0;
    const Real a = pi<Real>() * (9.0 / 64.0) * xp * xp * hyp(0.5, 0.5, 3.0, x, t);
    const Real b = (x * 3.0 + 13.0) * sqrt(t);
    const Real c = (x + 7.0) * 16.0;
    return {a + b - c, a + b + c};
}

template <class Real>
Evaluated<Real> d_second_eval(const Real& x) {
    require_unit(x, "d_second: x must lie in (0, 1)");
    const Evaluated<Real> h = h_eval(x);
    const Real t = Real(1.0) - x;
    const Real xp = x + 15.0;
    const Real den = xp * xp * t * t;
    return {h.value / den, h.scale / den};
}

// ---- kernels -------------------------------------------------------------

template <class Real>
Real k_excess(const Modulus<Real>& m) {
    return k_excess_eval(m).value;
}

template <class Real>
Real log_excess(const Modulus<Real>& m) {
    return log_excess_eval(m).value;
}

// ---- bounds for K --------------------------------------------------------

KFamily parse_k_family(const std::string& name) {
    if (name == "thm2") return KFamily::Thm2;
    if (name == "mi3") return KFamily::Mi3;
    if (name == "kgt") return KFamily::Kgt;
    if (name == "avv") return KFamily::Avv;
    throw std::invalid_argument("unknown bound family: " + name);
}

const char* to_string(KFamily f) {
    switch (f) {
        case KFamily::Thm2: return "thm2";
        case KFamily::Mi3: return "mi3";
        case KFamily::Kgt: return "kgt";
        case KFamily::Avv: return "avv";
    }
    return "unknown";
}

template <class Real>
KBounds<Real> k_bounds(const Real& r, KFamily family) {
    using std::log1p;
    const Modulus<Real> m(r);
    static const SharpConstants<Real> k = SharpConstants<Real>::compute();
    const Real l = log1p(Real(Real(4.0) / m.rp()));
    switch (family) {
        case KFamily::Thm2:
            return {k.q2_lower * l, l};
        case KFamily::Mi3: {
            const Real ls = log_sharp_over(m.t(), m.x());
            const Real p = pi<Real>();
            return {ls * (Real(1.0) + (p * 3.0 / 8.0 - 1.0) * m.t()), ls * (p * 21.0 / 64.0 + p * 3.0 / 64.0 * m.t())};
        }
        case KFamily::Kgt:
            return {l - k.p1 + k.p0 * m.x(), l - k.p1 + k.p1 * m.x()};
        case KFamily::Avv:
            return {Real(-std::numeric_limits<double>::infinity()), l - k.p1 * (Real(1.0) - r)};
    }
    throw std::invalid_argument("unknown bound family");
}

template <class Real>
KBoundMargins<Real> k_bound_margins(const Modulus<Real>& m, KFamily family) {
    static const SharpConstants<Real> k = SharpConstants<Real>::compute();
    const Real p = pi<Real>();
    const Evaluated<Real> ke = k_excess_eval(m);
    const Evaluated<Real> le = log_excess_eval(m);
    const Real one = 1.0;
    KBoundMargins<Real> out;
    switch (family) {
        case KFamily::Thm2:
            out.lower = combine<Real>({{one, ke}, {-k.q2_lower, le}});
            out.upper = combine<Real>({{one, exact_value(k.p1)}, {one, le}, {-one, ke}});
            return out;
        case KFamily::Mi3: {
            // lower: K - L(1 + (3pi/8 - 1) r'^2) = (K - pi/2) - (3pi/8) ell + (3pi/8 - 1) x L,
            // with L = 4/3 + ell, ell = -(1/2) ln r'^2.
            const Real ell = half_log_inverse(m.x(), m.t());
            const Real l = Real(4.0) / 3.0 + ell;
            const Real slope = p * 3.0 / 8.0 - 1.0;
            out.lower = combine<Real>({{one, ke}, {-p * 3.0 / 8.0, exact_value(ell)}, {slope, exact_value(Real(m.x() * l))}});
            if (to_double(m.x()) <= kSmall) {
                // upper - K: the x and x^2 terms cancel; sum from x^3.
                Real sum = 0.0;
                Real w2 = 1.0;
                Real xp = 1.0;
                for (int n = 1; n < 100000; ++n) {
                    const double f = (2.0 * n - 1.0) / (2.0 * n);
                    w2 = w2 * (f * f);
                    xp = xp * m.x();
                    if (n < 3) continue;
                    const Real coeff = p * 0.5 * w2 - p * 3.0 / 8.0 / (2.0 * n) + p * 3.0 / 64.0 / (2.0 * (n - 1));
                    const Real term = coeff * xp;
                    sum += term;
                    if (mag(to_double(term)) <= RealTraits<Real>::series_tol * mag(to_double(sum))) break;
                }
                out.upper = {-sum, mag(sum)};
            } else {
                const Real kk = ellip_k(m);
                const Real bound = l * (p * 21.0 / 64.0 + p * 3.0 / 64.0 * m.t());
                out.upper = {bound - kk, bound + kk};
            }
            return out;
        }
        case KFamily::Kgt: {
            const Evaluated<Real> ke2 = k_excess2_eval(m);
            const Evaluated<Real> le2 = log_excess2_eval(m);
            out.lower = combine<Real>({{one, ke2}, {-one, le2}});
            out.upper = combine<Real>({{one, le}, {-one, ke}, {k.p1, exact_value(m.x())}});
            return out;
        }
        case KFamily::Avv:
            out.upper = combine<Real>({{one, le}, {-one, ke}, {k.p1, exact_value(m.r())}});
            return out;
    }
    throw std::invalid_argument("unknown bound family");
}

// ---- product inequalities ------------------------------------------------

template <class Real>
ProductInequalities<Real> product_inequalities(const Modulus<Real>& m) {
    using std::log;
    using std::min;
    using std::sqrt;
    static const SharpConstants<Real> k = SharpConstants<Real>::compute();
    const Real p = pi<Real>();
    const Real kr = ellip_k(m);
    const Real kp = ellip_k(m.complement());
    const Real lr = log_sharp_over(m.x(), m.t());
    const Real lp = log_sharp_over(m.t(), m.x());
    const Real mu = p * 0.5 * kp / kr;

    ProductInequalities<Real> out;
    const Real a = p * k.c0 * lr / kr;
    const Real b = p * 0.5 * lr / lp;
    out.mi1 = {a - b - mu, a + b + mu};
    const Real bound2 = k.c0 * k.c0 * lr * lp;
    const Real prod = kr * kp;
    out.mi2 = {bound2 - prod, bound2 + prod};
    const Real sym = k.k_symmetric * k.k_symmetric / sqrt(Real(2.0));
    const Real lhs = sqrt(Real(m.r() * m.rp())) * prod;
    out.rrkk = {sym - lhs, sym + lhs};
    const Real rrp = m.r() * m.rp();
    out.scaled_product = rrp * prod * 2.0 / p;
    const Real ar = m.r() * log(Real(Real(4.0) / m.r()));
    const Real ap = m.rp() * log(Real(Real(4.0) / m.rp()));
    out.bound_min_log = min(ar, ap);
    out.bound_log_product = k.c0 * k.c0 * rrp * lr * lp * 2.0 / p;
    return out;
}

template <class Real>
Evaluated<Real> mu_log_ratio_gap(const Modulus<Real>& m) {
    using std::log1p;
    const Real p = pi<Real>();
    const Real mu = grotzsch_mu(m);
    const Real ratio = p * 0.5 * log1p(Real(Real(4.0) / m.r())) / log1p(Real(Real(4.0) / m.rp()));
    return {mu - ratio, mu + ratio};
}

#define ELLIK_INSTANTIATE(R)                                                               \
    template struct SharpConstants<R>;                                                     \
    template struct LogConstant<R>;                                                        \
    template LogConstant<R> parse_log_constant<R>(const std::string&);                     \
    template R q1<R>(const R&, const LogConstant<R>&);                                     \
    template R q1_first<R>(const R&, const LogConstant<R>&);                               \
    template Evaluated<R> q1_second_eval<R>(const R&, const LogConstant<R>&);              \
    template R q1_second_limit<R>(const LogConstant<R>&);                                  \
    template R q2<R>(const R&);                                                            \
    template Evaluated<R> q2_excess<R>(const Modulus<R>&);                                 \
    template R d_func<R>(const R&);                                                        \
    template Evaluated<R> d_first_eval<R>(const R&);                                       \
    template Evaluated<R> h_eval<R>(const R&);                                             \
    template Evaluated<R> d_second_eval<R>(const R&);                                      \
    template R k_excess<R>(const Modulus<R>&);                                             \
    template R log_excess<R>(const Modulus<R>&);                                           \
    template KBounds<R> k_bounds<R>(const R&, KFamily);                                    \
    template KBoundMargins<R> k_bound_margins<R>(const Modulus<R>&, KFamily);              \
    template ProductInequalities<R> product_inequalities<R>(const Modulus<R>&);            \
    template Evaluated<R> mu_log_ratio_gap<R>(const Modulus<R>&);

ELLIK_INSTANTIATE(double)
ELLIK_INSTANTIATE(DoubleDouble)

#undef ELLIK_INSTANTIATE

}  // namespace ellik

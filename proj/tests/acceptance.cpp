// Acceptance criteria 1..7. `acceptance i` runs one criterion, no argument
// runs all of them. One line per criterion on standard output; `-v` adds a
// line per individual check. Exit status is 1 when any selected criterion
// fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "ellik/bounds.hpp"
#include "ellik/coeffseq.hpp"
#include "ellik/elliptic.hpp"
#include "ellik/signcheck.hpp"
#include "ellik/verify.hpp"

using namespace ellik;
using DD = DoubleDouble;

namespace {

struct Check {
    std::string name;
    bool ok;
    std::string detail;
};

class Criterion {
public:
    void check(std::string name, bool ok, std::string detail = {}) {
        checks_.push_back({std::move(name), ok, std::move(detail)});
    }

    // Runs a registered claim on the default grid; passes only on Status::Pass.
    void claim(const std::string& id, const GridSpec& grid = {}) {
        const VerificationReport r = verify(id, grid);
        char buf[64];
        std::snprintf(buf, sizeof buf, "worst margin %.3g at %.6g; ", r.worst_margin, r.worst_point);
        check(id, r.status == Status::Pass, std::string(to_string(r.status)) + ", " + buf + r.notes);
    }

    const std::vector<Check>& checks() const { return checks_; }

private:
    std::vector<Check> checks_;
};

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

// ---- 1 -------------------------------------------------------------------

void exact_sequences(Criterion& c) {
    const auto beta = beta_direct_table(501);
    std::size_t bad_beta = 0, bad_alpha = 0, bad_phi = 0;
    for (std::size_t n = 2; n <= 500; ++n) {
        if (beta_recurrence_residual(n, beta[n], beta[n + 1]) != 0) ++bad_beta;
        const Rational a = alpha_from_beta(n, beta[n]), a1 = alpha_from_beta(n + 1, beta[n + 1]);
        if (alpha_recurrence_residual(n, a, a1) != 0) ++bad_alpha;
    }
    for (int i = 0; i <= 2; ++i) {
        for (std::size_t n = 1; n <= 200; ++n) {
            if (phi_closed_form_residual(i, n) != 0) ++bad_phi;
        }
    }
    c.check("beta residual zero for 2 <= n <= 500", bad_beta == 0, std::to_string(bad_beta) + " nonzero");
    c.check("alpha residual zero for 2 <= n <= 500", bad_alpha == 0, std::to_string(bad_alpha) + " nonzero");
    c.check("phi closed forms for 1 <= n <= 200", bad_phi == 0, std::to_string(bad_phi) + " nonzero");
    const Rational want[] = {Rational(-3, 40), Rational(-9, 640), Rational(-31, 20480), Rational(243, 163840)};
    bool alphas = true;
    std::string got;
    for (std::size_t n = 1; n <= 4; ++n) {
        const Rational a = alpha_from_beta(n, n == 1 ? beta_direct(1) : beta[n]);
        alphas = alphas && a == want[n - 1];
        got += to_string(a) + " ";
    }
    c.check("alpha_1..alpha_4", alphas, got);
    c.check("P5(2) = 67235/131072", p5_expanded(Rational(2)) == Rational(67235, 131072),
            to_string(p5_expanded(Rational(2))));
}

// ---- 2 -------------------------------------------------------------------

void thm2(Criterion& c) {
    c.claim("thm2-monotone");
    c.claim("thm2-bounds");
    const double lower = M_PI / std::log(25.0);
    const double at0 = q2(1e-8);
    const double at1 = to_double(q2(DD(1.0) - 1e-10));
    c.check("|Q2(1e-8) - pi/ln25| < 1e-6", std::abs(at0 - lower) < 1e-6, fmt(std::abs(at0 - lower)));
    c.check("|Q2(1-1e-10) - 1| < 1e-3", std::abs(at1 - 1.0) < 1e-3, fmt(std::abs(at1 - 1.0)));
}

// ---- 3 -------------------------------------------------------------------

void thm1(Criterion& c) {
    c.claim("thm1-concavity");
    const double sharp = to_double(q1_second_limit(LogConstant<DD>::sharp()));
    c.check("Q1''(0+) = 0 at c = e^{4/3}", sharp == 0.0, fmt(sharp));
    for (const char* text : {"3.5", "4.0", "e^2"}) {
        const double lim = to_double(q1_second_limit(parse_log_constant<DD>(text)));
        c.check(std::string("Q1''(0+) > 1e-6 at c = ") + text, lim > 1e-6, fmt(lim));
    }
    c.claim("thm1-midpoint");
}

// ---- 4 -------------------------------------------------------------------

void thm3(Criterion& c) {
    c.claim("thm3-convexity");
    const double h = to_double(h_func(DD(1.0) - 1e-8));
    c.check("|h(1-1e-8)| < 1e-5", std::abs(h) < 1e-5, "h(1-1e-8) = " + fmt(h));
    const double d0 = to_double(d_first(DD(1e-16)));
    const double p0 = M_PI / 8 - 0.4;
    c.check("D'(0+) = pi/8 - 2/5 to 1e-12", std::abs(d0 - p0) < 1e-12, fmt(std::abs(d0 - p0)));

    // Sign changes of D' on the grid, then bisection of the single bracket.
    const auto xs = GridSpec{}.samples();
    std::vector<int> sign(xs.size());
    parallel_for(xs.size(), [&](std::size_t i) {
        const double v = to_double(d_first(DD(xs[i])));
        sign[i] = v > 0 ? 1 : (v < 0 ? -1 : 0);
    });
    std::size_t changes = 0, at = 0;
    for (std::size_t i = 1; i < xs.size(); ++i) {
        if (sign[i] != sign[i - 1]) {
            ++changes;
            at = i;
        }
    }
    double width = 1.0, root = 0.0;
    if (changes == 1) {
        DD lo = xs[at - 1], hi = xs[at];
        while (to_double(hi - lo) > 1e-13) {
            const DD mid = (lo + hi) * 0.5;
            (to_double(d_first(mid)) < 0 ? lo : hi) = mid;
        }
        width = to_double(hi - lo);
        root = to_double((lo + hi) * 0.5);
    }
    c.check("one sign change of D', bracket < 1e-10", changes == 1 && width < 1e-10,
            std::to_string(changes) + " change(s), root " + fmt(root) + ", width " + fmt(width));
}

// ---- 5 -------------------------------------------------------------------

void corollaries(Criterion& c) {
    for (const char* id : {"cor-mi1", "cor-mi2", "cor-rrkk", "cor-mi3", "cor-avv", "cor-kgt"}) c.claim(id);
    const auto p = product_inequalities(Modulus<DD>(sqrt(DD(0.5))));
    const double mi2 = std::abs(to_double(p.mi2.value)), rrkk = std::abs(to_double(p.rrkk.value));
    c.check("Mi-2 margin at 1/sqrt 2 < 1e-10", mi2 < 1e-10, fmt(mi2));
    c.check("rr'KK' margin at 1/sqrt 2 < 1e-10", rrkk < 1e-10, fmt(rrkk));
    c.claim("cor-kky-max");
}

// ---- 6 -------------------------------------------------------------------

template <class F>
double five_point(F f, double x, double h) {
    const DD X(x), H(h);
    return to_double((f(X - H * 2.0) - f(X - H) * 8.0 + f(X + H) * 8.0 - f(X + H * 2.0)) / (H * 12.0));
}

void oracles(Criterion& c) {
    double worst = 0.0;
    for (int i = 0; i <= 4000; ++i) {
        const double r = 1e-3 + (1.0 - 2e-3) * i / 4000.0;
        const Modulus<double> m(r);
        worst = std::max(worst, rel(ellip_k(m), ellip_k_series(m)));
    }
    c.check("AGM vs series K to 1e-13", worst < 1e-13, "max relative difference " + fmt(worst));

    std::mt19937_64 rng(20240607);
    std::uniform_real_distribution<double> u(0.01, 0.99);
    const auto cc = LogConstant<DD>::sharp();
    const auto cd = LogConstant<double>::sharp();
    double worst_fd = 0.0;
    for (int i = 0; i < 100; ++i) {
        const double x = u(rng);
        const double h = 1e-3 * std::min(x, 1.0 - x);
        worst_fd = std::max(worst_fd, rel(q1_first(x, cd), five_point([&](DD v) { return q1(v, cc); }, x, h)));
        worst_fd = std::max(worst_fd, rel(q1_second(x, cd), five_point([&](DD v) { return q1_first(v, cc); }, x, h)));
        worst_fd = std::max(worst_fd, rel(d_first(x), five_point([](DD v) { return d_func(v); }, x, h)));
        worst_fd = std::max(worst_fd, rel(d_second(x), five_point([](DD v) { return d_first(v); }, x, h)));
    }
    c.check("analytic vs finite-difference derivatives to 1e-6", worst_fd < 1e-6, "max relative " + fmt(worst_fd));

    // Residual of the two-term expansion of F(1/2,1/2;1;1-t); fitted exponent of
    // residual / ln(1/t) against t.
    const std::vector<double> ts = {1e-2, 1e-3, 1e-4};
    std::vector<double> lx, ly;
    for (double t : ts) {
        const HypParams<DD> p(0.5, 0.5, 1.0);
        const DD exact = gauss_2f1_one_minus(p, DD(t));
        const double res = std::abs(to_double(asymptotic_F_near_one(NearOneKind::C1, DD(t)).value() - exact));
        lx.push_back(std::log(t));
        ly.push_back(std::log(res / std::log(1.0 / t)));
    }
    const double mx = (lx[0] + lx[1] + lx[2]) / 3, my = (ly[0] + ly[1] + ly[2]) / 3;
    double sxy = 0, sxx = 0;
    for (int i = 0; i < 3; ++i) {
        sxy += (lx[i] - mx) * (ly[i] - my);
        sxx += (lx[i] - mx) * (lx[i] - mx);
    }
    const double slope = sxy / sxx;
    c.check("near-one residual ~ t^2 ln(1/t)", std::abs(slope - 2.0) < 0.1, "fitted exponent " + fmt(slope));
}

// ---- 7 -------------------------------------------------------------------

CoeffStream exact_stream(const std::string& name, std::function<Rational(std::size_t)> f) {
    return CoeffStream(
        name, [f](std::size_t n) { return f(n).get_d(); }, {}, f);
}

template <class Body>
void lemma(Criterion& c, const std::string& name, Body body) {
    try {
        body();
    } catch (const std::exception& e) {
        c.check(name, false, e.what());
    }
}

void lemma_tools(Criterion& c) {
    using Verdict = SignAnalysis::Verdict;
    lemma(c, "f3 > 0", [&] {
        const auto s = exact_stream("-f3", [](std::size_t n) { return Rational(-f3_coeff(n)); }).with_prefix(2000);
        const auto sa = series_sign_analysis(s, 0, 1.0, EndpointLimit::exact(Rational(0), "f3(1-) = 0"));
        c.check("f3 > 0", sa.verdict == Verdict::NegativeThroughout, to_string(sa.verdict));
    });
    lemma(c, "f5 > 0", [&] {
        const auto s =
            exact_stream("-f5", [](std::size_t n) { return n == 0 ? Rational(-1, 10) : Rational(-alpha_seq(n)); })
                .with_degree(3);
        const auto sa = series_sign_analysis(s, 0, 1.0, EndpointLimit::exact(Rational(-f5_value(1)), "-f5(1)"));
        c.check("f5 > 0", sa.verdict == Verdict::NegativeThroughout, to_string(sa.verdict));
    });
    lemma(c, "h >= 0 with h(1-) = 0", [&] {
        const auto s = CoeffStream(
                           "h", [](std::size_t n) { return h_coeff(n).approx(); },
                           [](std::size_t n) { return h_coeff(n).sign(); })
                           .with_prefix(2000)
                           .with_tail_certificate(true)
                           .negated();
        const auto sa = series_sign_analysis(s, 3, 1.0, EndpointLimit::exact(Rational(0), "h(1-) = 0"));
        c.check("h >= 0 with h(1-) = 0", sa.verdict == Verdict::NegativeThroughout,
                std::string(to_string(sa.verdict)) + ", " + sa.label());
    });
    lemma(c, "linear UniqueCrossing", [&] {
        const auto s = exact_stream("linear", [](std::size_t n) {
                           return n == 0 ? Rational(-1) : n == 1 ? Rational(2) : Rational(0);
                       }).with_degree(1);
        const auto sa = series_sign_analysis(s, 0, 1.0, EndpointLimit::exact(Rational(1), "S(1) = 1"));
        const bool ok = sa.verdict == Verdict::UniqueCrossing && sa.crossing && sa.crossing->lo <= 0.5 &&
                        sa.crossing->hi >= 0.5;
        c.check("linear UniqueCrossing", ok,
                sa.crossing ? "root in [" + fmt(sa.crossing->lo) + ", " + fmt(sa.crossing->hi) + "]" : "no bracket");
    });
    lemma(c, "thm2 ratio classification", [&] {
        const auto a = exact_stream("a", thm2_a).with_prefix(2000).with_tail_certificate(true);
        const auto b = exact_stream("b", thm2_b).with_prefix(2000).with_tail_certificate(true);
        const auto rc = ratio_monotonicity_classify(a, b, 2, 1.0,
                                                    EndpointLimit::approximate(-64.0 / M_PI, 1e-12, "-64/pi"));
        const bool ok = rc.kind == RatioClassification::Kind::IncreasingThenDecreasing && rc.turning_point;
        c.check("thm2 ratio classification", ok,
                std::string(to_string(rc.kind)) +
                    (rc.turning_point ? ", turning point " + fmt(0.5 * (rc.turning_point->lo + rc.turning_point->hi))
                                      : ""));
    });
}

struct Entry {
    const char* title;
    double budget_s;
    void (*run)(Criterion&);
};

const Entry kCriteria[] = {
    {"exact sequences", 30, exact_sequences},
    {"thm2", 10, thm2},
    {"thm1", 60, thm1},
    {"thm3", 30, thm3},
    {"corollaries", 30, corollaries},
    {"oracle equivalence", 10, oracles},
    {"lemma tools", 10, lemma_tools},
};

bool run(int index, bool verbose) {
    const Entry& e = kCriteria[index - 1];
    Criterion c;
    const auto start = std::chrono::steady_clock::now();
    try {
        e.run(c);
    } catch (const std::exception& ex) {
        c.check("exception", false, ex.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    c.check("runtime budget " + fmt(e.budget_s) + " s", secs < e.budget_s, fmt(secs) + " s");

    bool ok = true;
    std::string failed;
    for (const auto& k : c.checks()) {
        if (!k.ok) {
            ok = false;
            failed += "; " + k.name + " (" + k.detail + ")";
        }
    }
    std::printf("criterion %d %s: %s [%.2f s]%s\n", index, e.title, ok ? "PASS" : "FAIL", secs, failed.c_str());
    if (verbose) {
        for (const auto& k : c.checks()) {
            std::printf("    %s %s: %s\n", k.ok ? "ok  " : "FAIL", k.name.c_str(), k.detail.c_str());
        }
    }
    std::fflush(stdout);
    return ok;
}

}  // namespace

int main(int argc, char** argv) {
    bool verbose = false;
    std::vector<int> which;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "-v") == 0) {
            verbose = true;
            continue;
        }
        const int k = std::atoi(argv[i]);
        if (k < 1 || k > 7) {
            std::fprintf(stderr, "usage: acceptance [-v] [1..7]\n");
            return 2;
        }
        which.push_back(k);
    }
    if (which.empty()) which = {1, 2, 3, 4, 5, 6, 7};
    bool ok = true;
    for (int k : which) ok = run(k, verbose) && ok;
    return ok ? 0 : 1;
}

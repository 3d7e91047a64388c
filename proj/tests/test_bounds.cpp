#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "ellik/bounds.hpp"

using namespace ellik;
using DD = DoubleDouble;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

const LogConstant<double> kSharp = LogConstant<double>::sharp();

// Five-point central difference in double-double.
template <class F>
double fd(F f, double x, double h) {
    const DD X(x), H(h);
    const DD d = (f(X - H * 2.0) - f(X - H) * 8.0 + f(X + H) * 8.0 - f(X + H * 2.0)) / (H * 12.0);
    return static_cast<double>(d);
}

struct Row {
    double x, q1, dq1, d2q1, q2, d, dd, d2d, h;
};

}  // namespace

TEST_CASE("values against references at c = e^{4/3}") {
    // Q2 is tabulated at r = sqrt(x).
    const std::vector<Row> rows = {
        {0.1, 1.1633661884715727327, -0.14740995339315669736, -0.0030623606711190004469, 0.97617120289874251072,
         -0.039360449911077351005, -0.0070508803279439826423, 0.0033207191293384772419, 0.6132973066311776187},
        {0.5, 1.1036770259351328297, -0.15266556589309504106, -0.028542202016509313154, 0.97806956679169944206,
         -0.041572360754599261907, -0.0025658103836860683868, 0.026862162457749676666, 1.6134086326185899547},
        {0.9, 1.0376178298216062393, -0.19428483999128778364, -0.38284164709510277121, 0.98638611905618108661,
         -0.035582251630734348848, 0.071688241590421759299, 0.95263944123883837477, 2.4083677713959072952},
        {0.999, 1.0112636748269487749, -1.3510673166720535149, -920.14870740916397456, 0.99857384870630043953,
         -0.006914047942617937241, 3.0858353204248828078, 1852.1260494026682615, 0.47408500246562823896},
    };
    for (const auto& r : rows) {
        CAPTURE(r.x);
        CHECK(rel(q1(r.x, kSharp), r.q1) < 1e-14);
        CHECK(rel(q1_first(r.x, kSharp), r.dq1) < 1e-13);
        CHECK(rel(q1_second(r.x, kSharp), r.d2q1) < 1e-11);
        CHECK(rel(q2(std::sqrt(r.x)), r.q2) < 1e-14);
        CHECK(rel(d_func(r.x), r.d) < 1e-12);
        CHECK(rel(d_first(r.x), r.dd) < 1e-11);
        CHECK(rel(d_second(r.x), r.d2d) < 1e-11);
        CHECK(rel(h_func(r.x), r.h) < 1e-12);
    }
}

TEST_CASE("analytic derivatives against difference quotients") {
    const auto c = LogConstant<DD>::sharp();
    for (double x : {0.05, 0.3, 0.62, 0.87, 0.97}) {
        CAPTURE(x);
        const double h = 1e-4 * std::min(x, 1.0 - x);
        CHECK(rel(q1_first(x, kSharp), fd([&](DD v) { return q1(v, c); }, x, h)) < 1e-9);
        CHECK(rel(q1_second(x, kSharp), fd([&](DD v) { return q1_first(v, c); }, x, h)) < 1e-8);
        CHECK(rel(d_first(x), fd([](DD v) { return d_func(v); }, x, h)) < 1e-8);
        CHECK(rel(d_second(x), fd([](DD v) { return d_first(v); }, x, h)) < 1e-8);
    }
}

TEST_CASE("sharp constants") {
    const auto k = SharpConstants<double>::compute();
    CHECK(rel(k.c0, 1.103677025935132829715414) < 1e-15);
    CHECK(rel(k.p0, M_PI / 8 - 0.4) < 1e-15);
    CHECK(rel(k.p1, std::log(5.0) - M_PI / 2) < 1e-15);
    CHECK(rel(k.q2_lower, M_PI / std::log(25.0)) < 1e-15);
    CHECK(rel(k.c_concave, std::exp(4.0 / 3.0)) < 1e-15);
    CHECK(rel(k.k_symmetric, 1.854074677301371918432839) < 1e-15);
}

TEST_CASE("constant parsing") {
    const auto a = parse_log_constant<double>("e^{4/3}");
    REQUIRE(a.exact_ln_c);
    CHECK(*a.exact_ln_c == Rational(4, 3));
    CHECK(rel(a.c(), 3.7936678946831774) < 1e-15);
    CHECK(*parse_log_constant<double>("e^2").exact_ln_c == 2);
    CHECK(*parse_log_constant<double>("e").exact_ln_c == 1);
    CHECK(*parse_log_constant<double>(" e^(-1/2) ").exact_ln_c == Rational(-1, 2));
    const auto d = parse_log_constant<double>("3.7937");
    CHECK_FALSE(d.exact_ln_c);
    CHECK(rel(d.ln_c, std::log(3.7937)) < 1e-15);
    CHECK(rel(parse_log_constant<double>("pi/ln25").c(), M_PI / std::log(25.0)) < 1e-15);
    CHECK_THROWS_AS(parse_log_constant<double>("e^{4/0}"), std::invalid_argument);
    CHECK_THROWS_AS(parse_log_constant<double>("e^{x}"), std::invalid_argument);
    CHECK_THROWS_AS(parse_log_constant<double>("four"), std::invalid_argument);
    CHECK_THROWS_AS(parse_log_constant<double>(""), std::invalid_argument);
    CHECK_THROWS_AS(parse_log_constant<double>("-2"), DomainError);
}

TEST_CASE("limit of Q1'' at zero") {
    CHECK(q1_second_limit(LogConstant<DD>::sharp()) == 0.0);
    CHECK(q1_second_limit(kSharp) == 0.0);
    const double at4 = q1_second_limit(LogConstant<double>::of_value(4.0));
    CHECK(rel(at4, 0.00046511339518157515173) < 1e-13);
    for (double c : {3.5, 4.0, std::exp(2.0)}) CHECK(q1_second_limit(LogConstant<double>::of_value(c)) > 1e-6);
    // Near zero Q1'' at the sharp constant is linear in x.
    const double x = 1e-8;
    CHECK(rel(q1_second(x, kSharp) / x, -0.0276117) < 1e-5);
    CHECK(q1_second(DD(1e-30), LogConstant<DD>::sharp()) < 0.0);
}

TEST_CASE("endpoint behaviour") {
    CHECK(std::abs(q2(1e-8) - M_PI / std::log(25.0)) < 1e-6);
    CHECK(std::abs(q2(1.0 - 1e-10) - 1.0) < 1e-3);
    CHECK(rel(q2(1e-8), 0.97599063291558569928) < 1e-15);
    CHECK(rel(q2(1.0 - 1e-10), 0.99999971839013372206) < 1e-13);
    CHECK(std::abs(d_first(1e-16) - (M_PI / 8 - 0.4)) < 1e-12);
    CHECK(rel(h_func(0.0), 2025 * M_PI / 64 - 99) < 1e-13);
    // h ~ 16 sqrt(1-x) near one.
    CHECK(rel(h_func(1.0 - 1e-8), 0.0015996799970629457713) < 1e-7);
    const Evaluated<double> e = q2_excess(Modulus<double>(1e-6));
    CHECK(e.value > 0.0);
    CHECK(rel(e.value, 1.4308278155400847954e-15) < 1e-10);
    CHECK_THROWS_AS(h_func(1.0), DomainError);
    CHECK_THROWS_AS(q1(0.5, LogConstant<double>::of_value(0.9)), DomainError);
}

TEST_CASE("cancellation-free kernels") {
    for (double r : {1e-7, 1e-3, 0.2, 0.9}) {
        const Modulus<DD> m{DD(r)};
        const double ke = static_cast<double>(k_excess(m));
        const double le = static_cast<double>(log_excess(m));
        const DD k = ellip_k(m) - RealTraits<DD>::pi() * 0.5;
        const DD l = log1p(DD(4.0) / m.rp()) - RealTraits<DD>::ln5();
        CAPTURE(r);
        CHECK(rel(ke, static_cast<double>(k)) < 1e-12);
        CHECK(rel(le, static_cast<double>(l)) < 1e-12);
    }
    // K - pi/2 ~ (pi/8) r^2
    CHECK(rel(k_excess(Modulus<double>(1e-9)), M_PI / 8 * 1e-18) < 1e-12);
}

TEST_CASE("bound families bracket K") {
    for (double r = 0.001; r < 1.0; r += 0.0173) {
        const double k = ellip_k(r);
        CAPTURE(r);
        for (KFamily f : {KFamily::Thm2, KFamily::Mi3, KFamily::Kgt, KFamily::Avv}) {
            const KBounds<double> b = k_bounds(r, f);
            CAPTURE(to_string(f));
            const KBoundMargins<double> m = k_bound_margins(Modulus<double>(r), f);
            CHECK(m.upper.value > 0.0);
            // The direct difference loses about 1e-16 absolute to cancellation.
            CHECK(std::abs(m.upper.value - (b.upper - k)) < 1e-15 + 1e-12 * m.upper.value);
            if (f != KFamily::Avv) {
                CHECK(m.lower->value > 0.0);
                CHECK(std::abs(m.lower->value - (k - b.lower)) < 1e-15 + 1e-12 * m.lower->value);
            }
        }
    }
    CHECK(std::isinf(k_bounds(0.5, KFamily::Avv).lower));
    CHECK_FALSE(k_bound_margins(Modulus<double>(0.5), KFamily::Avv).lower);
}

TEST_CASE("kgt bounds tend to pi/2 as r -> 0") {
    const KBounds<double> b = k_bounds(1e-9, KFamily::Kgt);
    CHECK(std::abs(b.lower - M_PI / 2) < 1e-15);
    CHECK(std::abs(b.upper - M_PI / 2) < 1e-15);
    const KBoundMargins<DD> m = k_bound_margins(Modulus<DD>(DD(1e-4)), KFamily::Kgt);
    CHECK(m.lower->value > 0.0);
    CHECK(m.upper.value > 0.0);
}

TEST_CASE("family names") {
    CHECK(parse_k_family("mi3") == KFamily::Mi3);
    CHECK(std::string(to_string(KFamily::Kgt)) == "kgt");
    CHECK_THROWS_AS(parse_k_family("xyz"), std::invalid_argument);
}

TEST_CASE("product inequalities are sharp at 1/sqrt 2") {
    const DD s = sqrt(DD(0.5));
    const auto p = product_inequalities(Modulus<DD>(s));
    CHECK(std::abs(static_cast<double>(p.mi2.value)) < 1e-10);
    CHECK(std::abs(static_cast<double>(p.rrkk.value)) < 1e-10);
    CHECK(std::abs(static_cast<double>(p.mi1.value)) < 1e-10);
    for (double r : {0.01, 0.3, 0.6, 0.8, 0.99}) {
        const auto q = product_inequalities(r);
        CAPTURE(r);
        CHECK(q.mi1.value > 0.0);
        CHECK(q.mi2.value > 0.0);
        CHECK(q.rrkk.value > 0.0);
        CHECK(q.scaled_product < q.bound_min_log);
        CHECK(q.scaled_product < q.bound_log_product);
    }
    // (2/pi) r r' c0^2 ln^2(e^{4/3} sqrt 2) at r = 1/sqrt 2
    const auto mid = product_inequalities(1.0 / std::sqrt(2.0));
    CHECK(rel(mid.bound_log_product, 1.094219807613238319418385) < 1e-4);
}

TEST_CASE("mu against the logarithmic ratio") {
    CHECK(mu_log_ratio_gap(Modulus<double>(0.3)).value > 0.0);
    CHECK(mu_log_ratio_gap(Modulus<double>(0.9)).value < 0.0);
}

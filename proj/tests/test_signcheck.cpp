#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ellik/coeffseq.hpp"
#include "ellik/signcheck.hpp"

using namespace ellik;

namespace {

using Verdict = SignAnalysis::Verdict;
using Kind = RatioClassification::Kind;

CoeffStream exact_stream(const std::string& name, std::function<Rational(std::size_t)> f) {
    return CoeffStream(
        name, [f](std::size_t n) { return f(n).get_d(); }, {}, f);
}

// S(t) = -1 + 2t, zero at 1/2.
CoeffStream linear() {
    return exact_stream("linear", [](std::size_t n) { return n == 0 ? Rational(-1) : n == 1 ? Rational(2) : Rational(0); })
        .with_degree(1);
}

}  // namespace

TEST_CASE("evaluate_series sums a geometric series") {
    const CoeffStream ones("ones", [](std::size_t) { return 1.0; });
    const SeriesValue v = evaluate_series(ones, 0.5);
    CHECK(v.value == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(v.error < 1e-14);
    const SeriesValue d = evaluate_series(ones, 0.5, true);
    CHECK(d.value == doctest::Approx(4.0).epsilon(1e-14));
    CHECK(evaluate_series(linear(), 0.25).value == -0.5);
}

TEST_CASE("stream signs come from exact values when given") {
    const CoeffStream s = linear();
    CHECK(s.sign(0) == Sign::Negative);
    CHECK(s.sign(1) == Sign::Positive);
    CHECK(s.sign(5) == Sign::Zero);
    const CoeffStream n = s.negated();
    CHECK(n.value(0) == 1.0);
    CHECK(n.sign(1) == Sign::Negative);
    CHECK(n.exact(1) == -2);
}

TEST_CASE("synthetic linear series crosses once") {
    const SignAnalysis sa = series_sign_analysis(linear(), 0, 1.0, EndpointLimit::exact(Rational(1), "S(1) = 1"));
    CHECK(sa.verdict == Verdict::UniqueCrossing);
    REQUIRE(sa.crossing);
    CHECK(sa.crossing->lo <= 0.5);
    CHECK(sa.crossing->hi >= 0.5);
    CHECK(sa.crossing->width() < 1e-10);
    CHECK(sa.crossing_certified);
    CHECK(sa.label() == "certified");

    const SignAnalysis neg = series_sign_analysis(linear(), 0, 0.4, EndpointLimit::exact(Rational(-1, 5), "S(0.4)"));
    CHECK(neg.verdict == Verdict::NegativeThroughout);
}

TEST_CASE("f3 is positive") {
    const CoeffStream s = exact_stream("-f3", [](std::size_t n) { return Rational(-f3_coeff(n)); }).with_prefix(3000);
    const SignAnalysis sa = series_sign_analysis(s, 0, 1.0, EndpointLimit::exact(Rational(0), "f3(1-) = 0"));
    CHECK(sa.verdict == Verdict::NegativeThroughout);
    CHECK(sa.label() == "prefix-verified");
    CHECK(sa.terms_checked >= 3000);
}

TEST_CASE("f5 is positive") {
    const CoeffStream s =
        exact_stream("-f5", [](std::size_t n) { return n == 0 ? Rational(-1, 10) : Rational(-alpha_seq(n)); })
            .with_degree(3);
    const SignAnalysis sa =
        series_sign_analysis(s, 0, 1.0, EndpointLimit::exact(Rational(-f5_value(1)), "-f5(1) = -193/20480"));
    CHECK(sa.verdict == Verdict::NegativeThroughout);
    CHECK(f5_value(1) == Rational(193, 20480));
}

TEST_CASE("h is nonnegative with h(1-) = 0") {
    const CoeffStream s =
        CoeffStream(
            "h", [](std::size_t n) { return h_coeff(n).approx(); }, [](std::size_t n) { return h_coeff(n).sign(); })
            .with_prefix(1500)
            .with_tail_certificate(true)
            .negated();
    const SignAnalysis sa = series_sign_analysis(s, 3, 1.0, EndpointLimit::exact(Rational(0), "h(1-) = 0"));
    CHECK(sa.verdict == Verdict::NegativeThroughout);
    CHECK(sa.tail_certified);
    // A wrong split index is rejected.
    CHECK_THROWS_AS(series_sign_analysis(s, 4, 1.0, EndpointLimit::exact(Rational(0), "h(1-) = 0")),
                    PatternViolation);
}

TEST_CASE("pattern violations and undecidable limits") {
    const CoeffStream bad = exact_stream("bad", [](std::size_t n) {
                                return n == 2 ? Rational(-1) : (n == 0 ? Rational(-1) : Rational(1));
                            }).with_prefix(10);
    CHECK_THROWS_AS(series_sign_analysis(bad, 0, 1.0, EndpointLimit::exact(Rational(1), "")), PatternViolation);
    CHECK_THROWS_AS(series_sign_analysis(linear(), 0, 1.0, EndpointLimit::approximate(1e-14, 1e-12, "")),
                    IndeterminateSign);
    const EndpointLimit e = EndpointLimit::approximate(-0.5, 1e-3, "");
    CHECK(e.sign == Sign::Negative);
    CHECK(EndpointLimit::exact(PiLinear(1, -3), "pi - 3").sign == Sign::Positive);
}

TEST_CASE("thm2 ratio classification") {
    const CoeffStream a = exact_stream("a", thm2_a).with_prefix(1000).with_tail_certificate(true);
    const CoeffStream b = exact_stream("b", thm2_b).with_prefix(1000).with_tail_certificate(true);
    const double h1 = -64.0 / M_PI;
    const RatioClassification rc =
        ratio_monotonicity_classify(a, b, 2, 1.0, EndpointLimit::approximate(h1, 1e-12, "H(1-) = -64/pi"));
    CHECK(rc.kind == Kind::IncreasingThenDecreasing);
    REQUIRE(rc.turning_point);
    CHECK(rc.turning_point->lo < 0.953762);
    CHECK(rc.turning_point->hi > 0.953760);
    CHECK(rc.label() == "certified");
    // Peak index 1 contradicts a_2/b_2 > a_1/b_1.
    CHECK_THROWS_AS(ratio_monotonicity_classify(a, b, 1, 1.0, EndpointLimit::approximate(h1, 1e-12, "")),
                    PatternViolation);
    // A positive limit keeps A/B increasing.
    const RatioClassification up =
        ratio_monotonicity_classify(a, b, 2, 1.0, EndpointLimit::approximate(1.0, 1e-12, ""));
    CHECK(up.kind == Kind::MonotoneIncreasing);
}

TEST_CASE("auxiliary function") {
    DifferentiablePair<double> f{[](double x) { return x * x; }, [](double x) { return 2 * x; }};
    DifferentiablePair<double> g{[](double x) { return x; }, [](double) { return 1.0; }};
    CHECK(h_aux(f, g, 0.3) == doctest::Approx(0.09));
    CHECK_THROWS_AS(h_aux(f, g, 1.5), DomainError);
}

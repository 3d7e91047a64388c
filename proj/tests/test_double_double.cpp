#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "ellik/real.hpp"

using ellik::DoubleDouble;

namespace {

DoubleDouble dd(const char* s) { return DoubleDouble::parse(s); }

double rel(DoubleDouble a, DoubleDouble b) { return std::abs(static_cast<double>(a - b)) / std::abs(static_cast<double>(b)); }

}  // namespace

TEST_CASE("two_sum and two_prod are error free") {
    const DoubleDouble s = ellik::dd_detail::two_sum(1.0, 1e-30);
    CHECK(s.hi() == 1.0);
    CHECK(s.lo() == 1e-30);
    const double a = 1.0 + 0x1p-30;
    const DoubleDouble p = ellik::dd_detail::two_prod(a, a);
    CHECK(p.hi() == 1.0 + 0x1p-29);
    CHECK(p.lo() == 0x1p-60);
}

TEST_CASE("arithmetic keeps about 32 digits") {
    const DoubleDouble third = DoubleDouble(1.0) / 3.0;
    CHECK(std::abs(static_cast<double>(third * 3.0 - 1.0)) < 1e-31);
    const DoubleDouble x = dd("1.2345678901234567890123456789");
    CHECK(rel((x * x) / x, x) < 1e-31);
    CHECK(rel((x + 1e-20) - x, DoubleDouble(1e-20)) < 1e-10);
}

TEST_CASE("elementary functions against 36-digit values") {
    CHECK(rel(ellik::sqrt(DoubleDouble(2.0)), dd("1.41421356237309504880168872420969808")) < 1e-31);
    CHECK(rel(ellik::exp(DoubleDouble(1.0)), dd("2.7182818284590452353602874713526625")) < 1e-31);
    CHECK(rel(ellik::log(DoubleDouble(10.0)), dd("2.30258509299404568401799145468436421")) < 1e-31);
    CHECK(rel(ellik::exp(dd("-3.25")), dd("0.0387742078317220098868998352675961433")) < 1e-30);
    CHECK(rel(ellik::log1p(dd("1e-10")), dd("0.0000000000999999999950000000003333333333083333")) < 1e-30);
    CHECK(rel(ellik::pow(DoubleDouble(2.0), 10), DoubleDouble(1024.0)) == 0.0);
}

TEST_CASE("constants") {
    using T = ellik::RealTraits<DoubleDouble>;
    CHECK(rel(T::pi(), dd("3.14159265358979323846264338327950288")) < 4e-32);
    CHECK(rel(T::ln2(), dd("0.693147180559945309417232121458176568")) < 4e-32);
    CHECK(rel(T::ln5(), dd("1.60943791243410037460075933322618764")) < 4e-32);
    CHECK(rel(T::euler_gamma(), dd("0.577215664901532860606512090082402431")) < 4e-32);
}

TEST_CASE("parse and print round trip") {
    const DoubleDouble x = dd("0.70710678118654752440084436210485");
    const DoubleDouble y = dd(ellik::to_string(x, 32).c_str());
    CHECK(rel(x, y) < 1e-31);
    CHECK(static_cast<double>(dd("-1.5e-7")) == -1.5e-7);
    CHECK(static_cast<double>(dd("+2")) == 2.0);
    CHECK_THROWS_AS(dd("abc"), std::invalid_argument);
    CHECK_THROWS_AS(dd("1.5x"), std::invalid_argument);
    CHECK_THROWS_AS(dd(""), std::invalid_argument);
    std::ostringstream os;
    os << DoubleDouble(0.25);
    CHECK(os.str().rfind("0.25", 0) == 0);
}

TEST_CASE("ordering compares the low word") {
    const DoubleDouble a(1.0, 1e-20);
    const DoubleDouble b(1.0, -1e-20);
    CHECK(b < a);
    CHECK(a > 1.0);
    CHECK(ellik::abs(-a) == a);
    CHECK(ellik::floor(DoubleDouble(3.0, -1e-20)) == 2.0);
}

TEST_CASE("double parsing is strict") {
    CHECK(ellik::real_from_string<double>("0.5") == 0.5);
    CHECK(ellik::real_from_string<double>("+1e-8") == 1e-8);
    CHECK_THROWS_AS(ellik::real_from_string<double>("0.5x"), std::invalid_argument);
    CHECK_THROWS_AS(ellik::real_from_string<double>(""), std::invalid_argument);
    CHECK(ellik::near_integer(3.0 + 1e-15));
    CHECK_FALSE(ellik::near_integer(3.1));
}

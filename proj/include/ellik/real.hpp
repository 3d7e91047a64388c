#pragma once

#include <charconv>
#include <cmath>
#include <stdexcept>
#include <string>

#include "ellik/double_double.hpp"

namespace ellik {

enum class Precision { Double, Extended };

inline const char* to_string(Precision p) { return p == Precision::Double ? "double" : "extended"; }

class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class ConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

template <class Real>
struct RealTraits;

template <>
struct RealTraits<double> {
    static constexpr double epsilon = 0x1p-53;
    // Series stop once a term falls below this fraction of the partial sum.
    static constexpr double series_tol = 0x1p-60;
    static constexpr int digits10 = 17;
    static constexpr double pi() { return 3.141592653589793; }
    static constexpr double ln2() { return 0.6931471805599453; }
    static constexpr double euler_gamma() { return 0.5772156649015329; }
    static constexpr double ln5() { return 1.6094379124341003; }
};

template <>
struct RealTraits<DoubleDouble> {
    static constexpr double epsilon = 0x1p-104;
    static constexpr double series_tol = 0x1p-110;
    static constexpr int digits10 = 32;
    static constexpr DoubleDouble pi() { return {3.141592653589793, 1.2246467991473532e-16}; }
    static constexpr DoubleDouble ln2() { return {0.6931471805599453, 2.3190468138462996e-17}; }
    static constexpr DoubleDouble euler_gamma() { return {0.5772156649015329, -4.942915152430645e-18}; }
    static constexpr DoubleDouble ln5() { return {1.6094379124341003, 9.280081691085902e-17}; }
};

template <class Real>
concept RealScalar = requires { RealTraits<Real>::epsilon; };

inline double to_double(double x) { return x; }
inline double to_double(DoubleDouble x) { return static_cast<double>(x); }

/// Exact when x is a double; parses decimal text at full width otherwise.
template <class Real>
Real real_from_string(const std::string& text);

template <>
inline double real_from_string<double>(const std::string& text) {
    // from_chars does not accept a leading '+'.
    const char* first = text.data();
    const char* last = first + text.size();
    if (first != last && *first == '+') ++first;
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last || first == last) throw std::invalid_argument("malformed number: " + text);
    return v;
}

template <>
inline DoubleDouble real_from_string<DoubleDouble>(const std::string& text) {
    return DoubleDouble::parse(text);
}

/// Nearest integer when x is within a few ulps of one, otherwise nothing.
template <class Real>
bool near_integer(const Real& x, long* out = nullptr) {
    using std::abs;
    using std::floor;
    const Real r = floor(x + 0.5);
    if (abs(to_double(x - r)) <= 64.0 * RealTraits<Real>::epsilon * (1.0 + std::abs(to_double(x)))) {
        if (out != nullptr) *out = static_cast<long>(to_double(r));
        return true;
    }
    return false;
}

}  // namespace ellik

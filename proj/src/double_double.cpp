#include "ellik/double_double.hpp"

#include <cctype>
#include <cstdlib>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace ellik {

namespace {

constexpr DoubleDouble kLn2{0.6931471805599453, 2.3190468138462996e-17};

DoubleDouble pow10(int e) {
    DoubleDouble r = 1.0;
    DoubleDouble base = 10.0;
    int n = e < 0 ? -e : e;
    while (n > 0) {
        if (n & 1) r = r * base;
        base = base * base;
        n >>= 1;
    }
    return e < 0 ? DoubleDouble(1.0) / r : r;
}

}  // namespace

DoubleDouble floor(DoubleDouble x) {
    double hi = std::floor(x.hi());
    double lo = 0.0;
    if (hi == x.hi()) {
        lo = std::floor(x.lo());
        return dd_detail::quick_two_sum(hi, lo);
    }
    return {hi, lo};
}

DoubleDouble sqrt(DoubleDouble x) {
    if (x.hi() == 0.0) return 0.0;
    if (x.hi() < 0.0) return std::numeric_limits<double>::quiet_NaN();
    const double a = 1.0 / std::sqrt(x.hi());
    const double ax = x.hi() * a;
    const DoubleDouble diff = x - dd_detail::two_prod(ax, ax);
    return dd_detail::quick_two_sum(ax, diff.hi() * (a * 0.5));
}

DoubleDouble exp(DoubleDouble x) {
    if (x.hi() > 709.0) return std::numeric_limits<double>::infinity();
    if (x.hi() < -745.0) return 0.0;
    if (x.hi() == 0.0) return 1.0;

    const double k = std::nearbyint(x.hi() / kLn2.hi());
    DoubleDouble r = x - kLn2 * k;
    // Scale down so the Taylor series converges quickly, then square back up.
    constexpr int kSquarings = 9;
    r = ldexp(r, -kSquarings);

    DoubleDouble term = r;
    DoubleDouble sum = r;
    for (int i = 2; i < 30; ++i) {
        term = term * r / static_cast<double>(i);
        sum += term;
        if (std::abs(term.hi()) < 1e-36 * std::abs(sum.hi())) break;
    }
    // sum = exp(r) - 1; use (1+s)^2 - 1 = s(2+s) to keep precision.
    for (int i = 0; i < kSquarings; ++i) sum = sum * (sum + 2.0);
    return ldexp(sum + 1.0, static_cast<int>(k));
}

DoubleDouble log1p(DoubleDouble x) {
    if (x.hi() <= -1.0) {
        return x.hi() == -1.0 && x.lo() == 0.0 ? -std::numeric_limits<double>::infinity()
                                                 : std::numeric_limits<double>::quiet_NaN();
    }
    if (std::abs(x.hi()) > 0.25) return log(x + 1.0);
    // log(1+x) = 2 atanh(z), z = x / (2 + x); |z| < 1/7.
    const DoubleDouble z = x / (x + 2.0);
    const DoubleDouble z2 = z * z;
    DoubleDouble power = z;
    DoubleDouble sum = z;
    for (int k = 3; k < 200; k += 2) {
        power = power * z2;
        const DoubleDouble term = power / static_cast<double>(k);
        sum += term;
        if (std::abs(term.hi()) <= 1e-34 * std::abs(sum.hi())) break;
    }
    return ldexp(sum, 1);
}

DoubleDouble log(DoubleDouble x) {
    if (x.hi() <= 0.0) {
        return x.hi() == 0.0 ? -std::numeric_limits<double>::infinity()
                             : std::numeric_limits<double>::quiet_NaN();
    }
    if (std::abs(x.hi() - 1.0) < 0.25) return log1p(x - 1.0);
    // One Newton step on exp(y) = x doubles the precision of std::log.
    DoubleDouble y = std::log(x.hi());
    y = y + x * exp(-y) - 1.0;
    return y;
}

DoubleDouble pow(DoubleDouble x, int n) {
    DoubleDouble r = 1.0;
    DoubleDouble base = x;
    unsigned m = n < 0 ? static_cast<unsigned>(-(n + 1)) + 1U : static_cast<unsigned>(n);
    while (m > 0) {
        if (m & 1U) r = r * base;
        base = base * base;
        m >>= 1U;
    }
    return n < 0 ? DoubleDouble(1.0) / r : r;
}

DoubleDouble pow(DoubleDouble x, DoubleDouble y) {
    const DoubleDouble fy = floor(y);
    if (fy == y && std::abs(y.hi()) < 1e9) return pow(x, static_cast<int>(y.hi()));
    return exp(y * log(x));
}

DoubleDouble DoubleDouble::parse(std::string_view text) {
    std::size_t i = 0;
    auto fail = [&]() -> DoubleDouble {
        throw std::invalid_argument("malformed decimal literal: " + std::string(text));
    };
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    bool negative = false;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) negative = text[i++] == '-';

    DoubleDouble mantissa = 0.0;
    int exponent = 0;
    int digits = 0;
    bool seen_digit = false;
    bool seen_point = false;
    for (; i < text.size(); ++i) {
        const char c = text[i];
        if (c == '.') {
            if (seen_point) return fail();
            seen_point = true;
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            // Digits past ~36 cannot change a 106-bit result.
            if (digits < 36) {
                mantissa = mantissa * 10.0 + static_cast<double>(c - '0');
                if (seen_point) --exponent;
            } else if (!seen_point) {
                ++exponent;
            }
            if (digits > 0 || c != '0') ++digits;
            seen_digit = true;
        } else {
            break;
        }
    }
    if (!seen_digit) return fail();
    if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
        ++i;
        std::string rest(text.substr(i));
        char* end = nullptr;
        const long e = std::strtol(rest.c_str(), &end, 10);
        if (end == rest.c_str()) return fail();
        i += static_cast<std::size_t>(end - rest.c_str());
        exponent += static_cast<int>(e);
    }
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    if (i != text.size()) return fail();

    DoubleDouble value = exponent < 0 ? mantissa / pow10(-exponent) : mantissa * pow10(exponent);
    return negative ? -value : value;
}

std::string to_string(DoubleDouble x, int digits) {
    if (std::isnan(x.hi())) return "nan";
    if (std::isinf(x.hi())) return x.hi() < 0 ? "-inf" : "inf";
    if (digits < 1) digits = 1;
    if (digits > 34) digits = 34;
    std::string out;
    if (x.hi() < 0.0) {
        out += '-';
        x = -x;
    }
    if (x.hi() == 0.0) return out + "0";

    int e = static_cast<int>(std::floor(std::log10(x.hi())));
    DoubleDouble r = x / pow10(e);
    if (r.hi() >= 10.0) {
        r = r / 10.0;
        ++e;
    } else if (r.hi() < 1.0) {
        r = r * 10.0;
        --e;
    }

    std::string d(static_cast<std::size_t>(digits) + 1, '0');
    for (std::size_t k = 0; k < d.size(); ++k) {
        int digit = static_cast<int>(std::floor(r.hi()));
        if (digit < 0) digit = 0;
        if (digit > 9) digit = 9;
        d[k] = static_cast<char>('0' + digit);
        r = (r - static_cast<double>(digit)) * 10.0;
        // Correct a digit that came out one too small.
        if (r.hi() >= 10.0 && digit < 9) {
            ++d[k];
            r = r - 10.0;
        } else if (r.hi() < 0.0 && digit > 0) {
            --d[k];
            r = r + 10.0;
        }
    }
    // Round half up on the guard digit.
    if (d.back() >= '5') {
        int k = digits - 1;
        while (k >= 0 && d[static_cast<std::size_t>(k)] == '9') d[static_cast<std::size_t>(k--)] = '0';
        if (k < 0) {
            d.insert(d.begin(), '1');
            ++e;
        } else {
            ++d[static_cast<std::size_t>(k)];
        }
    }
    d.resize(static_cast<std::size_t>(digits));

    if (e >= -5 && e < digits) {
        if (e >= 0) {
            out += d.substr(0, static_cast<std::size_t>(e) + 1);
            std::string frac = d.substr(static_cast<std::size_t>(e) + 1);
            while (!frac.empty() && frac.back() == '0') frac.pop_back();
            if (!frac.empty()) out += "." + frac;
        } else {
            std::string frac = std::string(static_cast<std::size_t>(-e - 1), '0') + d;
            while (!frac.empty() && frac.back() == '0') frac.pop_back();
            out += "0." + frac;
        }
        return out;
    }
    std::string frac = d.substr(1);
    while (!frac.empty() && frac.back() == '0') frac.pop_back();
    out += d.substr(0, 1);
    if (!frac.empty()) out += "." + frac;
    out += "e" + std::to_string(e);
    return out;
}

std::ostream& operator<<(std::ostream& os, DoubleDouble x) { return os << to_string(x); }

}  // namespace ellik

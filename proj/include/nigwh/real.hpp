#pragma once

#include <boost/multiprecision/mpfr.hpp>

#include <cmath>
#include <cstdint>
#include <limits>
#include <string>

#include "nigwh/errors.hpp"

namespace nigwh {

/// Arbitrary-precision real with runtime-selectable precision (decimal digits).
/// All Pade / moment computations run on this type; conversion to machine
/// doubles happens only at the output boundary.
using BigReal = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>,
                                              boost::multiprecision::et_off>;

/// Scoped working-precision context.  Values constructed while the guard is
/// alive carry the requested number of decimal digits.
class PrecisionGuard {
  public:
    explicit PrecisionGuard(unsigned digits10) : saved_(BigReal::default_precision()) {
        BigReal::default_precision(digits10);
    }
    ~PrecisionGuard() { BigReal::default_precision(saved_); }
    PrecisionGuard(const PrecisionGuard&) = delete;
    PrecisionGuard& operator=(const PrecisionGuard&) = delete;

  private:
    unsigned saved_;
};

template <typename Real>
inline unsigned precision_digits() {
    return std::numeric_limits<Real>::digits10;
}

template <>
inline unsigned precision_digits<BigReal>() {
    return BigReal::default_precision();
}

inline double to_double(double x) { return x; }
inline double to_double(const BigReal& x) { return x.convert_to<double>(); }

template <typename Real>
inline Real pi_value() {
    using std::atan;
    return 4 * atan(Real(1));
}

template <typename Real>
inline Real factorial(int k) {
    Real f(1);
    for (int i = 2; i <= k; ++i) f *= i;
    return f;
}

template <typename Real>
inline Real binomial(int n, int k) {
    if (k < 0 || k > n) return Real(0);
    Real b(1);
    for (int i = 1; i <= k; ++i) b = b * (n - k + i) / i;
    return b;
}

/// Exact rational parsed from a CLI-style literal: "p/q", plain integers,
/// decimals ("0.723914" -> 723914/10^6) and exponents ("1e-3").
struct Rational {
    long long num = 0;
    long long den = 1;

    template <typename Real>
    Real value() const {
        return Real(num) / Real(den);
    }
};

/// Parses a decimal, integer, or p/q literal into an exact Rational.
/// Throws DomainError on malformed input or overflow.
inline Rational parse_rational(const std::string& text) {
    if (text.empty()) throw DomainError("empty numeric literal");
    auto slash = text.find('/');
    if (slash != std::string::npos) {
        Rational n = parse_rational(text.substr(0, slash));
        Rational d = parse_rational(text.substr(slash + 1));
        if (d.num == 0) throw DomainError("zero denominator in '" + text + "'");
        // (a/b)/(c/d) = ad/bc
        Rational r;
        if (__builtin_mul_overflow(n.num, d.den, &r.num) || __builtin_mul_overflow(n.den, d.num, &r.den))
            throw DomainError("rational overflow in '" + text + "'");
        if (r.den < 0) { r.num = -r.num; r.den = -r.den; }
        return r;
    }
    std::size_t i = 0;
    bool neg = false;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) neg = (text[i++] == '-');
    long long mantissa = 0;
    int frac_digits = 0, exponent = 0;
    bool any = false, in_frac = false;
    for (; i < text.size(); ++i) {
        char ch = text[i];
        if (ch >= '0' && ch <= '9') {
            if (__builtin_mul_overflow(mantissa, 10LL, &mantissa) ||
                __builtin_add_overflow(mantissa, (long long)(ch - '0'), &mantissa))
                throw DomainError("numeric literal too long: '" + text + "'");
            if (in_frac) ++frac_digits;
            any = true;
        } else if (ch == '.' && !in_frac) {
            in_frac = true;
        } else if ((ch == 'e' || ch == 'E') && any) {
            exponent = std::stoi(text.substr(i + 1));
            break;
        } else {
            throw DomainError("malformed numeric literal: '" + text + "'");
        }
    }
    if (!any) throw DomainError("malformed numeric literal: '" + text + "'");
    Rational r;
    r.num = neg ? -mantissa : mantissa;
    r.den = 1;
    int pow10 = exponent - frac_digits;
    for (; pow10 > 0; --pow10)
        if (__builtin_mul_overflow(r.num, 10LL, &r.num)) throw DomainError("overflow in '" + text + "'");
    for (; pow10 < 0; ++pow10)
        if (__builtin_mul_overflow(r.den, 10LL, &r.den)) throw DomainError("overflow in '" + text + "'");
    return r;
}

}  // namespace nigwh

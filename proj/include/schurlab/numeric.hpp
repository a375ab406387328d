#pragma once

// Exact rationals and certified real enclosures shared by every module.

#include <gmpxx.h>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace schurlab {

/// Arbitrary-precision rational, always canonicalized (lowest terms, positive
/// denominator). Never bind arithmetic results to `auto`: gmpxx returns
/// expression templates.
using Rational = mpq_class;

/// ~50 significant digits; used only where a value is genuinely irrational.
using HighPrecision = boost::multiprecision::cpp_bin_float_50;

Rational make_rational(std::int64_t numerator, std::int64_t denominator = 1);

/// Accepts "p", "p/q" and plain decimals ("-0.25", "1e-3").
/// Throws std::invalid_argument on malformed text or a zero denominator.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& value);
/// Fixed-point rendering with `digits` fractional digits, rounded half away
/// from zero. Exact for the given digit count.
std::string to_decimal(const Rational& value, int digits);
std::string to_decimal(double value, int digits);
double to_double(const Rational& value);
HighPrecision to_high_precision(const Rational& value);

/// Closed interval [value - radius, value + radius] known to contain an exact
/// real quantity.
struct Enclosure {
    double value = 0.0;
    double radius = 0.0;

    double lower() const;
    double upper() const;
    bool contains(double x) const;
    bool is_exact() const { return radius == 0.0; }

    static Enclosure exact(double v) { return {v, 0.0}; }
};

Enclosure enclose(const Rational& value);
/// Rounds a high-precision value to double and widens by the conversion error
/// plus a bound on the high-precision evaluation error.
Enclosure enclose(const HighPrecision& value);
/// Rational square root when both numerator and denominator are squares.
std::optional<Rational> exact_sqrt(const Rational& value);
/// Smallest symmetric enclosure covering [lo, hi].
Enclosure from_bounds(double lo, double hi);
/// Certified square root of a nonnegative rational.
Enclosure sqrt_enclosure(const Rational& value);

/// A norm value: exact when the quantity is rational, otherwise an enclosure.
/// `squared` carries the exact square for modulus-type values when available.
struct NormValue {
    std::optional<Rational> exact;
    std::optional<Rational> squared;
    Enclosure approx;

    static NormValue from_exact(const Rational& v);
    static NormValue from_squared(const Rational& sq);
    static NormValue from_enclosure(const Enclosure& e);

    double value() const { return approx.value; }
    double lower() const { return approx.lower(); }
    double upper() const { return approx.upper(); }
};

/// True when `a <= b` holds, decided exactly if both sides are exact.
bool certainly_le(const NormValue& a, const NormValue& b);

/// Rational approximation of a double to within 2^-bits (dyadic).
Rational dyadic_approximation(double x, int bits = 40);

}  // namespace schurlab

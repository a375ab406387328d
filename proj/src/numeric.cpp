#include "schurlab/numeric.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace schurlab {

namespace {

// Relative error bound for the handful of correctly-rounded-ish cpp_bin_float
// operations we chain (~166-bit mantissa).
constexpr double kHighPrecisionRelativeError = 1e-45;

double round_up(double x) {
    return std::nextafter(x, std::numeric_limits<double>::infinity());
}

}  // namespace

Rational make_rational(std::int64_t numerator, std::int64_t denominator) {
    if (denominator == 0) {
        throw std::invalid_argument("rational with zero denominator");
    }
    Rational r(mpz_class(std::to_string(numerator)), mpz_class(std::to_string(denominator)));
    r.canonicalize();
    return r;
}

Rational parse_rational(std::string_view text) {
    std::string s(text);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
    std::size_t start = 0;
    while (start < s.size() && std::isspace(static_cast<unsigned char>(s[start]))) ++start;
    s = s.substr(start);
    if (s.empty()) {
        throw std::invalid_argument("empty rational literal");
    }

    auto parse_integer = [&](const std::string& t) {
        mpz_class z;
        if (t.empty() || z.set_str(t[0] == '+' ? t.substr(1) : t, 10) != 0) {
            throw std::invalid_argument("malformed rational literal: " + std::string(text));
        }
        return z;
    };

    if (auto slash = s.find('/'); slash != std::string::npos) {
        mpz_class num = parse_integer(s.substr(0, slash));
        mpz_class den = parse_integer(s.substr(slash + 1));
        if (den == 0) {
            throw std::invalid_argument("rational with zero denominator: " + std::string(text));
        }
        Rational r(num, den);
        r.canonicalize();
        return r;
    }

    if (s.find_first_of(".eE") == std::string::npos) {
        return Rational(parse_integer(s));
    }

    // Decimal literal: mantissa digits with optional fraction and exponent.
    std::string mantissa = s;
    long exponent = 0;
    if (auto e = s.find_first_of("eE"); e != std::string::npos) {
        mantissa = s.substr(0, e);
        try {
            exponent = std::stol(s.substr(e + 1));
        } catch (const std::exception&) {
            throw std::invalid_argument("malformed rational literal: " + std::string(text));
        }
    }
    std::string digits;
    long fraction_digits = 0;
    bool seen_point = false;
    for (char c : mantissa) {
        if (c == '.') {
            if (seen_point) throw std::invalid_argument("malformed rational literal: " + std::string(text));
            seen_point = true;
        } else {
            digits.push_back(c);
            if (seen_point && std::isdigit(static_cast<unsigned char>(c))) ++fraction_digits;
        }
    }
    mpz_class num = parse_integer(digits);
    long shift = exponent - fraction_digits;
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(shift)));
    Rational r = shift >= 0 ? Rational(num * scale) : Rational(num, scale);
    r.canonicalize();
    return r;
}

std::string to_string(const Rational& value) {
    return value.get_str();
}

double to_double(const Rational& value) {
    return value.get_d();
}

HighPrecision to_high_precision(const Rational& value) {
    return HighPrecision(value.get_num().get_str()) / HighPrecision(value.get_den().get_str());
}

double Enclosure::lower() const {
    if (radius == 0.0) return value;
    return std::nextafter(value - radius, -std::numeric_limits<double>::infinity());
}

double Enclosure::upper() const {
    if (radius == 0.0) return value;
    return round_up(value + radius);
}

bool Enclosure::contains(double x) const {
    return lower() <= x && x <= upper();
}

Enclosure enclose(const Rational& value) {
    double v = value.get_d();
    if (std::isfinite(v) && Rational(v) == value) return Enclosure::exact(v);
    return enclose(to_high_precision(value));
}

Enclosure enclose(const HighPrecision& value) {
    double v = static_cast<double>(value);
    HighPrecision gap = abs(value - HighPrecision(v));
    if (value == 0) return Enclosure::exact(0.0);
    double radius = static_cast<double>(gap) + static_cast<double>(abs(value)) * kHighPrecisionRelativeError;
    return {v, round_up(radius)};
}

std::optional<Rational> exact_sqrt(const Rational& value) {
    if (sgn(value) < 0) return std::nullopt;
    if (!mpz_perfect_square_p(value.get_num().get_mpz_t()) || !mpz_perfect_square_p(value.get_den().get_mpz_t()))
        return std::nullopt;
    mpz_class n, d;
    mpz_sqrt(n.get_mpz_t(), value.get_num().get_mpz_t());
    mpz_sqrt(d.get_mpz_t(), value.get_den().get_mpz_t());
    return Rational(n, d);
}

Enclosure from_bounds(double lo, double hi) {
    if (!(lo <= hi)) throw std::invalid_argument("enclosure bounds out of order");
    if (lo == hi) return Enclosure::exact(lo);
    double mid = lo / 2 + hi / 2;
    double radius = std::max(hi - mid, mid - lo);
    radius = std::nextafter(radius, std::numeric_limits<double>::infinity());
    Enclosure e{mid, radius};
    while (e.lower() > lo || e.upper() < hi) e.radius = std::nextafter(e.radius, std::numeric_limits<double>::infinity());
    return e;
}

Enclosure sqrt_enclosure(const Rational& value) {
    if (sgn(value) < 0) {
        throw std::domain_error("square root of a negative rational");
    }
    if (sgn(value) == 0) return Enclosure::exact(0.0);
    // Perfect squares stay exact.
    if (mpz_perfect_square_p(value.get_num().get_mpz_t()) && mpz_perfect_square_p(value.get_den().get_mpz_t())) {
        mpz_class n, d;
        mpz_sqrt(n.get_mpz_t(), value.get_num().get_mpz_t());
        mpz_sqrt(d.get_mpz_t(), value.get_den().get_mpz_t());
        return enclose(Rational(n, d));
    }
    return enclose(HighPrecision(sqrt(to_high_precision(value))));
}

NormValue NormValue::from_exact(const Rational& v) {
    NormValue out;
    out.exact = v;
    out.squared = Rational(v * v);
    out.approx = enclose(v);
    return out;
}

NormValue NormValue::from_squared(const Rational& sq) {
    NormValue out;
    out.squared = sq;
    out.exact = exact_sqrt(sq);
    out.approx = out.exact ? enclose(*out.exact) : sqrt_enclosure(sq);
    return out;
}

NormValue NormValue::from_enclosure(const Enclosure& e) {
    NormValue out;
    out.approx = e;
    return out;
}

bool certainly_le(const NormValue& a, const NormValue& b) {
    if (a.exact && b.exact) return *a.exact <= *b.exact;
    if (a.squared && b.squared) return *a.squared <= *b.squared;
    return a.upper() <= b.lower();
}

Rational dyadic_approximation(double x, int bits) {
    if (!std::isfinite(x)) {
        throw std::invalid_argument("cannot approximate a non-finite double");
    }
    double scaled = std::round(std::ldexp(x, bits));
    mpz_class num(scaled);
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 2, static_cast<unsigned long>(bits));
    Rational r(num, den);
    r.canonicalize();
    return r;
}

std::string to_decimal(const Rational& value, int digits) {
    if (digits < 0) throw std::invalid_argument("digit count must be nonnegative");
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
    Rational scaled = abs(value) * scale;
    mpz_class q = (2 * scaled.get_num() + scaled.get_den()) / (2 * scaled.get_den());
    std::string s = q.get_str();
    if (digits > 0) {
        if (s.size() <= static_cast<std::size_t>(digits)) s.insert(0, static_cast<std::size_t>(digits) + 1 - s.size(), '0');
        s.insert(s.size() - static_cast<std::size_t>(digits), ".");
    }
    if (sgn(value) < 0 && q != 0) s.insert(0, "-");
    return s;
}

std::string to_decimal(double value, int digits) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    return to_decimal(Rational(value), digits);
}

}  // namespace schurlab

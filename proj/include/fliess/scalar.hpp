// Copyright 2026 The fliess-kit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Scalar types usable as series coefficients.
//
// Two scalar modes are supported for numeric work: exact rationals (GMP backed,
// always normalized) and IEEE doubles. Any commutative ring type with value
// semantics, construction from integers and `==` can be used for the purely
// algebraic products (see polynomial.hpp for the symbolic case).

#pragma once

#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <string>
#include <string_view>
#include <type_traits>

#include <boost/multiprecision/gmp.hpp>

#include "fliess/error.hpp"

namespace fliess {

using BigInt = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                             boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;

template <class S>
struct scalar_traits {
    static constexpr bool exact = false;
    static constexpr const char* name = "generic";
};

template <>
struct scalar_traits<Rational> {
    static constexpr bool exact = true;
    static constexpr const char* name = "rational";
};

template <>
struct scalar_traits<double> {
    static constexpr bool exact = false;
    static constexpr const char* name = "float";
};

template <class S>
inline bool is_zero(const S& x) {
    return x == S(0);
}

inline Rational abs_value(const Rational& x) { return boost::multiprecision::abs(x); }
inline double abs_value(double x) { return std::fabs(x); }

inline double to_double(const Rational& x) { return x.convert_to<double>(); }
inline double to_double(double x) { return x; }

/// n! in the scalar type.
template <class S>
S factorial(int n) {
    S r(1);
    for (int k = 2; k <= n; ++k) r *= S(k);
    return r;
}

template <class S>
S power(const S& base, int n) {
    S r(1);
    for (int k = 0; k < n; ++k) r *= base;
    return r;
}

namespace detail {

inline bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char ch : s)
        if (!std::isdigit(static_cast<unsigned char>(ch))) return false;
    return true;
}

/// Decimal digits to BigInt. Leading zeros are stripped so the string is never
/// read as octal.
inline BigInt decimal_bigint(std::string_view digits) {
    while (digits.size() > 1 && digits.front() == '0') digits.remove_prefix(1);
    return BigInt{std::string(digits)};
}

inline BigInt parse_bigint(std::string_view s) {
    bool neg = false;
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        neg = s.front() == '-';
        s.remove_prefix(1);
    }
    if (!all_digits(s)) throw SyntaxError("malformed integer '" + std::string(s) + "'");
    BigInt v = decimal_bigint(s);
    return neg ? BigInt(-v) : v;
}

}  // namespace detail

/// Parses an integer, `p/q`, or decimal (optionally with exponent) exactly.
inline Rational parse_rational(std::string_view text) {
    if (text.empty()) throw SyntaxError("empty number");
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        BigInt num = detail::parse_bigint(text.substr(0, slash));
        std::string_view den_text = text.substr(slash + 1);
        if (!detail::all_digits(den_text)) throw SyntaxError("malformed denominator in '" + std::string(text) + "'");
        BigInt den = detail::decimal_bigint(den_text);
        if (den == 0) throw SyntaxError("zero denominator in '" + std::string(text) + "'");
        return Rational(num, den);
    }
    std::string_view s = text;
    bool neg = false;
    if (s.front() == '-' || s.front() == '+') {
        neg = s.front() == '-';
        s.remove_prefix(1);
    }
    long exponent = 0;
    if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
        std::string_view exp_text = s.substr(e + 1);
        std::string_view digits = exp_text;
        if (!digits.empty() && (digits.front() == '-' || digits.front() == '+')) digits.remove_prefix(1);
        if (!detail::all_digits(digits) || digits.size() > 6)
            throw SyntaxError("malformed exponent in '" + std::string(text) + "'");
        exponent = std::stol(std::string(exp_text));
        s = s.substr(0, e);
    }
    std::string mantissa;
    if (auto dot = s.find('.'); dot != std::string_view::npos) {
        std::string_view ip = s.substr(0, dot), fp = s.substr(dot + 1);
        if ((ip.empty() && fp.empty()) || (!ip.empty() && !detail::all_digits(ip)) ||
            (!fp.empty() && !detail::all_digits(fp)))
            throw SyntaxError("malformed number '" + std::string(text) + "'");
        mantissa = std::string(ip) + std::string(fp);
        exponent -= static_cast<long>(fp.size());
    } else {
        if (!detail::all_digits(s)) throw SyntaxError("malformed number '" + std::string(text) + "'");
        mantissa = std::string(s);
    }
    Rational value{detail::decimal_bigint(mantissa)};
    BigInt scale = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(std::labs(exponent)));
    if (exponent >= 0)
        value *= Rational(scale);
    else
        value /= Rational(scale);
    return neg ? Rational(-value) : value;
}

inline double parse_double(std::string_view text) {
    if (text.find('/') != std::string_view::npos) return to_double(parse_rational(text));
    std::string s(text);
    char* end = nullptr;
    double v = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size() || !std::isfinite(v))
        throw SyntaxError("malformed number '" + s + "'");
    return v;
}

template <class S>
S parse_scalar(std::string_view text);

template <>
inline Rational parse_scalar<Rational>(std::string_view text) {
    return parse_rational(text);
}

template <>
inline double parse_scalar<double>(std::string_view text) {
    return parse_double(text);
}

/// Rationals print exactly as `p/q` (or `p`); doubles with 17 significant digits.
inline std::string format_scalar(const Rational& x) { return x.str(); }

inline std::string format_scalar(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

template <class To, class From>
To scalar_cast(const From& x) {
    if constexpr (std::is_same_v<To, From>)
        return x;
    else if constexpr (std::is_same_v<To, double>)
        return to_double(x);
    else
        return To(x);
}

}  // namespace fliess

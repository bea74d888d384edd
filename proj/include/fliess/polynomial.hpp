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

// Sparse multivariate Laurent polynomials with rational coefficients.
//
// Variables are named; state variables and symbolic parameters are treated
// alike. Negative exponents are allowed so that parameters can appear in
// denominators (e.g. M/K). The type is a commutative ring and can be used as
// a series coefficient.

#pragma once

#include <algorithm>
#include <cctype>
#include <concepts>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fliess/error.hpp"
#include "fliess/scalar.hpp"

namespace fliess {

class Polynomial {
public:
    /// (variable, exponent) pairs sorted by name, no zero exponents.
    using Monomial = std::vector<std::pair<std::string, int>>;

    struct MonomialLess {
        bool operator()(const Monomial& a, const Monomial& b) const {
            int da = total_degree(a), db = total_degree(b);
            if (da != db) return da < db;
            return a < b;
        }
    };

    using Terms = std::map<Monomial, Rational, MonomialLess>;

    Polynomial() = default;
    Polynomial(const Rational& v) {  // NOLINT(google-explicit-constructor)
        if (v != 0) terms_.emplace(Monomial{}, v);
    }
    template <std::integral I>
    Polynomial(I v) : Polynomial(Rational(v)) {}  // NOLINT(google-explicit-constructor)

    static Polynomial variable(const std::string& name, int exponent = 1) {
        return term(Monomial{{name, exponent}}, Rational(1));
    }

    static Polynomial term(Monomial mono, const Rational& coeff) {
        Polynomial p;
        std::erase_if(mono, [](const auto& ve) { return ve.second == 0; });
        std::sort(mono.begin(), mono.end());
        if (coeff != 0) p.terms_.emplace(std::move(mono), coeff);
        return p;
    }

    const Terms& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    bool is_constant() const noexcept { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty()); }

    /// Value of a constant polynomial; InvalidArgument otherwise.
    Rational constant_value() const {
        if (!is_constant()) throw InvalidArgument("polynomial " + str() + " is not a constant");
        return terms_.empty() ? Rational(0) : terms_.begin()->second;
    }

    /// Coefficient of the given monomial.
    Rational coefficient(Monomial mono) const {
        std::sort(mono.begin(), mono.end());
        auto it = terms_.find(mono);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    std::set<std::string> variables() const {
        std::set<std::string> out;
        for (const auto& [mono, c] : terms_)
            for (const auto& [v, e] : mono) out.insert(v);
        return out;
    }

    /// Smallest and largest exponent of a variable over all terms (0 when absent).
    std::pair<int, int> exponent_range(const std::string& var) const {
        int lo = 0, hi = 0;
        bool first = true;
        for (const auto& [mono, c] : terms_) {
            int e = exponent_of(mono, var);
            lo = first ? e : std::min(lo, e);
            hi = first ? e : std::max(hi, e);
            first = false;
        }
        return {lo, hi};
    }

    Polynomial& operator+=(const Polynomial& o) {
        for (const auto& [mono, c] : o.terms_) add_term(mono, c);
        return *this;
    }
    Polynomial& operator-=(const Polynomial& o) {
        for (const auto& [mono, c] : o.terms_) add_term(mono, -c);
        return *this;
    }
    Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

    /// Division by a single term (the only exact division in general).
    Polynomial& operator/=(const Polynomial& o) { return *this *= o.monomial_inverse(); }

    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator/(Polynomial a, const Polynomial& b) { return a /= b; }
    friend Polynomial operator-(Polynomial a) {
        for (auto& [mono, c] : a.terms_) c = -c;
        return a;
    }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        Polynomial out;
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_) out.add_term(multiply(ma, mb), ca * cb);
        return out;
    }
    friend bool operator==(const Polynomial&, const Polynomial&) = default;

    Polynomial derivative(const std::string& var) const {
        Polynomial out;
        for (const auto& [mono, c] : terms_) {
            int e = exponent_of(mono, var);
            if (e == 0) continue;
            Monomial m2 = mono;
            for (auto& ve : m2)
                if (ve.first == var) ve.second -= 1;
            std::erase_if(m2, [](const auto& ve) { return ve.second == 0; });
            out.add_term(m2, c * e);
        }
        return out;
    }

    /// Replaces a variable by a polynomial. Negative powers of the variable
    /// need a single-term replacement.
    Polynomial substitute(const std::string& var, const Polynomial& value) const {
        auto [lo, hi] = exponent_range(var);
        std::map<int, Polynomial> powers;
        powers[0] = Polynomial(1);
        for (int e = 1; e <= hi; ++e) powers[e] = powers[e - 1] * value;
        if (lo < 0) {
            Polynomial inv = value.monomial_inverse();
            for (int e = -1; e >= lo; --e) powers[e] = powers[e + 1] * inv;
        }
        Polynomial out;
        for (const auto& [mono, c] : terms_) {
            int e = exponent_of(mono, var);
            Monomial rest;
            for (const auto& ve : mono)
                if (ve.first != var) rest.push_back(ve);
            out += term(rest, c) * powers.at(e);
        }
        return out;
    }

    Polynomial substitute(const std::map<std::string, Polynomial>& values) const {
        Polynomial out = *this;
        for (const auto& [var, v] : values) out = out.substitute(var, v);
        return out;
    }

    double evaluate(const std::map<std::string, double>& values) const {
        double sum = 0.0;
        for (const auto& [mono, c] : terms_) {
            double t = to_double(c);
            for (const auto& [v, e] : mono) {
                auto it = values.find(v);
                if (it == values.end()) throw InvalidArgument("no value for variable '" + v + "'");
                t *= std::pow(it->second, e);
            }
            sum += t;
        }
        return sum;
    }

    /// Compact form without spaces, terms by increasing total degree,
    /// e.g. `-2+5*K-3*K^2`.
    std::string str() const {
        if (terms_.empty()) return "0";
        std::string out;
        for (const auto& [mono, c] : terms_) {
            Rational a = abs_value(c);
            if (c < 0)
                out += '-';
            else if (!out.empty())
                out += '+';
            bool unit = a == 1 && !mono.empty();
            if (!unit) out += a.str();
            bool first = unit;
            for (const auto& [v, e] : mono) {
                if (!first) out += '*';
                first = false;
                out += v;
                if (e != 1) out += '^' + std::to_string(e);
            }
        }
        return out;
    }

private:
    static int total_degree(const Monomial& m) {
        int d = 0;
        for (const auto& ve : m) d += ve.second;
        return d;
    }

    static int exponent_of(const Monomial& m, const std::string& var) {
        for (const auto& [v, e] : m)
            if (v == var) return e;
        return 0;
    }

    static Monomial multiply(const Monomial& a, const Monomial& b) {
        Monomial out;
        out.reserve(a.size() + b.size());
        auto i = a.begin(), j = b.begin();
        while (i != a.end() || j != b.end()) {
            if (j == b.end() || (i != a.end() && i->first < j->first)) {
                out.push_back(*i++);
            } else if (i == a.end() || j->first < i->first) {
                out.push_back(*j++);
            } else {
                int e = i->second + j->second;
                if (e != 0) out.emplace_back(i->first, e);
                ++i;
                ++j;
            }
        }
        return out;
    }

    void add_term(const Monomial& mono, const Rational& c) {
        if (c == 0) return;
        auto [it, fresh] = terms_.try_emplace(mono, c);
        if (!fresh) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    Polynomial monomial_inverse() const {
        if (terms_.size() != 1) throw InvalidArgument("cannot divide by " + str() + " (not a single term)");
        const auto& [mono, c] = *terms_.begin();
        Monomial inv = mono;
        for (auto& ve : inv) ve.second = -ve.second;
        return term(inv, Rational(1) / c);
    }

    Terms terms_;
};

template <>
struct scalar_traits<Polynomial> {
    static constexpr bool exact = true;
    static constexpr const char* name = "polynomial";
};

inline std::string format_scalar(const Polynomial& p) { return p.str(); }

namespace detail {

class PolynomialParser {
public:
    explicit PolynomialParser(std::string_view text) : s_(text) {}

    Polynomial parse() {
        Polynomial p = expr();
        skip();
        if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
        return p;
    }

private:
    [[noreturn]] void fail(const std::string& what) const {
        throw SyntaxError("polynomial '" + std::string(s_) + "': " + what);
    }

    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool accept(char ch) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == ch) {
            ++pos_;
            return true;
        }
        return false;
    }

    Polynomial expr() {
        Polynomial out;
        bool neg = false;
        if (accept('-'))
            neg = true;
        else
            accept('+');
        Polynomial t = product();
        out = neg ? -t : t;
        for (;;) {
            if (accept('+'))
                out += product();
            else if (accept('-'))
                out -= product();
            else
                return out;
        }
    }

    Polynomial product() {
        Polynomial out = power();
        for (;;) {
            if (accept('*')) {
                out *= power();
            } else if (accept('/')) {
                Polynomial d = power();
                if (d.is_zero()) fail("division by zero");
                try {
                    out /= d;
                } catch (const InvalidArgument& e) {
                    fail(e.what());
                }
            } else {
                return out;
            }
        }
    }

    Polynomial power() {
        Polynomial base = primary();
        if (!accept('^')) return base;
        skip();
        bool neg = false;
        if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) neg = s_[pos_++] == '-';
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_ || pos_ - start > 4) fail("bad exponent");
        int e = std::stoi(std::string(s_.substr(start, pos_ - start)));
        if (neg) {
            if (base.is_zero()) fail("zero to a negative power");
            Polynomial inv = Polynomial(1) / base;
            base = inv;
        }
        Polynomial out(1);
        for (int k = 0; k < e; ++k) out *= base;
        return out;
    }

    Polynomial primary() {
        skip();
        if (pos_ >= s_.size()) fail("unexpected end");
        char ch = s_[pos_];
        if (ch == '(') {
            ++pos_;
            Polynomial p = expr();
            if (!accept(')')) fail("missing ')'");
            return p;
        }
        if (std::isdigit(static_cast<unsigned char>(ch)) || ch == '.') {
            std::size_t start = pos_;
            while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.')) ++pos_;
            return Polynomial(parse_rational(s_.substr(start, pos_ - start)));
        }
        if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
            std::size_t start = pos_;
            while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
            return Polynomial::variable(std::string(s_.substr(start, pos_ - start)));
        }
        fail("unexpected '" + std::string(1, ch) + "'");
    }

    std::string_view s_;
    std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses sums and products of rationals and named variables, with
/// parentheses, integer powers (possibly negative) and division by single terms.
inline Polynomial parse_polynomial(std::string_view text) { return detail::PolynomialParser(text).parse(); }

template <>
inline Polynomial parse_scalar<Polynomial>(std::string_view text) {
    return parse_polynomial(text);
}

}  // namespace fliess

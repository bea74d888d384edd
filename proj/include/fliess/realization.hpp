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

// Polynomial state-space realizations
//
//   z' = g_0(z) + sum_i g_i(z) u_i,  z(0) = z0,  y = h(z)
//
// and their generating series via iterated Lie derivatives. Text format:
//
//   states z1 z2
//   params K M
//   g0 (M/K)*z1^2 ; z2
//   g1 1 ; 0
//   h -z1
//   z0 K ; 0
//
// Vector entries are separated by ';'. The alphabet is {x0..xm} where g_m is
// the highest field given; missing fields are zero. Several outputs are given
// as several ';'-separated entries of h.

#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "fliess/error.hpp"
#include "fliess/polynomial.hpp"
#include "fliess/series.hpp"
#include "fliess/series_io.hpp"
#include "fliess/word.hpp"

namespace fliess {

/// L_g h = sum_i g_i dh/dz_i.
inline Polynomial lie_derivative(const std::vector<Polynomial>& g, const Polynomial& h,
                                 const std::vector<std::string>& states) {
    if (g.size() != states.size()) throw InvalidArgument("vector field and state dimension differ");
    Polynomial out;
    for (std::size_t i = 0; i < states.size(); ++i)
        if (!g[i].is_zero()) out += g[i] * h.derivative(states[i]);
    return out;
}

struct PolynomialRealization {
    std::vector<std::string> states;
    std::vector<std::string> params;
    std::vector<std::vector<Polynomial>> g;  ///< g[0] drift, g[i] input fields
    std::vector<Polynomial> h;
    std::vector<Polynomial> z0;

    int dimension() const { return static_cast<int>(states.size()); }
    int inputs() const { return static_cast<int>(g.size()) - 1; }
    int outputs() const { return static_cast<int>(h.size()); }

    void validate() const {
        if (states.empty()) throw InvalidArgument("realization has no state variables");
        if (g.empty()) throw InvalidArgument("realization has no vector fields");
        if (h.empty()) throw InvalidArgument("realization has no output");
        if (z0.size() != states.size()) throw InvalidArgument("initial state has wrong dimension");
        std::set<std::string> known(states.begin(), states.end());
        if (known.size() != states.size()) throw InvalidArgument("repeated state variable");
        for (const auto& p : params)
            if (!known.insert(p).second) throw InvalidArgument("parameter '" + p + "' clashes with another name");
        auto check = [&](const Polynomial& p, bool state_free) {
            for (const auto& v : p.variables()) {
                if (!known.count(v)) throw InvalidArgument("undeclared variable '" + v + "'");
                if (state_free && std::find(states.begin(), states.end(), v) != states.end())
                    throw InvalidArgument("initial state may not depend on state variables");
            }
        };
        for (const auto& field : g) {
            if (field.size() != states.size()) throw InvalidArgument("vector field has wrong dimension");
            for (const auto& p : field) check(p, false);
        }
        for (const auto& p : h) check(p, false);
        for (const auto& p : z0) check(p, true);
    }

    /// Substitutes values for (some of) the parameters.
    PolynomialRealization with_parameters(const std::map<std::string, Polynomial>& values) const {
        PolynomialRealization r = *this;
        auto sub = [&](Polynomial& p) { p = p.substitute(values); };
        for (auto& field : r.g)
            for (auto& p : field) sub(p);
        for (auto& p : r.h) sub(p);
        for (auto& p : r.z0) sub(p);
        std::erase_if(r.params, [&](const std::string& p) { return values.count(p) > 0; });
        return r;
    }
};

namespace detail {

inline std::vector<Polynomial> parse_poly_vector(const std::string& text, int line) {
    std::vector<Polynomial> out;
    std::stringstream in(text);
    for (std::string item; std::getline(in, item, ';');) {
        try {
            out.push_back(parse_polynomial(item));
        } catch (const SyntaxError& e) {
            throw SyntaxError(e.what(), line);
        }
    }
    return out;
}

}  // namespace detail

inline PolynomialRealization parse_realization(std::string_view text) {
    PolynomialRealization r;
    std::map<int, std::vector<Polynomial>> fields;
    bool have_h = false, have_z0 = false;
    std::istringstream in{std::string(text)};
    int lineno = 0;
    for (std::string raw; std::getline(in, raw);) {
        ++lineno;
        std::string line(detail::trim(raw));
        if (line.empty() || line.front() == '#') continue;
        std::size_t sp = line.find_first_of(" \t");
        std::string key = line.substr(0, sp);
        std::string rest = sp == std::string::npos ? "" : std::string(detail::trim(line.substr(sp)));
        if (key == "states" || key == "params") {
            auto& dst = key == "states" ? r.states : r.params;
            if (!dst.empty()) throw SyntaxError("repeated '" + key + "' line", lineno);
            dst = detail::split_ws(rest);
            if (key == "states" && dst.empty()) throw SyntaxError("no state variables", lineno);
        } else if (key.size() >= 2 && key[0] == 'g' && detail::all_digits(key.substr(1)) && key.size() <= 2) {
            int i = key[1] - '0';
            if (fields.count(i)) throw SyntaxError("repeated field " + key, lineno);
            fields[i] = detail::parse_poly_vector(rest, lineno);
        } else if (key == "h") {
            if (have_h) throw SyntaxError("repeated 'h' line", lineno);
            r.h = detail::parse_poly_vector(rest, lineno);
            have_h = true;
        } else if (key == "z0") {
            if (have_z0) throw SyntaxError("repeated 'z0' line", lineno);
            r.z0 = detail::parse_poly_vector(rest, lineno);
            have_z0 = true;
        } else {
            throw SyntaxError("unknown key '" + key + "'", lineno);
        }
    }
    if (r.states.empty()) throw SyntaxError("missing 'states' line", lineno);
    if (!have_h) throw SyntaxError("missing 'h' line", lineno);
    if (!have_z0) throw SyntaxError("missing 'z0' line", lineno);
    int m = fields.empty() ? 0 : fields.rbegin()->first;
    std::vector<Polynomial> zero(r.states.size());
    for (int i = 0; i <= m; ++i) r.g.push_back(fields.count(i) ? fields[i] : zero);
    try {
        r.validate();
    } catch (const InvalidArgument& e) {
        throw SyntaxError(e.what(), lineno);
    }
    return r;
}

/// Generating series of the realization up to word length L:
/// (c_j, x_{i_1} ... x_{i_k}) = L_{g_{i_k}} ... L_{g_{i_1}} h_j (z0), so the
/// first letter of a word is the innermost Lie derivative.
inline Series<Polynomial> realization_to_series(const PolynomialRealization& r, int L) {
    r.validate();
    const int m = r.inputs();
    std::map<std::string, Polynomial> at_z0;
    for (int i = 0; i < r.dimension(); ++i) at_z0[r.states[static_cast<std::size_t>(i)]] = r.z0[static_cast<std::size_t>(i)];
    Series<Polynomial> out(m, r.outputs(), L);
    for (int j = 0; j < r.outputs(); ++j) {
        std::vector<std::pair<Word, Polynomial>> level{{Word{}, r.h[static_cast<std::size_t>(j)]}};
        for (int n = 0; n <= L; ++n) {
            std::vector<std::pair<Word, Polynomial>> next;
            for (const auto& [w, p] : level) {
                // substitute state by state so parameters in z0 stay symbolic
                out.set(w, p.substitute(at_z0), j);
                if (n == L || p.is_zero()) continue;
                for (int i = 0; i <= m; ++i) {
                    Polynomial d = lie_derivative(r.g[static_cast<std::size_t>(i)], p, r.states);
                    if (!d.is_zero()) {
                        Word wi = w;
                        wi.push_back(i);
                        next.emplace_back(std::move(wi), std::move(d));
                    }
                }
            }
            level = std::move(next);
        }
    }
    return out;
}

/// Replaces every coefficient by its (constant) rational value.
inline Series<Rational> to_rational_series(const Series<Polynomial>& c) {
    Series<Rational> out(c.alphabet_max(), c.components(), c.trunc());
    for (int j = 0; j < c.components(); ++j)
        for (const auto& [w, p] : c.terms(j)) out.set(w, p.constant_value(), j);
    return out;
}

}  // namespace fliess

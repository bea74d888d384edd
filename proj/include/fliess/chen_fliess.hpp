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

// Numerical evaluation of Fliess operators
//
//   F_c[u](t) = sum_w (c, w) E_w[u](t, t0),
//   E_{x_i w}[u](t, t0) = int_{t0}^t u_i(s) E_w[u](s, t0) ds,  E_e = 1,
//
// on a uniform grid with the trapezoid rule, plus interconnection checks and a
// fixed-step RK4 simulator for polynomial realizations.

#pragma once

#include <cmath>
#include <string>
#include <unordered_map>
#include <vector>

#include "fliess/error.hpp"
#include "fliess/groups.hpp"
#include "fliess/products.hpp"
#include "fliess/realization.hpp"
#include "fliess/series.hpp"
#include "fliess/signal.hpp"

namespace fliess {

inline constexpr int kMaxIntegralDepth = 24;

/// E_w[u] on the whole grid, memoized by word. Words are built from the last
/// letter inward, so every suffix of a requested word is cached too.
class IteratedIntegrals {
public:
    explicit IteratedIntegrals(const InputSignal& u) : u_(u) {}

    const std::vector<double>& get(const Word& w) {
        if (w.empty()) return u_.channel(0);
        if (auto it = memo_.find(w); it != memo_.end()) return it->second;
        if (w.size() > kMaxIntegralDepth) throw InvalidArgument("iterated integral deeper than " + std::to_string(kMaxIntegralDepth));
        if (w.max_letter() > u_.inputs())
            throw AlphabetMismatch("word " + w.str() + " needs input x" + std::to_string(w.max_letter()) + " but the signal has " +
                                   std::to_string(u_.inputs()));
        const std::vector<double>& inner = get(w.suffix(1));
        const std::vector<double>& ui = u_.channel(w.front());
        const double h = u_.step();
        std::vector<double> out(inner.size());
        out[0] = 0.0;
        double prev = ui[0] * inner[0];
        for (std::size_t k = 1; k < out.size(); ++k) {
            double cur = ui[k] * inner[k];
            out[k] = out[k - 1] + 0.5 * h * (prev + cur);
            prev = cur;
        }
        return memo_.emplace(w, std::move(out)).first->second;
    }

    double at(const Word& w, double t) { return u_.interpolate(get(w), t); }

    const InputSignal& signal() const noexcept { return u_; }

private:
    const InputSignal& u_;
    std::unordered_map<Word, std::vector<double>> memo_;
};

/// E_w[u](t, t0).
inline double iterated_integral(const Word& w, const InputSignal& u, double t) {
    IteratedIntegrals e(u);
    return e.at(w, t);
}

struct FliessValue {
    std::vector<double> y;            ///< one entry per component
    std::vector<double> top_stratum;  ///< sum over |w| = trunc of |(c,w) E_w|, per component
};

template <class S>
FliessValue fliess_eval(const Series<S>& c, IteratedIntegrals& e, double t) {
    FliessValue out{std::vector<double>(static_cast<std::size_t>(c.components()), 0.0),
                    std::vector<double>(static_cast<std::size_t>(c.components()), 0.0)};
    for (int j = 0; j < c.components(); ++j)
        for (const auto& [w, v] : c.terms(j)) {
            double term = to_double(v) * e.at(w, t);
            out.y[static_cast<std::size_t>(j)] += term;
            if (w.size() == c.trunc()) out.top_stratum[static_cast<std::size_t>(j)] += std::fabs(term);
        }
    return out;
}

/// F_c[u](t) for the truncated series c; also reports the size of the
/// longest-word stratum as a truncation indicator.
template <class S>
FliessValue fliess_eval(const Series<S>& c, const InputSignal& u, double t) {
    IteratedIntegrals e(u);
    return fliess_eval(c, e, t);
}

/// F_c[u] on every grid point, one trajectory per component.
template <class S>
std::vector<std::vector<double>> fliess_trajectory(const Series<S>& c, IteratedIntegrals& e) {
    const std::size_t n = static_cast<std::size_t>(e.signal().size());
    std::vector<std::vector<double>> out(static_cast<std::size_t>(c.components()), std::vector<double>(n, 0.0));
    for (int j = 0; j < c.components(); ++j)
        for (const auto& [w, v] : c.terms(j)) {
            const auto& ew = e.get(w);
            double a = to_double(v);
            auto& y = out[static_cast<std::size_t>(j)];
            for (std::size_t k = 0; k < n; ++k) y[k] += a * ew[k];
        }
    return out;
}

template <class S>
std::vector<std::vector<double>> fliess_trajectory(const Series<S>& c, const InputSignal& u) {
    IteratedIntegrals e(u);
    return fliess_trajectory(c, e);
}

struct CascadeResult {
    double residual = 0.0;
    std::vector<double> cascade;    ///< F_c[F_d[u]](t)
    std::vector<double> composite;  ///< F_{c o d}[u](t)
    int trunc = 0;                  ///< truncation used for c o d
};

/// |F_c[F_d[u]](t) - F_{c o d}[u](t)| (max over components). c and d are read
/// as polynomials; c o d is formed at truncation `trunc` (default: the exact
/// length bound trunc(c)(trunc(d)+1), capped at 8).
template <class S>
CascadeResult cascade_check(const Series<S>& c, const Series<S>& d, const InputSignal& u, double t, int trunc = -1) {
    if (d.components() != c.alphabet_max())
        throw ComponentMismatch("cascade_check: inner series has " + std::to_string(d.components()) + " outputs, outer needs " +
                                std::to_string(c.alphabet_max()));
    if (trunc < 0) trunc = std::min(8, c.trunc() * (d.trunc() + 1));
    CascadeResult out;
    out.trunc = trunc;
    InputSignal inner = InputSignal::from_channels(u, fliess_trajectory(d, u));
    out.cascade = fliess_eval(c, inner, t).y;
    Series<double> cd = compose(series_cast<double>(c.as_polynomial(trunc)), series_cast<double>(d.as_polynomial(trunc)), trunc);
    out.composite = fliess_eval(cd, u, t).y;
    for (std::size_t j = 0; j < out.cascade.size(); ++j)
        out.residual = std::max(out.residual, std::fabs(out.cascade[j] - out.composite[j]));
    return out;
}

struct LoopResult {
    std::vector<double> y;           ///< last iterate on the grid
    double increment = 0.0;          ///< sup-norm of the last change
    std::vector<double> increments;  ///< one per iteration
};

/// Picard iteration y <- F_c[v + F_d[y]] from y = 0 on v's grid (SISO).
/// Stops early once the increment is at roundoff level. Three consecutive
/// growing increments raise LoopDiverged.
template <class S>
LoopResult feedback_loop_simulate(const Series<S>& c, const Series<S>& d, const InputSignal& v, int iterations) {
    detail::require_siso(c, "feedback_loop_simulate");
    detail::require_siso(d, "feedback_loop_simulate");
    if (v.inputs() != 1) throw UnsupportedArity("feedback_loop_simulate needs a single-input signal");
    if (iterations < 1) throw InvalidArgument("need at least one iteration");
    const std::size_t n = static_cast<std::size_t>(v.size());
    LoopResult out;
    out.y.assign(n, 0.0);
    int growing = 0;
    for (int it = 0; it < iterations; ++it) {
        InputSignal ysig = InputSignal::from_channels(v, {out.y});
        std::vector<double> fd = fliess_trajectory(d, ysig)[0];
        std::vector<double> u(n);
        for (std::size_t k = 0; k < n; ++k) u[k] = v.channel(1)[k] + fd[k];
        std::vector<double> next = fliess_trajectory(c, InputSignal::from_channels(v, {u}))[0];
        double inc = 0.0, size = 1.0;
        for (std::size_t k = 0; k < n; ++k) {
            inc = std::max(inc, std::fabs(next[k] - out.y[k]));
            size = std::max(size, std::fabs(next[k]));
        }
        if (!out.increments.empty() && inc > out.increments.back()) {
            if (++growing >= 3) throw LoopDiverged("feedback loop increments grew three times in a row (last " + format_scalar(inc) + ")");
        } else {
            growing = 0;
        }
        out.y = std::move(next);
        out.increment = inc;
        out.increments.push_back(inc);
        if (inc <= 1e-15 * size) break;
    }
    return out;
}

/// Fast evaluation of a polynomial in the state variables.
class CompiledPolynomial {
public:
    CompiledPolynomial(const Polynomial& p, const std::vector<std::string>& states) {
        for (const auto& [mono, coeff] : p.terms()) {
            Term t{to_double(coeff), {}};
            for (const auto& [var, e] : mono) {
                auto it = std::find(states.begin(), states.end(), var);
                if (it == states.end()) throw InvalidArgument("unbound symbol '" + var + "' in numeric realization");
                t.factors.emplace_back(static_cast<int>(it - states.begin()), e);
            }
            terms_.push_back(std::move(t));
        }
    }

    double operator()(const std::vector<double>& z) const {
        double sum = 0.0;
        for (const Term& t : terms_) {
            double v = t.coeff;
            for (auto [i, e] : t.factors) v *= e == 1 ? z[static_cast<std::size_t>(i)] : std::pow(z[static_cast<std::size_t>(i)], e);
            sum += v;
        }
        return sum;
    }

private:
    struct Term {
        double coeff;
        std::vector<std::pair<int, int>> factors;
    };
    std::vector<Term> terms_;
};

/// Output trajectories of a realization (all parameters substituted) driven by
/// u, by classical RK4 with at least `min_steps` steps over the horizon. Input
/// values between grid points are linearly interpolated.
inline std::vector<std::vector<double>> simulate_realization(const PolynomialRealization& r, const InputSignal& u,
                                                             int min_steps = 4096) {
    r.validate();
    if (!r.params.empty()) throw InvalidArgument("realization still has symbolic parameters");
    if (r.inputs() > u.inputs()) throw AlphabetMismatch("realization has more inputs than the signal");
    const std::size_t n = static_cast<std::size_t>(r.dimension());
    std::vector<std::vector<CompiledPolynomial>> g;
    for (const auto& field : r.g) {
        g.emplace_back();
        for (const auto& p : field) g.back().emplace_back(p, r.states);
    }
    std::vector<CompiledPolynomial> h;
    for (const auto& p : r.h) h.emplace_back(p, r.states);
    std::vector<double> z(n);
    for (std::size_t i = 0; i < n; ++i) z[i] = to_double(r.z0[i].constant_value());

    const int intervals = u.size() - 1;
    const int sub = std::max(1, (min_steps + intervals - 1) / intervals);
    const double dt = u.step() / sub;
    auto rhs = [&](const std::vector<double>& s, double tau) {
        std::vector<double> out(n, 0.0);
        for (std::size_t i = 0; i < g.size(); ++i) {
            double ui = i == 0 ? 1.0 : u.at(static_cast<int>(i), tau);
            if (ui == 0.0) continue;
            for (std::size_t k = 0; k < n; ++k) out[k] += ui * g[i][k](s);
        }
        return out;
    };
    auto axpy = [n](const std::vector<double>& a, double s, const std::vector<double>& b) {
        std::vector<double> o(n);
        for (std::size_t k = 0; k < n; ++k) o[k] = a[k] + s * b[k];
        return o;
    };
    std::vector<std::vector<double>> y(h.size(), std::vector<double>(static_cast<std::size_t>(u.size())));
    auto record = [&](int k) {
        for (std::size_t j = 0; j < h.size(); ++j) y[j][static_cast<std::size_t>(k)] = h[j](z);
    };
    record(0);
    for (int k = 0; k < intervals; ++k) {
        double t = u.times()[static_cast<std::size_t>(k)];
        for (int s = 0; s < sub; ++s) {
            double tau = t + s * dt;
            auto k1 = rhs(z, tau);
            auto k2 = rhs(axpy(z, dt / 2, k1), tau + dt / 2);
            auto k3 = rhs(axpy(z, dt / 2, k2), tau + dt / 2);
            auto k4 = rhs(axpy(z, dt, k3), tau + dt);
            for (std::size_t i = 0; i < n; ++i) z[i] += dt / 6 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
        }
        record(k + 1);
    }
    return y;
}

}  // namespace fliess

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

// Curves in the output-feedback group and the shuffle unit group.
//
// evolve() integrates the Lie-type equation on delta + K<<X>>^m,
//
//   d/dt gamma(t) = c(t) + gamma(t) <| c(t),  gamma(0) = 0,
//
// by word length. Since <| adds length (|rho| + |xi| = |eta|), the length-n
// block only reads blocks of length <= n, and the same-length part comes from
// (c(t), e) alone. Words without x0 never receive a <| contribution and reduce
// to quadratures of (c(s), eta). Every level is stepped with classical RK4 on
// one common grid; a level reads lower levels at the matching RK4 stage, which
// makes the whole scheme identical to RK4 on the full triangular system.

#pragma once

#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "fliess/error.hpp"
#include "fliess/groups.hpp"
#include "fliess/products.hpp"
#include "fliess/series.hpp"
#include "fliess/series_io.hpp"

namespace fliess {

/// Coefficientwise conversion to double.
template <class S>
Series<double> to_double_series(const Series<S>& c) {
    return series_cast<double>(c);
}

/// t -> c(t), an m-component series over {x0..xm} for t in [0, 1].
struct LieAlgebraCurve {
    std::function<Series<double>(double)> eval;
    int m = 1;
    int trunc = 0;
    std::string continuity = "C0";  ///< declared by the caller, not checked

    static LieAlgebraCurve constant(const Series<double>& c) {
        return LieAlgebraCurve{[c](double) { return c; }, c.alphabet_max(), c.trunc(), "constant"};
    }

    Series<double> at(double t, int L) const {
        Series<double> c = eval(t);
        if (c.alphabet_max() != m || c.components() != m)
            throw ComponentMismatch("curve value at t=" + format_scalar(t) + " is not an m-component series over {x0..xm}");
        if (c.trunc() < L) throw TruncationMismatch("curve truncated below the requested length");
        return c.truncated(L);
    }
};

struct EvolveStats {
    std::vector<int> max_level_read;  ///< per level, longest word read while solving it
    double max_diagonal = 0.0;        ///< largest |(eta <| c(t), eta)| seen
    int steps = 0;
};

/// Solution samples on the uniform grid t_k = k/steps.
struct GroupPath {
    std::vector<double> times;
    std::vector<UnitalSeries<double>> values;
    EvolveStats stats;

    /// Sample at a grid time.
    const UnitalSeries<double>& at(double t) const {
        const int steps = stats.steps;
        double x = t * steps;
        long k = std::lround(x);
        if (std::fabs(x - static_cast<double>(k)) > 1e-9 || k < 0 || k > steps)
            throw InvalidArgument("t=" + format_scalar(t) + " is not a grid time of the solve");
        return values[static_cast<std::size_t>(k)];
    }
};

namespace detail {

/// Coefficient store for evolve: value of every word at every RK4 stage of
/// every step, with reads checked against the level currently being solved.
class StageStore {
public:
    StageStore(const std::vector<std::vector<Word>>& levels, int steps) : levels_(levels), steps_(steps) {
        for (int n = 0; n < static_cast<int>(levels.size()); ++n)
            for (std::size_t i = 0; i < levels[static_cast<std::size_t>(n)].size(); ++i)
                index_[levels[static_cast<std::size_t>(n)][i]] = {n, static_cast<int>(i)};
        data_.resize(levels.size());
    }

    void begin_level(int n, int comps) {
        current_ = n;
        data_[static_cast<std::size_t>(n)].assign(levels_[static_cast<std::size_t>(n)].size() * static_cast<std::size_t>(comps),
                                                  std::vector<double>(static_cast<std::size_t>(steps_) * 4 + 1, 0.0));
        comps_ = comps;
    }

    /// slot 4k + s holds stage s of step k; slot 4 steps is the final value.
    std::vector<double>& series(int n, int i, int comp) {
        return data_[static_cast<std::size_t>(n)][static_cast<std::size_t>(i * comps_ + comp)];
    }

    double read(int n, int i, int comp, std::size_t slot, int& max_read) {
        if (n > current_) throw TriangularityViolation("level " + std::to_string(current_) + " read a coefficient of length " + std::to_string(n));
        max_read = std::max(max_read, n);
        return series(n, i, comp)[slot];
    }

    int current() const { return current_; }

private:
    const std::vector<std::vector<Word>>& levels_;
    std::map<Word, std::pair<int, int>> index_;
    std::vector<std::vector<std::vector<double>>> data_;
    int steps_ = 0, current_ = -1, comps_ = 1;
};

}  // namespace detail

/// Solves the Lie-type equation for gamma on [0, 1] up to word length L with
/// `steps` RK4 steps. Throws TriangularityViolation if a level would read a
/// longer, not yet solved, coefficient.
inline GroupPath evolve(const LieAlgebraCurve& curve, int L, int steps) {
    if (steps < 1) throw InvalidArgument("evolve needs steps >= 1");
    if (L < 0) throw InvalidArgument("negative truncation");
    const int m = curve.m;
    const double h = 1.0 / steps;

    // c at the half-step grid s/2 h, s = 0..2 steps
    std::vector<Series<double>> cs;
    cs.reserve(static_cast<std::size_t>(2 * steps + 1));
    for (int s = 0; s <= 2 * steps; ++s) cs.push_back(curve.at(s * h / 2, L));

    std::vector<std::vector<Word>> levels;
    for (int n = 0; n <= L; ++n) levels.push_back(enumerate_words(m, n));
    detail::StageStore store(levels, steps);
    EvolveStats stats;
    stats.steps = steps;
    // store only ever holds one level's stage data at a time plus the lower ones
    std::vector<std::vector<std::vector<double>>> finals(static_cast<std::size_t>(L + 1));

    const double stage_dt[4] = {0.0, 0.5, 0.5, 1.0};
    const int stage_c[4] = {0, 1, 1, 2};  // offset into the half-step grid
    for (int n = 0; n <= L; ++n) {
        const auto& words = levels[static_cast<std::size_t>(n)];
        store.begin_level(n, m);
        int max_read = 0;
        const std::size_t nw = words.size();
        std::vector<double> y(nw * static_cast<std::size_t>(m), 0.0), k(y.size()), acc(y.size()), stage(y.size());

        // rhs of level n at (step, stage) given the level-n stage state
        auto rhs = [&](int step, int s, const std::vector<double>& state, std::vector<double>& out) {
            const Series<double>& c = cs[static_cast<std::size_t>(2 * step + stage_c[s])];
            const std::size_t slot = static_cast<std::size_t>(4 * step + s);
            Series<double> g(m, m, n);
            for (int q = 1; q < n; ++q)
                for (std::size_t i = 0; i < levels[static_cast<std::size_t>(q)].size(); ++i)
                    for (int j = 0; j < m; ++j) {
                        double v = store.read(q, static_cast<int>(i), j, slot, max_read);
                        if (v != 0.0) g.set(levels[static_cast<std::size_t>(q)][i], v, j);
                    }
            for (std::size_t i = 0; i < nw; ++i)
                for (int j = 0; j < m; ++j) {
                    double v = state[i * static_cast<std::size_t>(m) + static_cast<std::size_t>(j)];
                    if (v != 0.0) g.set(words[i], v, j);
                }
            if (n > 0) max_read = std::max(max_read, n);
            Series<double> lin = pre_lie(g, c, n);
            for (std::size_t i = 0; i < nw; ++i)
                for (int j = 0; j < m; ++j) {
                    const Word& w = words[i];
                    out[i * static_cast<std::size_t>(m) + static_cast<std::size_t>(j)] =
                        c.coefficient(w, j) + (w.count(0) > 0 ? lin.coefficient(w, j) : 0.0);
                }
        };

        auto record = [&](int step, int s, const std::vector<double>& state) {
            for (std::size_t i = 0; i < nw; ++i)
                for (int j = 0; j < m; ++j)
                    store.series(n, static_cast<int>(i), j)[static_cast<std::size_t>(4 * step + s)] =
                        state[i * static_cast<std::size_t>(m) + static_cast<std::size_t>(j)];
        };

        std::vector<std::vector<double>> traj(static_cast<std::size_t>(steps + 1));
        traj[0] = y;
        for (int step = 0; step < steps; ++step) {
            std::fill(acc.begin(), acc.end(), 0.0);
            const double weight[4] = {1.0, 2.0, 2.0, 1.0};
            for (int s = 0; s < 4; ++s) {
                if (s == 0) {
                    stage = y;
                } else {
                    for (std::size_t i = 0; i < y.size(); ++i) stage[i] = y[i] + stage_dt[s] * h * k[i];
                }
                record(step, s, stage);
                rhs(step, s, stage, k);
                for (std::size_t i = 0; i < y.size(); ++i) acc[i] += weight[s] * k[i];
            }
            for (std::size_t i = 0; i < y.size(); ++i) y[i] += h / 6 * acc[i];
            traj[static_cast<std::size_t>(step + 1)] = y;
        }
        record(steps, 0, y);
        finals[static_cast<std::size_t>(n)] = std::move(traj);
        stats.max_level_read.push_back(max_read);
        if (max_read > n) throw TriangularityViolation("level " + std::to_string(n) + " read length " + std::to_string(max_read));

        // diagonal of the same-length coupling: (eta <| c_e, eta)
        for (int s = 0; s <= 2 * steps && n > 0; s += std::max(1, steps / 4)) {
            Series<double> ce(m, m, n);
            for (int j = 0; j < m; ++j) ce.set(Word{}, cs[static_cast<std::size_t>(s)].coefficient(Word{}, j), j);
            for (const Word& w : words) {
                Series<double> mono(m, m, n);
                for (int j = 0; j < m; ++j) mono.set(w, 1.0, j);
                Series<double> p = pre_lie(mono, ce, n);
                for (int j = 0; j < m; ++j) stats.max_diagonal = std::max(stats.max_diagonal, std::fabs(p.coefficient(w, j)));
            }
        }
    }

    GroupPath path;
    path.stats = stats;
    for (int step = 0; step <= steps; ++step) {
        Series<double> body(m, m, L);
        for (int n = 0; n <= L; ++n)
            for (std::size_t i = 0; i < levels[static_cast<std::size_t>(n)].size(); ++i)
                for (int j = 0; j < m; ++j) {
                    double v = finals[static_cast<std::size_t>(n)][static_cast<std::size_t>(step)][i * static_cast<std::size_t>(m) + static_cast<std::size_t>(j)];
                    if (v != 0.0) body.set(levels[static_cast<std::size_t>(n)][i], v, j);
                }
        path.times.push_back(step * h);
        path.values.emplace_back(std::move(body));
    }
    return path;
}

/// max |coefficient| of a series (0 for the zero series).
inline double max_abs_coefficient(const Series<double>& s) {
    double r = 0.0;
    for (int j = 0; j < s.components(); ++j)
        for (const auto& [w, v] : s.terms(j)) r = std::max(r, std::fabs(v));
    return r;
}

/// For constant c: max |gamma(1/2) o gamma(1/2) - gamma(1)| over coefficients.
inline double one_parameter_check(const Series<double>& c, int L, int steps) {
    if (steps % 2 != 0) throw InvalidArgument("one_parameter_check needs an even step count");
    GroupPath path = evolve(LieAlgebraCurve::constant(c), L, steps);
    const auto& half = path.at(0.5);
    return max_abs_coefficient(group_product(half, half, L).body() - path.at(1.0).body());
}

struct VolterraOptions {
    int order_cap = 40;
    double tail_tolerance = 1e-12;
};

/// gamma(t) = 1 + sum_n I_n(t) with I_0 = 1 and d/dt I_n = I_{n-1} sh eta(t),
/// i.e. the nested simplex integrals of eta(t_1) ... eta(t_n). All orders are
/// stepped together with RK4 on [0, t]. For proper eta, I_n vanishes beyond
/// n = L; otherwise orders are added up to the cap and the size of the last
/// one is checked against the tail tolerance (OrderCapExceeded).
inline Series<double> shuffle_volterra(const std::function<Series<double>(double)>& eta, double t, int L, int steps,
                                       const VolterraOptions& opt = {}) {
    if (steps < 1) throw InvalidArgument("shuffle_volterra needs steps >= 1");
    if (!(t >= 0.0 && t <= 1.0)) throw InvalidArgument("shuffle_volterra needs t in [0, 1]");
    Series<double> e0 = eta(0.0);
    const int m = e0.alphabet_max(), ell = e0.components();
    auto eta_at = [&](double s) {
        Series<double> v = eta(s);
        if (v.alphabet_max() != m || v.components() != ell) throw ComponentMismatch("eta changes shape along the curve");
        return v.truncated(L);
    };
    bool proper = true;
    for (int j = 0; j < ell; ++j) proper = proper && e0.coefficient(Word{}, j) == 0.0;
    const int orders = proper ? L : opt.order_cap;

    Series<double> unit(m, ell, L);
    for (int j = 0; j < ell; ++j) unit.set(Word{}, 1.0, j);
    std::vector<Series<double>> I(static_cast<std::size_t>(orders + 1), Series<double>(m, ell, L));
    I[0] = unit;
    const double h = t / steps;
    auto rhs = [&](const std::vector<Series<double>>& state, const Series<double>& e) {
        std::vector<Series<double>> d(state.size(), Series<double>(m, ell, L));
        for (std::size_t n = 1; n < state.size(); ++n) d[n] = shuffle(state[n - 1], e, L);
        return d;
    };
    auto axpy = [](std::vector<Series<double>> a, double s, const std::vector<Series<double>>& b) {
        for (std::size_t n = 1; n < a.size(); ++n) a[n] += b[n] * s;
        return a;
    };
    for (int k = 0; k < steps && h > 0; ++k) {
        double s0 = k * h;
        Series<double> e1 = eta_at(s0), e2 = eta_at(s0 + h / 2), e4 = eta_at(s0 + h);
        auto k1 = rhs(I, e1);
        auto k2 = rhs(axpy(I, h / 2, k1), e2);
        auto k3 = rhs(axpy(I, h / 2, k2), e2);
        auto k4 = rhs(axpy(I, h, k3), e4);
        for (std::size_t n = 1; n < I.size(); ++n) I[n] += (k1[n] + k2[n] * 2.0 + k3[n] * 2.0 + k4[n]) * (h / 6);
    }
    if (!proper) {
        double tail = max_abs_coefficient(I.back());
        if (tail > opt.tail_tolerance)
            throw OrderCapExceeded("Volterra order " + std::to_string(opt.order_cap) + " still contributes " + format_scalar(tail));
    }
    Series<double> out(m, ell, L);
    for (const auto& term : I) out += term;
    return out;
}

/// Writes one series file per requested time and returns the manifest, one
/// line `t=<float> file=<name> residual=<float>` per file.
inline std::string export_group_path(const GroupPath& path, const std::vector<double>& times,
                                     const std::vector<double>& residuals, const std::filesystem::path& dir,
                                     const std::string& stem = "gamma") {
    std::filesystem::create_directories(dir);
    std::string manifest;
    for (std::size_t i = 0; i < times.size(); ++i) {
        std::string name = stem + "_" + std::to_string(i) + ".series";
        std::ofstream f(dir / name);
        if (!f) throw InvalidArgument("cannot write " + (dir / name).string());
        f << serialize_series(path.at(times[i]).body());
        manifest += "t=" + format_scalar(times[i]) + " file=" + name +
                    " residual=" + format_scalar(i < residuals.size() ? residuals[i] : 0.0) + "\n";
    }
    return manifest;
}

}  // namespace fliess

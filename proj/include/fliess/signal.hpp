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

// Sampled input signals on a uniform time grid.
//
// File format:
//
//   # t0=0 t1=0.05 m=1
//   0 0.5
//   2.5e-05 0.49
//   ...
//
// one line per sample with the time followed by u_1..u_m. The channel u_0 = 1
// is implicit.

#pragma once

#include <cmath>
#include <cstdio>
#include <algorithm>
#include <functional>
#include <optional>
#include <regex>
#include <sstream>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "fliess/error.hpp"
#include "fliess/scalar.hpp"
#include "fliess/series_io.hpp"

namespace fliess {

class InputSignal {
public:
    /// Samples f on n uniformly spaced points of [t0, t1]. f returns u_1..u_m.
    static InputSignal sample(double t0, double t1, int m, int n, const std::function<std::vector<double>(double)>& f) {
        InputSignal s(t0, t1, m, n);
        for (int k = 0; k < n; ++k) {
            std::vector<double> v = f(s.times_[static_cast<std::size_t>(k)]);
            if (static_cast<int>(v.size()) != m) throw InvalidArgument("signal function returned wrong channel count");
            s.set(k, v);
        }
        return s;
    }

    static InputSignal zero(double t0, double t1, int m, int n) { return InputSignal(t0, t1, m, n); }

    /// Builds a signal from per-channel trajectories on an existing grid.
    static InputSignal from_channels(const InputSignal& grid, const std::vector<std::vector<double>>& channels) {
        InputSignal s(grid.t0_, grid.t1_, static_cast<int>(channels.size()), grid.size());
        for (std::size_t i = 0; i < channels.size(); ++i) {
            if (channels[i].size() != static_cast<std::size_t>(grid.size())) throw InvalidArgument("channel length differs from grid");
            s.values_[i] = channels[i];
        }
        s.check_finite();
        return s;
    }

    double t0() const noexcept { return t0_; }
    double t1() const noexcept { return t1_; }
    int inputs() const noexcept { return static_cast<int>(values_.size()); }
    int size() const noexcept { return static_cast<int>(times_.size()); }
    double step() const noexcept { return (t1_ - t0_) / (size() - 1); }
    const std::vector<double>& times() const noexcept { return times_; }

    /// Channel i on the grid; i = 0 is the constant 1.
    const std::vector<double>& channel(int i) const {
        if (i < 0 || i > inputs()) throw InvalidArgument("input channel " + std::to_string(i) + " out of range");
        return i == 0 ? ones_ : values_[static_cast<std::size_t>(i - 1)];
    }

    /// Linear interpolation of channel i at time t.
    double at(int i, double t) const { return interpolate(channel(i), t); }

    /// Linear interpolation of grid values at t in [t0, t1].
    double interpolate(const std::vector<double>& v, double t) const {
        if (!(t >= t0_ - 1e-12 * scale() && t <= t1_ + 1e-12 * scale()))
            throw InvalidArgument("time " + format_scalar(t) + " outside the signal interval");
        double x = (t - t0_) / step();
        auto k = static_cast<std::ptrdiff_t>(std::floor(x));
        k = std::clamp<std::ptrdiff_t>(k, 0, size() - 2);
        double a = x - static_cast<double>(k);
        if (std::fabs(a) < 1e-9) return v[static_cast<std::size_t>(k)];
        if (std::fabs(a - 1) < 1e-9) return v[static_cast<std::size_t>(k + 1)];
        return (1 - a) * v[static_cast<std::size_t>(k)] + a * v[static_cast<std::size_t>(k + 1)];
    }

    /// max_k max_i |u_i(t_k)|
    double sup_norm() const {
        double s = 0;
        for (const auto& ch : values_)
            for (double x : ch) s = std::max(s, std::fabs(x));
        return s;
    }

private:
    InputSignal(double t0, double t1, int m, int n) : t0_(t0), t1_(t1) {
        if (n < 2) throw GridTooCoarse("a signal needs at least 2 grid points");
        if (!(t1 > t0) || !std::isfinite(t0) || !std::isfinite(t1)) throw InvalidArgument("signal needs t1 > t0");
        if (m < 0 || m > kMaxLetter) throw InvalidArgument("input count out of range");
        times_.resize(static_cast<std::size_t>(n));
        for (int k = 0; k < n; ++k) times_[static_cast<std::size_t>(k)] = t0 + (t1 - t0) * k / (n - 1);
        times_.back() = t1;
        ones_.assign(static_cast<std::size_t>(n), 1.0);
        values_.assign(static_cast<std::size_t>(m), std::vector<double>(static_cast<std::size_t>(n), 0.0));
    }

    void set(int k, const std::vector<double>& v) {
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (!std::isfinite(v[i])) throw InvalidArgument("non-finite signal value");
            values_[i][static_cast<std::size_t>(k)] = v[i];
        }
    }

    void check_finite() const {
        for (const auto& ch : values_)
            for (double x : ch)
                if (!std::isfinite(x)) throw InvalidArgument("non-finite signal value");
    }

    double scale() const { return std::max({1.0, std::fabs(t0_), std::fabs(t1_)}); }

    double t0_, t1_;
    std::vector<double> times_, ones_;
    std::vector<std::vector<double>> values_;

    friend InputSignal parse_signal(std::string_view);
};

/// Reads the signal file format. Spacing must be uniform within 1e-9 relative.
inline InputSignal parse_signal(std::string_view text) {
    static const std::regex header_re(
        R"(^#\s*t0=(\S+)\s+t1=(\S+)\s+m=(\d+)\s*$)");
    std::istringstream in{std::string(text)};
    std::optional<std::tuple<double, double, int>> header;
    std::vector<std::vector<double>> rows;
    std::vector<int> lines;
    int lineno = 0;
    for (std::string raw; std::getline(in, raw);) {
        ++lineno;
        std::string line(detail::trim(raw));
        if (line.empty()) continue;
        if (line.front() == '#') {
            std::smatch mt;
            if (std::regex_match(line, mt, header_re)) {
                if (header) throw SyntaxError("duplicate header", lineno);
                try {
                    header = std::tuple{parse_double(mt[1].str()), parse_double(mt[2].str()), std::stoi(mt[3].str())};
                } catch (const SyntaxError& e) {
                    throw SyntaxError(e.what(), lineno);
                }
            }
            continue;
        }
        if (!header) throw SyntaxError("sample before the '# t0= t1= m=' header", lineno);
        auto tok = detail::split_ws(line);
        if (static_cast<int>(tok.size()) != std::get<2>(*header) + 1)
            throw SyntaxError("expected time and " + std::to_string(std::get<2>(*header)) + " values", lineno);
        std::vector<double> row;
        try {
            for (const auto& t : tok) row.push_back(parse_double(t));
        } catch (const SyntaxError& e) {
            throw SyntaxError(e.what(), lineno);
        }
        rows.push_back(std::move(row));
        lines.push_back(lineno);
    }
    if (!header) throw SyntaxError("missing '# t0= t1= m=' header", lineno);
    auto [t0, t1, m] = *header;
    if (m > kMaxLetter) throw SyntaxError("too many input channels", lineno);
    if (rows.size() < 2) throw GridTooCoarse("a signal needs at least 2 samples");
    if (!(t1 > t0)) throw SyntaxError("header needs t1 > t0", lineno);
    const double h = (t1 - t0) / static_cast<double>(rows.size() - 1);
    for (std::size_t k = 0; k < rows.size(); ++k) {
        if (k > 0 && !(rows[k][0] > rows[k - 1][0])) throw SyntaxError("times must increase strictly", lines[k]);
        double expect = t0 + h * static_cast<double>(k);
        if (std::fabs(rows[k][0] - expect) > 1e-9 * h)
            throw SyntaxError("non-uniform spacing (expected t=" + format_scalar(expect) + ")", lines[k]);
    }
    InputSignal s(t0, t1, m, static_cast<int>(rows.size()));
    for (std::size_t k = 0; k < rows.size(); ++k) s.set(static_cast<int>(k), std::vector<double>(rows[k].begin() + 1, rows[k].end()));
    return s;
}

inline std::string serialize_signal(const InputSignal& s) {
    std::ostringstream out;
    out << "# t0=" << format_scalar(s.t0()) << " t1=" << format_scalar(s.t1()) << " m=" << s.inputs() << '\n';
    for (int k = 0; k < s.size(); ++k) {
        out << format_scalar(s.times()[static_cast<std::size_t>(k)]);
        for (int i = 1; i <= s.inputs(); ++i) out << ' ' << format_scalar(s.channel(i)[static_cast<std::size_t>(k)]);
        out << '\n';
    }
    return out.str();
}

}  // namespace fliess

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

#include <gtest/gtest.h>

#include <cmath>

#include "fliess/chen_fliess.hpp"
#include "oracles.hpp"

using fliess::InputSignal;
using fliess::Rational;
using fliess::Word;
using RS = fliess::Series<Rational>;

namespace {

InputSignal smooth_input(double T, int n = 2048) {
    return InputSignal::sample(0.0, T, 1, n, [](double t) { return std::vector<double>{std::cos(3 * t) * 0.8 + 0.2 * std::sin(7 * t)}; });
}

RS small_random(int L, std::uint64_t seed) {
    // coefficients in [-1, 1]
    return fliess::random_ball_series(Rational(1), Rational(1), L, seed).map_coefficients([](const Word& w, const Rational& v) {
        return v / fliess::factorial<Rational>(w.size());
    });
}

}  // namespace

TEST(IteratedIntegral, Examples) {
    InputSignal u = smooth_input(1.0, 1025);
    EXPECT_EQ(fliess::iterated_integral(Word{}, u, 0.7), 1.0);
    EXPECT_NEAR(fliess::iterated_integral(Word{0}, u, 0.5), 0.5, 1e-15);
    EXPECT_NEAR(fliess::iterated_integral(Word{0, 0}, u, 1.0), 0.5, 1e-15);
    for (int k = 3; k <= 5; ++k)
        EXPECT_NEAR(fliess::iterated_integral(Word::repeat(0, k), u, 1.0), 1.0 / std::tgamma(k + 1), 1e-6);
    EXPECT_THROW(fliess::iterated_integral(Word{2}, u, 0.5), fliess::AlphabetMismatch);
    EXPECT_THROW(InputSignal::zero(0, 1, 1, 1), fliess::GridTooCoarse);
}

TEST(IteratedIntegral, InputWords) {
    // u = cos t: E_{x1} = sin t, E_{x1 x1} = sin^2 t / 2, E_{x0 x1} = 1 - cos t
    InputSignal u = InputSignal::sample(0, 1, 1, 4097, [](double t) { return std::vector<double>{std::cos(t)}; });
    EXPECT_NEAR(fliess::iterated_integral(Word{1}, u, 1.0), std::sin(1.0), 1e-7);
    EXPECT_NEAR(fliess::iterated_integral(Word{1, 1}, u, 1.0), std::sin(1.0) * std::sin(1.0) / 2, 1e-7);
    EXPECT_NEAR(fliess::iterated_integral(Word{0, 1}, u, 1.0), 1 - std::cos(1.0), 1e-7);
    EXPECT_NEAR(fliess::iterated_integral(Word{1, 0}, u, 1.0), std::cos(1.0) + std::sin(1.0) - 1, 1e-7);
}

// Halving the step divides the trapezoid error by about 4.
TEST(IteratedIntegral, SecondOrderQuadrature) {
    for (int k : {3, 4}) {
        double prev = 0;
        for (int n : {65, 129, 257, 513}) {
            InputSignal u = InputSignal::zero(0, 1, 1, n);
            double err = std::fabs(fliess::iterated_integral(Word::repeat(0, k), u, 1.0) - 1.0 / std::tgamma(k + 1));
            if (prev > 0) {
                EXPECT_GT(prev / err, 3.8) << k << " " << n;
                EXPECT_LT(prev / err, 4.2) << k << " " << n;
            }
            prev = err;
        }
    }
    double prev = 0;
    for (int n : {65, 129, 257, 513}) {
        InputSignal u = InputSignal::sample(0, 1, 1, n, [](double t) { return std::vector<double>{std::exp(t)}; });
        double exact = std::pow(std::exp(1.0) - 1, 2) / 2;
        double err = std::fabs(fliess::iterated_integral(Word{1, 1}, u, 1.0) - exact);
        if (prev > 0) EXPECT_NEAR(prev / err, 4.0, 0.2);
        prev = err;
    }
}

TEST(FliessEval, Examples) {
    InputSignal u = smooth_input(1.0);
    EXPECT_EQ(fliess::fliess_eval(RS::one(1, 3), u, 0.4).y[0], 1.0);
    RS ex(1, 1, 8);
    for (int k = 0; k <= 8; ++k) ex.set(Word::repeat(0, k), Rational(1));
    auto v = fliess::fliess_eval(ex, u, 1.0);
    EXPECT_NEAR(v.y[0], std::exp(1.0), 1e-3);
    EXPECT_NEAR(v.top_stratum[0], 1.0 / 40320, 1e-8);
}

TEST(FliessEval, LinearityAndProducts) {
    const double T = 0.05;
    InputSignal u = smooth_input(T);
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        RS c = small_random(3, seed), d = small_random(3, seed + 50);
        double fc = fliess::fliess_eval(c, u, T).y[0], fd = fliess::fliess_eval(d, u, T).y[0];
        EXPECT_NEAR(fliess::fliess_eval(RS(c + d), u, T).y[0], fc + fd, 1e-15);
        RS cd = fliess::shuffle(c.as_polynomial(6), d.as_polynomial(6), 6);
        EXPECT_NEAR(fliess::fliess_eval(cd, u, T).y[0], fc * fd, 1e-6);
    }
}

TEST(FliessEval, MultiInputAndComponents) {
    InputSignal u = InputSignal::sample(0, 0.1, 2, 1025, [](double t) { return std::vector<double>{1.0, t}; });
    RS c(2, 2, 2);
    c.set(Word{1}, Rational(1), 0);  // int 1 = t
    c.set(Word{2}, Rational(2), 1);  // 2 int t = t^2
    auto v = fliess::fliess_eval(c, u, 0.1);
    EXPECT_NEAR(v.y[0], 0.1, 1e-14);
    EXPECT_NEAR(v.y[1], 0.01, 1e-12);
}

TEST(Cascade, Examples) {
    const double T = 0.05;
    InputSignal u = smooth_input(T);
    RS d = small_random(3, 4);
    EXPECT_EQ(fliess::cascade_check(RS::one(1, 3), d, u, T).residual, 0.0);
    RS c = small_random(3, 5);
    auto zero = fliess::cascade_check(c, RS(1, 1, 3), u, T);
    EXPECT_LT(zero.residual, 1e-9);
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
        auto r = fliess::cascade_check(small_random(3, seed + 10), small_random(3, seed + 20), u, T);
        EXPECT_LT(r.residual, 1e-4) << seed;
        EXPECT_EQ(r.trunc, 8);
    }
}

TEST(FeedbackLoop, ZeroFeedbackPath) {
    const double T = 0.05;
    InputSignal v = smooth_input(T, 513);
    RS c = small_random(3, 1);
    auto loop = fliess::feedback_loop_simulate(c, RS(1, 1, 3), v, 5);
    auto direct = fliess::fliess_trajectory(c, v)[0];
    EXPECT_EQ(loop.y, direct);
    EXPECT_EQ(loop.increments.size(), 2u);
    EXPECT_EQ(loop.increment, 0.0);
}

TEST(FeedbackLoop, MatchesFeedbackProduct) {
    const double T = 0.05;
    InputSignal v = smooth_input(T);
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
        RS c = small_random(3, seed + 30), d = small_random(3, seed + 40);
        auto loop = fliess::feedback_loop_simulate(c, d, v, 30);
        for (std::size_t k = 2; k < loop.increments.size(); ++k) EXPECT_LT(loop.increments[k], loop.increments[k - 2]);
        const int L = 6;
        RS cl = fliess::feedback(c.as_polynomial(L), d.as_polynomial(L), L);
        auto y = fliess::fliess_trajectory(cl, v)[0];
        double err = 0;
        for (std::size_t k = 0; k < y.size(); ++k) err = std::max(err, std::fabs(y[k] - loop.y[k]));
        EXPECT_LT(err, 1e-3) << seed;
    }
}

TEST(FeedbackLoop, Divergence) {
    InputSignal v = InputSignal::sample(0, 3, 1, 257, [](double) { return std::vector<double>{5.0}; });
    RS c(1, 1, 2);
    c.set(Word{1, 1}, Rational(10));
    EXPECT_THROW(fliess::feedback_loop_simulate(c, RS::monomial(1, 2, Word{1}, Rational(1)), v, 50), fliess::LoopDiverged);
    EXPECT_THROW(fliess::feedback_loop_simulate(RS(2, 1, 2), RS(2, 2, 2), v, 2), fliess::UnsupportedArity);
}

TEST(Realization, NumericAgainstOde) {
    InputSignal u = smooth_input(0.05);
    auto integrator = fliess::parse_realization("states z\ng1 1\nh z\nz0 0\n");
    auto y = fliess::simulate_realization(integrator, u)[0];
    auto c = fliess::to_rational_series(fliess::realization_to_series(integrator, 3));
    EXPECT_NEAR(fliess::fliess_eval(c, u, 0.05).y[0], y.back(), 1e-9);

    const char* systems[] = {
        "states z\ng0 -z + 1/2*z^2\ng1 1 + z^3\nh z + z^2\nz0 1/2\n",
        "states z w\ng0 w ; -z\ng1 0 ; 1 + z*w\nh z\nz0 1 ; 0\n",
        "states z\ng0 z^3\ng1 2*z^2\nh z\nz0 1\n",
    };
    for (const char* text : systems) {
        auto r = fliess::parse_realization(text);
        auto ode = fliess::simulate_realization(r, u)[0];
        auto series = fliess::to_rational_series(fliess::realization_to_series(r, 5));
        auto val = fliess::fliess_eval(series, u, 0.05);
        // the longest-word stratum estimates the truncation error
        EXPECT_LT(val.top_stratum[0], 2e-4);
        EXPECT_NEAR(val.y[0], ode.back(), 1e-8 + val.top_stratum[0]) << text;
    }
}

TEST(Signal, FileFormat) {
    InputSignal u = InputSignal::sample(0, 0.5, 2, 11, [](double t) { return std::vector<double>{t, -2 * t}; });
    std::string text = fliess::serialize_signal(u);
    InputSignal back = fliess::parse_signal(text);
    EXPECT_EQ(fliess::serialize_signal(back), text);
    EXPECT_EQ(back.inputs(), 2);
    EXPECT_EQ(back.size(), 11);
    EXPECT_THROW(fliess::parse_signal("0 1\n"), fliess::SyntaxError);
    EXPECT_THROW(fliess::parse_signal("# t0=0 t1=1 m=1\n0 1\n0.4 1\n1 2\n"), fliess::SyntaxError);
    EXPECT_THROW(fliess::parse_signal("# t0=0 t1=1 m=1\n0 1\n"), fliess::GridTooCoarse);
    EXPECT_THROW(fliess::parse_signal("# t0=0 t1=1 m=1\n0 1\n1 2 3\n"), fliess::SyntaxError);
    EXPECT_THROW(fliess::parse_signal("# t0=0 t1=1 m=1\n0 1\n1 nan\n"), fliess::SyntaxError);
    auto ok = fliess::parse_signal("# t0=0 t1=1 m=1\n0 1\n0.5 2\n1 3\n");
    EXPECT_DOUBLE_EQ(ok.at(1, 0.25), 1.5);
}

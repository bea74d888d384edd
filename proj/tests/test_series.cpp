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

#include "fliess/series.hpp"
#include "fliess/series_io.hpp"
#include "oracles.hpp"

using fliess::Rational;
using fliess::Word;
using RS = fliess::Series<Rational>;

TEST(Series, CoefficientQueries) {
    RS c = RS::monomial(1, 2, Word{0, 1}, Rational(3));
    EXPECT_EQ(c.coefficient(Word{0, 1}, 0), Rational(3));
    EXPECT_EQ(c.coefficient(Word{1}, 0), Rational(0));
    EXPECT_EQ(c.coefficient(Word{0, 1}), std::vector<Rational>{Rational(3)});
    EXPECT_THROW(c.coefficient(Word{0, 0, 0}), fliess::QueryBeyondTruncation);
    EXPECT_THROW(c.coefficient(Word{2}), fliess::AlphabetMismatch);
}

TEST(Series, CanonicalSparsity) {
    RS c(1, 1, 3);
    c.set(Word{1}, Rational(2));
    c.add(Word{1}, Rational(-2));
    EXPECT_TRUE(c.is_zero_series());
    EXPECT_EQ(c, RS(1, 1, 3));
    c.set(Word{0}, Rational(0));
    EXPECT_EQ(c.size(), 0u);
    RS d = RS::monomial(1, 3, Word{0}, Rational(1));
    EXPECT_TRUE((d - d).is_zero_series());
}

TEST(Series, SumTakesSmallerTruncation) {
    RS a = RS::monomial(1, 4, Word{0, 0, 0, 0}, Rational(1)) + RS::monomial(1, 4, Word{1}, Rational(1));
    RS b = RS::monomial(1, 2, Word{1}, Rational(1));
    RS s = a + b;
    EXPECT_EQ(s.trunc(), 2);
    EXPECT_EQ(s.coefficient(Word{1}, 0), Rational(2));
    EXPECT_EQ(s.size(), 1u);
}

TEST(Series, LinfNormExamples) {
    EXPECT_EQ(fliess::linf_norm(RS(1, 1, 3), Rational(1)), Rational(0));
    EXPECT_EQ(fliess::linf_norm(fliess::worst_case_series(Rational(2), Rational(1), 4), Rational(1)), Rational(2));
    EXPECT_EQ(fliess::linf_norm(RS::monomial(1, 2, Word{0, 1}, Rational(1)), Rational(2)), Rational(1, 8));
    EXPECT_THROW(fliess::linf_norm(RS(1, 1, 1), Rational(0)), fliess::InvalidArgument);
}

TEST(Series, WorstCaseSeries) {
    RS c = fliess::worst_case_series(Rational(1), Rational(1), 1);
    RS expect(1, 1, 1);
    expect.set(Word{}, Rational(1));
    expect.set(Word{0}, Rational(1));
    expect.set(Word{1}, Rational(1));
    EXPECT_EQ(c, expect);
    RS d = fliess::worst_case_series(Rational(1), Rational(2), 2);
    for (const Word& w : fliess::enumerate_words(1, 2)) EXPECT_EQ(d.coefficient(w, 0), Rational(8));
    for (int K = 0; K < 4; ++K)
        EXPECT_EQ(fliess::linf_norm(fliess::worst_case_series(Rational(K), Rational(3, 2), 5), Rational(3, 2)), Rational(K));
}

TEST(Series, RandomBallSeries) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        RS c = fliess::random_ball_series(Rational(3, 2), Rational(2), 5, seed);
        EXPECT_LE(fliess::linf_norm(c, Rational(2)), Rational(3, 2));
        EXPECT_EQ(c, fliess::random_ball_series(Rational(3, 2), Rational(2), 5, seed));
        auto g = fliess::GrowthEstimate<Rational>{Rational(3, 2), Rational(2)};
        EXPECT_TRUE(g.bounds(c));
    }
    EXPECT_NE(fliess::random_ball_series(Rational(1), Rational(1), 4, 1), fliess::random_ball_series(Rational(1), Rational(1), 4, 2));
    EXPECT_TRUE(fliess::random_ball_series(Rational(0), Rational(1), 4, 9).is_zero_series());
    auto f = fliess::random_ball_series(1.0, 1.0, 4, 3);
    EXPECT_LE(fliess::linf_norm(f, 1.0), 1.0);
}

TEST(Series, NormTriangleAndMonotonicity) {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        RS c = fliess::random_series<Rational>(1, 1, 4, seed);
        RS d = fliess::random_series<Rational>(1, 1, 4, seed + 1000);
        for (Rational M : {Rational(1, 2), Rational(1), Rational(3)}) {
            EXPECT_LE(fliess::linf_norm(c + d, M), fliess::linf_norm(c, M) + fliess::linf_norm(d, M));
            EXPECT_LE(fliess::linf_norm(c, M * 2), fliess::linf_norm(c, M));
        }
    }
}

TEST(SeriesIO, ParseExamples) {
    RS c = fliess::parse_series<Rational>("3/2 x0x1\n");
    EXPECT_EQ(c.coefficient(Word{0, 1}, 0), Rational(3, 2));
    EXPECT_EQ(c.trunc(), 2);
    RS one = fliess::parse_series<Rational>("1 e");
    EXPECT_EQ(one, RS::one(1, 0));
    EXPECT_THROW(fliess::parse_series<Rational>("1 x9"), fliess::SyntaxError);
    RS dec = fliess::parse_series<Rational>("0.25 x1\n-1.5e-1 x0\n");
    EXPECT_EQ(dec.coefficient(Word{1}, 0), Rational(1, 4));
    EXPECT_EQ(dec.coefficient(Word{0}, 0), Rational(-3, 20));
}

TEST(SeriesIO, HeaderAndComponents) {
    const char* text =
        "# alphabet m=2 components l=2 trunc L=3\n"
        "# free comment\n"
        "[1] 2 x2\n"
        "[2] -1/3 x0x1\n";
    RS c = fliess::parse_series<Rational>(text);
    EXPECT_EQ(c.alphabet_max(), 2);
    EXPECT_EQ(c.components(), 2);
    EXPECT_EQ(c.trunc(), 3);
    EXPECT_EQ(c.coefficient(Word{2}, 0), Rational(2));
    EXPECT_EQ(c.coefficient(Word{0, 1}, 1), Rational(-1, 3));
    EXPECT_EQ(fliess::parse_series<Rational>(fliess::serialize_series(c)), c);
}

TEST(SeriesIO, Errors) {
    try {
        fliess::parse_series<Rational>("1 x0\n2 x1\nfoo x1\n");
        FAIL();
    } catch (const fliess::SyntaxError& e) {
        EXPECT_EQ(e.line(), 3);
    }
    EXPECT_THROW(fliess::parse_series<Rational>("1 x0\n2 x0\n"), fliess::DuplicateWordError);
    EXPECT_THROW(fliess::parse_series<Rational>("# alphabet m=1 components l=1 trunc L=1\n1 x0x0\n"), fliess::SyntaxError);
    EXPECT_THROW(fliess::parse_series<Rational>("1/0 x0\n"), fliess::SyntaxError);
    EXPECT_THROW(fliess::parse_series<Rational>("1 x0 x1\n"), fliess::SyntaxError);
    EXPECT_THROW(fliess::parse_series<Rational>("[0] 1 x0\n"), fliess::SyntaxError);
    EXPECT_THROW(fliess::parse_series<double>("nan x0\n"), fliess::SyntaxError);
}

// serialize . parse is the identity on canonical text, for both scalar modes.
TEST(SeriesIO, RoundTripProperty) {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        fliess::RandomSeriesOptions opt;
        opt.density = 0.6;
        int m = 1 + static_cast<int>(seed % 3), ell = 1 + static_cast<int>(seed % 2);
        RS c = fliess::random_series<Rational>(m, ell, 4, seed, opt);
        std::string text = fliess::serialize_series(c);
        EXPECT_EQ(fliess::parse_series<Rational>(text), c);
        EXPECT_EQ(fliess::serialize_series(fliess::parse_series<Rational>(text)), text);

        auto f = fliess::random_ball_series(1.0, 0.7, 3, seed, m, ell);
        EXPECT_EQ(fliess::parse_series<double>(fliess::serialize_series(f)), f);
    }
}

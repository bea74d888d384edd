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

#include "fliess/products.hpp"
#include "oracles.hpp"

using fliess::Rational;
using fliess::Word;
using RS = fliess::Series<Rational>;

namespace {

RS mono(int m, int L, std::initializer_list<int> w, Rational v = Rational(1)) { return RS::monomial(m, L, Word(w), v); }

RS rnd(int m, int ell, int L, std::uint64_t seed, double density = 0.7) {
    fliess::RandomSeriesOptions opt;
    opt.density = density;
    return fliess::random_series<Rational>(m, ell, L, seed, opt);
}

bool homogeneous_length(const RS& s, int len) {
    for (const auto& [w, v] : s.terms())
        if (w.size() != len) return false;
    return true;
}

}  // namespace

TEST(Shuffle, Examples) {
    RS c = rnd(1, 1, 4, 7);
    EXPECT_EQ(fliess::shuffle(RS::one(1, 4), c, 4), c);
    EXPECT_EQ(fliess::shuffle(mono(1, 2, {1}), mono(1, 2, {1}), 2), mono(1, 2, {1, 1}, Rational(2)));
    EXPECT_THROW(fliess::shuffle(mono(1, 2, {1}), mono(1, 3, {1}), 3), fliess::TruncationMismatch);
}

TEST(Shuffle, WorstCaseEqualityCase) {
    const int L = 5;
    Rational Kc(2), Kd(3, 2), M(3);
    RS s = fliess::shuffle(fliess::worst_case_series(Kc, M, L), fliess::worst_case_series(Kd, M, L), L);
    for (const Word& w : fliess::words_up_to(1, L)) {
        Rational expect = Kc * Kd * fliess::power(M, w.size()) * fliess::factorial<Rational>(w.size() + 1);
        EXPECT_EQ(s.coefficient(w, 0), expect) << w.str();
    }
}

TEST(Shuffle, MatchesOracle) {
    for (std::uint64_t seed = 0; seed < 15; ++seed) {
        int m = 1 + static_cast<int>(seed % 2);
        RS c = rnd(m, 1, 5, seed), d = rnd(m, 1, 5, seed + 77);
        EXPECT_EQ(fliess::shuffle(c, d, 5), oracle::shuffle(c, d, 5));
    }
}

TEST(Shuffle, CommutativeAssociativeUnital) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        RS a = rnd(1, 1, 5, seed), b = rnd(1, 1, 5, seed + 100), c = rnd(1, 1, 5, seed + 200);
        EXPECT_EQ(fliess::shuffle(a, b, 5), fliess::shuffle(b, a, 5));
        EXPECT_EQ(fliess::shuffle(fliess::shuffle(a, b, 5), c, 5), fliess::shuffle(a, fliess::shuffle(b, c, 5), 5));
        EXPECT_EQ(fliess::shuffle(a, RS::one(1, 5), 5), a);
    }
}

TEST(Shuffle, ComponentwiseAndHomogeneous) {
    RS c = rnd(2, 2, 3, 5), d = rnd(2, 2, 3, 6);
    RS s = fliess::shuffle(c, d, 3);
    for (int j = 0; j < 2; ++j) EXPECT_EQ(s.component(j), fliess::shuffle(c.component(j), d.component(j), 3));
    for (const Word& a : fliess::words_up_to(1, 3))
        for (const Word& b : fliess::words_up_to(1, 3))
            EXPECT_TRUE(homogeneous_length(fliess::shuffle(RS::monomial(1, 6, a, Rational(1)), RS::monomial(1, 6, b, Rational(1)), 6),
                                           a.size() + b.size()));
}

TEST(Compose, Examples) {
    RS d = rnd(1, 1, 4, 3);
    EXPECT_EQ(fliess::compose(RS::one(1, 4), d, 4), RS::one(1, 4));
    EXPECT_EQ(fliess::compose(mono(1, 4, {0}), d, 4), mono(1, 4, {0}));
    EXPECT_EQ(fliess::compose(mono(1, 4, {1}), mono(1, 4, {1}), 4), mono(1, 4, {0, 1}));
    EXPECT_THROW(fliess::compose(mono(2, 3, {1}), RS(2, 1, 3), 3), fliess::ComponentMismatch);
    EXPECT_THROW(fliess::compose(mono(1, 3, {1}), RS(1, 1, 2), 3), fliess::TruncationMismatch);
}

TEST(Compose, MatchesOracle) {
    for (std::uint64_t seed = 0; seed < 12; ++seed) {
        int m = 1 + static_cast<int>(seed % 2);
        const int L = m == 1 ? 5 : 4;
        RS c = rnd(m, 1 + static_cast<int>(seed % 3 == 0), L, seed), d = rnd(m, m, L, seed + 31);
        RS got = fliess::compose(c, d, L);
        for (int j = 0; j < c.components(); ++j) {
            EXPECT_EQ(got.component(j), oracle::compose(c.component(j), d, L, false)) << "seed " << seed;
        }
    }
}

TEST(Compose, RightDistributesOverShuffle) {
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
        RS c = rnd(1, 1, 5, seed, 0.5), d = rnd(1, 1, 5, seed + 9, 0.5), e = rnd(1, 1, 5, seed + 18, 0.5);
        EXPECT_EQ(fliess::compose(fliess::shuffle(c, d, 5), e, 5),
                  fliess::shuffle(fliess::compose(c, e, 5), fliess::compose(d, e, 5), 5));
    }
}

TEST(Compose, NeverShortensWords) {
    RS d = rnd(1, 1, 5, 11);
    for (const Word& w : fliess::words_up_to(1, 5)) {
        RS out = fliess::compose(RS::monomial(1, 5, w, Rational(1)), d, 5);
        for (const auto& [v, x] : out.terms()) EXPECT_GE(v.size(), w.size());
    }
}

TEST(MixedCompose, Examples) {
    RS c = rnd(1, 1, 4, 1);
    EXPECT_EQ(fliess::mixed_compose(c, RS(1, 1, 4), 4), c);
    RS d = rnd(2, 2, 4, 2);
    for (int j = 0; j <= 2; ++j) {
        RS expect = mono(2, 4, {j});
        if (j > 0) expect += oracle::prefix(0, d.component(j - 1), 4);
        EXPECT_EQ(fliess::mixed_compose(mono(2, 4, {j}), d, 4), expect);
    }
    // x_j x_k -> x_j x_k + x_j x0 d[k] + x0 (d[j] sh x_k) + x0 (d[j] sh x0 d[k])
    for (int j = 1; j <= 2; ++j)
        for (int k = 1; k <= 2; ++k) {
            const int L = 4;
            RS dj = d.component(j - 1), dk = d.component(k - 1);
            RS x0dk = oracle::prefix(0, dk, L);
            RS expect = mono(2, L, {j, k}) + oracle::prefix(j, x0dk, L) +
                        oracle::prefix(0, oracle::shuffle(dj, mono(2, L, {k}), L), L) +
                        oracle::prefix(0, oracle::shuffle(dj, x0dk, L), L);
            EXPECT_EQ(fliess::mixed_compose(mono(2, L, {j, k}), d, L), expect);
        }
}

TEST(MixedCompose, MatchesOracle) {
    for (std::uint64_t seed = 0; seed < 12; ++seed) {
        int m = 1 + static_cast<int>(seed % 2);
        const int L = m == 1 ? 5 : 4;
        RS c = rnd(m, 1, L, seed + 500), d = rnd(m, m, L, seed + 600);
        EXPECT_EQ(fliess::mixed_compose(c, d, L), oracle::compose(c, d, L, true)) << "seed " << seed;
    }
}

// f(t) = c o~ (t d) - c is a polynomial in t of degree <= L with f(0) = 0.
// Interpolating through t = 1..L recovers its linear part, which must be c <| d.
TEST(MixedCompose, LinearizationIsPreLie) {
    for (int L : {3, 5}) {
        for (std::uint64_t seed = 0; seed < 4; ++seed) {
            RS c = rnd(1, 1, L, seed + 40), d = rnd(1, 1, L, seed + 41);
            RS linear(1, 1, L);
            for (int k = 1; k <= L; ++k) {
                // derivative at 0 of the Lagrange basis polynomial for node k over {0..L}
                Rational w(1);
                for (int j = 1; j <= L; ++j)
                    if (j != k) w *= Rational(-j) / Rational(k - j);
                w /= Rational(k);
                linear += (fliess::mixed_compose(c, d * Rational(k), L) - c) * w;
            }
            EXPECT_EQ(linear, fliess::pre_lie(c, d, L)) << "L=" << L << " seed " << seed;
        }
    }
}

TEST(PreLie, Examples) {
    RS d = rnd(2, 2, 5, 8);
    for (int n = 0; n <= 4; ++n) EXPECT_TRUE(fliess::pre_lie(RS::monomial(2, 5, Word::repeat(0, n), Rational(1)), d, 5).is_zero_series());
    for (int k = 1; k <= 2; ++k) EXPECT_EQ(fliess::pre_lie(mono(2, 5, {k}), d, 5), oracle::prefix(0, d.component(k - 1), 5));
    for (int j = 0; j <= 2; ++j)
        for (int k = 0; k <= 2; ++k) {
            const int L = 5;
            RS expect(2, 1, L);
            if (k > 0) expect += oracle::prefix(j, oracle::prefix(0, d.component(k - 1), L), L);
            if (j > 0) expect += oracle::prefix(0, oracle::shuffle(mono(2, L, {k}), d.component(j - 1), L), L);
            EXPECT_EQ(fliess::pre_lie(mono(2, L, {j, k}), d, L), expect);
        }
}

TEST(PreLie, MatchesOracleAndLengthAdditive) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        int m = 1 + static_cast<int>(seed % 2);
        RS c = rnd(m, 1, 5, seed + 70), d = rnd(m, m, 5, seed + 71);
        EXPECT_EQ(fliess::pre_lie(c, d, 5), oracle::pre_lie(c, d, 5));
    }
    for (const Word& a : fliess::words_up_to(1, 3))
        for (const Word& b : fliess::words_up_to(1, 3)) {
            RS out = fliess::pre_lie(RS::monomial(1, 6, a, Rational(1)), RS::monomial(1, 6, b, Rational(1)), 6);
            EXPECT_TRUE(homogeneous_length(out, a.size() + b.size()));
        }
}

TEST(PreLie, RightPreLieIdentity) {
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
        const int L = 4;
        RS a = rnd(1, 1, L, seed + 1), b = rnd(1, 1, L, seed + 2), c = rnd(1, 1, L, seed + 3);
        auto assoc = [L](const RS& x, const RS& y, const RS& z) {
            return fliess::pre_lie(fliess::pre_lie(x, y, L), z, L) - fliess::pre_lie(x, fliess::pre_lie(y, z, L), L);
        };
        EXPECT_EQ(assoc(a, b, c), assoc(a, c, b));
    }
}

TEST(LieBracket, Examples) {
    RS c = rnd(1, 1, 4, 12);
    EXPECT_TRUE(fliess::lie_bracket(c, c, 4).is_zero_series());
    EXPECT_EQ(fliess::lie_bracket(mono(1, 2, {1}), mono(1, 2, {0}), 2), mono(1, 2, {0, 0}));
    EXPECT_THROW(fliess::lie_bracket(RS(2, 1, 2), RS(2, 2, 2), 2), fliess::ComponentMismatch);
}

TEST(LieBracket, Jacobi) {
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
        const int L = 4;
        RS c = rnd(1, 1, L, seed + 20), d = rnd(1, 1, L, seed + 21), e = rnd(1, 1, L, seed + 22);
        auto br = [L](const RS& x, const RS& y) { return fliess::lie_bracket(x, y, L); };
        EXPECT_TRUE((br(br(c, d), e) + br(br(d, e), c) + br(br(e, c), d)).is_zero_series());
        EXPECT_EQ(br(c, d), -br(d, c));
    }
}

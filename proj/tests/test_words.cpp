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

#include "fliess/word.hpp"
#include "oracles.hpp"

using fliess::Word;

TEST(Words, EnumerateCountsAndOrder) {
    EXPECT_EQ(fliess::enumerate_words(1, 0), std::vector<Word>{Word{}});
    EXPECT_EQ(fliess::enumerate_words(1, 1), (std::vector<Word>{Word{0}, Word{1}}));
    auto w3 = fliess::enumerate_words(1, 3);
    ASSERT_EQ(w3.size(), 8u);
    EXPECT_TRUE(std::is_sorted(w3.begin(), w3.end()));
    EXPECT_EQ(fliess::enumerate_words(2, 4).size(), 81u);
}

TEST(Words, Degree) {
    EXPECT_EQ(fliess::degree(Word{}), 1);
    EXPECT_EQ(fliess::degree(Word{0}), 3);
    EXPECT_EQ(fliess::degree(Word{1, 0, 1}), 5);
    EXPECT_EQ(fliess::degree(Word{2, 0, 1}), 5);  // non-x0 letters weigh one
}

TEST(Words, ParseAndPrint) {
    EXPECT_EQ(Word::parse("e"), Word{});
    EXPECT_EQ(Word::parse("x0x1x1"), (Word{0, 1, 1}));
    EXPECT_EQ((Word{0, 1, 1}).str(), "x0x1x1");
    EXPECT_EQ(Word{}.str(), "e");
    EXPECT_THROW(Word::parse("x9", 1), fliess::SyntaxError);
    EXPECT_THROW(Word::parse("x0y1"), fliess::SyntaxError);
    EXPECT_THROW(Word::parse("x"), fliess::SyntaxError);
    EXPECT_THROW(Word::parse(""), fliess::SyntaxError);
    EXPECT_THROW(Word::parse("x0 x1"), fliess::SyntaxError);
}

TEST(Words, ShuffleExamples) {
    EXPECT_EQ(fliess::shuffle_words(Word{0}, Word{1}), (fliess::WordMultiset{{Word{0, 1}, 1}, {Word{1, 0}, 1}}));
    EXPECT_EQ(fliess::shuffle_words(Word{1}, Word{1}), (fliess::WordMultiset{{Word{1, 1}, 2}}));
    Word eta{1, 0, 1};
    EXPECT_EQ(fliess::shuffle_words(Word{}, eta), (fliess::WordMultiset{{eta, 1}}));
    EXPECT_EQ(fliess::shuffle_words(eta, Word{}), (fliess::WordMultiset{{eta, 1}}));
}

// Exhaustive over all pairs of words up to length 5 on {x0, x1}.
TEST(Words, ShuffleMatchesPositionEnumeration) {
    auto words = fliess::words_up_to(1, 5);
    for (const Word& a : words)
        for (const Word& b : words) {
            if (a.size() + b.size() > 8) continue;
            auto got = fliess::shuffle_words(a, b);
            ASSERT_EQ(got, oracle::shuffle_words(a, b)) << a.str() << " ш " << b.str();
            ASSERT_EQ(got, fliess::shuffle_words(b, a));
            std::uint64_t total = 0;
            for (const auto& [w, k] : got) {
                ASSERT_EQ(w.size(), a.size() + b.size());
                total += k;
            }
            ASSERT_EQ(total, oracle::binomial(a.size() + b.size(), a.size()));
        }
}

TEST(Words, ShufflePowerOfLetterIsFactorialTimesPower) {
    for (int i = 0; i <= 1; ++i) {
        fliess::WordMultiset acc{{Word{}, 1}};
        std::uint64_t fact = 1;
        for (int n = 1; n <= 6; ++n) {
            fliess::WordMultiset next;
            for (const auto& [w, k] : acc)
                for (const auto& [v, j] : fliess::shuffle_words(w, Word{i})) next[v] += k * j;
            acc = next;
            fact *= static_cast<std::uint64_t>(n);
            EXPECT_EQ(acc, (fliess::WordMultiset{{Word::repeat(i, n), fact}}));
        }
    }
}

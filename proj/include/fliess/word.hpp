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

// Words over the alphabet {x0, ..., xm} and their combinatorics.

#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <map>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "fliess/error.hpp"

namespace fliess {

/// Largest letter index expressible in the textual word syntax (`x<digit>`).
inline constexpr int kMaxLetter = 9;

/// A finite word x_{i1}...x_{ik}; the empty word is the identity of
/// concatenation. Words order lexicographically by letter index.
class Word {
public:
    Word() = default;
    Word(std::initializer_list<int> letters) {
        for (int l : letters) push_back(l);
    }
    explicit Word(const std::vector<int>& letters) {
        for (int l : letters) push_back(l);
    }

    static Word letter(int i) { return Word{i}; }

    /// x_i^n
    static Word repeat(int i, int n) {
        Word w;
        w.letters_.assign(static_cast<std::size_t>(n), static_cast<char>(i));
        return w;
    }

    int size() const noexcept { return static_cast<int>(letters_.size()); }
    bool empty() const noexcept { return letters_.empty(); }
    int operator[](int pos) const { return static_cast<unsigned char>(letters_[static_cast<std::size_t>(pos)]); }
    int front() const { return (*this)[0]; }
    int back() const { return (*this)[size() - 1]; }

    /// Number of occurrences of x_i.
    int count(int i) const {
        return static_cast<int>(std::count(letters_.begin(), letters_.end(), static_cast<char>(i)));
    }

    int max_letter() const {
        int m = -1;
        for (char ch : letters_) m = std::max(m, static_cast<int>(static_cast<unsigned char>(ch)));
        return m;
    }

    void push_back(int i) {
        if (i < 0 || i > 255) throw InvalidArgument("letter index out of range");
        letters_.push_back(static_cast<char>(i));
    }

    Word prepend(int i) const {
        Word w;
        w.letters_.reserve(letters_.size() + 1);
        w.letters_.push_back(static_cast<char>(i));
        w.letters_ += letters_;
        return w;
    }

    /// Drops the first `n` letters.
    Word suffix(int n) const {
        Word w;
        w.letters_ = letters_.substr(static_cast<std::size_t>(n));
        return w;
    }

    Word prefix(int n) const {
        Word w;
        w.letters_ = letters_.substr(0, static_cast<std::size_t>(n));
        return w;
    }

    bool starts_with(const Word& p) const {
        return letters_.compare(0, p.letters_.size(), p.letters_) == 0;
    }

    friend Word operator+(const Word& a, const Word& b) {
        Word w;
        w.letters_ = a.letters_ + b.letters_;
        return w;
    }

    /// Raw letter bytes; also the hash and ordering key.
    const std::string& key() const noexcept { return letters_; }

    /// `e` for the empty word, otherwise `x0x1...`.
    std::string str() const {
        if (letters_.empty()) return "e";
        std::string out;
        out.reserve(letters_.size() * 2);
        for (char ch : letters_) {
            out += 'x';
            out += std::to_string(static_cast<unsigned char>(ch));
        }
        return out;
    }

    /// Strict parse of the textual syntax; every letter must be <= max_letter.
    static Word parse(std::string_view text, int max_letter = kMaxLetter) {
        if (text == "e") return Word{};
        if (text.empty()) throw SyntaxError("empty word (use 'e' for the empty word)");
        Word w;
        std::size_t pos = 0;
        while (pos < text.size()) {
            if (text[pos] != 'x' || pos + 1 >= text.size() || text[pos + 1] < '0' || text[pos + 1] > '9')
                throw SyntaxError("malformed word '" + std::string(text) + "'");
            int i = text[pos + 1] - '0';
            if (i > max_letter)
                throw SyntaxError("letter x" + std::to_string(i) + " outside alphabet {x0..x" +
                                  std::to_string(max_letter) + "}");
            w.push_back(i);
            pos += 2;
        }
        return w;
    }

    friend bool operator==(const Word&, const Word&) = default;
    friend auto operator<=>(const Word& a, const Word& b) { return a.letters_ <=> b.letters_; }

private:
    std::string letters_;
};

/// Word -> positive multiplicity.
using WordMultiset = std::map<Word, std::uint64_t>;

/// All (m+1)^k words of length k in lexicographic order.
inline std::vector<Word> enumerate_words(int m, int k) {
    std::vector<Word> out{Word{}};
    for (int level = 0; level < k; ++level) {
        std::vector<Word> next;
        next.reserve(out.size() * static_cast<std::size_t>(m + 1));
        for (const Word& w : out)
            for (int i = 0; i <= m; ++i) {
                Word v = w;
                v.push_back(i);
                next.push_back(std::move(v));
            }
        out = std::move(next);
    }
    return out;
}

/// All words of length <= max_len, grouped by length.
inline std::vector<Word> words_up_to(int m, int max_len) {
    std::vector<Word> out;
    for (int k = 0; k <= max_len; ++k) {
        auto level = enumerate_words(m, k);
        out.insert(out.end(), level.begin(), level.end());
    }
    return out;
}

/// Grading 2|w|_{x0} + (number of other letters) + 1. For the two-letter
/// alphabet this is the standard grading of the feedback Hopf algebra; larger
/// alphabets weight every non-x0 letter by one.
inline int degree(const Word& w) {
    int zeros = w.count(0);
    return 2 * zeros + (w.size() - zeros) + 1;
}

namespace detail {

using ShuffleTerms = std::vector<std::pair<Word, std::uint64_t>>;

inline std::unordered_map<std::string, ShuffleTerms>& shuffle_memo() {
    thread_local std::unordered_map<std::string, ShuffleTerms> memo;
    return memo;
}

inline const ShuffleTerms& shuffle_terms(const Word& a, const Word& b) {
    const Word& lo = a <= b ? a : b;
    const Word& hi = a <= b ? b : a;
    std::string key = lo.key();
    key += '\xff';
    key += hi.key();
    auto& memo = shuffle_memo();
    if (auto it = memo.find(key); it != memo.end()) return it->second;

    ShuffleTerms result;
    if (lo.empty() || hi.empty()) {
        result.emplace_back(lo.empty() ? hi : lo, 1);
    } else {
        std::map<Word, std::uint64_t> acc;
        for (const auto& [w, k] : shuffle_terms(lo.suffix(1), hi)) acc[w.prepend(lo.front())] += k;
        for (const auto& [w, k] : shuffle_terms(lo, hi.suffix(1))) acc[w.prepend(hi.front())] += k;
        result.assign(acc.begin(), acc.end());
    }
    return memo.emplace(std::move(key), std::move(result)).first->second;
}

}  // namespace detail

/// Word shuffle, from (x_i u) ш (x_j v) = x_i(u ш x_j v) + x_j(x_i u ш v).
/// Results are memoized per thread.
inline WordMultiset shuffle_words(const Word& a, const Word& b) {
    const auto& terms = detail::shuffle_terms(a, b);
    return WordMultiset(terms.begin(), terms.end());
}

inline void clear_shuffle_cache() { detail::shuffle_memo().clear(); }

}  // namespace fliess

template <>
struct std::hash<fliess::Word> {
    std::size_t operator()(const fliess::Word& w) const noexcept { return std::hash<std::string>{}(w.key()); }
};

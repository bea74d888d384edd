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

// Truncated noncommutative formal power series.
//
// A Series<S> stores the coefficients (c, w) for all words w with |w| <= L,
// where L is the truncation length. Inside the truncation an absent word has
// coefficient zero; beyond it the coefficient is unknown and querying it is an
// error. Each of the l components is kept as a sparse word -> scalar map with
// no stored zeros, so equality of series is equality of the maps.

#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "fliess/error.hpp"
#include "fliess/scalar.hpp"
#include "fliess/word.hpp"

namespace fliess {

template <class S>
class Series {
public:
    using scalar_type = S;
    using Terms = std::map<Word, S>;

    /// Zero series over {x0..x_m} with `components` components, truncated at `trunc`.
    explicit Series(int alphabet_max = 1, int components = 1, int trunc = 0)
        : m_(alphabet_max), trunc_(trunc), comps_(static_cast<std::size_t>(components)) {
        if (alphabet_max < 0 || alphabet_max > kMaxLetter) throw InvalidArgument("alphabet size out of range");
        if (components < 1) throw InvalidArgument("a series needs at least one component");
        if (trunc < 0) throw InvalidArgument("negative truncation length");
    }

    static Series zero(int m, int components, int trunc) { return Series(m, components, trunc); }

    /// The unit 1 = 1·e (single component).
    static Series one(int m, int trunc) { return monomial(m, trunc, Word{}, S(1)); }

    static Series monomial(int m, int trunc, const Word& w, const S& coeff) {
        Series s(m, 1, trunc);
        s.set(w, coeff);
        return s;
    }

    /// Stacks single-component series into one multi-component series.
    static Series from_components(const std::vector<Series>& parts) {
        if (parts.empty()) throw InvalidArgument("no components");
        Series out(parts.front().m_, static_cast<int>(parts.size()), parts.front().trunc_);
        for (std::size_t j = 0; j < parts.size(); ++j) {
            const Series& p = parts[j];
            if (p.components() != 1) throw ComponentMismatch("from_components expects single-component parts");
            if (p.m_ != out.m_) throw AlphabetMismatch("components over different alphabets");
            out.trunc_ = std::min(out.trunc_, p.trunc_);
            out.comps_[j] = p.comps_[0];
        }
        out.drop_beyond(out.trunc_);
        return out;
    }

    int alphabet_max() const noexcept { return m_; }
    int components() const noexcept { return static_cast<int>(comps_.size()); }
    int trunc() const noexcept { return trunc_; }

    const Terms& terms(int comp = 0) const { return comps_.at(static_cast<std::size_t>(comp)); }

    /// Single-component series holding component `comp`.
    Series component(int comp) const {
        Series out(m_, 1, trunc_);
        out.comps_[0] = terms(comp);
        return out;
    }

    /// Coefficient vector at `w`; throws QueryBeyondTruncation when |w| > L.
    std::vector<S> coefficient(const Word& w) const {
        check_query(w);
        std::vector<S> out;
        out.reserve(comps_.size());
        for (const Terms& t : comps_) {
            auto it = t.find(w);
            out.push_back(it == t.end() ? S(0) : it->second);
        }
        return out;
    }

    S coefficient(const Word& w, int comp) const {
        check_query(w);
        const Terms& t = terms(comp);
        auto it = t.find(w);
        return it == t.end() ? S(0) : it->second;
    }

    void set(const Word& w, const S& value, int comp = 0) {
        check_store(w);
        Terms& t = comps_.at(static_cast<std::size_t>(comp));
        if (is_zero(value))
            t.erase(w);
        else
            t[w] = value;
    }

    void add(const Word& w, const S& value, int comp = 0) {
        check_store(w);
        add_unchecked(comps_.at(static_cast<std::size_t>(comp)), w, value);
    }

    /// Number of stored (word, component) entries.
    std::size_t size() const noexcept {
        std::size_t n = 0;
        for (const Terms& t : comps_) n += t.size();
        return n;
    }

    bool is_zero_series() const noexcept {
        return std::all_of(comps_.begin(), comps_.end(), [](const Terms& t) { return t.empty(); });
    }

    /// Restriction to words of length <= L (L must not exceed the current truncation).
    Series truncated(int L) const {
        if (L > trunc_) throw TruncationMismatch("cannot raise truncation from " + std::to_string(trunc_) + " to " + std::to_string(L));
        Series out = *this;
        out.trunc_ = L;
        out.drop_beyond(L);
        return out;
    }

    /// The same coefficients read as a polynomial: every word of length in
    /// (trunc, L] is declared zero. L below the current truncation truncates.
    Series as_polynomial(int L) const {
        if (L <= trunc_) return truncated(L);
        Series out = *this;
        out.trunc_ = L;
        return out;
    }

    /// Applies f to every coefficient (zeros produced by f are dropped).
    template <class F>
    Series map_coefficients(F&& f) const {
        Series out(m_, components(), trunc_);
        for (std::size_t j = 0; j < comps_.size(); ++j)
            for (const auto& [w, v] : comps_[j]) {
                S nv = f(w, v);
                if (!is_zero(nv)) out.comps_[j].emplace(w, std::move(nv));
            }
        return out;
    }

    Series& operator+=(const Series& o) { return accumulate(o, false); }
    Series& operator-=(const Series& o) { return accumulate(o, true); }

    Series& operator*=(const S& k) {
        if (is_zero(k)) {
            for (Terms& t : comps_) t.clear();
            return *this;
        }
        for (Terms& t : comps_)
            for (auto& kv : t) kv.second *= k;
        return *this;
    }

    friend Series operator+(Series a, const Series& b) { return a += b; }
    friend Series operator-(Series a, const Series& b) { return a -= b; }
    friend Series operator*(Series a, const S& k) { return a *= k; }
    friend Series operator*(const S& k, Series a) { return a *= k; }
    friend Series operator-(Series a) {
        for (Terms& t : a.comps_)
            for (auto& kv : t) kv.second = -kv.second;
        return a;
    }

    friend bool operator==(const Series& a, const Series& b) {
        return a.m_ == b.m_ && a.trunc_ == b.trunc_ && a.comps_ == b.comps_;
    }

    // Unchecked mutable access for product kernels.
    Terms& mutable_terms(int comp = 0) { return comps_.at(static_cast<std::size_t>(comp)); }

    static void add_unchecked(Terms& t, const Word& w, const S& value) {
        if (is_zero(value)) return;
        auto [it, inserted] = t.try_emplace(w, value);
        if (!inserted) {
            it->second += value;
            if (is_zero(it->second)) t.erase(it);
        }
    }

private:
    void check_query(const Word& w) const {
        if (w.size() > trunc_)
            throw QueryBeyondTruncation("coefficient of " + w.str() + " is unknown at truncation " + std::to_string(trunc_));
        if (w.max_letter() > m_) throw AlphabetMismatch("word " + w.str() + " outside the alphabet");
    }

    void check_store(const Word& w) const {
        if (w.size() > trunc_)
            throw QueryBeyondTruncation("cannot store " + w.str() + " beyond truncation " + std::to_string(trunc_));
        if (w.max_letter() > m_) throw AlphabetMismatch("word " + w.str() + " outside the alphabet");
    }

    void drop_beyond(int L) {
        for (Terms& t : comps_)
            std::erase_if(t, [L](const auto& kv) { return kv.first.size() > L; });
    }

    Series& accumulate(const Series& o, bool subtract) {
        if (o.m_ != m_) throw AlphabetMismatch("series over different alphabets");
        if (o.components() != components()) throw ComponentMismatch("series with different component counts");
        if (o.trunc_ < trunc_) {
            trunc_ = o.trunc_;
            drop_beyond(trunc_);
        }
        for (std::size_t j = 0; j < comps_.size(); ++j)
            for (const auto& [w, v] : o.comps_[j]) {
                if (w.size() > trunc_) continue;
                add_unchecked(comps_[j], w, subtract ? S(-v) : v);
            }
        return *this;
    }

    int m_;
    int trunc_;
    std::vector<Terms> comps_;
};

template <class To, class From>
Series<To> series_cast(const Series<From>& c) {
    Series<To> out(c.alphabet_max(), c.components(), c.trunc());
    for (int j = 0; j < c.components(); ++j)
        for (const auto& [w, v] : c.terms(j)) out.set(w, scalar_cast<To>(v), j);
    return out;
}

/// Witness that |(c,w)| <= K M^{|w|} |w|! on the stored support.
template <class S>
struct GrowthEstimate {
    S K;
    S M;

    bool bounds(const Series<S>& c) const {
        for (int j = 0; j < c.components(); ++j)
            for (const auto& [w, v] : c.terms(j))
                if (abs_value(v) > K * power(M, w.size()) * factorial<S>(w.size())) return false;
        return true;
    }
};

/// max over stored words and components of |(c,w)| / (M^{|w|} |w|!).
/// Exact for polynomial series, a lower bound of the untruncated norm otherwise.
template <class S>
S linf_norm(const Series<S>& c, const S& M) {
    if (!(M > S(0))) throw InvalidArgument("linf_norm needs M > 0");
    std::vector<S> weight{S(1)};
    for (int n = 1; n <= c.trunc(); ++n) weight.push_back(weight.back() * M * S(n));
    S best(0);
    for (int j = 0; j < c.components(); ++j)
        for (const auto& [w, v] : c.terms(j)) {
            S r = abs_value(v) / weight[static_cast<std::size_t>(w.size())];
            if (r > best) best = r;
        }
    return best;
}

/// sum over |w| <= L of K M^{|w|} |w|! w, the extremal element of the ball
/// of radius K in the l-infinity,M norm.
template <class S>
Series<S> worst_case_series(const S& K, const S& M, int L, int m = 1, int components = 1) {
    Series<S> out(m, components, L);
    for (int n = 0; n <= L; ++n) {
        S value = K * power(M, n) * factorial<S>(n);
        for (const Word& w : enumerate_words(m, n))
            for (int j = 0; j < components; ++j) out.set(w, value, j);
    }
    return out;
}

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

}  // namespace detail

/// Independent RNG stream for (seed, stream); schedules never affect output.
inline std::mt19937_64 make_rng(std::uint64_t seed, std::uint64_t stream = 0) {
    return std::mt19937_64(detail::splitmix64(seed ^ detail::splitmix64(stream + 0x5851f42d4c957f2dULL)));
}

/// Uniform draw from [-1, 1]: exact rationals with denominator 1000, or doubles.
template <class S>
S uniform_unit(std::mt19937_64& rng) {
    if constexpr (std::is_same_v<S, double>) {
        return std::uniform_real_distribution<double>(-1.0, 1.0)(rng);
    } else {
        std::uniform_int_distribution<int> d(-1000, 1000);
        return S(Rational(d(rng), 1000));
    }
}

/// Every coefficient uniform in [-K M^{|w|}|w|!, +K M^{|w|}|w|!], hence
/// linf_norm(result, M) <= K. Deterministic in `seed`.
template <class S>
Series<S> random_ball_series(const S& K, const S& M, int L, std::uint64_t seed, int m = 1, int components = 1,
                             bool proper = false) {
    auto rng = make_rng(seed);
    Series<S> out(m, components, L);
    for (int n = proper ? 1 : 0; n <= L; ++n) {
        S bound = K * power(M, n) * factorial<S>(n);
        for (const Word& w : enumerate_words(m, n))
            for (int j = 0; j < components; ++j) out.set(w, uniform_unit<S>(rng) * bound, j);
    }
    return out;
}

/// Options for random algebraic test inputs.
struct RandomSeriesOptions {
    int max_numerator = 3;
    int max_denominator = 3;
    double density = 1.0;  ///< probability that a word is present
    bool proper = false;   ///< force (c, e) = 0
    bool nonproper = false;  ///< force (c, e) != 0
};

/// Small-height random rational coefficients, for exact algebraic identities.
template <class S>
Series<S> random_series(int m, int components, int L, std::uint64_t seed, const RandomSeriesOptions& opt = {}) {
    auto rng = make_rng(seed, 1);
    std::uniform_int_distribution<int> num(-opt.max_numerator, opt.max_numerator);
    std::uniform_int_distribution<int> den(1, opt.max_denominator);
    std::uniform_real_distribution<double> keep(0.0, 1.0);
    Series<S> out(m, components, L);
    for (const Word& w : words_up_to(m, L))
        for (int j = 0; j < components; ++j) {
            if (w.empty() && opt.proper) continue;
            int p = num(rng), q = den(rng);
            bool present = keep(rng) < opt.density;
            if (w.empty() && opt.nonproper) {
                present = true;
                if (p == 0) p = 1;
            }
            if (present && p != 0) out.set(w, S(Rational(p, q)), j);
        }
    return out;
}

}  // namespace fliess

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

// Bilinear products on truncated series: shuffle, composition, mixed
// composition, the pre-Lie product and its Lie bracket.
//
// Composition-type products are sums over the support of c of a word-indexed
// family of linear maps that factor letter by letter:
//
//   c o d = sum_w (c,w) psi_d(w)(1),  psi_d(x_i w) = psi_d(x_i) . psi_d(w).
//
// Grouping the support by common prefix gives a Horner scheme over the prefix
// trie of supp(c). Every letter map lengthens words by at least one, so the
// node at depth k only needs its result up to length L - k; this is what keeps
// the products affordable at moderate truncation.

#pragma once

#include <cstdint>
#include <unordered_map>
#include <utility>
#include <vector>

#include "fliess/error.hpp"
#include "fliess/series.hpp"
#include "fliess/word.hpp"

namespace fliess {

namespace detail {

template <class S>
using Terms = typename Series<S>::Terms;

template <class S>
using Entries = std::vector<std::pair<Word, S>>;

/// Shuffle of two single-component coefficient maps, keeping words of length <= T.
template <class S>
Terms<S> shuffle_kernel(const Terms<S>& a, const Terms<S>& b, int T) {
    Terms<S> out;
    if (T < 0 || a.empty() || b.empty()) return out;
    std::vector<const std::pair<const Word, S>*> bs;
    bs.reserve(b.size());
    for (const auto& kv : b)
        if (kv.first.size() <= T) bs.push_back(&kv);
    std::stable_sort(bs.begin(), bs.end(), [](auto* x, auto* y) { return x->first.size() < y->first.size(); });

    std::unordered_map<Word, S> acc;
    for (const auto& [nu, x] : a) {
        int room = T - nu.size();
        if (room < 0) continue;
        for (const auto* kv : bs) {
            const Word& xi = kv->first;
            if (xi.size() > room) break;
            S xy = x * kv->second;
            if (nu.empty() || xi.empty()) {
                auto [it, fresh] = acc.try_emplace(nu.empty() ? xi : nu, xy);
                if (!fresh) it->second += xy;
                continue;
            }
            for (const auto& [w, k] : detail::shuffle_terms(nu, xi)) {
                S term = k == 1 ? xy : S(xy * S(k));
                auto [it, fresh] = acc.try_emplace(w, term);
                if (!fresh) it->second += term;
            }
        }
    }
    for (auto& [w, v] : acc)
        if (!is_zero(v)) out.emplace(w, std::move(v));
    return out;
}

/// x_i e
template <class S>
Terms<S> prefix_letter(int i, const Terms<S>& e) {
    Terms<S> out;
    for (const auto& [w, v] : e) out.emplace_hint(out.end(), w.prepend(i), v);
    return out;
}

template <class S>
void add_into(Terms<S>& acc, const Terms<S>& e) {
    for (const auto& [w, v] : e) Series<S>::add_unchecked(acc, w, v);
}

/// Horner evaluation of sum_w (c,w) F(w)(1) over the prefix trie of the
/// sorted entries [lo, hi), all sharing a prefix of length `depth`.
/// `apply(i, e, T)` must return F(x_i)(e) truncated at T, given e truncated at T-1.
template <class S, class Apply>
Terms<S> horner(const Entries<S>& e, std::size_t lo, std::size_t hi, int depth, int T, const Apply& apply) {
    Terms<S> out;
    std::size_t pos = lo;
    if (pos < hi && e[pos].first.size() == depth) {
        if (T >= 0) out.emplace(Word{}, e[pos].second);
        ++pos;
    }
    while (pos < hi) {
        int letter = e[pos].first[depth];
        std::size_t end = pos;
        while (end < hi && e[end].first[depth] == letter) ++end;
        if (T >= 1) {
            Terms<S> inner = horner<S>(e, pos, end, depth + 1, T - 1, apply);
            if (!inner.empty()) add_into<S>(out, apply(letter, inner, T));
        }
        pos = end;
    }
    return out;
}

template <class S>
Entries<S> sorted_entries(const Terms<S>& t, int L) {
    Entries<S> out;
    for (const auto& [w, v] : t)
        if (w.size() <= L) out.emplace_back(w, v);
    return out;
}

template <class S>
void require_trunc(const Series<S>& c, int L, const char* what) {
    if (L < 0) throw InvalidArgument("negative truncation");
    if (c.trunc() < L)
        throw TruncationMismatch(std::string(what) + ": input truncated at " + std::to_string(c.trunc()) +
                                 " but result requested at " + std::to_string(L));
}

/// Checks that d can play the role of the right argument of a composition-type
/// product with c (d[i] indexed by the letters x1..xm of c's alphabet).
template <class S>
void require_composable(const Series<S>& c, const Series<S>& d, int L, const char* what) {
    require_trunc(c, L, what);
    require_trunc(d, L, what);
    if (c.alphabet_max() != d.alphabet_max()) throw AlphabetMismatch(std::string(what) + ": different alphabets");
    if (d.components() != c.alphabet_max())
        throw ComponentMismatch(std::string(what) + ": right argument needs " + std::to_string(c.alphabet_max()) +
                                " components, has " + std::to_string(d.components()));
}

}  // namespace detail

/// c ш d truncated at L, componentwise for multi-component series.
template <class S>
Series<S> shuffle(const Series<S>& c, const Series<S>& d, int L) {
    detail::require_trunc(c, L, "shuffle");
    detail::require_trunc(d, L, "shuffle");
    if (c.alphabet_max() != d.alphabet_max()) throw AlphabetMismatch("shuffle: different alphabets");
    if (c.components() != d.components()) throw ComponentMismatch("shuffle: component counts differ");
    Series<S> out(c.alphabet_max(), c.components(), L);
    for (int j = 0; j < c.components(); ++j) out.mutable_terms(j) = detail::shuffle_kernel<S>(c.terms(j), d.terms(j), L);
    return out;
}

/// c^{ш n}, with c^{ш 0} = 1 (componentwise).
template <class S>
Series<S> shuffle_power(const Series<S>& c, int n, int L) {
    Series<S> unit(c.alphabet_max(), c.components(), L);
    for (int j = 0; j < c.components(); ++j) unit.set(Word{}, S(1), j);
    Series<S> acc = unit;
    for (int k = 0; k < n; ++k) acc = shuffle(acc, c, L);
    return acc;
}

/// Composition product c o d: psi_d(x_i)(e) = x0 (d[i] ш e), with d[0] = 1.
template <class S>
Series<S> compose(const Series<S>& c, const Series<S>& d, int L) {
    detail::require_composable(c, d, L, "compose");
    auto apply = [&](int i, const detail::Terms<S>& e, int T) {
        if (i == 0) return detail::prefix_letter<S>(0, e);
        return detail::prefix_letter<S>(0, detail::shuffle_kernel<S>(d.terms(i - 1), e, T - 1));
    };
    Series<S> out(c.alphabet_max(), c.components(), L);
    for (int j = 0; j < c.components(); ++j) {
        auto entries = detail::sorted_entries<S>(c.terms(j), L);
        out.mutable_terms(j) = detail::horner<S>(entries, 0, entries.size(), 0, L, apply);
    }
    return out;
}

/// Mixed composition c o~ d_delta: phi_d(x_i)(e) = x_i e + x0 (d[i] ш e), with d[0] = 0.
template <class S>
Series<S> mixed_compose(const Series<S>& c, const Series<S>& d, int L) {
    detail::require_composable(c, d, L, "mixed_compose");
    auto apply = [&](int i, const detail::Terms<S>& e, int T) {
        detail::Terms<S> r = detail::prefix_letter<S>(i, e);
        if (i != 0) detail::add_into<S>(r, detail::prefix_letter<S>(0, detail::shuffle_kernel<S>(d.terms(i - 1), e, T - 1)));
        return r;
    };
    Series<S> out(c.alphabet_max(), c.components(), L);
    for (int j = 0; j < c.components(); ++j) {
        auto entries = detail::sorted_entries<S>(c.terms(j), L);
        out.mutable_terms(j) = detail::horner<S>(entries, 0, entries.size(), 0, L, apply);
    }
    return out;
}

namespace detail {

// Sum over the entries [lo,hi) sharing a prefix of length `depth` of
// (c, w eta) eta <| d, truncated at T, using
//   (x_j eta) <| d = x_j (eta <| d) + x0 (eta ш d[j]),  d[0] = 0,  e <| d = 0.
template <class S>
Terms<S> pre_lie_node(const Entries<S>& e, std::size_t lo, std::size_t hi, int depth, int T, const Series<S>& d) {
    Terms<S> out;
    std::size_t pos = lo;
    if (pos < hi && e[pos].first.size() == depth) ++pos;
    while (pos < hi) {
        int letter = e[pos].first[depth];
        std::size_t end = pos;
        while (end < hi && e[end].first[depth] == letter) ++end;
        if (T >= 1) {
            add_into<S>(out, prefix_letter<S>(letter, pre_lie_node<S>(e, pos, end, depth + 1, T - 1, d)));
            if (letter != 0) {
                Terms<S> quotient;
                for (std::size_t k = pos; k < end; ++k)
                    if (e[k].first.size() - depth - 1 <= T - 1)
                        quotient.emplace_hint(quotient.end(), e[k].first.suffix(depth + 1), e[k].second);
                add_into<S>(out, prefix_letter<S>(0, shuffle_kernel<S>(quotient, d.terms(letter - 1), T - 1)));
            }
        }
        pos = end;
    }
    return out;
}

}  // namespace detail

/// Pre-Lie product c <| d. Length additive: |eta| + |xi| = |nu| for every
/// contribution of (eta, xi) to nu.
template <class S>
Series<S> pre_lie(const Series<S>& c, const Series<S>& d, int L) {
    detail::require_composable(c, d, L, "pre_lie");
    Series<S> out(c.alphabet_max(), c.components(), L);
    for (int j = 0; j < c.components(); ++j) {
        auto entries = detail::sorted_entries<S>(c.terms(j), L);
        out.mutable_terms(j) = detail::pre_lie_node<S>(entries, 0, entries.size(), 0, L, d);
    }
    return out;
}

/// [c, d] = c <| d - d <| c, for m-component series over {x0..xm}.
template <class S>
Series<S> lie_bracket(const Series<S>& c, const Series<S>& d, int L) {
    if (c.components() != c.alphabet_max() || d.components() != d.alphabet_max())
        throw ComponentMismatch("lie_bracket: both arguments need m components");
    return pre_lie(c, d, L) - pre_lie(d, c, L);
}

}  // namespace fliess

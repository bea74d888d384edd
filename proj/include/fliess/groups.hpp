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

// The shuffle unit group (non-proper series under ш) and the output-feedback
// group (delta + series under the composition c_delta o d_delta), with the
// feedback product built from them.

#pragma once

#include <string>

#include "fliess/error.hpp"
#include "fliess/products.hpp"
#include "fliess/series.hpp"

namespace fliess {

/// delta + body, where delta is the formal generating series of the identity
/// operator. The body has one component per input letter x1..xm.
template <class S>
class UnitalSeries {
public:
    explicit UnitalSeries(Series<S> body) : body_(std::move(body)) {
        if (body_.components() != body_.alphabet_max())
            throw ComponentMismatch("unital series over {x0..x" + std::to_string(body_.alphabet_max()) + "} needs " +
                                    std::to_string(body_.alphabet_max()) + " components");
    }

    static UnitalSeries identity(int m, int trunc) { return UnitalSeries(Series<S>(m, m, trunc)); }

    const Series<S>& body() const noexcept { return body_; }
    int trunc() const noexcept { return body_.trunc(); }
    int alphabet_max() const noexcept { return body_.alphabet_max(); }
    bool is_identity() const noexcept { return body_.is_zero_series(); }

    friend bool operator==(const UnitalSeries&, const UnitalSeries&) = default;

private:
    Series<S> body_;
};

/// c^{ш -1} = (c,e)^{-1} sum_{k>=0} (c')^{ш k} with c' = 1 - c/(c,e).
/// The star sum stops at k = L since c' is proper. Componentwise for l > 1.
template <class S>
Series<S> shuffle_inverse(const Series<S>& c, int L) {
    detail::require_trunc(c, L, "shuffle_inverse");
    Series<S> out(c.alphabet_max(), c.components(), L);
    for (int j = 0; j < c.components(); ++j) {
        Series<S> cj = c.component(j).truncated(L);
        S c0 = cj.coefficient(Word{}, 0);
        if (is_zero(c0)) throw ProperSeriesError("shuffle inverse of a proper series (constant term is zero)");
        S inv0 = S(1) / c0;
        Series<S> unit = Series<S>::one(c.alphabet_max(), L);
        Series<S> proper_part = unit - cj * inv0;  // c'
        Series<S> term = unit, star = unit;
        for (int k = 1; k <= L && !term.is_zero_series(); ++k) {
            term = shuffle(term, proper_part, L);
            star += term;
        }
        out.mutable_terms(j) = (star * inv0).terms(0);
    }
    return out;
}

/// c / d = c ш d^{ш -1}.
template <class S>
Series<S> shuffle_quotient(const Series<S>& c, const Series<S>& d, int L) {
    return shuffle(c, shuffle_inverse(d, L), L);
}

/// (delta + c) o (delta + d) = delta + d + c o~ d_delta.
template <class S>
UnitalSeries<S> group_product(const UnitalSeries<S>& c, const UnitalSeries<S>& d, int L) {
    detail::require_trunc(c.body(), L, "group_product");
    detail::require_trunc(d.body(), L, "group_product");
    return UnitalSeries<S>(d.body().truncated(L) + mixed_compose(c.body(), d.body(), L));
}

/// Bookkeeping from the degreewise inverse solve.
struct InverseSweepStats {
    int sweeps = 0;
    int max_degree = 0;
};

/// Group inverse of c_delta at truncation N, solved degree by degree.
///
/// The inverse body e satisfies e = -(c o~ e_delta). In the graded-connected
/// coordinate algebra the degree-n coefficients of the right-hand side depend
/// only on coefficients of e of degree < n, so sweep n freezes degree n.
/// A sweep that changes an already frozen coefficient raises NonConvergence.
template <class S>
UnitalSeries<S> group_inverse(const UnitalSeries<S>& c, int N, InverseSweepStats* stats = nullptr) {
    detail::require_trunc(c.body(), N, "group_inverse");
    const int m = c.alphabet_max();
    const Series<S> body = c.body().truncated(N);
    int max_deg = 1;
    for (const Word& w : enumerate_words(m, N)) max_deg = std::max(max_deg, degree(w));

    auto restrict_degree = [](const Series<S>& s, int below_or_at) {
        return s.map_coefficients([below_or_at](const Word& w, const S& v) { return degree(w) <= below_or_at ? v : S(0); });
    };

    Series<S> e(m, m, N);
    int sweeps = 0;
    for (int n = 1; n <= max_deg; ++n) {
        Series<S> candidate = -mixed_compose(body, e, N);
        ++sweeps;
        if (restrict_degree(candidate, n - 1) != e)
            throw NonConvergence("group_inverse: sweep " + std::to_string(n) + " changed a lower-degree coefficient");
        e = restrict_degree(candidate, n);
    }
    if (stats) *stats = InverseSweepStats{sweeps, max_deg};
    return UnitalSeries<S>(std::move(e));
}

namespace detail {

template <class S>
void require_siso(const Series<S>& s, const char* what) {
    if (s.alphabet_max() != 1 || s.components() != 1)
        throw UnsupportedArity(std::string(what) + " is implemented for single-input single-output series only");
}

}  // namespace detail

/// Closed-loop series with F_c forward and F_d in the feedback path:
/// c @ d = c o~ (-(d o c))_delta^{o -1}.
template <class S>
Series<S> feedback(const Series<S>& c, const Series<S>& d, int L) {
    detail::require_siso(c, "feedback");
    detail::require_siso(d, "feedback");
    Series<S> loop = -compose(d, c, L);
    UnitalSeries<S> inv = group_inverse(UnitalSeries<S>(std::move(loop)), L);
    return mixed_compose(c, inv.body(), L);
}

/// Unity feedback c @ delta (identity operator in the feedback path):
/// c o~ (-c)_delta^{o -1}. In particular c^{o -1} = (-c) @ delta.
template <class S>
Series<S> unity_feedback(const Series<S>& c, int L) {
    detail::require_siso(c, "unity_feedback");
    UnitalSeries<S> inv = group_inverse(UnitalSeries<S>(-c.truncated(L)), L);
    return mixed_compose(c, inv.body(), L);
}

}  // namespace fliess

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

// Growth constants for the l-infinity,M norms and sampling experiments that
// test the product inequalities on truncated series.
//
// All norms here are computed on truncated series. The length sup inside the
// constants is taken over the same range 0..L as the norms, so both sides of
// an inequality see the same words.

#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "fliess/error.hpp"
#include "fliess/groups.hpp"
#include "fliess/parallel.hpp"
#include "fliess/polynomial.hpp"
#include "fliess/products.hpp"
#include "fliess/realization.hpp"
#include "fliess/series.hpp"

namespace fliess {

struct EpsilonConstants {
    double K;      ///< sup_n (n+1)/(1+eps)^n
    double K_hat;  ///< e^{-1}(1+eps)/log(1+eps)
    int argmax;    ///< the maximizing length
};

/// K_eps by brute force over lengths 0..ceil(1/log(1+eps))+2 (the continuous
/// maximizer is 1/log(1+eps) - 1) and its closed-form majorant.
inline EpsilonConstants k_epsilon(double eps) {
    if (!(eps > 0) || !std::isfinite(eps)) throw InvalidArgument("k_epsilon needs eps > 0");
    const double lg = std::log1p(eps);
    const int top = static_cast<int>(std::ceil(1.0 / lg)) + 2;
    EpsilonConstants out{1.0, std::exp(-1.0) * (1.0 + eps) / lg, 0};
    for (int n = 1; n <= top; ++n) {
        double v = (n + 1) * std::exp(-n * lg);
        if (v > out.K) {
            out.K = v;
            out.argmax = n;
        }
    }
    return out;
}

/// max_{n <= L} (n+1)(1+a)^n/(1+eps)^n. With a = 0 this is K_eps restricted to L.
template <class S>
S k_epsilon_truncated(const S& eps, int L, const S& a = S(0)) {
    S best(1), ratio = (S(1) + a) / (S(1) + eps), pw(1);
    for (int n = 1; n <= L; ++n) {
        pw *= ratio;
        S v = S(n + 1) * pw;
        if (v > best) best = v;
    }
    return best;
}

/// x/2 + sqrt(x^2/4 + x), the growth of the composition bound.
inline double phi(double x) {
    if (!(x >= 0)) throw InvalidArgument("phi needs x >= 0");
    return x / 2 + std::sqrt(x * x / 4 + x);
}

/// Inverse of phi on [0, inf): y^2/(1+y).
inline double phi_inverse(double y) { return y * y / (1 + y); }

struct BoundReport {
    std::string lemma;
    int samples = 0;
    double max_ratio = 0.0;
    std::string witness;
    bool pass = true;
    std::vector<std::string> notes;

    /// Folds one lhs/rhs observation into the report.
    void observe(double ratio, bool holds, const std::string& id) {
        if (samples == 0 || ratio > max_ratio) {
            max_ratio = ratio;
            witness = id;
        }
        ++samples;
        pass = pass && holds;
    }

    std::string summary() const {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.17g", max_ratio);
        return "lemma=" + lemma + " samples=" + std::to_string(samples) + " max_ratio=" + buf +
               " pass=" + (pass ? "true" : "false");
    }

    std::string text() const {
        std::ostringstream out;
        for (const auto& n : notes) out << "# " << n << '\n';
        out << "# witness " << witness << '\n' << summary() << '\n';
        return out.str();
    }
};

namespace detail {

inline double ratio_of(const Rational& lhs, const Rational& rhs) {
    if (lhs == 0) return 0.0;
    if (rhs == 0) return INFINITY;
    return to_double(lhs / rhs);
}

inline std::uint64_t sample_seed(std::uint64_t seed, std::uint64_t i) { return splitmix64(seed * 0x9e3779b97f4a7c15ULL + i); }

}  // namespace detail

/// Checks ||c sh d||_{M(1+eps)} <= K_eps ||c||_M ||d||_M exactly on random
/// pairs from the ball of radius 1, plus the zero pair and the extremal pair
/// c = d = worst_case_series(1, M) (which attains the bound).
inline BoundReport verify_shuffle_bound(const Rational& M, const Rational& eps, int L, int samples, std::uint64_t seed,
                                        int m = 1) {
    if (!(eps > 0) || !(M > 0)) throw InvalidArgument("verify_shuffle_bound needs M > 0 and eps > 0");
    if (samples < 1) throw InvalidArgument("need at least one sample");
    const Rational K = k_epsilon_truncated(eps, L);
    const Rational Me = M * (1 + eps);
    BoundReport rep;
    rep.lemma = "shuffle-bound";
    rep.notes.push_back("M=" + M.str() + " eps=" + eps.str() + " L=" + std::to_string(L) + " K_eps(L)=" + K.str());
    auto check = [&](const Series<Rational>& c, const Series<Rational>& d) {
        Rational lhs = linf_norm(shuffle(c, d, L), Me);
        Rational rhs = K * linf_norm(c, M) * linf_norm(d, M);
        return std::pair{detail::ratio_of(lhs, rhs), lhs <= rhs};
    };
    Series<Rational> zero(m, 1, L);
    auto [rz, hz] = check(zero, zero);
    rep.observe(rz, hz, "zero-pair");
    auto results = parallel_map(static_cast<std::size_t>(samples), [&](std::size_t i) {
        std::uint64_t s = detail::sample_seed(seed, i);
        return check(random_ball_series(Rational(1), M, L, s, m), random_ball_series(Rational(1), M, L, s + 1, m));
    });
    for (std::size_t i = 0; i < results.size(); ++i) rep.observe(results[i].first, results[i].second, "random-" + std::to_string(i));
    Series<Rational> wc = worst_case_series(Rational(1), M, L, m);
    auto [rw, hw] = check(wc, wc);
    rep.observe(rw, hw, "worst-case-pair");
    rep.notes.push_back("worst-case pair ratio=" + format_scalar(rw));
    return rep;
}

/// Checks ||c o d||_{M(1+eps)} <= ||c||_M max_{n<=L} (n+1)(1+a)^n/(1+eps)^n with
/// a = phi(m ||d||_M) < eps. Each random d is rescaled to a random fraction of
/// the largest admissible norm phi^{-1}(eps)/m. Floating point.
inline BoundReport verify_composition_bound(double M, double eps, int L, int samples, std::uint64_t seed, int m = 1) {
    if (!(eps > 0) || !(M > 0)) throw InvalidArgument("verify_composition_bound needs M > 0 and eps > 0");
    if (samples < 1) throw InvalidArgument("need at least one sample");
    const double d_max = phi_inverse(eps) / m;
    if (!(d_max > 0)) throw PreconditionUnsatisfiable("no admissible norm for d at eps=" + format_scalar(eps));
    const double tol = 1e-9;
    BoundReport rep;
    rep.lemma = "composition-bound";
    rep.notes.push_back("M=" + format_scalar(M) + " eps=" + format_scalar(eps) + " L=" + std::to_string(L) +
                        " max ||d||=" + format_scalar(d_max));
    auto check = [&](const Series<double>& c, const Series<double>& d) {
        const double a = phi(m * linf_norm(d, M));
        if (!(a < eps)) throw PreconditionUnsatisfiable("phi(m||d||) = " + format_scalar(a) + " is not below eps");
        double lhs = linf_norm(compose(c, d, L), M * (1 + eps));
        double rhs = linf_norm(c, M) * k_epsilon_truncated(eps, L, a);
        double r = lhs == 0 ? 0.0 : lhs / rhs;
        return std::pair{r, r <= 1 + tol};
    };
    auto results = parallel_map(static_cast<std::size_t>(samples), [&](std::size_t i) {
        std::uint64_t s = detail::sample_seed(seed, i);
        auto rng = make_rng(s, 7);
        double u = std::uniform_real_distribution<double>(0.05, 0.999)(rng);
        Series<double> c = random_ball_series(1.0, M, L, s, m);
        Series<double> d = random_ball_series(1.0, M, L, s + 1, m, m);
        double nd = linf_norm(d, M);
        if (nd > 0) d *= u * d_max / nd;
        return check(c, d);
    });
    for (std::size_t i = 0; i < results.size(); ++i) rep.observe(results[i].first, results[i].second, "random-" + std::to_string(i));
    auto [r0, h0] = check(random_ball_series(1.0, M, L, seed, m), Series<double>(m, m, L));
    rep.observe(r0, h0, "zero-d");
    return rep;
}

/// max over 1 <= n <= nmax, n <= k <= kmax of binom(n-1+k, n-1)/4^k.
inline Rational binomial_constant(int nmax = 12, int kmax = 12) {
    Rational best(0);
    for (int n = 1; n <= nmax; ++n)
        for (int k = n; k <= kmax; ++k) {
            BigInt b = 1;
            for (int i = 1; i <= n - 1; ++i) b = b * (k + i) / i;
            Rational v = Rational(b) / Rational(boost::multiprecision::pow(BigInt(4), static_cast<unsigned>(k)));
            if (v > best) best = v;
        }
    return best;
}

/// Result of the shuffle-power experiment.
struct ShufflePowerReport {
    BoundReport majorant;     ///< ||d^{sh n}||_{4N} <= K/2^n
    BoundReport convergence;  ///< partial sums decrease along c_j -> c
    Rational K;
    int N = 0;
    Rational scale;                 ///< ||c||_N + sup_j ||c_j||_N
    std::vector<double> partial_sums;  ///< one per j in the schedule
};

/// Shuffle powers of a convergent sequence c_j = c + pert/j of proper series.
///
/// N is the smallest integer >= M with ||c||_N + max_j ||c_j||_N <= 1/2. The
/// majorant d has (d, eta) = s N^{|eta|} |eta|! (eta != e) with s that sum, and
/// its shuffle powers are checked against K/2^n in the 4N norm for n <= L. The
/// convergence part reports sum_{n<=L} ||c^{sh n} - c_j^{sh n}||_{4N} along
/// j = 1, 2, 4, ..., which must decrease.
inline ShufflePowerReport verify_shuffle_power_sum(const Rational& M, int L, std::uint64_t seed, int max_N = 1000,
                                                   int j_count = 5) {
    if (L < 1) throw InvalidArgument("verify_shuffle_power_sum needs L >= 1");
    ShufflePowerReport out;
    out.K = binomial_constant(12, 12);
    Series<Rational> c = random_ball_series(Rational(1), M, L, seed, 1, 1, true);
    Series<Rational> pert = random_ball_series(Rational(1), M, L, seed + 1, 1, 1, true);
    std::vector<int> js;
    for (int j = 1, k = 0; k < j_count; ++k, j *= 2) js.push_back(j);
    std::vector<Series<Rational>> cj;
    for (int j : js) cj.push_back(c + pert * Rational(1, j));

    auto scale_at = [&](const Rational& N) {
        Rational sup(0);
        for (const auto& s : cj) sup = std::max(sup, linf_norm(s, N));
        return linf_norm(c, N) + sup;
    };
    int N = std::max(1, static_cast<int>(std::ceil(to_double(M))));
    while (scale_at(Rational(N)) > Rational(1, 2)) {
        if (++N > max_N) throw PreconditionUnsatisfiable("no N <= " + std::to_string(max_N) + " brings the norms below 1/2");
    }
    out.N = N;
    out.scale = scale_at(Rational(N));

    Series<Rational> d(1, 1, L);
    for (int n = 1; n <= L; ++n) {
        Rational v = out.scale * power(Rational(N), n) * factorial<Rational>(n);
        for (const Word& w : enumerate_words(1, n)) d.set(w, v);
    }
    out.majorant.lemma = "shuffle-power";
    out.majorant.notes.push_back("N=" + std::to_string(N) + " s=" + out.scale.str() + " K=" + out.K.str() +
                                 " L=" + std::to_string(L));
    const Rational N4(4 * N);
    Series<Rational> dn = Series<Rational>::one(1, L);
    for (int n = 1; n <= L; ++n) {
        dn = shuffle(dn, d, L);
        Rational lhs = linf_norm(dn, N4), rhs = out.K / power(Rational(2), n);
        out.majorant.observe(detail::ratio_of(lhs, rhs), lhs <= rhs, "n=" + std::to_string(n));
    }

    out.convergence.lemma = "shuffle-power-sum";
    auto powers = [&](const Series<Rational>& s) {
        std::vector<Series<Rational>> p;
        Series<Rational> acc = Series<Rational>::one(1, L);
        for (int n = 1; n <= L; ++n) p.push_back(acc = shuffle(acc, s, L));
        return p;
    };
    const auto pc = powers(c);
    auto partial = [&](const Series<Rational>& s) {
        auto ps = powers(s);
        Rational sum(0);
        for (int n = 0; n < L; ++n) sum += linf_norm(pc[static_cast<std::size_t>(n)] - ps[static_cast<std::size_t>(n)], N4);
        return sum;
    };
    Rational self = partial(c);
    out.convergence.observe(self == 0 ? 0.0 : 1.0, self == 0, "c_j=c");
    Rational prev(-1);
    for (std::size_t k = 0; k < cj.size(); ++k) {
        Rational sk = partial(cj[k]);
        out.partial_sums.push_back(to_double(sk));
        if (k > 0) out.convergence.observe(detail::ratio_of(sk, prev), sk < prev, "j=" + std::to_string(js[k]));
        prev = sk;
    }
    return out;
}

/// The two sides of the b_k computation and the normalized table.
struct BkTable {
    std::vector<Polynomial> inverse_coefficients;  ///< (c^{o-1}, x0^k) in K, M
    std::vector<Polynomial> b;                     ///< b_k(K)
    std::string normalization;
};

/// Realization of the inverse of the extremal series c = sum K M^{|w|}|w|! w
/// over {x0, x1}, without its direct feedthrough term:
///   z' = (M/K)(z^2 - z^3) + (M/K) z^2 u,  z(0) = K,  y = -z (+ u).
inline PolynomialRealization worst_case_inverse_realization() {
    return parse_realization(
        "states z\n"
        "params K M\n"
        "g0 (M/K)*(z^2-z^3)\n"
        "g1 (M/K)*z^2\n"
        "h -z\n"
        "z0 K\n");
}

/// Coefficients of x0^k, k <= k_max, in the group inverse of the extremal
/// series, computed by iterated Lie derivatives on the inverse realization
/// and by the degreewise group inverse. Both are symbolic in K and M; a
/// disagreement raises OracleMismatch. b_k is the quotient by K M^k.
inline BkTable bk_table(int k_max, int limit = 10) {
    if (k_max < 0 || k_max > limit)
        throw InvalidArgument("kmax must lie in 0.." + std::to_string(limit));
    const Polynomial K = Polynomial::variable("K"), M = Polynomial::variable("M");
    PolynomialRealization r = worst_case_inverse_realization();

    std::vector<Polynomial> lie;
    Polynomial p = r.h[0];
    for (int k = 0; k <= k_max; ++k) {
        lie.push_back(p.substitute("z", r.z0[0]));
        p = lie_derivative(r.g[0], p, r.states);
    }

    Series<Polynomial> cbar = worst_case_series<Polynomial>(K, M, k_max);
    Series<Polynomial> inv = group_inverse(UnitalSeries<Polynomial>(cbar), k_max).body();

    BkTable out;
    for (int k = 0; k <= k_max; ++k) {
        Polynomial g = inv.coefficient(Word::repeat(0, k), 0);
        if (g != lie[static_cast<std::size_t>(k)])
            throw OracleMismatch("coefficient of x0^" + std::to_string(k) + ": group inverse gives " + g.str() +
                                 ", Lie derivatives give " + lie[static_cast<std::size_t>(k)].str());
        Polynomial bk = g / (K * Polynomial::variable("M", k));
        auto [lo, hi] = bk.exponent_range("K");
        if (lo < 0 || bk.variables().count("M") || bk.variables().size() > 1)
            throw OracleMismatch("coefficient of x0^" + std::to_string(k) + " is not K M^" + std::to_string(k) +
                                 " times a polynomial in K: " + g.str());
        out.inverse_coefficients.push_back(g);
        out.b.push_back(bk);
    }
    out.normalization = "(c^{o-1}, x0^k) = b_k(K) * K * M^k with no factorial factor";
    return out;
}

/// 1, 2, 10, 82, 938, ... (EGF built from the Lambert W function), k <= 10.
inline const std::vector<BigInt>& bk_majorants() {
    static const std::vector<BigInt> v = {1, 2, 10, 82, 938, 13778, 247210, 5240338, 128149802,
                                          BigInt("3551246162"), BigInt("109979486890")};
    return v;
}

/// |b_k(K)| <= bbar_k on the given grid, exactly.
inline BoundReport verify_bk_majorant(const BkTable& table, int k_max, const std::vector<Rational>& grid) {
    if (k_max >= static_cast<int>(table.b.size())) throw InvalidArgument("table shorter than kmax");
    if (k_max >= static_cast<int>(bk_majorants().size())) throw InvalidArgument("no majorant known beyond k=10");
    BoundReport rep;
    rep.lemma = "bk-majorant";
    rep.notes.push_back("compares |b_k(K)| (absolute value) with the majorant sequence");
    for (int k = 0; k <= k_max; ++k) {
        Rational bound(bk_majorants()[static_cast<std::size_t>(k)]);
        for (const Rational& x : grid) {
            if (x < 0 || x > 1) throw InvalidArgument("grid point outside [0,1]");
            Rational v = abs_value(table.b[static_cast<std::size_t>(k)].substitute("K", Polynomial(x)).constant_value());
            rep.observe(to_double(v / bound), v <= bound, "k=" + std::to_string(k) + " K=" + x.str());
        }
    }
    return rep;
}

/// K in {0, 1/10, ..., 1}.
inline std::vector<Rational> unit_grid(int divisions = 10) {
    std::vector<Rational> g;
    for (int i = 0; i <= divisions; ++i) g.emplace_back(Rational(i, divisions));
    return g;
}

}  // namespace fliess

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

// fliess-kit: command-line front end.
//
//   fliess-kit <verb> [files] [--flag value]...
//
// Exit status: 0 success, 1 domain error (error kind on stderr, or a failed
// verification), 2 usage error.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "fliess/fliess.hpp"

namespace {

using namespace fliess;

struct Globals {
    int trunc = -1;
    bool rational = false;
    bool floating = false;
    std::uint64_t seed = 1;
    std::string out;
    int threads = 1;
};

std::string slurp(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw InvalidArgument("cannot read " + path);
    std::ostringstream s;
    s << f.rdbuf();
    return s.str();
}

void emit(const Globals& g, const std::string& text) {
    if (g.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(g.out, std::ios::binary);
    if (!f) throw InvalidArgument("cannot write " + g.out);
    f << text;
}

template <class S>
Series<S> load(const std::string& path) {
    return parse_series<S>(slurp(path));
}

// requested truncation, or the smallest one among the inputs
template <class S>
int pick_trunc(const Globals& g, std::initializer_list<const Series<S>*> xs) {
    if (g.trunc >= 0) return g.trunc;
    int L = -1;
    for (const auto* x : xs) L = L < 0 ? x->trunc() : std::min(L, x->trunc());
    return std::max(L, 0);
}

template <class S>
std::string binary_op(const std::string& verb, const std::string& a, const std::string& b, const Globals& g) {
    Series<S> c = load<S>(a), d = load<S>(b);
    const int L = pick_trunc<S>(g, {&c, &d});
    if (verb == "shuffle") return serialize_series(shuffle(c, d, L));
    if (verb == "compose") return serialize_series(compose(c, d, L));
    if (verb == "mixed-compose") return serialize_series(mixed_compose(c, d, L));
    if (verb == "pre-lie") return serialize_series(pre_lie(c, d, L));
    if (verb == "bracket") return serialize_series(lie_bracket(c, d, L));
    if (verb == "feedback") return serialize_series(feedback(c, d, L));
    throw InvalidArgument("unknown verb " + verb);
}

template <class S>
std::string unary_op(const std::string& verb, const std::string& a, const Globals& g) {
    Series<S> c = load<S>(a);
    const int L = pick_trunc<S>(g, {&c});
    if (verb == "shuffle-inv") return serialize_series(shuffle_inverse(c, L));
    if (verb == "group-inv") return serialize_series(group_inverse(UnitalSeries<S>(c), L).body());
    throw InvalidArgument("unknown verb " + verb);
}

template <class S>
std::string norm_op(const std::string& a, const std::string& M, const Globals& g) {
    Series<S> c = load<S>(a);
    if (g.trunc >= 0) c = c.truncated(g.trunc);
    return format_scalar(linf_norm(c, parse_scalar<S>(M))) + "\n";
}

std::string join(const std::vector<double>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + format_scalar(v[i]);
    return s;
}

template <class S>
std::string fliess_eval_op(const std::string& a, const std::string& sig, double t, const Globals& g) {
    Series<S> c = load<S>(a);
    if (g.trunc >= 0) c = c.truncated(g.trunc);
    InputSignal u = parse_signal(slurp(sig));
    FliessValue v = fliess_eval(c, u, t);
    return "t=" + format_scalar(t) + " y=" + join(v.y) + " top_stratum=" + join(v.top_stratum) + "\n";
}

template <class S>
std::string cascade_op(const std::string& a, const std::string& b, const std::string& sig, double t, const Globals& g) {
    Series<S> c = load<S>(a), d = load<S>(b);
    InputSignal u = parse_signal(slurp(sig));
    CascadeResult r = cascade_check(c, d, u, t, g.trunc);
    return "t=" + format_scalar(t) + " cascade=" + join(r.cascade) + " composite=" + join(r.composite) +
           " residual=" + format_scalar(r.residual) + " trunc=" + std::to_string(r.trunc) + "\n";
}

std::string realize_op(const std::string& path, const std::vector<std::string>& params, const Globals& g) {
    PolynomialRealization r = parse_realization(slurp(path));
    std::map<std::string, Polynomial> values;
    for (const auto& p : params) {
        auto eq = p.find('=');
        if (eq == std::string::npos || eq == 0) throw InvalidArgument("--param expects NAME=VALUE, got '" + p + "'");
        values[p.substr(0, eq)] = parse_polynomial(p.substr(eq + 1));
    }
    if (!values.empty()) r = r.with_parameters(values);
    const int L = g.trunc >= 0 ? g.trunc : 4;
    Series<Polynomial> c = realization_to_series(r, L);
    if (r.params.empty()) {
        Series<Rational> q = to_rational_series(c);
        return g.floating ? serialize_series(series_cast<double>(q)) : serialize_series(q);
    }
    return serialize_series(c);
}

std::vector<double> parse_times(const std::string& text) {
    std::vector<double> out;
    std::stringstream in(text);
    for (std::string tok; std::getline(in, tok, ',');) out.push_back(parse_double(std::string(detail::trim(tok))));
    if (out.empty()) throw InvalidArgument("empty --times list");
    return out;
}

std::string evolve_op(const std::string& path, int steps, const std::string& times, const std::string& dir, const Globals& g) {
    Series<double> c = series_cast<double>(load<Rational>(path));
    const int L = g.trunc >= 0 ? g.trunc : c.trunc();
    if (c.trunc() < L) throw TruncationMismatch("curve truncated below --trunc");
    c = c.truncated(L);
    std::vector<double> ts = parse_times(times);
    GroupPath fine = evolve(LieAlgebraCurve::constant(c), L, steps);
    std::vector<double> residuals;
    const bool coarse_ok = steps % 2 == 0;
    GroupPath coarse = coarse_ok ? evolve(LieAlgebraCurve::constant(c), L, steps / 2) : GroupPath{};
    for (double t : ts) {
        const auto& f = fine.at(t);
        double r = 0;
        if (coarse_ok) {
            try {
                r = max_abs_coefficient(f.body() - coarse.at(t).body());
            } catch (const InvalidArgument&) {
                r = 0;  // not on the coarse grid
            }
        }
        residuals.push_back(r);
    }
    return export_group_path(fine, ts, residuals, dir);
}

std::string volterra_op(const std::string& path, double t, int steps, int cap, const Globals& g) {
    Series<double> eta = series_cast<double>(load<Rational>(path));
    const int L = g.trunc >= 0 ? g.trunc : eta.trunc();
    if (eta.trunc() < L) throw TruncationMismatch("eta truncated below --trunc");
    eta = eta.truncated(L);
    VolterraOptions opt;
    opt.order_cap = cap;
    return serialize_series(shuffle_volterra([&](double) { return eta; }, t, L, steps, opt));
}

std::string bk_table_op(int kmax) {
    BkTable t = bk_table(kmax);
    std::string out = "# " + t.normalization + "\n";
    out += "# coefficients checked: Lie derivatives of the inverse realization = degreewise group inverse\n";
    for (std::size_t k = 0; k < t.b.size(); ++k) out += "b_" + std::to_string(k) + "(K) = " + t.b[k].str() + "\n";
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Formal power series toolkit for Fliess operators and their interconnections", "fliess-kit"};
    app.require_subcommand(1);
    app.fallthrough();
    Globals g;
    app.add_option("--trunc", g.trunc, "truncation length L")->check(CLI::NonNegativeNumber);
    auto* rat = app.add_flag("--rational", g.rational, "exact rational coefficients (default)");
    auto* flt = app.add_flag("--float", g.floating, "double coefficients");
    rat->excludes(flt);
    app.add_option("--seed", g.seed, "random seed");
    app.add_option("--out", g.out, "write output to PATH instead of stdout");
    app.add_option("--threads", g.threads, "worker cap")->check(CLI::PositiveNumber);

    std::string a, b, sig, verb;
    double t = 1.0;
    auto binary = [&](const char* name, const char* help) {
        auto* s = app.add_subcommand(name, help);
        s->add_option("a", a, "left series file")->required();
        s->add_option("b", b, "right series file")->required();
        return s;
    };
    for (auto [n, h] : {std::pair{"shuffle", "shuffle product"}, {"compose", "composition product"},
                        {"mixed-compose", "mixed composition c o~ d_delta"}, {"pre-lie", "pre-Lie product"},
                        {"bracket", "Lie bracket"}, {"feedback", "feedback product c @ d"}})
        binary(n, h);
    for (auto [n, h] : {std::pair{"shuffle-inv", "shuffle inverse"}, {"group-inv", "inverse in the output-feedback group"}}) {
        auto* s = app.add_subcommand(n, h);
        s->add_option("a", a, "series file")->required();
    }
    std::string M = "1";
    auto* norm = app.add_subcommand("norm", "l-infinity,M norm");
    norm->add_option("a", a, "series file")->required();
    norm->add_option("--M", M, "growth constant M");

    auto* feval = app.add_subcommand("fliess-eval", "evaluate F_c[u](t)");
    feval->add_option("a", a, "series file")->required();
    feval->add_option("signal", sig, "input signal file")->required();
    feval->add_option("--t", t, "evaluation time");

    auto* casc = app.add_subcommand("cascade-check", "compare F_c(F_d[u]) with F_{c o d}[u]");
    casc->add_option("a", a, "outer series")->required();
    casc->add_option("b", b, "inner series")->required();
    casc->add_option("signal", sig, "input signal file")->required();
    casc->add_option("--t", t, "evaluation time");

    std::vector<std::string> params;
    auto* real = app.add_subcommand("realize", "generating series of a polynomial realization");
    real->add_option("a", a, "realization file")->required();
    real->add_option("--param", params, "NAME=VALUE substitution");

    int steps = 256, cap = 40, kmax = 7;
    std::string times = "1", dir = "gamma_path";
    auto* evo = app.add_subcommand("evolve", "solve the Lie-type equation for a constant curve");
    evo->add_option("a", a, "series file with m components")->required();
    evo->add_option("--steps", steps, "RK4 steps on [0,1]")->check(CLI::PositiveNumber);
    evo->add_option("--times", times, "comma separated grid times to export");
    evo->add_option("--dir", dir, "directory for the exported series");

    auto* vol = app.add_subcommand("volterra", "shuffle Volterra series for a constant eta");
    vol->add_option("a", a, "series file")->required();
    vol->add_option("--t", t, "final time in [0,1]");
    vol->add_option("--steps", steps, "RK4 steps")->check(CLI::PositiveNumber);
    vol->add_option("--order-cap", cap, "order cap for non-proper eta")->check(CLI::PositiveNumber);

    auto* bk = app.add_subcommand("bk-table", "b_k polynomials of the extremal inverse");
    bk->add_option("--kmax", kmax, "largest k")->check(CLI::Range(0, 10));

    std::string lemma;
    std::string vM = "1", veps = "1/2";
    int vL = 5, samples = 200, vm = 1;
    auto* ver = app.add_subcommand("verify", "check a norm bound on seeded samples");
    ver->add_option("lemma", lemma, "shuffle-bound | composition-bound | shuffle-power | bk-majorant")
        ->required()
        ->check(CLI::IsMember({"shuffle-bound", "composition-bound", "shuffle-power", "bk-majorant"}));
    ver->add_option("--M", vM, "growth constant");
    ver->add_option("--eps", veps, "radius increase epsilon");
    ver->add_option("--L", vL, "truncation")->check(CLI::NonNegativeNumber);
    ver->add_option("--samples", samples, "random samples")->check(CLI::PositiveNumber);
    ver->add_option("--m", vm, "number of inputs (composition bound)")->check(CLI::PositiveNumber);
    ver->add_option("--kmax", kmax, "largest k (bk-majorant)")->check(CLI::Range(0, 10));

    std::string suite;
    auto* sui = app.add_subcommand("suite", "run a verification suite");
    sui->add_option("name", suite, "suite name")->required()->check(CLI::IsMember(suite_names()));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    }

    try {
        set_thread_limit(g.threads);
        verb = app.get_subcommands().front()->get_name();
        if (g.trunc >= 0 && (verb == "fliess-eval" || verb == "cascade-check") && g.trunc > 24)
            throw InvalidArgument("--trunc above the iterated-integral depth limit");

        std::string out;
        bool ok = true;
        if (verb == "shuffle" || verb == "compose" || verb == "mixed-compose" || verb == "pre-lie" || verb == "bracket" ||
            verb == "feedback") {
            out = g.floating ? binary_op<double>(verb, a, b, g) : binary_op<Rational>(verb, a, b, g);
        } else if (verb == "shuffle-inv" || verb == "group-inv") {
            out = g.floating ? unary_op<double>(verb, a, g) : unary_op<Rational>(verb, a, g);
        } else if (verb == "norm") {
            out = g.floating ? norm_op<double>(a, M, g) : norm_op<Rational>(a, M, g);
        } else if (verb == "fliess-eval") {
            out = fliess_eval_op<Rational>(a, sig, t, g);
        } else if (verb == "cascade-check") {
            out = cascade_op<Rational>(a, b, sig, t, g);
        } else if (verb == "realize") {
            out = realize_op(a, params, g);
        } else if (verb == "evolve") {
            out = evolve_op(a, steps, times, dir, g);
        } else if (verb == "volterra") {
            out = volterra_op(a, t, steps, cap, g);
        } else if (verb == "bk-table") {
            out = bk_table_op(kmax);
        } else if (verb == "verify") {
            if (lemma == "shuffle-bound") {
                BoundReport r = verify_shuffle_bound(parse_rational(vM), parse_rational(veps), vL, samples, g.seed);
                out = r.text();
                ok = r.pass;
            } else if (lemma == "composition-bound") {
                BoundReport r = verify_composition_bound(parse_double(vM), parse_double(veps), vL, samples, g.seed, vm);
                out = r.text();
                ok = r.pass;
            } else if (lemma == "shuffle-power") {
                ShufflePowerReport r = verify_shuffle_power_sum(parse_rational(vM), vL, g.seed);
                out = r.majorant.text() + r.convergence.text();
                ok = r.majorant.pass && r.convergence.pass;
            } else {
                BoundReport r = verify_bk_majorant(bk_table(kmax), kmax, unit_grid(10));
                out = r.text();
                ok = r.pass;
            }
        } else if (verb == "suite") {
            SuiteReport r = run_suite(suite, g.seed);
            out = r.text();
            ok = r.pass();
        }
        emit(g, out);
        return ok ? 0 : 1;
    } catch (const Error& e) {
        std::cerr << "error: " << e.kind() << ": " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

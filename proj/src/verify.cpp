// Copyright 2026 The ipszeta Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ipszeta/verify.hpp"

#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include "ipszeta/errors.hpp"

namespace ipszeta {

namespace {

using nlohmann::json;

json cj(Complex z) { return json::array({z.real(), z.imag()}); }

/// Running maximum over a grid; the first point attaining the maximum is kept.
class WorstCase {
   public:
    void observe(double err, const std::function<json()> &witness) {
        if (!std::isfinite(err)) err = std::numeric_limits<double>::infinity();
        if (!seen_ || err > max_) {
            seen_ = true;
            max_ = err;
            witness_ = witness();
            witness_["abs_error"] = err;
        }
    }
    double max() const { return seen_ ? max_ : 0.0; }
    const json &witness() const { return witness_; }

   private:
    bool seen_ = false;
    double max_ = 0.0;
    json witness_ = json::object();
};

ClosedFormReport finish(std::string id, json grid, const WorstCase &worst, double tol) {
    ClosedFormReport r;
    r.formula_id = std::move(id);
    r.grid = std::move(grid);
    r.max_abs_error = worst.max();
    r.tolerance = tol;
    r.passed = worst.max() <= tol;
    r.witness = worst.witness();
    return r;
}

struct Range {
    int lo;
    int hi;
};

Range n_range(const VerifyOptions &opt, int lo, int hi) {
    Range r{opt.n_min.value_or(lo), opt.n_max.value_or(opt.n_min ? *opt.n_min : hi)};
    if (!opt.n_min && opt.n_max) r.lo = std::min(lo, *opt.n_max);
    if (r.lo < 1 || r.hi < r.lo) throw Error(ErrorKind::DomainError, "empty or invalid N range");
    return r;
}

std::vector<Complex> u_points(const VerifyOptions &opt, std::vector<Complex> defaults) {
    return opt.u_points.empty() ? defaults : opt.u_points;
}

json u_json(const std::vector<Complex> &us) {
    json a = json::array();
    for (const Complex &u : us) a.push_back(cj(u));
    return a;
}

GlobalOperator qca1(int n, double xi) { return GlobalOperator(n, build_local(Qca1Params{xi, xi})); }
GlobalOperator qca2(int n, double xi) { return GlobalOperator(n, build_local(Qca2Params{0.0, xi})); }

const std::vector<double> &chebyshev_xi_grid() {
    static const std::vector<double> grid = {0.0, kPi / 6, kPi / 4, 1.0, 2.0, kPi / 2};
    return grid;
}

const std::vector<double> &qca2_xi_grid() {
    static const std::vector<double> grid = [] {
        const double a = std::asin(3.0 - 2.0 * std::numbers::sqrt2);
        return std::vector<double>{0.0, kPi / 6, kPi / 4, kPi / 3, kPi / 2, 1.0, 2.0, 3.0,
                                   4.0, 5.5,     a,       kPi - a};
    }();
    return grid;
}

json vec_json(const std::vector<double> &v) { return json(v); }

// ---------------------------------------------------------------------------

ClosedFormReport verify_thm5_3(const VerifyOptions &opt) {
    const double tol = opt.tolerance.value_or(1e-9);
    const Range ns = n_range(opt, 2, 8);
    const int r_max = opt.r_max.value_or(12);
    constexpr int kPairs = 20;
    constexpr std::uint64_t kSeed = 0x5a7e7a11ULL;
    std::mt19937_64 rng(kSeed);
    std::normal_distribution<double> normal(0.0, 1.0);
    auto draw = [&] { return Complex(normal(rng), normal(rng)) / std::numbers::sqrt2; };

    WorstCase worst;
    for (int pair = 0; pair < kPairs; ++pair) {
        TensorFactors f;
        f.left << draw(), draw(), draw(), draw();
        f.right = Matrix2::Zero();
        f.right(0, 0) = draw();
        f.right(1, 1) = draw();
        const LocalOperator local = build_local(TensorParams{f.left, f.right});
        for (int n = std::max(2, ns.lo); n <= ns.hi; ++n) {
            const TraceSequence brute = trace_powers(GlobalOperator(n, local), r_max);
            for (int r = 1; r <= r_max; ++r) {
                const Complex closed = tensor_model_trace(f, n, r);
                const Complex exact = brute.trace(r);
                const double rel = std::abs(closed - exact) / std::abs(exact);
                worst.observe(rel, [&] {
                    return json{{"pair", pair}, {"n_sites", n}, {"r", r},
                                {"closed_form", cj(closed)}, {"brute", cj(exact)}};
                });
            }
        }
    }
    auto rep = finish("thm5_3",
                      {{"pairs", kPairs}, {"seed", kSeed}, {"n_sites", {std::max(2, ns.lo), ns.hi}},
                       {"r", {1, r_max}}, {"error", "relative"}},
                      worst, tol);
    return rep;
}

ClosedFormReport verify_cor5_4(const VerifyOptions &opt) {
    const double tol = opt.tolerance.value_or(1e-9);
    const Range ns = n_range(opt, 1, 8);
    const int r_max = opt.r_max.value_or(16);
    WorstCase worst;
    for (double xi : chebyshev_xi_grid()) {
        for (int n = ns.lo; n <= ns.hi; ++n) {
            const TraceSequence brute = trace_powers(qca1(n, xi), r_max);
            for (int r = 1; r <= r_max; ++r) {
                const double closed = std::pow(chebyshev_t(r, std::cos(xi)), n - 1);
                worst.observe(std::abs(brute.c(r) - closed), [&] {
                    return json{{"xi", xi}, {"n_sites", n}, {"r", r},
                                {"closed_form", closed}, {"brute", cj(brute.c(r))}};
                });
            }
        }
    }
    return finish("cor5_4",
                  {{"xi", vec_json(chebyshev_xi_grid())}, {"n_sites", {ns.lo, ns.hi}}, {"r", {1, r_max}}},
                  worst, tol);
}

ClosedFormReport verify_thm5_6(const VerifyOptions &opt) {
    const double tol = opt.tolerance.value_or(1e-9);
    const Range ns = n_range(opt, 1, 8);
    const int r_max = opt.r_max.value_or(16);
    const auto us = u_points(opt, {0.2, Complex(0.0, 0.5), Complex(-0.3, 0.3)});
    WorstCase worst;
    for (double xi : chebyshev_xi_grid()) {
        for (int n = ns.lo; n <= ns.hi; ++n) {
            const GlobalOperator op = qca1(n, xi);
            const ZetaLogSeries from_traces = zeta_log_series(op, r_max);
            const ZetaLogSeries closed = binomial_zeta_qca1_series(n, xi, r_max);
            for (int r = 1; r <= r_max; ++r) {
                worst.observe(std::abs(from_traces.coefficient(r) - closed.coefficient(r)), [&] {
                    return json{{"xi", xi}, {"n_sites", n}, {"r", r},
                                {"closed_form_coeff", cj(closed.coefficient(r))},
                                {"trace_coeff", cj(from_traces.coefficient(r))}};
                });
            }
            if (!op.fits_dense()) continue;
            const auto spectrum = eigenvalues(op);
            for (const Complex &u : us) {
                const Complex a = binomial_zeta_qca1(n, xi, u);
                const Complex b = log_det_factor(spectrum, u);
                worst.observe(std::abs(a - b), [&] {
                    return json{{"xi", xi}, {"n_sites", n}, {"u", cj(u)},
                                {"closed_form", cj(a)}, {"eigenvalue_sum", cj(b)}};
                });
            }
        }
    }
    return finish("thm5_6",
                  {{"xi", vec_json(chebyshev_xi_grid())}, {"n_sites", {ns.lo, ns.hi}},
                   {"r", {1, r_max}}, {"u", u_json(us)}},
                  worst, tol);
}

ClosedFormReport verify_cor5_7(const VerifyOptions &opt) {
    const double final_tol = opt.tolerance.value_or(1e-2);
    constexpr double xi = 0.8;
    const Complex u = opt.u_points.empty() ? Complex(0.3) : opt.u_points.front();
    const std::vector<int> ns = {16, 64, 256, 1024};
    const QuadratureEstimate limit = clt_limit_zeta_converged(xi, u);

    json gaps = json::array();
    double prev = std::numeric_limits<double>::infinity();
    bool monotone = true;
    double gap = 0.0;
    for (int n : ns) {
        const Complex finite = binomial_zeta_qca1(n, xi / std::sqrt(double(n)), u);
        gap = std::abs(finite - limit.value);
        if (gap > 1.1 * prev) monotone = false;
        prev = gap;
        gaps.push_back({{"n_sites", n}, {"finite_n", cj(finite)}, {"gap", gap}});
    }
    ClosedFormReport r;
    r.formula_id = "cor5_7";
    r.grid = {{"xi", xi}, {"u", cj(u)}, {"n_sites", ns}, {"quadrature_nodes", limit.nodes}};
    r.max_abs_error = gap;
    r.tolerance = final_tol;
    r.passed = monotone && gap < final_tol;
    r.witness = {{"limit", cj(limit.value)}, {"gaps", gaps}, {"monotone_within_10pct", monotone}};
    std::ostringstream note;
    note << "quadrature settled at " << limit.nodes << " nodes (last change " << limit.last_change
         << "); max_abs_error is the gap at the largest N";
    r.notes.push_back(note.str());
    return r;
}

ClosedFormReport verify_prop6_r1(const VerifyOptions &opt) {
    const double tol = opt.tolerance.value_or(1e-8);
    const Range ns = n_range(opt, 1, 10);
    WorstCase worst;
    int double_root_points = 0;
    for (double xi : qca2_xi_grid()) {
        for (int n = ns.lo; n <= ns.hi; ++n) {
            const Complex brute = trace_powers(qca2(n, xi), 1).trace(1);
            const C1ClosedForm closed = qca2_c1_closed_form(n, xi);
            if (closed.root_case == RootCase::Double) ++double_root_points;
            worst.observe(std::abs(closed.trace - brute), [&] {
                return json{{"xi", xi}, {"n_sites", n}, {"closed_form", cj(closed.trace)},
                            {"brute", cj(brute)},
                            {"root_case", closed.root_case == RootCase::Double ? "double" : "distinct"}};
            });
            worst.observe(std::abs(closed.c1 - brute * std::ldexp(1.0, -n)), [&] {
                return json{{"xi", xi}, {"n_sites", n}, {"quantity", "C_1"}};
            });
        }
    }
    // Special values.
    WorstCase special;
    for (int n = ns.lo; n <= ns.hi; ++n) {
        const Complex at0 = qca2_c1_closed_form(n, 0.0).trace;
        special.observe(std::abs(at0 - 2.0), [&] { return json{{"xi", 0.0}, {"n_sites", n}}; });
        const Complex expected = std::pow(Complex(1, 1), n - 1) + std::pow(Complex(1, -1), n - 1);
        const Complex at_half_pi = qca2_c1_closed_form(n, kPi / 2).trace;
        special.observe(std::abs(at_half_pi - expected),
                        [&] { return json{{"xi", kPi / 2}, {"n_sites", n}}; });
    }
    auto rep = finish("prop6_r1",
                      {{"xi", vec_json(qca2_xi_grid())}, {"n_sites", {ns.lo, ns.hi}}}, worst, tol);
    rep.passed = rep.passed && special.max() <= 1e-10 && double_root_points > 0;
    std::ostringstream note;
    note << "special values (xi = 0, pi/2) max error " << special.max() << " (tol 1e-10); "
         << double_root_points << " grid points in the double-root case";
    rep.notes.push_back(note.str());
    return rep;
}

ClosedFormReport verify_prop6_r2(const VerifyOptions &opt) {
    const double tol = opt.tolerance.value_or(1e-8);
    const Range ns = n_range(opt, 1, 10);
    WorstCase worst;
    for (double xi : qca2_xi_grid()) {
        for (int n = ns.lo; n <= ns.hi; ++n) {
            const Complex brute = trace_powers(qca2(n, xi), 2).trace(2);
            const double rec = qca2_x2_recurrence(n, xi);
            worst.observe(std::abs(brute - rec), [&] {
                return json{{"xi", xi}, {"n_sites", n}, {"recurrence", rec}, {"brute", cj(brute)}};
            });
        }
    }
    WorstCase special;
    for (int n = ns.lo; n <= ns.hi; ++n) {
        const double rule90_expected = n == 1 ? 2.0 : 4.0;
        const Complex rule90_brute = trace_powers(qca2(n, 0.0), 2).trace(2);
        special.observe(std::abs(rule90_brute - rule90_expected) +
                            std::abs(qca2_x2_recurrence(n, 0.0) - rule90_expected),
                        [&] { return json{{"xi", 0.0}, {"n_sites", n}}; });
        const double pi2_expected = std::ldexp(1.0, n);
        const Complex pi2_brute = trace_powers(qca2(n, kPi / 2), 2).trace(2);
        special.observe(std::abs(pi2_brute - pi2_expected) +
                            std::abs(qca2_x2_recurrence(n, kPi / 2) - pi2_expected),
                        [&] { return json{{"xi", kPi / 2}, {"n_sites", n}}; });
    }
    auto rep = finish("prop6_r2",
                      {{"xi", vec_json(qca2_xi_grid())}, {"n_sites", {ns.lo, ns.hi}}}, worst, tol);
    rep.passed = rep.passed && special.max() <= 1e-12;
    std::ostringstream note;
    note << "Rule 90 (x = 4 for N >= 2) and pi/2 (x = 2^N) max error " << special.max();
    rep.notes.push_back(note.str());
    return rep;
}

ClosedFormReport verify_prop6_pi2(const VerifyOptions &opt) {
    const double tol = opt.tolerance.value_or(1e-10);
    const Range ns = n_range(opt, 1, 10);
    const int r_max = opt.r_max.value_or(8);
    WorstCase worst;
    int period_failures = 0;
    for (int n = ns.lo; n <= ns.hi; ++n) {
        const GlobalOperator op = qca2(n, kPi / 2);
        if (!matrix_power_equals_identity(op, 2, tol)) ++period_failures;
        const TraceSequence brute = trace_powers(op, r_max);
        const double odd_c = std::pow(2.0, -(n - 1) / 2.0) * chebyshev_t(n - 1, std::numbers::sqrt2 / 2);
        for (int r = 1; r <= r_max; ++r) {
            const double expected_c = (r % 2 == 1) ? odd_c : 1.0;
            worst.observe(std::abs(brute.c(r) - expected_c), [&] {
                return json{{"n_sites", n}, {"r", r}, {"closed_form_c", expected_c},
                            {"brute_c", cj(brute.c(r))}};
            });
        }
    }
    auto rep = finish("prop6_pi2", {{"n_sites", {ns.lo, ns.hi}}, {"r", {1, r_max}}}, worst, tol);
    rep.passed = rep.passed && period_failures == 0;
    rep.notes.push_back("Q_N(pi/2)^2 = I failed for " + std::to_string(period_failures) +
                        " values of N");
    return rep;
}

ClosedFormReport verify_thm6_pi2zeta(const VerifyOptions &opt) {
    const double tol = opt.tolerance.value_or(1e-8);
    const Range ns = n_range(opt, 1, 10);
    const int r_max = opt.r_max.value_or(60);
    const auto us = u_points(opt, {0.1, 0.3, 0.5, Complex(0.0, 0.4)});
    WorstCase worst;
    for (int n = ns.lo; n <= ns.hi; ++n) {
        const ZetaLogSeries series = zeta_log_series(qca2(n, kPi / 2), r_max);
        for (const Complex &u : us) {
            const Complex closed = zeta_closed_form_qca2(n, Qca2ZetaVariant::PiHalf, u);
            const Complex summed = series.evaluate(u);
            worst.observe(std::abs(closed - summed), [&] {
                return json{{"n_sites", n}, {"u", cj(u)}, {"closed_form", cj(closed)},
                            {"series", cj(summed)}};
            });
        }
    }
    return finish("thm6_pi2zeta",
                  {{"n_sites", {ns.lo, ns.hi}}, {"r_max", r_max}, {"u", u_json(us)}}, worst, tol);
}

ClosedFormReport verify_prop6_rule90_r(const VerifyOptions &opt) {
    const double tol = opt.tolerance.value_or(1e-9);
    const Range ns = n_range(opt, 2, 4);
    if (ns.lo < 2 || ns.hi > 4) {
        throw Error(ErrorKind::DomainError, "prop6_rule90_r covers N in 2..4");
    }
    constexpr int kMaxK = 3;
    constexpr int kMaxS = 4;
    const int r_max = (1 << kMaxK) * (2 * kMaxS - 1);
    WorstCase worst;
    std::vector<std::string> period_notes;
    bool periods_ok = true;
    for (int n = ns.lo; n <= ns.hi; ++n) {
        const GlobalOperator op(n, rule90());
        const TraceSequence brute = trace_powers(op, r_max);
        for (int k = 0; k <= kMaxK; ++k) {
            for (int s = 1; s <= kMaxS; ++s) {
                const int r = (1 << k) * (2 * s - 1);
                const double expected = rule90_trace_general_r(n, k, s);
                worst.observe(std::abs(brute.trace(r) - expected), [&] {
                    return json{{"n_sites", n}, {"k", k}, {"s", s}, {"r", r},
                                {"closed_form", expected}, {"brute", cj(brute.trace(r))}};
                });
            }
        }
        int m = 0;
        while ((1 << m) < n) ++m;
        const bool at_period = matrix_power_equals_identity(op, 1 << m, 1e-10);
        const bool before = matrix_power_equals_identity(op, 1 << (m - 1), 1e-10);
        if (!at_period || before) periods_ok = false;
        period_notes.push_back("N=" + std::to_string(n) + ": Q^" + std::to_string(1 << m) + " = I " +
                               (at_period ? "yes" : "no") + ", Q^" + std::to_string(1 << (m - 1)) +
                               " = I " + (before ? "yes" : "no"));
    }
    auto rep = finish("prop6_rule90_r",
                      {{"n_sites", {ns.lo, ns.hi}}, {"k", {0, kMaxK}}, {"s", {1, kMaxS}}}, worst, tol);
    rep.passed = rep.passed && periods_ok;
    rep.notes = period_notes;
    return rep;
}

ClosedFormReport verify_thm6_rule90zeta(const VerifyOptions &opt) {
    const double tol = opt.tolerance.value_or(1e-8);
    const Range ns = n_range(opt, 1, 4);
    if (ns.hi > 4) throw Error(ErrorKind::DomainError, "thm6_rule90zeta covers N <= 4; see conj_rule90");
    const int r_max = opt.r_max.value_or(60);
    const auto us = u_points(opt, {0.1, 0.3, 0.5, Complex(0.0, 0.4)});
    WorstCase worst;
    for (int n = ns.lo; n <= ns.hi; ++n) {
        const ZetaLogSeries series = zeta_log_series(GlobalOperator(n, rule90()), r_max);
        for (const Complex &u : us) {
            const Complex closed = zeta_closed_form_qca2(n, Qca2ZetaVariant::Rule90, u);
            const Complex summed = series.evaluate(u);
            worst.observe(std::abs(closed - summed), [&] {
                return json{{"n_sites", n}, {"u", cj(u)}, {"closed_form", cj(closed)},
                            {"series", cj(summed)}};
            });
        }
    }
    return finish("thm6_rule90zeta",
                  {{"n_sites", {ns.lo, ns.hi}}, {"r_max", r_max}, {"u", u_json(us)}}, worst, tol);
}

ClosedFormReport verify_conj_rule90(const VerifyOptions &opt) {
    const double tol = opt.tolerance.value_or(kDefaultTolerances.conjecture);
    const Range ns = n_range(opt, 5, 8);
    if (ns.lo < 5) throw Error(ErrorKind::DomainError, "conj_rule90 covers N >= 5");
    const int r_max = opt.r_max.value_or(64);
    const auto us = u_points(opt, {0.1, 0.3, 0.5, Complex(0.0, 0.5), Complex(-0.4, 0.2)});

    ClosedFormReport merged;
    merged.formula_id = "conj_rule90";
    merged.status = "conjecture";
    merged.tolerance = tol;
    merged.max_abs_error = -1.0;
    json per_n = json::array();
    for (int n = ns.lo; n <= ns.hi; ++n) {
        const ClosedFormReport one = conjecture_test_rule90(n, r_max, us, tol);
        per_n.push_back({{"n_sites", n}, {"m", one.grid["m"]}, {"max_abs_error", one.max_abs_error}});
        if (one.max_abs_error > merged.max_abs_error) {
            merged.max_abs_error = one.max_abs_error;
            merged.witness = one.witness;
        }
        for (const auto &note : one.notes) merged.notes.push_back("N=" + std::to_string(n) + ": " + note);
    }
    merged.grid = {{"n_sites", {ns.lo, ns.hi}}, {"r_max", r_max}, {"u", u_json(us)}, {"per_n", per_n}};
    merged.passed = merged.max_abs_error <= tol;
    merged.notes.push_back(merged.passed ? "conjecture supported on this grid"
                                         : "conjecture contradicted; see witness");
    return merged;
}

using Verifier = ClosedFormReport (*)(const VerifyOptions &);

const std::map<std::string_view, Verifier> &registry() {
    static const std::map<std::string_view, Verifier> table = {
        {"thm5_3", verify_thm5_3},
        {"cor5_4", verify_cor5_4},
        {"thm5_6", verify_thm5_6},
        {"cor5_7", verify_cor5_7},
        {"prop6_r1", verify_prop6_r1},
        {"prop6_r2", verify_prop6_r2},
        {"prop6_pi2", verify_prop6_pi2},
        {"thm6_pi2zeta", verify_thm6_pi2zeta},
        {"prop6_rule90_r", verify_prop6_rule90_r},
        {"thm6_rule90zeta", verify_thm6_rule90zeta},
        {"conj_rule90", verify_conj_rule90},
    };
    return table;
}

}  // namespace

const std::vector<std::string_view> &formula_ids() {
    static const std::vector<std::string_view> ids = {
        "thm5_3",   "cor5_4",       "thm5_6",         "cor5_7",          "prop6_r1",   "prop6_r2",
        "prop6_pi2", "thm6_pi2zeta", "prop6_rule90_r", "thm6_rule90zeta", "conj_rule90"};
    return ids;
}

ClosedFormReport verify_formula(std::string_view formula_id, const VerifyOptions &options) {
    const auto &table = registry();
    const auto it = table.find(formula_id);
    if (it == table.end()) {
        throw Error(ErrorKind::DomainError, "unknown formula id '" + std::string(formula_id) + "'");
    }
    return it->second(options);
}

}  // namespace ipszeta

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

#include "ipszeta/zeta.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "ipszeta/errors.hpp"
#include "ipszeta/quadrature.hpp"

namespace ipszeta {

namespace {

Complex ipow(Complex base, int exponent) {
    Complex result = 1.0;
    while (exponent > 0) {
        if (exponent & 1) result *= base;
        base *= base;
        exponent >>= 1;
    }
    return result;
}

void require(bool condition, ErrorKind kind, const std::string &message) {
    if (!condition) throw Error(kind, message);
}

void require_inside_unit_disk(Complex u) {
    const double mod = std::abs(u);
    if (mod == 1.0) {
        std::ostringstream msg;
        msg << "|u| = 1 at u = " << u;
        throw Error(ErrorKind::SingularAtU, msg.str());
    }
    if (!(mod < 1.0)) {
        std::ostringstream msg;
        msg << "closed form requires |u| < 1, got u = " << u;
        throw Error(ErrorKind::DomainError, msg.str());
    }
}

Complex checked_log1m(Complex z) {
    const Complex factor = 1.0 - z;
    if (std::abs(factor) < kDefaultTolerances.singular) {
        std::ostringstream msg;
        msg << "Log(1 - z) is singular at z = " << z;
        throw Error(ErrorKind::SingularAtU, msg.str());
    }
    return std::log(factor);
}

// log of binom(n, k) / 2^n.
double log_binomial_probability(int n, int k) {
    return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0) -
           n * std::numbers::ln2;
}

Complex power_sum(const Matrix2 &m, int r) {
    const auto [l1, l2] = quadratic_roots(m.trace(), m.determinant());
    return ipow(l1, r) + ipow(l2, r);
}

}  // namespace

// ---------------------------------------------------------------------------
// Series

Complex ZetaLogSeries::evaluate(Complex u) const {
    Complex sum = 0.0;
    for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) sum = (sum + *it) * u;
    return sum;
}

ZetaLogSeries zeta_log_series(const TraceSequence &traces) {
    ZetaLogSeries series;
    series.n_sites = traces.n_sites;
    series.coefficients.reserve(traces.c_values.size());
    for (int r = 1; r <= traces.r_max(); ++r) series.coefficients.push_back(-traces.c(r) / double(r));
    return series;
}

ZetaLogSeries zeta_log_series(const GlobalOperator &op, int r_max) {
    return zeta_log_series(trace_powers(op, r_max));
}

// ---------------------------------------------------------------------------
// Special functions

double chebyshev_t(int n, double x) {
    require(n >= 0, ErrorKind::DomainError, "T_n needs n >= 0");
    if (n == 0) return 1.0;
    double prev = 1.0;
    double cur = x;
    for (int k = 1; k < n; ++k) {
        const double next = 2.0 * x * cur - prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

double chebyshev_u(int n, double x) {
    require(n >= -1, ErrorKind::DomainError, "U_n needs n >= -1");
    if (n == -1) return 0.0;
    double prev = 0.0;  // U_{-1}
    double cur = 1.0;   // U_0
    for (int k = 0; k < n; ++k) {
        const double next = 2.0 * x * cur - prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

Complex arctanh(Complex u) { return 0.5 * (std::log(1.0 + u) - std::log(1.0 - u)); }

std::pair<Complex, Complex> quadratic_roots(Complex b, Complex c) {
    const Complex root = std::sqrt(b * b - 4.0 * c);
    const Complex plus = b + root;
    const Complex minus = b - root;
    const Complex q = std::abs(plus) >= std::abs(minus) ? plus : minus;
    if (q == Complex(0.0)) return {0.0, 0.0};
    const Complex z1 = 0.5 * q;
    return {z1, c / z1};
}

// ---------------------------------------------------------------------------
// Tensor model

Complex tensor_model_trace(const TensorFactors &factors, int n_sites, int r) {
    require(n_sites >= 2, ErrorKind::DomainError, "tensor-model closed form needs N >= 2");
    require(r >= 1, ErrorKind::DomainError, "power r must be positive");
    const Matrix2 &right = factors.right;
    const double off = std::max(std::abs(right(0, 1)), std::abs(right(1, 0)));
    require(off <= kDefaultTolerances.exact * std::max(1.0, right.cwiseAbs().maxCoeff()),
            ErrorKind::DomainError, "right tensor factor must be diagonal");
    const Complex e = right(0, 0);
    const Complex h = right(1, 1);
    const Matrix2 product = factors.left * right;
    return power_sum(factors.left, r) * ipow(power_sum(product, r), n_sites - 2) *
           (ipow(e, r) + ipow(h, r));
}

Complex tensor_model_cr(const TensorFactors &factors, int n_sites, int r) {
    return tensor_model_trace(factors, n_sites, r) * std::ldexp(1.0, -n_sites);
}

Complex binomial_zeta_qca1(int n_sites, double xi, Complex u) {
    require(n_sites >= 1, ErrorKind::DomainError, "N must be positive");
    const int n = n_sites - 1;
    Complex sum = 0.0;
    for (int k = 0; k <= n; ++k) {
        const double weight = std::exp(log_binomial_probability(n, k));
        const Complex phase = std::polar(1.0, (2.0 * k - n) * xi);
        sum += weight * checked_log1m(phase * u);
    }
    return sum;
}

ZetaLogSeries binomial_zeta_qca1_series(int n_sites, double xi, int r_max) {
    require(n_sites >= 1, ErrorKind::DomainError, "N must be positive");
    require(r_max >= 1, ErrorKind::DomainError, "r_max must be positive");
    const int n = n_sites - 1;
    ZetaLogSeries series;
    series.n_sites = n_sites;
    series.coefficients.assign(r_max, Complex(0.0));
    for (int k = 0; k <= n; ++k) {
        const double weight = std::exp(log_binomial_probability(n, k));
        const double angle = (2.0 * k - n) * xi;
        // Log(1 - w u) = -sum_r w^r u^r / r
        for (int r = 1; r <= r_max; ++r) {
            series.coefficients[r - 1] -= weight * std::polar(1.0, r * angle) / double(r);
        }
    }
    return series;
}

Complex clt_limit_zeta(double xi, Complex u, int quad_nodes) {
    require(quad_nodes >= 8, ErrorKind::DomainError, "Gauss-Hermite rule needs at least 8 nodes");
    require(std::abs(u) < 1.0, ErrorKind::DomainError, "limit formula requires |u| < 1");
    const GaussHermiteRule rule(quad_nodes);
    return rule.normal_expectation(
        [&](double z) { return std::log(1.0 - std::polar(1.0, xi * z) * u); });
}

QuadratureEstimate clt_limit_zeta_converged(double xi, Complex u, int start_nodes, double tol,
                                            int max_nodes) {
    QuadratureEstimate est{clt_limit_zeta(xi, u, start_nodes), start_nodes, 0.0};
    for (int nodes = 2 * start_nodes; nodes <= max_nodes; nodes *= 2) {
        const Complex next = clt_limit_zeta(xi, u, nodes);
        est.last_change = std::abs(next - est.value);
        est.value = next;
        est.nodes = nodes;
        if (est.last_change < tol) return est;
    }
    std::ostringstream msg;
    msg << "quadrature did not settle below " << tol << " with " << max_nodes << " nodes";
    throw Error(ErrorKind::ConvergenceFailure, msg.str());
}

// ---------------------------------------------------------------------------
// Qca2(0, xi)

double qca2_x1_recurrence(int n_sites, double xi) {
    require(n_sites >= 1, ErrorKind::DomainError, "N must be positive");
    const double s = std::sin(xi);
    double prev = 2.0;  // x_1
    double cur = 2.0;   // x_2
    if (n_sites == 1) return prev;
    for (int n = 2; n < n_sites; ++n) {
        const double next = (1.0 + s) * cur - 2.0 * s * prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

C1ClosedForm qca2_c1_closed_form(int n_sites, double xi, const Tolerances &tol) {
    require(n_sites >= 1, ErrorKind::DomainError, "N must be positive");
    const double s = std::sin(xi);
    const double discriminant = (1.0 + s) * (1.0 + s) - 8.0 * s;
    const double scale = std::ldexp(1.0, -n_sites);
    const int n = n_sites - 1;

    C1ClosedForm out;
    if (std::abs(discriminant) < tol.double_root) {
        // Double root 2 - sqrt2, reached at sin xi = 3 - 2 sqrt2.
        constexpr double sqrt2 = std::numbers::sqrt2;
        out.root_case = RootCase::Double;
        out.closed_form_trace = (sqrt2 * n + 2.0) * std::pow(2.0 - sqrt2, n);
        out.trace = out.closed_form_trace;
    } else {
        const auto [l1, l2] = quadratic_roots(1.0 + s, 2.0 * s);
        out.closed_form_trace =
            2.0 / (l2 - l1) * ((l2 - 1.0) * ipow(l1, n) - (l1 - 1.0) * ipow(l2, n));
        if (std::abs(discriminant) < tol.near_double_root) {
            out.root_case = RootCase::NearDouble;
            out.trace = qca2_x1_recurrence(n_sites, xi);
        } else {
            out.root_case = RootCase::Distinct;
            out.trace = out.closed_form_trace;
        }
    }
    out.c1 = out.trace * scale;
    return out;
}

double qca2_x2_recurrence(int n_sites, double xi) {
    require(n_sites >= 1, ErrorKind::DomainError, "N must be positive");
    const double s = std::sin(xi);
    const double c2 = std::cos(xi) * std::cos(xi);
    double x[3] = {2.0, 4.0, 4.0 * (1.0 + s * s)};
    if (n_sites <= 3) return x[n_sites - 1];
    for (int n = 3; n < n_sites; ++n) {
        const double next = (1.0 + s * s) * x[2] + 2.0 * s * c2 * x[1] - 4.0 * s * c2 * x[0];
        x[0] = x[1];
        x[1] = x[2];
        x[2] = next;
    }
    return x[2];
}

double rule90_trace_general_r(int n_sites, int k, int s) {
    require(n_sites >= 2 && n_sites <= 4, ErrorKind::DomainError,
            "Rule 90 general-r trace is established for N in {2, 3, 4} only");
    require(k >= 0, ErrorKind::DomainError, "k must be non-negative");
    require(s >= 1, ErrorKind::DomainError, "s must be positive");
    // 2^k < N  <=>  k < log2 N
    if (k < 3 && (1 << k) < n_sites) return std::ldexp(1.0, 1 << k);
    return std::ldexp(1.0, n_sites);
}

Complex rule90_zeta_formula(int n_sites, Complex u) {
    require(n_sites >= 1, ErrorKind::DomainError, "N must be positive");
    require_inside_unit_disk(u);
    int m = 0;
    while ((1 << m) < n_sites) ++m;
    Complex u_pow = u;  // u^(2^k)
    Complex sum = 0.0;
    for (int k = 0; k < m; ++k) {
        sum += std::ldexp(1.0, -(n_sites - ((1 << k) - k))) * arctanh(u_pow);
        u_pow *= u_pow;
    }
    return std::ldexp(1.0, -m) * std::log(1.0 - u_pow) - sum;
}

Complex zeta_closed_form_qca2(int n_sites, Qca2ZetaVariant variant, Complex u) {
    require(n_sites >= 1, ErrorKind::DomainError, "N must be positive");
    require_inside_unit_disk(u);
    if (variant == Qca2ZetaVariant::PiHalf) {
        const double odd_c = std::pow(2.0, -(n_sites - 1) / 2.0) *
                             chebyshev_t(n_sites - 1, std::numbers::sqrt2 / 2.0);
        return 0.5 * std::log(1.0 - u * u) - odd_c * arctanh(u);
    }
    require(n_sites <= 4, ErrorKind::DomainError,
            "Rule 90 zeta closed form is established for N <= 4; use the conjecture check");
    if (n_sites == 1) return std::log(1.0 - u);
    return rule90_zeta_formula(n_sites, u);
}

// ---------------------------------------------------------------------------
// Reports

nlohmann::json to_json(const ClosedFormReport &report) {
    nlohmann::json j;
    j["formula_id"] = report.formula_id;
    j["status"] = report.status;
    j["grid"] = report.grid;
    j["max_abs_error"] = report.max_abs_error;
    j["tolerance"] = report.tolerance;
    j["passed"] = report.passed;
    j["witness"] = report.witness;
    if (!report.notes.empty()) j["notes"] = report.notes;
    return j;
}

ClosedFormReport conjecture_test_rule90(int n_sites, int r_max, std::span<const Complex> u_samples,
                                        double tol) {
    require(n_sites >= 5, ErrorKind::DomainError,
            "conjecture check covers N >= 5; N <= 4 is handled by the proved closed form");
    require(r_max >= 1, ErrorKind::DomainError, "r_max must be positive");
    require(!u_samples.empty(), ErrorKind::DomainError, "need at least one u sample");

    const GlobalOperator op(n_sites, rule90());
    const ZetaLogSeries series = zeta_log_series(op, r_max);

    ClosedFormReport report;
    report.formula_id = "conj_rule90";
    report.status = "conjecture";
    report.tolerance = tol;
    nlohmann::json us = nlohmann::json::array();
    for (const Complex &u : u_samples) us.push_back({u.real(), u.imag()});
    int m = 0;
    while ((1 << m) < n_sites) ++m;
    report.grid = {{"n_sites", {n_sites}}, {"m", m}, {"r_max", r_max}, {"u", us}};

    double worst = -1.0;
    double worst_bound = 0.0;
    for (const Complex &u : u_samples) {
        const Complex from_series = series.evaluate(u);
        const Complex closed = rule90_zeta_formula(n_sites, u);
        const double err = std::abs(from_series - closed);
        const double a = std::abs(u);
        // |C_r| <= 1 for a permutation operator, so the dropped tail is bounded by this.
        const double bound = std::pow(a, r_max + 1) / ((r_max + 1) * (1.0 - a));
        worst_bound = std::max(worst_bound, bound);
        if (err > worst) {
            worst = err;
            report.witness = {{"n_sites", n_sites},
                              {"u", {u.real(), u.imag()}},
                              {"series", {from_series.real(), from_series.imag()}},
                              {"formula", {closed.real(), closed.imag()}},
                              {"abs_error", err}};
        }
    }
    report.max_abs_error = worst;
    report.passed = worst <= tol;
    std::ostringstream note;
    note << "series truncation bound " << worst_bound;
    report.notes.push_back(note.str());
    return report;
}

}  // namespace ipszeta

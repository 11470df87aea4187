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

#pragma once

#include <span>
#include <string>
#include <vector>

#include "ipszeta/global_operator.hpp"
#include "ipszeta/models.hpp"
#include "ipszeta/types.hpp"
#include "json.hpp"

namespace ipszeta {

/// Truncated power series of log(zeta^-1)(u) = sum_r c_r u^r, where
/// c_r = -C_r / r and C_r = tr(Q_N^r) / 2^N.
struct ZetaLogSeries {
    int n_sites = 0;
    std::vector<Complex> coefficients;  // coefficients[r - 1] multiplies u^r

    int truncation_order() const { return static_cast<int>(coefficients.size()); }
    Complex coefficient(int r) const { return coefficients.at(r - 1); }
    /// Horner evaluation of the truncated series.
    Complex evaluate(Complex u) const;
};

ZetaLogSeries zeta_log_series(const TraceSequence &traces);
ZetaLogSeries zeta_log_series(const GlobalOperator &op, int r_max);

// Chebyshev polynomials by three-term recurrence, valid for any real x.
// chebyshev_u accepts n = -1 and returns 0 there.
double chebyshev_t(int n, double x);
double chebyshev_u(int n, double x);

/// (1/2)(Log(1 + u) - Log(1 - u)).
Complex arctanh(Complex u);

/// Both roots of z^2 - b z + c = 0, computed without cancellation.
std::pair<Complex, Complex> quadratic_roots(Complex b, Complex c);

// ---------------------------------------------------------------------------
// Tensor model  Q = A (x) diag(e, h)

/// tr(Q_N^r) = (l+^r + l-^r)(m+^r + m-^r)^(N-2)(e^r + h^r), with l the
/// eigenvalues of A and m those of A diag(e, h). Requires N >= 2 and a
/// diagonal right factor (DomainError otherwise).
Complex tensor_model_trace(const TensorFactors &factors, int n_sites, int r);
Complex tensor_model_cr(const TensorFactors &factors, int n_sites, int r);

/// Binomial closed form for Qca1(xi, xi):
/// 2^-(N-1) sum_k binom(N-1, k) Log(1 - e^{i(2k-(N-1))xi} u).
Complex binomial_zeta_qca1(int n_sites, double xi, Complex u);
/// Power-series coefficients of the same expression, expanded log by log.
ZetaLogSeries binomial_zeta_qca1_series(int n_sites, double xi, int r_max);

/// E[Log(1 - e^{i xi Z} u)], Z standard normal, by Gauss-Hermite quadrature.
Complex clt_limit_zeta(double xi, Complex u, int quad_nodes = kDefaultQuadratureNodes);

struct QuadratureEstimate {
    Complex value;
    int nodes = 0;
    double last_change = 0;
};
/// Doubles the node count from `start_nodes` until two estimates differ by less than `tol`.
QuadratureEstimate clt_limit_zeta_converged(double xi, Complex u,
                                            int start_nodes = kDefaultQuadratureNodes,
                                            double tol = 1e-10, int max_nodes = 1024);

// ---------------------------------------------------------------------------
// Generalized tensor model  Q(xi) = Qca2(0, xi)

enum class RootCase {
    Distinct,
    Double,
    /// Roots closer than the near-double threshold: the closed form is still
    /// evaluated but the recurrence value is returned.
    NearDouble,
};

struct C1ClosedForm {
    Complex trace;
    Complex c1;
    RootCase root_case = RootCase::Distinct;
    /// The root-formula value, even when `trace` came from the recurrence.
    Complex closed_form_trace;
};

/// tr(Q_N(xi)) and C_1 from the roots of l^2 - (1 + sin xi) l + 2 sin xi = 0.
C1ClosedForm qca2_c1_closed_form(int n_sites, double xi,
                                 const Tolerances &tol = kDefaultTolerances);

/// x_N = tr(Q_N(xi)) by iterating x_{N+2} = (1 + s) x_{N+1} - 2 s x_N, x_1 = x_2 = 2.
double qca2_x1_recurrence(int n_sites, double xi);

/// x_N = tr(Q_N(xi)^2) by iterating the third-order recurrence
/// x_{N+3} = (1 + s^2) x_{N+2} + 2 s c^2 x_{N+1} - 4 s c^2 x_N
/// from x_1 = 2, x_2 = 4, x_3 = 4(1 + s^2), with s = sin xi, c = cos xi.
double qca2_x2_recurrence(int n_sites, double xi);

/// Rule 90 trace of power r = 2^k (2s - 1) on N in {2, 3, 4}:
/// 2^(2^k) when 2^k < N, else 2^N.
double rule90_trace_general_r(int n_sites, int k, int s);

enum class Qca2ZetaVariant { PiHalf, Rule90 };

/// log(zeta^-1)(u) in closed form.
///  PiHalf: (1/2) Log(1 - u^2) - 2^{-(N-1)/2} T_{N-1}(sqrt2/2) arctanh(u), any N >= 1.
///  Rule90: N = 1 gives Log(1 - u); N in {2, 3, 4} uses the period-2^m formula.
/// Requires |u| < 1.
Complex zeta_closed_form_qca2(int n_sites, Qca2ZetaVariant variant, Complex u);

/// The Rule 90 formula with m = ceil(log2 N) for any N >= 2. Only N <= 4 is
/// proved; larger N is what the conjecture check exercises.
Complex rule90_zeta_formula(int n_sites, Complex u);

// ---------------------------------------------------------------------------
// Reports

struct ClosedFormReport {
    std::string formula_id;
    /// "theorem" for proved results, "conjecture" for the open Rule 90 case.
    std::string status = "theorem";
    nlohmann::json grid;
    double max_abs_error = 0;
    double tolerance = 0;
    bool passed = false;
    nlohmann::json witness;
    std::vector<std::string> notes;
};

nlohmann::json to_json(const ClosedFormReport &report);

/// Compares the Rule 90 formula with m = ceil(log2 N) against the truncated
/// trace series for N >= 5. Does not assert the result; the report records it.
ClosedFormReport conjecture_test_rule90(int n_sites, int r_max, std::span<const Complex> u_samples,
                                        double tol = kDefaultTolerances.conjecture);

}  // namespace ipszeta

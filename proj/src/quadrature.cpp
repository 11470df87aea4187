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


#include "ipszeta/quadrature.hpp"

#include <algorithm>
#include <string>

#include <Eigen/Eigenvalues>

#include "ipszeta/errors.hpp"

namespace ipszeta {

namespace {

constexpr int kMaxNewtonSteps = 50;
constexpr double kNewtonEps = 1e-14;
constexpr double kRescaleAbove = 1e150;
constexpr double kRescaleBy = 1e-150;

struct HermiteValues {
    double value;       // h_n(z), scaled by exp(-log_scale)
    double previous;    // h_{n-1}(z), same scaling
    double log_scale;
};

/// Orthonormal Hermite polynomials h_0..h_n at z by their three-term
/// recurrence. The values grow like exp(z^2 / 2) and would overflow for the
/// outer nodes of large rules, so they are kept rescaled.
HermiteValues hermite(int n, double z) {
    double p1 = 1.0 / std::pow(std::numbers::pi, 0.25);
    double p2 = 0.0;
    double log_scale = 0.0;
    for (int j = 0; j < n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = z * std::sqrt(2.0 / (j + 1)) * p2 - std::sqrt(static_cast<double>(j) / (j + 1)) * p3;
        if (std::abs(p1) > kRescaleAbove) {
            p1 *= kRescaleBy;
            p2 *= kRescaleBy;
            log_scale -= std::log(kRescaleBy);
        }
    }
    return {p1, p2, log_scale};
}

}  // namespace

GaussHermiteRule::GaussHermiteRule(int n) : nodes_(n), weights_(n) {
    if (n < 1) throw Error(ErrorKind::DomainError, "quadrature needs at least one node");

    // Starting points: eigenvalues of the symmetric Jacobi matrix, whose
    // off-diagonal entries are sqrt(j / 2).
    Eigen::VectorXd diag = Eigen::VectorXd::Zero(n);
    Eigen::VectorXd sub(std::max(n - 1, 0));
    for (int j = 1; j < n; ++j) sub[j - 1] = std::sqrt(j / 2.0);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> jacobi;
    jacobi.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
    if (jacobi.info() != Eigen::Success) {
        throw Error(ErrorKind::ConvergenceFailure, "Jacobi matrix eigenvalues did not converge");
    }

    const int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
        // Eigenvalues come in increasing order; nodes are stored decreasing.
        double z = n % 2 == 1 && i == half - 1 ? 0.0 : jacobi.eigenvalues()[n - 1 - i];
        HermiteValues h{};
        int step = 0;
        for (; step < kMaxNewtonSteps; ++step) {
            h = hermite(n, z);
            // h_n' = sqrt(2n) h_{n-1}
            const double dz = h.value / (std::sqrt(2.0 * n) * h.previous);
            z -= dz;
            if (std::abs(dz) <= kNewtonEps * std::max(1.0, std::abs(z))) break;
        }
        if (step == kMaxNewtonSteps) {
            throw Error(ErrorKind::ConvergenceFailure,
                        "Gauss-Hermite node " + std::to_string(i) + " did not converge");
        }
        h = hermite(n, z);
        // w = 2 / h_n'(z)^2, evaluated in logs.
        const double log_derivative = std::log(std::sqrt(2.0 * n) * std::abs(h.previous)) + h.log_scale;
        nodes_[i] = z;
        nodes_[n - 1 - i] = -z;
        weights_[i] = std::exp(std::log(2.0) - 2.0 * log_derivative);
        weights_[n - 1 - i] = weights_[i];
    }
}

}  // namespace ipszeta

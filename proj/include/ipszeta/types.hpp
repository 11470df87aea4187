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

#include <complex>
#include <numbers>

#include <Eigen/Dense>

namespace ipszeta {

using Complex = std::complex<double>;

using Matrix2 = Eigen::Matrix2cd;
using Matrix4 = Eigen::Matrix4cd;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Central tolerance defaults. Every threshold the library uses without an
/// explicit argument is read from here.
struct Tolerances {
    /// Classification of local operators (PCA / QCA / CA / tensor).
    double classify = 1e-9;
    /// Checks that hold by construction (zero pattern, unitarity of built ops).
    double exact = 1e-12;
    /// |1 - u*lambda| below this is treated as a pole of the zeta function.
    double singular = 1e-14;
    /// Discriminant magnitude that selects the double-root closed form.
    double double_root = 1e-12;
    /// Below this discriminant magnitude the recurrence value is authoritative.
    double near_double_root = 1e-6;
    /// Normalization drift tolerated by dynamics before it is reported.
    double invariant_drift = 1e-8;
    /// Pass threshold of the Rule 90 conjecture check.
    double conjecture = 1e-8;
};

inline constexpr Tolerances kDefaultTolerances{};

/// Largest N for which the 2^N x 2^N operator is materialized.
inline constexpr int kDefaultDenseCap = 12;
/// Matrix-free trace computations above this size print a cost warning.
inline constexpr int kMatrixFreeWarnSites = 14;
/// Hard ceiling on the number of sites (index arithmetic uses 64-bit words).
inline constexpr int kMaxSites = 30;

inline constexpr int kDefaultSeriesOrder = 20;
inline constexpr int kDefaultQuadratureNodes = 64;

}  // namespace ipszeta

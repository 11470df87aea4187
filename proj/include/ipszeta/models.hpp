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

#include <optional>
#include <string_view>
#include <variant>

#include "ipszeta/types.hpp"

namespace ipszeta {

/// Two-site transition operator of a nearest-neighbour two-state system.
///
/// Column index is the input pair (i, j) encoded as 2i + j, row index is the
/// output pair (k, l) encoded as 2k + l; (i, k) belong to the left site and
/// (j, l) to the right site. The right site never changes, so every entry
/// with j != l is exactly zero. Instances can only be obtained through
/// `from_matrix`, which enforces that pattern.
class LocalOperator {
   public:
    /// Throws ConstraintViolation when an entry with j != l is nonzero and
    /// DomainError when an entry is not finite.
    static LocalOperator from_matrix(const Matrix4 &m);

    static LocalOperator identity();

    const Matrix4 &matrix() const noexcept { return m_; }

    /// Transition weight from input pair (i, j) to output pair (k, l).
    Complex weight(int i, int j, int k, int l) const { return m_(2 * k + l, 2 * i + j); }

    /// The 2x2 block acting on the left site when the right site is in `right_state`.
    /// Entry (k, i) is the weight of (i, right_state) -> (k, right_state).
    Matrix2 block(int right_state) const;

    bool operator==(const LocalOperator &other) const { return m_ == other.m_; }

   private:
    explicit LocalOperator(const Matrix4 &m) : m_(m) {}
    Matrix4 m_;
};

struct DkParams {
    double p = 0;
    double q = 0;
};

struct GeneralizedDkParams {
    double xi1 = 0, xi2 = 0, xi3 = 0, xi4 = 0;
};

struct Qca1Params {
    double xi1 = 0, xi2 = 0;
};

struct Qca2Params {
    double xi1 = 0, xi2 = 0;
};

struct TensorParams {
    Matrix2 left;
    Matrix2 right;
};

struct CustomParams {
    Matrix4 matrix;
};

using ModelSpec =
    std::variant<DkParams, GeneralizedDkParams, Qca1Params, Qca2Params, TensorParams, CustomParams>;

/// Short tag used in JSON and on the command line: dk, gdk, qca1, qca2, tensor, custom.
std::string_view model_tag(const ModelSpec &spec);

/// Angles are 2pi-periodic; any finite real is accepted and mapped to [0, 2pi).
double reduce_angle(double radians);

LocalOperator build_local(const ModelSpec &spec);

/// Left factor (a b; c d) and diagonal right factor diag(e, h) of a tensor-model operator.
struct TensorFactors {
    Matrix2 left;
    Matrix2 right;
};

/// left (x) right, laid out in the local-operator index convention.
Matrix4 kron(const Matrix2 &left, const Matrix2 &right);

struct ModelClass {
    bool is_pca = false;
    bool is_qca = false;
    bool is_ca = false;
    std::optional<TensorFactors> factors;

    bool tensor_factorizable() const { return factors.has_value(); }
};

ModelClass classify(const LocalOperator &op, double tol = kDefaultTolerances.classify);

/// Writes `op` as left (x) diag(e, h) when possible.
///
/// The pair is unique up to a scalar; the returned pair has e = 1 whenever the
/// right-site-0 block is nonzero, and otherwise e = 0, h = 1.
std::optional<TensorFactors> factor_tensor(const LocalOperator &op,
                                           double tol = kDefaultTolerances.classify);

bool is_column_stochastic(const LocalOperator &op, double tol = kDefaultTolerances.classify);
bool is_unitary(const LocalOperator &op, double tol = kDefaultTolerances.classify);

/// The Rule 90 automaton, i.e. GeneralizedDk(0,0,0,0) == Qca2(0,0).
LocalOperator rule90();

}  // namespace ipszeta

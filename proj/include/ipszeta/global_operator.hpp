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

#include <cstdint>
#include <memory>
#include <span>
#include <string_view>
#include <vector>

#include "ipszeta/models.hpp"
#include "ipszeta/types.hpp"

namespace ipszeta {

/// A configuration (eta(0), ..., eta(N-1)) of the path.
///
/// Site 0 is the most significant bit of the basis index, so the index of
/// (0, 0, 1) is 1 and the basis vector reads left to right like the
/// Kronecker product |0>|0>|1>.
class Configuration {
   public:
    explicit Configuration(std::vector<int> bits);
    static Configuration from_index(int n_sites, std::uint64_t index);
    /// Parses a bit string such as "001".
    static Configuration parse(std::string_view bits);

    int n_sites() const { return static_cast<int>(bits_.size()); }
    const std::vector<int> &bits() const { return bits_; }
    std::uint64_t index() const;

   private:
    std::vector<int> bits_;
};

/// Bit position of `site` inside a basis index of an `n_sites` path.
constexpr int site_bit(int n_sites, int site) { return n_sites - 1 - site; }

/// Constant 2x2 matrices used to decompose the Qca2(0, xi) family.
namespace pauli {
Matrix2 e00();
Matrix2 e01();
Matrix2 e10();
Matrix2 e11();
/// sigma(xi) = [[-sin xi, cos xi], [cos xi, sin xi]]; sigma(xi)^2 = I.
Matrix2 sigma(double xi);
}  // namespace pauli

/// Kronecker product of dense matrices, left factor on the most significant bits.
Matrix kron(const Matrix &left, const Matrix &right);

/// tr((Q_N)^r) for r = 1..R, with C_r = tr / 2^N.
struct TraceSequence {
    int n_sites = 0;
    std::vector<Complex> values;
    std::vector<Complex> c_values;

    int r_max() const { return static_cast<int>(values.size()); }
    /// 1-based accessors.
    Complex trace(int r) const { return values.at(r - 1); }
    Complex c(int r) const { return c_values.at(r - 1); }
};

/// The 2^N x 2^N evolution operator of an N-site path built from a local operator.
///
///   Q_N = (I x ... x I x Q)(I x ... x Q x I) ... (Q x I x ... x I)
///
/// The rightmost factor acts first: the pair (0, 1) is updated first and the
/// pair (N-2, N-1) last. Q_1 is the 2x2 identity and Q_2 is the local operator.
///
/// The dense form is built lazily and shared between copies. Everything else
/// is computed matrix-free in O(N 2^N) per application.
class GlobalOperator {
   public:
    GlobalOperator(int n_sites, LocalOperator local, int dense_cap = kDefaultDenseCap);

    int n_sites() const { return n_sites_; }
    std::uint64_t dimension() const { return std::uint64_t{1} << n_sites_; }
    const LocalOperator &local() const { return local_; }
    int dense_cap() const { return dense_cap_; }
    bool fits_dense() const { return n_sites_ <= dense_cap_; }

    /// v <- Q_N v, in place. Throws DimensionMismatch on a wrong length.
    void apply_in_place(std::span<Complex> v) const;
    Vector apply(const Vector &v) const;
    /// m <- Q_N m, one column at a time.
    void apply_left(Matrix &m) const;

    /// Dense Q_N, computed once. Throws SizeExceeded above the dense cap.
    const Matrix &dense() const &;
    /// On a temporary the cache dies with the operator, so a copy is returned.
    Matrix dense() const && { return static_cast<const GlobalOperator &>(*this).dense(); }

   private:
    struct DenseCache;

    int n_sites_;
    LocalOperator local_;
    int dense_cap_;
    std::shared_ptr<DenseCache> cache_;
};

inline Vector apply_global(const GlobalOperator &op, const Vector &v) { return op.apply(v); }
inline const Matrix &materialize(const GlobalOperator &op) { return op.dense(); }

/// Traces of the first r_max powers. Dense (column-batched) within the dense
/// cap; per-basis-vector sweeps beyond it.
TraceSequence trace_powers(const GlobalOperator &op, int r_max);

/// All 2^N eigenvalues (with multiplicity) from a complex Schur decomposition.
/// The QR sweep budget is 30 * 2^N; running out raises ConvergenceFailure.
std::vector<Complex> eigenvalues(const GlobalOperator &op);

/// (1/2^N) sum_j Log(1 - u lambda_j), summed factor by factor with principal logs.
Complex log_det_factor(std::span<const Complex> eigenvalues, Complex u,
                       double singular_tol = kDefaultTolerances.singular);
Complex log_det_factor(const GlobalOperator &op, Complex u);

/// Spectral radius of a list of eigenvalues.
double spectral_radius(std::span<const Complex> eigenvalues);

/// max |(Q_N)^r - I| <= tol.
bool matrix_power_equals_identity(const GlobalOperator &op, int r, double tol);

}  // namespace ipszeta

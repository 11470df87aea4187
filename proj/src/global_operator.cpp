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

#include "ipszeta/global_operator.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <mutex>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "ipszeta/errors.hpp"

namespace ipszeta {

// ---------------------------------------------------------------------------
// Configuration

Configuration::Configuration(std::vector<int> bits) : bits_(std::move(bits)) {
    if (bits_.empty() || static_cast<int>(bits_.size()) > kMaxSites) {
        throw Error(ErrorKind::DomainError, "configuration must have 1.." +
                                                std::to_string(kMaxSites) + " sites");
    }
    for (int b : bits_) {
        if (b != 0 && b != 1) throw Error(ErrorKind::DomainError, "site states must be 0 or 1");
    }
}

Configuration Configuration::from_index(int n_sites, std::uint64_t index) {
    if (n_sites < 1 || n_sites > kMaxSites || index >= (std::uint64_t{1} << n_sites)) {
        throw Error(ErrorKind::DomainError, "configuration index out of range");
    }
    std::vector<int> bits(n_sites);
    for (int x = 0; x < n_sites; ++x) bits[x] = static_cast<int>((index >> site_bit(n_sites, x)) & 1);
    return Configuration(std::move(bits));
}

Configuration Configuration::parse(std::string_view text) {
    std::vector<int> bits;
    for (char ch : text) {
        if (ch == ',' || ch == ' ') continue;
        if (ch != '0' && ch != '1') {
            throw Error(ErrorKind::ParseError, "configuration must be a string of 0/1, got '" +
                                                   std::string(text) + "'");
        }
        bits.push_back(ch - '0');
    }
    return Configuration(std::move(bits));
}

std::uint64_t Configuration::index() const {
    std::uint64_t idx = 0;
    const int n = n_sites();
    for (int x = 0; x < n; ++x) idx |= static_cast<std::uint64_t>(bits_[x]) << site_bit(n, x);
    return idx;
}

// ---------------------------------------------------------------------------
// Constant matrices

namespace pauli {
Matrix2 e00() { return (Matrix2() << 1, 0, 0, 0).finished(); }
Matrix2 e01() { return (Matrix2() << 0, 1, 0, 0).finished(); }
Matrix2 e10() { return (Matrix2() << 0, 0, 1, 0).finished(); }
Matrix2 e11() { return (Matrix2() << 0, 0, 0, 1).finished(); }
Matrix2 sigma(double xi) {
    return (Matrix2() << -std::sin(xi), std::cos(xi), std::cos(xi), std::sin(xi)).finished();
}
}  // namespace pauli

Matrix kron(const Matrix &left, const Matrix &right) {
    Matrix out(left.rows() * right.rows(), left.cols() * right.cols());
    for (Eigen::Index i = 0; i < left.rows(); ++i) {
        for (Eigen::Index j = 0; j < left.cols(); ++j) {
            out.block(i * right.rows(), j * right.cols(), right.rows(), right.cols()) =
                left(i, j) * right;
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// GlobalOperator

struct GlobalOperator::DenseCache {
    std::once_flag once;
    Matrix matrix;
};

GlobalOperator::GlobalOperator(int n_sites, LocalOperator local, int dense_cap)
    : n_sites_(n_sites),
      local_(std::move(local)),
      dense_cap_(dense_cap),
      cache_(std::make_shared<DenseCache>()) {
    if (n_sites < 1 || n_sites > kMaxSites) {
        throw Error(ErrorKind::DomainError,
                    "number of sites must be in 1.." + std::to_string(kMaxSites));
    }
}

void GlobalOperator::apply_in_place(std::span<Complex> v) const {
    const std::uint64_t dim = dimension();
    if (v.size() != dim) {
        std::ostringstream msg;
        msg << "vector of length " << v.size() << " for a " << n_sites_ << "-site operator";
        throw Error(ErrorKind::DimensionMismatch, msg.str());
    }
    const Matrix2 blocks[2] = {local_.block(0), local_.block(1)};
    for (int x = 0; x + 1 < n_sites_; ++x) {
        const int left_bit = site_bit(n_sites_, x);
        const int right_bit = left_bit - 1;
        const std::uint64_t left_mask = std::uint64_t{1} << left_bit;
        const std::uint64_t right_mask = std::uint64_t{1} << right_bit;
        const std::uint64_t low_count = right_mask;
        const std::uint64_t high_count = dim >> (left_bit + 1);
        for (std::uint64_t hi = 0; hi < high_count; ++hi) {
            for (std::uint64_t lo = 0; lo < low_count; ++lo) {
                const std::uint64_t base = (hi << (left_bit + 1)) | lo;
                for (int j = 0; j < 2; ++j) {
                    const Matrix2 &b = blocks[j];
                    const std::uint64_t i0 = base | (j ? right_mask : 0);
                    const std::uint64_t i1 = i0 | left_mask;
                    const Complex a0 = v[i0];
                    const Complex a1 = v[i1];
                    v[i0] = b(0, 0) * a0 + b(0, 1) * a1;
                    v[i1] = b(1, 0) * a0 + b(1, 1) * a1;
                }
            }
        }
    }
}

Vector GlobalOperator::apply(const Vector &v) const {
    Vector out = v;
    apply_in_place(std::span<Complex>(out.data(), static_cast<std::size_t>(out.size())));
    return out;
}

void GlobalOperator::apply_left(Matrix &m) const {
    if (static_cast<std::uint64_t>(m.rows()) != dimension()) {
        throw Error(ErrorKind::DimensionMismatch, "matrix rows do not match operator dimension");
    }
    const Eigen::Index cols = m.cols();
    const auto rows = static_cast<std::size_t>(m.rows());
#pragma omp parallel for schedule(static)
    for (Eigen::Index c = 0; c < cols; ++c) {
        apply_in_place(std::span<Complex>(m.col(c).data(), rows));
    }
}

const Matrix &GlobalOperator::dense() const & {
    if (!fits_dense()) {
        std::ostringstream msg;
        msg << "dense form of a " << n_sites_ << "-site operator exceeds the cap of "
            << dense_cap_ << " sites";
        throw Error(ErrorKind::SizeExceeded, msg.str());
    }
    std::call_once(cache_->once, [this] {
        const auto dim = static_cast<Eigen::Index>(dimension());
        Matrix m = Matrix::Identity(dim, dim);
        apply_left(m);
        cache_->matrix = std::move(m);
    });
    return cache_->matrix;
}

// ---------------------------------------------------------------------------
// Traces, spectrum, determinants

namespace {

TraceSequence make_sequence(int n_sites, std::vector<Complex> traces) {
    TraceSequence seq;
    seq.n_sites = n_sites;
    const double scale = std::ldexp(1.0, -n_sites);
    seq.c_values.reserve(traces.size());
    for (const Complex &t : traces) seq.c_values.push_back(t * scale);
    seq.values = std::move(traces);
    return seq;
}

constexpr std::uint64_t kBasisBlock = 256;

}  // namespace

TraceSequence trace_powers(const GlobalOperator &op, int r_max) {
    if (r_max < 1) throw Error(ErrorKind::DomainError, "r_max must be at least 1");
    const std::uint64_t dim = op.dimension();
    std::vector<Complex> traces(static_cast<std::size_t>(r_max), Complex(0.0));

    if (op.fits_dense()) {
        Matrix power = Matrix::Identity(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
        for (int r = 0; r < r_max; ++r) {
            op.apply_left(power);
            traces[r] = power.trace();
        }
        return make_sequence(op.n_sites(), std::move(traces));
    }

    if (op.n_sites() > kMatrixFreeWarnSites) {
        std::cerr << "warning: matrix-free trace of a " << op.n_sites()
                  << "-site operator costs O(r_max * N * 4^N)\n";
    }
    // Fixed blocks of basis vectors, reduced in block order so the result does
    // not depend on the thread count.
    const std::uint64_t n_blocks = (dim + kBasisBlock - 1) / kBasisBlock;
    std::vector<Complex> partial(static_cast<std::size_t>(n_blocks * r_max), Complex(0.0));
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t blk = 0; blk < static_cast<std::int64_t>(n_blocks); ++blk) {
        std::vector<Complex> v(dim);
        Complex *acc = partial.data() + blk * r_max;
        const std::uint64_t begin = static_cast<std::uint64_t>(blk) * kBasisBlock;
        const std::uint64_t end = std::min(dim, begin + kBasisBlock);
        for (std::uint64_t j = begin; j < end; ++j) {
            std::fill(v.begin(), v.end(), Complex(0.0));
            v[j] = 1.0;
            for (int r = 0; r < r_max; ++r) {
                op.apply_in_place(v);
                acc[r] += v[j];
            }
        }
    }
    for (std::uint64_t blk = 0; blk < n_blocks; ++blk) {
        for (int r = 0; r < r_max; ++r) traces[r] += partial[blk * r_max + r];
    }
    return make_sequence(op.n_sites(), std::move(traces));
}

std::vector<Complex> eigenvalues(const GlobalOperator &op) {
    const Matrix &m = op.dense();
    const Eigen::Index dim = m.rows();
    Eigen::ComplexSchur<Matrix> schur(dim);
    schur.setMaxIterations(30 * dim);
    schur.compute(m, /*computeU=*/false);
    if (schur.info() != Eigen::Success) {
        std::ostringstream msg;
        msg << "Schur iteration did not converge within " << 30 * dim << " QR sweeps";
        throw Error(ErrorKind::ConvergenceFailure, msg.str());
    }
    const Vector diag = schur.matrixT().diagonal();
    return {diag.data(), diag.data() + diag.size()};
}

Complex log_det_factor(std::span<const Complex> eigenvalues, Complex u, double singular_tol) {
    if (eigenvalues.empty()) throw Error(ErrorKind::DomainError, "empty spectrum");
    Complex sum = 0.0;
    for (const Complex &lambda : eigenvalues) {
        const Complex factor = 1.0 - u * lambda;
        if (std::abs(factor) < singular_tol) {
            std::ostringstream msg;
            msg << "1 - u*lambda vanishes at u = " << u << ", lambda = " << lambda;
            throw Error(ErrorKind::SingularAtU, msg.str());
        }
        sum += std::log(factor);
    }
    return sum / static_cast<double>(eigenvalues.size());
}

Complex log_det_factor(const GlobalOperator &op, Complex u) {
    const auto spectrum = eigenvalues(op);
    return log_det_factor(spectrum, u);
}

double spectral_radius(std::span<const Complex> eigenvalues) {
    double rho = 0.0;
    for (const Complex &lambda : eigenvalues) rho = std::max(rho, std::abs(lambda));
    return rho;
}

bool matrix_power_equals_identity(const GlobalOperator &op, int r, double tol) {
    if (r < 1) throw Error(ErrorKind::DomainError, "power must be positive");
    const std::uint64_t dim = op.dimension();
    if (op.fits_dense()) {
        const auto n = static_cast<Eigen::Index>(dim);
        Matrix power = Matrix::Identity(n, n);
        for (int k = 0; k < r; ++k) op.apply_left(power);
        return (power - Matrix::Identity(n, n)).cwiseAbs().maxCoeff() <= tol;
    }
    std::vector<Complex> v(dim);
    for (std::uint64_t j = 0; j < dim; ++j) {
        std::fill(v.begin(), v.end(), Complex(0.0));
        v[j] = 1.0;
        for (int k = 0; k < r; ++k) op.apply_in_place(v);
        for (std::uint64_t i = 0; i < dim; ++i) {
            const Complex expected = (i == j) ? Complex(1.0) : Complex(0.0);
            if (std::abs(v[i] - expected) > tol) return false;
        }
    }
    return true;
}

}  // namespace ipszeta

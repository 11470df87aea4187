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

#include "ipszeta/models.hpp"

#include <cmath>
#include <sstream>

#include "ipszeta/errors.hpp"

namespace ipszeta {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

double checked_angle(double radians, const char *name) {
    if (!std::isfinite(radians)) {
        throw Error(ErrorKind::DomainError, std::string("angle ") + name + " is not finite");
    }
    return reduce_angle(radians);
}

double checked_probability(double p, const char *name) {
    if (!std::isfinite(p) || p < 0.0 || p > 1.0) {
        std::ostringstream msg;
        msg << "probability " << name << " = " << p << " is outside [0, 1]";
        throw Error(ErrorKind::DomainError, msg.str());
    }
    return p;
}

double max_abs(const Matrix2 &m) { return m.cwiseAbs().maxCoeff(); }

// Row/column pattern of the four entries that mix input and output of the right site.
constexpr bool couples_right_site(int row, int col) { return (row & 1) != (col & 1); }

}  // namespace

LocalOperator LocalOperator::from_matrix(const Matrix4 &m) {
    for (int row = 0; row < 4; ++row) {
        for (int col = 0; col < 4; ++col) {
            const Complex z = m(row, col);
            if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
                throw Error(ErrorKind::DomainError, "local operator has a non-finite entry");
            }
            if (couples_right_site(row, col) && z != Complex(0.0)) {
                std::ostringstream msg;
                msg << "entry (" << row << ", " << col << ") = " << z
                    << " changes the state of the right site";
                throw Error(ErrorKind::ConstraintViolation, msg.str());
            }
        }
    }
    return LocalOperator(m);
}

LocalOperator LocalOperator::identity() { return LocalOperator(Matrix4::Identity()); }

Matrix2 LocalOperator::block(int right_state) const {
    Matrix2 b;
    for (int k = 0; k < 2; ++k) {
        for (int i = 0; i < 2; ++i) {
            b(k, i) = m_(2 * k + right_state, 2 * i + right_state);
        }
    }
    return b;
}

std::string_view model_tag(const ModelSpec &spec) {
    return std::visit(Overloaded{
                          [](const DkParams &) { return std::string_view("dk"); },
                          [](const GeneralizedDkParams &) { return std::string_view("gdk"); },
                          [](const Qca1Params &) { return std::string_view("qca1"); },
                          [](const Qca2Params &) { return std::string_view("qca2"); },
                          [](const TensorParams &) { return std::string_view("tensor"); },
                          [](const CustomParams &) { return std::string_view("custom"); },
                      },
                      spec);
}

double reduce_angle(double radians) {
    double r = std::fmod(radians, kTwoPi);
    if (r < 0.0) r += kTwoPi;
    if (r >= kTwoPi) r = 0.0;
    return r;
}

Matrix4 kron(const Matrix2 &left, const Matrix2 &right) {
    Matrix4 out;
    for (int k = 0; k < 2; ++k) {
        for (int l = 0; l < 2; ++l) {
            for (int i = 0; i < 2; ++i) {
                for (int j = 0; j < 2; ++j) {
                    out(2 * k + l, 2 * i + j) = left(k, i) * right(l, j);
                }
            }
        }
    }
    return out;
}

LocalOperator build_local(const ModelSpec &spec) {
    return std::visit(
        Overloaded{
            [](const DkParams &dk) {
                const double p = checked_probability(dk.p, "p");
                const double q = checked_probability(dk.q, "q");
                Matrix4 m = Matrix4::Zero();
                m(0, 0) = 1.0;
                m(0, 2) = 1.0 - p;
                m(1, 1) = 1.0 - p;
                m(1, 3) = 1.0 - q;
                m(2, 2) = p;
                m(3, 1) = p;
                m(3, 3) = q;
                return LocalOperator::from_matrix(m);
            },
            [](const GeneralizedDkParams &g) {
                const double x1 = checked_angle(g.xi1, "xi1");
                const double x2 = checked_angle(g.xi2, "xi2");
                const double x3 = checked_angle(g.xi3, "xi3");
                const double x4 = checked_angle(g.xi4, "xi4");
                auto c2 = [](double x) { return std::cos(x) * std::cos(x); };
                auto s2 = [](double x) { return std::sin(x) * std::sin(x); };
                Matrix4 m = Matrix4::Zero();
                m(0, 0) = c2(x1);
                m(2, 0) = s2(x1);
                m(1, 1) = s2(x2);
                m(3, 1) = c2(x2);
                m(0, 2) = s2(x3);
                m(2, 2) = c2(x3);
                m(1, 3) = c2(x4);
                m(3, 3) = s2(x4);
                return LocalOperator::from_matrix(m);
            },
            [](const Qca1Params &q) {
                const double x1 = checked_angle(q.xi1, "xi1");
                const double x2 = checked_angle(q.xi2, "xi2");
                Matrix4 m = Matrix4::Zero();
                m(0, 0) = std::cos(x1);
                m(0, 2) = -std::sin(x1);
                m(2, 0) = std::sin(x1);
                m(2, 2) = std::cos(x1);
                m(1, 1) = std::cos(x2);
                m(1, 3) = -std::sin(x2);
                m(3, 1) = std::sin(x2);
                m(3, 3) = std::cos(x2);
                return LocalOperator::from_matrix(m);
            },
            [](const Qca2Params &q) {
                const double x1 = checked_angle(q.xi1, "xi1");
                const double x2 = checked_angle(q.xi2, "xi2");
                Matrix4 m = Matrix4::Zero();
                m(0, 0) = std::cos(x1);
                m(0, 2) = -std::sin(x1);
                m(2, 0) = std::sin(x1);
                m(2, 2) = std::cos(x1);
                m(1, 1) = -std::sin(x2);
                m(1, 3) = std::cos(x2);
                m(3, 1) = std::cos(x2);
                m(3, 3) = std::sin(x2);
                return LocalOperator::from_matrix(m);
            },
            [](const TensorParams &t) {
                if (max_abs(t.left) == 0.0 || max_abs(t.right) == 0.0) {
                    throw Error(ErrorKind::DomainError, "tensor factors must both be nonzero");
                }
                return LocalOperator::from_matrix(kron(t.left, t.right));
            },
            [](const CustomParams &c) { return LocalOperator::from_matrix(c.matrix); },
        },
        spec);
}

bool is_column_stochastic(const LocalOperator &op, double tol) {
    const Matrix4 &m = op.matrix();
    for (int col = 0; col < 4; ++col) {
        Complex sum = 0.0;
        for (int row = 0; row < 4; ++row) {
            const Complex z = m(row, col);
            if (std::abs(z.imag()) > tol || z.real() < -tol || z.real() > 1.0 + tol) return false;
            sum += z;
        }
        if (std::abs(sum - 1.0) > tol) return false;
    }
    return true;
}

bool is_unitary(const LocalOperator &op, double tol) {
    const Matrix4 &m = op.matrix();
    const Matrix4 gram = m.adjoint() * m;
    return (gram - Matrix4::Identity()).cwiseAbs().maxCoeff() <= tol;
}

std::optional<TensorFactors> factor_tensor(const LocalOperator &op, double tol) {
    // With the right factor forced to diag(e, h), the operator splits into the
    // two left-site blocks e*A (right site 0) and h*A (right site 1).
    const Matrix2 block0 = op.block(0);
    const Matrix2 block1 = op.block(1);

    TensorFactors f;
    f.right = Matrix2::Zero();
    if (max_abs(block0) > tol) {
        f.left = block0;
        const Complex num = (block0.conjugate().cwiseProduct(block1)).sum();
        const Complex den = block0.squaredNorm();
        const Complex h = num / den;
        if (max_abs(block1 - h * block0) > tol) return std::nullopt;
        f.right(0, 0) = 1.0;
        f.right(1, 1) = h;
    } else if (max_abs(block1) > tol) {
        f.left = block1;
        f.right(1, 1) = 1.0;
    } else {
        return std::nullopt;
    }
    if ((kron(f.left, f.right) - op.matrix()).cwiseAbs().maxCoeff() > tol) return std::nullopt;
    return f;
}

ModelClass classify(const LocalOperator &op, double tol) {
    ModelClass c;
    c.is_pca = is_column_stochastic(op, tol);
    c.is_qca = is_unitary(op, tol);
    c.is_ca = true;
    for (int row = 0; row < 4 && c.is_ca; ++row) {
        for (int col = 0; col < 4; ++col) {
            const Complex z = op.matrix()(row, col);
            if (std::abs(z) > tol && std::abs(z - 1.0) > tol) {
                c.is_ca = false;
                break;
            }
        }
    }
    c.factors = factor_tensor(op, tol);
    return c;
}

LocalOperator rule90() { return build_local(GeneralizedDkParams{0, 0, 0, 0}); }

}  // namespace ipszeta

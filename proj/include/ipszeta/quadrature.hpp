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

#include <cmath>
#include <numbers>
#include <vector>

namespace ipszeta {

/// Gauss-Hermite rule for the weight exp(-x^2) on the real line.
///
/// Nodes start from the eigenvalues of the Jacobi matrix and are polished by
/// Newton iteration on the orthonormal Hermite recurrence. They are returned
/// in decreasing order. The rule is exact for polynomials of degree < 2n.
class GaussHermiteRule {
   public:
    explicit GaussHermiteRule(int n);

    int size() const { return static_cast<int>(nodes_.size()); }
    const std::vector<double> &nodes() const { return nodes_; }
    const std::vector<double> &weights() const { return weights_; }

    /// E[f(Z)] for Z ~ N(0, 1), via Z = sqrt(2) x.
    template <class F>
    auto normal_expectation(F &&f) const {
        using R = decltype(f(0.0));
        R sum{};
        for (std::size_t i = 0; i < nodes_.size(); ++i) {
            sum += weights_[i] * f(std::numbers::sqrt2 * nodes_[i]);
        }
        return sum / std::sqrt(std::numbers::pi);
    }

   private:
    std::vector<double> nodes_;
    std::vector<double> weights_;
};

}  // namespace ipszeta

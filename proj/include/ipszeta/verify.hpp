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
#include <vector>

#include "ipszeta/zeta.hpp"

namespace ipszeta {

/// Overrides for the built-in verification grids. Unset fields keep the defaults.
struct VerifyOptions {
    std::optional<int> n_min;
    std::optional<int> n_max;
    std::optional<int> r_max;
    std::vector<Complex> u_points;
    std::optional<double> tolerance;
};

/// Identifiers accepted by verify_formula, in a fixed order:
///   thm5_3          tensor-model trace factorization, random complex factors
///   cor5_4          C_r of Qca1(xi, xi) equals T_r(cos xi)^(N-1)
///   thm5_6          binomial log-sum closed form of Qca1(xi, xi)
///   cor5_7          Gaussian limit of the rescaled binomial form
///   prop6_r1        tr Q_N(xi) closed form, both root cases
///   prop6_r2        third-order recurrence for tr Q_N(xi)^2
///   prop6_pi2       period 2 and traces of Q_N(pi/2)
///   thm6_pi2zeta    arctanh closed form of the zeta function at pi/2
///   prop6_rule90_r  Rule 90 traces of all powers and period 2^m, N <= 4
///   thm6_rule90zeta Rule 90 zeta closed form, N <= 4
///   conj_rule90     Rule 90 zeta formula for N >= 5 (conjecture)
const std::vector<std::string_view> &formula_ids();

/// Runs one check over its grid. Unknown ids raise DomainError.
ClosedFormReport verify_formula(std::string_view formula_id, const VerifyOptions &options = {});

}  // namespace ipszeta

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

#include <string_view>
#include <vector>

#include "ipszeta/global_operator.hpp"
#include "ipszeta/types.hpp"

namespace ipszeta {

enum class StateKind {
    /// Components are configuration probabilities.
    PcaProbability,
    /// Components are amplitudes; probabilities are squared moduli.
    QcaAmplitude,
};

std::string_view state_kind_name(StateKind kind);

/// Snapshot of the distribution over the 2^N configurations at some time step.
struct StateVector {
    int n_sites = 0;
    StateKind kind = StateKind::PcaProbability;
    Vector components;
    int time_step = 0;
};

/// Basis vector at the configuration's index, time step 0.
StateVector initial_state(const Configuration &config, StateKind kind);

/// Throws InvariantDrift when `state` violates its kind's normalization by
/// more than `drift_tol`.
void check_state(const StateVector &state, double drift_tol = kDefaultTolerances.invariant_drift);

/// Applies the global operator `steps` times. A PCA state needs a
/// column-stochastic local operator and a QCA state a unitary one
/// (KindMismatch otherwise).
StateVector evolve(const StateVector &state, const GlobalOperator &op, int steps,
                   const Tolerances &tol = kDefaultTolerances);

double configuration_probability(const StateVector &state, const Configuration &config);

/// P(eta(x) = 1) for x = 0..N-1.
std::vector<double> site_marginals(const StateVector &state);

/// Marginals at steps 0..steps (steps + 1 rows).
std::vector<std::vector<double>> marginal_trajectory(const StateVector &start,
                                                     const GlobalOperator &op, int steps,
                                                     const Tolerances &tol = kDefaultTolerances);

}  // namespace ipszeta

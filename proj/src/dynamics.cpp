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

#include "ipszeta/dynamics.hpp"

#include <cmath>
#include <sstream>

#include "ipszeta/errors.hpp"
#include "ipszeta/models.hpp"

namespace ipszeta {

namespace {

double probability_at(const StateVector &state, Eigen::Index idx) {
    const Complex z = state.components[idx];
    return state.kind == StateKind::PcaProbability ? z.real() : std::norm(z);
}

}  // namespace

std::string_view state_kind_name(StateKind kind) {
    return kind == StateKind::PcaProbability ? "pca_probability" : "qca_amplitude";
}

StateVector initial_state(const Configuration &config, StateKind kind) {
    StateVector s;
    s.n_sites = config.n_sites();
    s.kind = kind;
    s.components = Vector::Zero(static_cast<Eigen::Index>(std::uint64_t{1} << s.n_sites));
    s.components[static_cast<Eigen::Index>(config.index())] = 1.0;
    return s;
}

void check_state(const StateVector &state, double drift_tol) {
    std::ostringstream msg;
    if (state.kind == StateKind::PcaProbability) {
        double sum = 0.0;
        for (Eigen::Index i = 0; i < state.components.size(); ++i) {
            const Complex z = state.components[i];
            if (z.real() < -drift_tol || std::abs(z.imag()) > drift_tol) {
                msg << "component " << i << " = " << z << " is not a probability at step "
                    << state.time_step;
                throw Error(ErrorKind::InvariantDrift, msg.str());
            }
            sum += z.real();
        }
        if (std::abs(sum - 1.0) > drift_tol) {
            msg << "total probability " << sum << " at step " << state.time_step;
            throw Error(ErrorKind::InvariantDrift, msg.str());
        }
    } else {
        const double norm = state.components.norm();
        if (std::abs(norm - 1.0) > drift_tol) {
            msg << "state norm " << norm << " at step " << state.time_step;
            throw Error(ErrorKind::InvariantDrift, msg.str());
        }
    }
}

StateVector evolve(const StateVector &state, const GlobalOperator &op, int steps,
                   const Tolerances &tol) {
    if (steps < 0) throw Error(ErrorKind::DomainError, "number of steps must be non-negative");
    if (op.n_sites() != state.n_sites) {
        throw Error(ErrorKind::DimensionMismatch, "state and operator have different sizes");
    }
    if (state.kind == StateKind::PcaProbability && !is_column_stochastic(op.local(), tol.classify)) {
        throw Error(ErrorKind::KindMismatch, "probability vectors need a column-stochastic operator");
    }
    if (state.kind == StateKind::QcaAmplitude && !is_unitary(op.local(), tol.classify)) {
        throw Error(ErrorKind::KindMismatch, "amplitude vectors need a unitary operator");
    }
    StateVector out = state;
    std::span<Complex> data(out.components.data(), static_cast<std::size_t>(out.components.size()));
    for (int n = 0; n < steps; ++n) op.apply_in_place(data);
    out.time_step += steps;
    check_state(out, tol.invariant_drift);
    return out;
}

double configuration_probability(const StateVector &state, const Configuration &config) {
    if (config.n_sites() != state.n_sites) {
        throw Error(ErrorKind::DimensionMismatch, "configuration size differs from state size");
    }
    return probability_at(state, static_cast<Eigen::Index>(config.index()));
}

std::vector<double> site_marginals(const StateVector &state) {
    std::vector<double> marginals(state.n_sites, 0.0);
    for (Eigen::Index idx = 0; idx < state.components.size(); ++idx) {
        const double p = probability_at(state, idx);
        for (int x = 0; x < state.n_sites; ++x) {
            if ((static_cast<std::uint64_t>(idx) >> site_bit(state.n_sites, x)) & 1) marginals[x] += p;
        }
    }
    return marginals;
}

std::vector<std::vector<double>> marginal_trajectory(const StateVector &start,
                                                     const GlobalOperator &op, int steps,
                                                     const Tolerances &tol) {
    std::vector<std::vector<double>> rows;
    rows.reserve(static_cast<std::size_t>(steps) + 1);
    StateVector s = start;
    rows.push_back(site_marginals(s));
    for (int n = 0; n < steps; ++n) {
        s = evolve(s, op, 1, tol);
        rows.push_back(site_marginals(s));
    }
    return rows;
}

}  // namespace ipszeta

// Copyright 2026 The qetu-toolkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/**
 * @file
 * Adiabatic initial state: H(t) = (1 - u(t)) H_1 + u(t) H_2 from the uniform
 * state, one first-order split step per factor.
 */
#pragma once

#include <cmath>
#include <optional>
#include <vector>

#include "../models/u1.hpp"
#include "../sim/evolvers.hpp"

namespace qetu::gsprep {

struct StepPair {
    real dt1 = 0.0;
    real dt2 = 0.0;
};

enum class Ramp { linear, table };

struct AdiabaticSchedule {
    real g1 = 10.0;
    real g2 = 1.0;
    real total_time = 1.0;
    std::size_t steps = 2;
    Ramp ramp = Ramp::linear;
    /// Per-step u averages for Ramp::table: dt2 = u_k dt.
    std::vector<real> u_table;

    [[nodiscard]] std::vector<StepPair> pairs() const {
        require(steps >= 1, "adiabatic: M must be at least 1");
        require(total_time > 0.0, "adiabatic: T must be positive");
        const real dt = total_time / static_cast<real>(steps);
        std::vector<StepPair> out;
        for (std::size_t k = 0; k < steps; ++k) {
            real dt2 = 0.0;
            if (ramp == Ramp::linear) {
                dt2 = static_cast<real>(2 * k + 1) * dt * dt / (2.0 * total_time);
            } else {
                require(u_table.size() == steps, "adiabatic: u table length must equal M");
                require(u_table[k] >= 0.0 && u_table[k] <= 1.0, "adiabatic: u outside [0, 1]");
                dt2 = u_table[k] * dt;
            }
            out.push_back({dt - dt2, dt2});
        }
        return out;
    }
};

/// Applies prod_k e^{-i dt2 H_2} e^{-i dt1 H_1} to the uniform state.
inline sim::StateVector adiabatic_init(const sim::SplitHamiltonian &h1,
                                       const sim::SplitHamiltonian &h2,
                                       const AdiabaticSchedule &sched) {
    require(h1.dim() == h2.dim(), "adiabatic_init: H_1 and H_2 dimensions differ");
    auto psi = sim::StateVector::uniform(h1.n_qubits());
    for (const auto &st : sched.pairs()) {
        sim::trotter_step(psi.amplitudes, h1, st.dt1, 1);
        sim::trotter_step(psi.amplitudes, h2, st.dt2, 1);
    }
    return psi;
}

/// H_1 = H(g1) and H_2 = H(g2), each with its own field digitization.
inline std::pair<sim::SplitHamiltonian, sim::SplitHamiltonian>
u1_adiabatic_pair(const models::U1Model &target, real g1) {
    const std::optional<Eigen::MatrixXd> w =
        target.basis == models::Basis::custom ? std::optional<Eigen::MatrixXd>(target.w)
                                              : std::nullopt;
    const auto strong = models::u1_model(target.n_p, target.n_q, g1, target.basis, w);
    return {models::u1_split(strong), models::u1_split(target)};
}

inline real gamma(const sim::StateVector &psi, const sim::StateVector &psi0) {
    return sim::overlap(psi, psi0);
}

} // namespace qetu::gsprep

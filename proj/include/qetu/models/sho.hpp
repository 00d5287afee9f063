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
 * Digitized harmonic oscillator H = g^2 p^2 / 2 + x^2 / (2 g^2).
 */
#pragma once

#include <cmath>

#include "../sim/hamiltonian.hpp"
#include "digitization.hpp"

namespace qetu::models {

/// Grid extent that balances the x and p truncations for coupling g.
inline real default_sho_xmax(std::size_t n_q, real g) {
    return std::sqrt(pi * static_cast<real>(pow2(n_q)) / 2.0) * g;
}

inline sim::SplitHamiltonian sho_model(std::size_t n_q, real g, real x_max) {
    require(n_q >= 1, "sho_model: n_q must be at least 1");
    require(x_max > 0.0, "sho_model: x_max must be positive");
    require(g > 0.0, "sho_model: g must be positive");
    const Digitization dig{n_q, x_max};
    sim::SplitHamiltonian h;
    h.n_sites = 1;
    h.site_qubits = n_q;
    h.hx.resize(dig.size());
    h.hp.resize(dig.size());
    for (std::size_t j = 0; j < dig.size(); ++j) {
        const real x = dig.x(j);
        const real p = dig.p(j);
        h.hx[j] = x * x / (2.0 * g * g);
        h.hp[j] = g * g * p * p / 2.0;
    }
    return h;
}

} // namespace qetu::models

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
 * Gaussian wavepacket on the symmetric position grid and its image under the
 * map x_sh = c1 x + c2 into [eta, pi - eta].
 */
#pragma once

#include <cmath>
#include <vector>

#include "../common.hpp"

namespace qetu::wavepacket {

struct WavepacketSpec {
    std::size_t n_q = 4;
    real x0 = 0.0;
    real p0 = 0.0;
    real sigma_x = 0.4;
    real x_max = 1.0;
    real c = 0.999;

    void validate() const {
        require(n_q >= 1, "wavepacket: n_q must be at least 1");
        require(sigma_x > 0.0, "wavepacket: sigma_x must be positive");
        require(x_max > 0.0, "wavepacket: x_max must be positive");
        require(c > 0.0 && c <= 1.0, "wavepacket: c must lie in (0, 1]");
    }

    [[nodiscard]] std::size_t size() const { return pow2(n_q); }
    [[nodiscard]] real dx() const { return 2.0 * x_max / static_cast<real>(size() - 1); }
    [[nodiscard]] real x(std::size_t j) const { return -x_max + static_cast<real>(j) * dx(); }

    /// (pi - 2 eta) / (max x - min x)
    [[nodiscard]] real c1(real eta) const { return (pi - 2.0 * eta) / (2.0 * x_max); }
    /// eta - c1 min x; pi/2 for every eta on the symmetric grid.
    [[nodiscard]] real c2(real eta) const { return eta + c1(eta) * x_max; }
    [[nodiscard]] real x_sh(std::size_t j, real eta) const { return c1(eta) * x(j) + c2(eta); }
    [[nodiscard]] real x0_qetu(real eta) const { return c1(eta) * x0 + c2(eta); }
    [[nodiscard]] real sigma_qetu(real eta) const { return c1(eta) * sigma_x; }

    /// c exp(-(x_j - x0)^2 / (2 sigma_x^2)); the filter values the circuit must realize.
    [[nodiscard]] std::vector<real> filter_targets() const {
        std::vector<real> out(size());
        for (std::size_t j = 0; j < size(); ++j) {
            const real u = (x(j) - x0) / sigma_x;
            out[j] = c * std::exp(-0.5 * u * u);
        }
        return out;
    }
};

} // namespace qetu::wavepacket

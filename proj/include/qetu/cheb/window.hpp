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
 * The sigma window: images of the keep/reject energy regions under cos(tau E / 2).
 */
#pragma once

#include <cmath>

#include "../common.hpp"

namespace qetu::cheb {

struct SigmaWindow {
    real eta = 0.0;
    real eta_proj = 0.0;
    real mu = 0.0;
    real delta = 0.0;
    real tau = 1.0;
    real c = 0.999;
    real sigma_plus = 0.0;
    real sigma_minus = 0.0;
    real sigma_min = 0.0;
    real sigma_max = 0.0;
};

inline SigmaWindow sigma_window(real eta, real eta_proj, real mu, real delta, real tau,
                                real c = 0.999) {
    require(delta > 0.0, "sigma_window: delta must be positive");
    require(tau > 0.0, "sigma_window: tau must be positive");
    require(eta_proj <= eta, "sigma_window: eta_proj must not exceed eta");
    require(c > 0.0 && c <= 1.0, "sigma_window: c must lie in (0, 1]");
    SigmaWindow w{eta, eta_proj, mu, delta, tau, c};
    w.sigma_plus = std::cos(tau * (mu - delta / 2.0) / 2.0);
    w.sigma_minus = std::cos(tau * (mu + delta / 2.0) / 2.0);
    w.sigma_min = std::cos(tau * (pi - eta_proj) / 2.0);
    w.sigma_max = std::cos(tau * eta_proj / 2.0);
    return w;
}

inline real tau_max(real eta, real mu, real delta) {
    const real den = pi - eta + mu + delta / 2.0;
    require(den > 0.0, "tau_max: pi - eta + mu + delta/2 must be positive");
    return 2.0 * pi / den;
}

} // namespace qetu::cheb

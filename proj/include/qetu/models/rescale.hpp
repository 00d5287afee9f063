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
 * Affine map of the physical spectrum into [eta, pi - eta].
 */
#pragma once

#include <cmath>

#include "../cheb/window.hpp"

namespace qetu::models {

struct RescaleParams {
    real c1 = 1.0;
    real c2 = 0.0;
    real eta = 0.0;
    real e0 = 0.0;
    real e1 = 0.0;
    real emax = 0.0;
    real mu = 0.0;
    real delta = 0.0;
    real tau_max = 0.0;
};

/// Gap convention: full rescaled gap, or the gap divided by 1.5 with mu kept
/// at the midpoint.
enum class GapPreset { full, reduced_1p5 };

/// c1 = (pi - 2 eta) / (Emax - E0), c2 = eta - c1 E0.
inline RescaleParams rescale(real eta, real e0, real e1, real emax,
                             GapPreset preset = GapPreset::full) {
    require(eta < pi / 2.0, "rescale: eta must be below pi/2");
    require(e1 > e0, "rescale: degenerate E0 = E1");
    require(emax >= e1, "rescale: Emax must be at least E1");
    RescaleParams r;
    r.eta = eta;
    r.c1 = (pi - 2.0 * eta) / (emax - e0);
    r.c2 = eta - r.c1 * e0;
    r.e0 = r.c1 * e0 + r.c2;
    r.e1 = r.c1 * e1 + r.c2;
    r.emax = r.c1 * emax + r.c2;
    r.mu = 0.5 * (r.e0 + r.e1);
    r.delta = r.e1 - r.e0;
    if (preset == GapPreset::reduced_1p5) {
        r.delta /= 1.5;
    }
    r.tau_max = cheb::tau_max(eta, r.mu, r.delta);
    return r;
}

} // namespace qetu::models

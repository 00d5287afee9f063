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
 * Even minimax approximation to the shifted step on the sigma window.
 */
#pragma once

#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "minimax.hpp"
#include "window.hpp"

namespace qetu::cheb {

struct ApproxReport {
    real epsilon = 0.0;
    std::size_t samples_used = 0;
    /// Max residual per constraint region, e.g. "keep"/"reject" or "even"/"odd".
    std::map<std::string, real> regions;
};

inline std::size_t default_samples(std::size_t d) {
    return std::max<std::size_t>(2001, 40 * d);
}

/// Even polynomial of degree d close to c on [sigma+, sigma_max] and to 0 on
/// [sigma_min, sigma-], with |F| <= c on the whole grid. m = 0 picks the default.
inline std::pair<ChebyshevPoly, ApproxReport> solve_step_poly(const SigmaWindow &w,
                                                              std::size_t d,
                                                              std::size_t m = 0) {
    require(d % 2 == 0, "solve_step_poly: degree must be even");
    if (m == 0) {
        m = default_samples(d);
    }
    if (!(w.sigma_plus <= w.sigma_max)) {
        throw ValidationError("solve_step_poly: keep region [sigma+, sigma_max] is empty");
    }
    const auto grid = chebyshev_grid(m);
    auto in = [](real x, real lo, real hi) { return x >= lo && x <= hi; };
    std::size_t n_keep = 0;
    std::size_t n_reject = 0;
    for (real x : grid) {
        n_keep += in(x, w.sigma_plus, w.sigma_max) ? 1 : 0;
        n_reject += in(x, w.sigma_min, w.sigma_minus) ? 1 : 0;
    }
    if (n_keep < 5 || n_reject < 5) {
        throw ValidationError("solve_step_poly: fewer than 5 samples in a window region; raise M");
    }

    // Even parity: F(-x) = F(x), so the x >= 0 half of the symmetric grid suffices.
    std::vector<FitPoint> pts;
    std::vector<int> region;
    BoundSet bound{{}, w.c, {}};
    for (real x : grid) {
        if (x < 0.0) {
            continue;
        }
        bound.z.push_back(x);
        const bool keep = in(x, w.sigma_plus, w.sigma_max) || in(-x, w.sigma_plus, w.sigma_max);
        const bool reject =
            in(x, w.sigma_min, w.sigma_minus) || in(-x, w.sigma_min, w.sigma_minus);
        if (keep && reject) {
            throw ValidationError(
                "solve_step_poly: keep and reject regions overlap under parity folding");
        }
        if (keep) {
            pts.push_back({x, w.c});
            region.push_back(1);
        } else if (reject) {
            pts.push_back({x, 0.0});
            region.push_back(0);
        }
    }
    const auto idx = parity_indices(Parity::even, d);
    bound.columns = all_columns(idx.size());
    const auto fit = minimax_fit(idx, pts, {bound});

    ChebyshevPoly poly{Parity::even, fit.coeffs};
    ApproxReport rep;
    rep.samples_used = m;
    const auto dense = poly.dense();
    rep.regions = {{"keep", 0.0}, {"reject", 0.0}};
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const real r = std::abs(clenshaw(dense, pts[i].x) - pts[i].target);
        real &slot = rep.regions[region[i] == 1 ? "keep" : "reject"];
        slot = std::max(slot, r);
        rep.epsilon = std::max(rep.epsilon, r);
    }
    return {poly, rep};
}

} // namespace qetu::cheb

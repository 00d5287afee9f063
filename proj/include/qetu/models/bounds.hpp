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
 * Upper bounds on E_max from per-term maxima of the diagonal pieces, and the
 * induced lower bound on the rescaled gap.
 */
#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "u1.hpp"

namespace qetu::models {

struct SpectralBound {
    real emax_upper = 0.0;
    real delta_lower = 0.0;
    real electric_max = 0.0;
    real magnetic_max = 0.0;
    /// Per-term maxima: electric (i, j) pairs row-major, then one entry per cosine (its max of -cos).
    std::vector<real> term_maxima;
};

inline constexpr std::size_t max_cosine_support_qubits = 24;

/// Electric: (g^2/2) sum_ij max(c_ij R_i R_j). Magnetic: (1/g^2) [(N_p + 1) -
/// sum_v min cos(v . B)], each cosine enumerated over its own support.
inline SpectralBound emax_upper_bound(const U1Model &m) {
    SpectralBound sb;
    const std::size_t big_n = m.grid_size();
    const auto np = static_cast<Eigen::Index>(m.n_p);
    const real g2 = m.g * m.g;
    for (Eigen::Index i = 0; i < np; ++i) {
        for (Eigen::Index j = 0; j < np; ++j) {
            const real c = m.electric(i, j);
            real best = -std::numeric_limits<real>::infinity();
            for (std::size_t a = 0; a < big_n; ++a) {
                if (i == j) {
                    const real r = m.r(static_cast<std::size_t>(i), a);
                    best = std::max(best, c * r * r);
                    continue;
                }
                for (std::size_t b = 0; b < big_n; ++b) {
                    best = std::max(best, c * m.r(static_cast<std::size_t>(i), a) *
                                              m.r(static_cast<std::size_t>(j), b));
                }
            }
            sb.term_maxima.push_back(0.5 * g2 * best);
            sb.electric_max += 0.5 * g2 * best;
        }
    }
    real mag = static_cast<real>(m.n_p + 1);
    for (const auto &v : m.cosines) {
        std::vector<std::size_t> support;
        for (Eigen::Index p = 0; p < np; ++p) {
            if (std::abs(v[p]) > 1e-14) {
                support.push_back(static_cast<std::size_t>(p));
            }
        }
        require(support.size() * m.n_q <= max_cosine_support_qubits,
                "emax_upper_bound: cosine support too large to enumerate");
        const std::size_t count = pow2(support.size() * m.n_q);
        real min_cos = 1.0;
        for (std::size_t idx = 0; idx < count; ++idx) {
            std::size_t rest = idx;
            real arg = 0.0;
            for (std::size_t p : support) {
                arg += v[static_cast<Eigen::Index>(p)] * m.b(p, rest % big_n);
                rest /= big_n;
            }
            min_cos = std::min(min_cos, std::cos(arg));
        }
        sb.term_maxima.push_back(-min_cos / g2);
        mag -= min_cos;
    }
    sb.magnetic_max = mag / g2;
    sb.emax_upper = sb.electric_max + sb.magnetic_max;
    return sb;
}

/// delta_lower = (E1 - E0) (pi - 2 eta) / (emax_upper - E0)
inline real delta_lower_bound(real e0, real e1, real emax_upper, real eta) {
    require(emax_upper > e0, "delta_lower_bound: bound below E0");
    return (e1 - e0) * (pi - 2.0 * eta) / (emax_upper - e0);
}

} // namespace qetu::models

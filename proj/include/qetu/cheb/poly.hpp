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
 * Definite-parity Chebyshev expansions and the Clenshaw evaluator.
 */
#pragma once

#include <cmath>
#include <vector>

#include "../common.hpp"

namespace qetu::cheb {

/// Sum of c_k T_{idx(k)} where idx(k) is 2k (even), 2k+1 (odd) or k (none).
struct ChebyshevPoly {
    Parity parity = Parity::even;
    std::vector<real> coeffs;

    [[nodiscard]] std::size_t n_ch() const { return coeffs.size(); }

    [[nodiscard]] static std::size_t index_of(Parity p, std::size_t k) {
        switch (p) {
        case Parity::even:
            return 2 * k;
        case Parity::odd:
            return 2 * k + 1;
        default:
            return k;
        }
    }

    [[nodiscard]] std::size_t degree() const {
        return coeffs.empty() ? 0 : index_of(parity, coeffs.size() - 1);
    }

    /// Dense coefficient list over T_0 ... T_d.
    [[nodiscard]] std::vector<real> dense() const {
        std::vector<real> out(degree() + 1, 0.0);
        for (std::size_t k = 0; k < coeffs.size(); ++k) {
            out[index_of(parity, k)] = coeffs[k];
        }
        return out;
    }

    /// Number of coefficients for a definite-parity polynomial of degree d.
    [[nodiscard]] static std::size_t n_ch_for(Parity p, std::size_t d) {
        switch (p) {
        case Parity::even:
            return d / 2 + 1;
        case Parity::odd:
            return (d + 1) / 2;
        default:
            return d + 1;
        }
    }
};

/// Clenshaw recurrence on a dense coefficient list.
inline real clenshaw(const std::vector<real> &c, real x) {
    real b1 = 0.0;
    real b2 = 0.0;
    for (std::size_t k = c.size(); k-- > 1;) {
        const real b0 = 2.0 * x * b1 - b2 + c[k];
        b2 = b1;
        b1 = b0;
    }
    const real c0 = c.empty() ? 0.0 : c[0];
    return x * b1 - b2 + c0;
}

inline real eval_cheb(const ChebyshevPoly &poly, real x) {
    if (!(x >= -1.0 && x <= 1.0)) {
        throw ValidationError("eval_cheb: x outside [-1, 1]");
    }
    return clenshaw(poly.dense(), x);
}

/// T_k(x) for all k <= kmax by the three-term recurrence.
inline std::vector<real> cheb_basis(std::size_t kmax, real x) {
    std::vector<real> t(kmax + 1);
    t[0] = 1.0;
    if (kmax >= 1) {
        t[1] = x;
    }
    for (std::size_t k = 2; k <= kmax; ++k) {
        t[k] = 2.0 * x * t[k - 1] - t[k - 2];
    }
    return t;
}

/// Extrema grid x_j = -cos(j pi / (M - 1)), j = 0..M-1.
inline std::vector<real> chebyshev_grid(std::size_t m) {
    require(m >= 2, "sample count must be at least 2");
    std::vector<real> x(m);
    for (std::size_t j = 0; j < m; ++j) {
        x[j] = -std::cos(static_cast<real>(j) * pi / static_cast<real>(m - 1));
    }
    // Symmetrize so that folding by parity is exact.
    for (std::size_t j = 0; j < m / 2; ++j) {
        const real v = 0.5 * (x[m - 1 - j] - x[j]);
        x[j] = -v;
        x[m - 1 - j] = v;
    }
    if (m % 2 == 1) {
        x[m / 2] = 0.0;
    }
    return x;
}

/// Largest |F| on a uniform grid of n points over [-1, 1].
inline real max_abs_on_grid(const ChebyshevPoly &poly, std::size_t n = 10000) {
    const auto c = poly.dense();
    real m = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const real x = -1.0 + 2.0 * static_cast<real>(i) / static_cast<real>(n - 1);
        m = std::max(m, std::abs(clenshaw(c, x)));
    }
    return m;
}

} // namespace qetu::cheb

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
 * Discrete minimax fitting of Chebyshev coefficients through the epigraph LP.
 */
#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "lp.hpp"
#include "poly.hpp"

namespace qetu::cheb {

struct FitPoint {
    real x;
    real target;
};

/// Rows |F_part(z)| <= bound, where F_part keeps only the listed columns.
struct BoundSet {
    std::vector<real> z;
    real bound = 1.0;
    std::vector<std::size_t> columns;
};

struct MinimaxFit {
    std::vector<real> coeffs;
    real epsilon = 0.0;
    real lp_objective = 0.0;
    int lp_iterations = 0;
};

/// min_c max_i |sum_k c_k T_{idx[k]}(x_i) - f_i| subject to the bound sets.
inline MinimaxFit minimax_fit(const std::vector<std::size_t> &idx,
                              const std::vector<FitPoint> &pts,
                              const std::vector<BoundSet> &bounds) {
    require(!idx.empty(), "minimax_fit: empty basis");
    require(!pts.empty(), "minimax_fit: empty sample set");
    const std::size_t kmax = *std::max_element(idx.begin(), idx.end());
    const auto nc = static_cast<Eigen::Index>(idx.size());
    const Eigen::Index n = nc + 1;

    std::size_t rows = 2 * pts.size();
    for (const auto &bs : bounds) {
        rows += 2 * bs.z.size();
    }
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(rows), n);
    Eigen::VectorXd b(static_cast<Eigen::Index>(rows));
    Eigen::Index r = 0;
    real fmax = 0.0;
    for (const auto &p : pts) {
        const auto t = cheb_basis(kmax, p.x);
        for (Eigen::Index k = 0; k < nc; ++k) {
            const real v = t[idx[static_cast<std::size_t>(k)]];
            a(r, k) = v;
            a(r + 1, k) = -v;
        }
        a(r, nc) = -1.0;
        a(r + 1, nc) = -1.0;
        b[r] = p.target;
        b[r + 1] = -p.target;
        r += 2;
        fmax = std::max(fmax, std::abs(p.target));
    }
    for (const auto &bs : bounds) {
        for (real z : bs.z) {
            const auto t = cheb_basis(kmax, z);
            for (std::size_t col : bs.columns) {
                const auto k = static_cast<Eigen::Index>(col);
                const real v = t[idx[col]];
                a(r, k) = v;
                a(r + 1, k) = -v;
            }
            b[r] = bs.bound;
            b[r + 1] = bs.bound;
            r += 2;
        }
    }
    Eigen::VectorXd cost = Eigen::VectorXd::Zero(n);
    cost[nc] = 1.0;
    Eigen::VectorXd x0 = Eigen::VectorXd::Zero(n);
    x0[nc] = fmax + 1.0;
    const auto res = solve_lp(a, b, cost, x0);

    MinimaxFit out;
    out.coeffs.assign(res.x.data(), res.x.data() + nc);
    out.lp_objective = res.objective;
    out.lp_iterations = res.iterations;
    std::vector<real> dense(kmax + 1, 0.0);
    for (std::size_t k = 0; k < idx.size(); ++k) {
        dense[idx[k]] += out.coeffs[k];
    }
    for (const auto &p : pts) {
        out.epsilon = std::max(out.epsilon, std::abs(clenshaw(dense, p.x) - p.target));
    }
    return out;
}

inline std::vector<std::size_t> parity_indices(Parity p, std::size_t d) {
    std::vector<std::size_t> idx;
    const std::size_t n = ChebyshevPoly::n_ch_for(p, d);
    for (std::size_t k = 0; k < n; ++k) {
        idx.push_back(ChebyshevPoly::index_of(p, k));
    }
    return idx;
}

inline std::vector<std::size_t> all_columns(std::size_t n) {
    std::vector<std::size_t> c(n);
    for (std::size_t k = 0; k < n; ++k) {
        c[k] = k;
    }
    return c;
}

} // namespace qetu::cheb

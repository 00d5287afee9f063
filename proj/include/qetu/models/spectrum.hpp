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
 * Spectra of split Hamiltonians: dense diagonalization up to 2^12 and a
 * matrix-free Lanczos for the extremal part of larger problems.
 */
#pragma once

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "../sim/hamiltonian.hpp"

namespace qetu::models {

inline sim::EigenSystem exact_eigensystem(const sim::SplitHamiltonian &h) {
    require(h.dim() <= sim::max_dense_dim, "exact_spectrum: dimension exceeds 2^12");
    return sim::hermitian_eigen(h.dense());
}

inline std::vector<real> exact_spectrum(const sim::SplitHamiltonian &h) {
    const auto es = exact_eigensystem(h);
    return {es.values.data(), es.values.data() + es.values.size()};
}

/// E0, E1, Emax and the ground state.
struct LowSpectrum {
    real e0 = 0.0;
    real e1 = 0.0;
    real emax = 0.0;
    sim::StateVector ground;
};

/// Lanczos with full reorthogonalization from a fixed pseudo-random start.
inline LowSpectrum lanczos_low(const sim::SplitHamiltonian &h, std::size_t max_iter = 400,
                               real tol = 1e-11) {
    const std::size_t dim = h.dim();
    const auto n = static_cast<Eigen::Index>(dim);
    std::mt19937_64 rng(12345);
    std::normal_distribution<real> nd;
    Eigen::VectorXcd v(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        v[i] = cplx{nd(rng), nd(rng)};
    }
    v.normalize();
    const std::size_t m_max = std::min<std::size_t>(max_iter, dim);
    Eigen::MatrixXcd basis(n, static_cast<Eigen::Index>(m_max));
    std::vector<real> alpha;
    std::vector<real> beta;
    Eigen::VectorXcd w(n);
    LowSpectrum out;
    real prev_e0 = 0.0;
    real prev_e1 = 0.0;
    for (std::size_t k = 0; k < m_max; ++k) {
        const auto kk = static_cast<Eigen::Index>(k);
        basis.col(kk) = v;
        h.apply({v.data(), dim}, {w.data(), dim});
        alpha.push_back(v.dot(w).real());
        for (int pass = 0; pass < 2; ++pass) {
            w -= basis.leftCols(kk + 1) * (basis.leftCols(kk + 1).adjoint() * w);
        }
        const real b = w.norm();
        const std::size_t m = k + 1;
        Eigen::MatrixXd t = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(m),
                                                  static_cast<Eigen::Index>(m));
        for (std::size_t i = 0; i < m; ++i) {
            t(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = alpha[i];
            if (i + 1 < m) {
                t(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i + 1)) = beta[i];
                t(static_cast<Eigen::Index>(i + 1), static_cast<Eigen::Index>(i)) = beta[i];
            }
        }
        const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t);
        const auto &ev = es.eigenvalues();
        const real e0 = ev[0];
        const real e1 = m > 1 ? ev[1] : ev[0];
        const bool done = b < tol || m == m_max ||
                          (m > 20 && std::abs(e0 - prev_e0) < tol * (1.0 + std::abs(e0)) &&
                           std::abs(e1 - prev_e1) < tol * (1.0 + std::abs(e1)) &&
                           std::abs(b * es.eigenvectors()(static_cast<Eigen::Index>(m - 1), 0)) <
                               std::sqrt(tol));
        if (done) {
            out.e0 = e0;
            out.e1 = e1;
            out.emax = ev[static_cast<Eigen::Index>(m - 1)];
            Eigen::VectorXcd g =
                basis.leftCols(static_cast<Eigen::Index>(m)) * es.eigenvectors().col(0).cast<cplx>();
            g.normalize();
            out.ground = sim::StateVector(h.n_qubits(), std::vector<cplx>(g.data(), g.data() + n));
            return out;
        }
        prev_e0 = e0;
        prev_e1 = e1;
        beta.push_back(b);
        v = w / b;
    }
    return out;
}

/// Dense when the dimension allows it, Lanczos otherwise.
inline LowSpectrum low_spectrum(const sim::SplitHamiltonian &h) {
    if (h.dim() <= sim::max_dense_dim) {
        const auto es = exact_eigensystem(h);
        LowSpectrum out;
        out.e0 = es.values[0];
        out.e1 = es.values.size() > 1 ? es.values[1] : es.values[0];
        out.emax = es.values[es.values.size() - 1];
        out.ground = sim::eigenstate(es, 0, h.n_qubits());
        return out;
    }
    return lanczos_low(h);
}

} // namespace qetu::models

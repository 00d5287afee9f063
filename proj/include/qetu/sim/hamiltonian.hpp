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
 * Split Hamiltonians H = H_x + FT^dagger H_p FT with per-site registers,
 * dense assembly and Hermitian eigendecomposition.
 */
#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "state.hpp"

namespace qetu::sim {

/// Both tables have length 2^(n_sites * site_qubits). Site s owns qubits
/// [s * site_qubits, (s + 1) * site_qubits). hp is indexed in the QFT basis.
struct SplitHamiltonian {
    std::size_t n_sites = 1;
    std::size_t site_qubits = 1;
    std::vector<real> hx;
    std::vector<real> hp;

    [[nodiscard]] std::size_t n_qubits() const { return n_sites * site_qubits; }
    [[nodiscard]] std::size_t dim() const { return pow2(n_qubits()); }

    void validate() const {
        require(hx.size() == dim() && hp.size() == dim(),
                "SplitHamiltonian: table length does not match register size");
    }

    void ft(std::span<cplx> amps) const {
        for (std::size_t s = 0; s < n_sites; ++s) {
            apply_qft(amps, s * site_qubits, site_qubits);
        }
    }

    void ift(std::span<cplx> amps) const {
        for (std::size_t s = 0; s < n_sites; ++s) {
            apply_iqft(amps, s * site_qubits, site_qubits);
        }
    }

    /// out = H in
    void apply(std::span<const cplx> in, std::span<cplx> out) const {
        std::vector<cplx> tmp(in.begin(), in.end());
        ft(tmp);
        for (std::size_t j = 0; j < tmp.size(); ++j) {
            tmp[j] *= hp[j];
        }
        ift(tmp);
        for (std::size_t j = 0; j < tmp.size(); ++j) {
            out[j] = hx[j] * in[j] + tmp[j];
        }
    }

    /// c1 H + c2 with the shift carried by the diagonal part.
    [[nodiscard]] SplitHamiltonian affine(real c1, real c2) const {
        SplitHamiltonian h = *this;
        for (auto &v : h.hx) {
            v = c1 * v + c2;
        }
        for (auto &v : h.hp) {
            v *= c1;
        }
        return h;
    }

    [[nodiscard]] Eigen::MatrixXcd dense() const {
        validate();
        const auto n = static_cast<Eigen::Index>(dim());
        Eigen::MatrixXcd m(n, n);
        std::vector<cplx> e(dim());
        std::vector<cplx> col(dim());
        for (Eigen::Index k = 0; k < n; ++k) {
            std::fill(e.begin(), e.end(), cplx{0.0, 0.0});
            e[static_cast<std::size_t>(k)] = 1.0;
            apply(e, col);
            for (Eigen::Index j = 0; j < n; ++j) {
                m(j, k) = col[static_cast<std::size_t>(j)];
            }
        }
        // Remove rounding asymmetry.
        return 0.5 * (m + m.adjoint());
    }
};

struct EigenSystem {
    Eigen::VectorXd values;
    Eigen::MatrixXcd vectors;
};

inline constexpr std::size_t max_dense_dim = 4096;

/// Sorted eigenpairs of a Hermitian matrix; uses the real solver when possible.
inline EigenSystem hermitian_eigen(const Eigen::MatrixXcd &h) {
    require(h.rows() == h.cols(), "hermitian_eigen: matrix is not square");
    require(static_cast<std::size_t>(h.rows()) <= max_dense_dim,
            "hermitian_eigen: dimension exceeds 2^12");
    const real scale = 1.0 + h.cwiseAbs().maxCoeff();
    if ((h - h.adjoint()).cwiseAbs().maxCoeff() > 1e-10 * scale) {
        throw ValidationError("hermitian_eigen: matrix is not Hermitian");
    }
    EigenSystem es;
    if (h.imag().cwiseAbs().maxCoeff() < 1e-14 * scale) {
        const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h.real());
        es.values = solver.eigenvalues();
        es.vectors = solver.eigenvectors().cast<cplx>();
    } else {
        const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h);
        es.values = solver.eigenvalues();
        es.vectors = solver.eigenvectors();
    }
    return es;
}

inline StateVector eigenstate(const EigenSystem &es, std::size_t k, std::size_t n_qubits) {
    std::vector<cplx> v(es.vectors.col(static_cast<Eigen::Index>(k)).data(),
                        es.vectors.col(static_cast<Eigen::Index>(k)).data() +
                            es.vectors.rows());
    return {n_qubits, std::move(v)};
}

} // namespace qetu::sim

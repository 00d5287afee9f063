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
 * Time-evolution back ends. Each provides apply(psi, t, reversed), which
 * multiplies psi by an approximation of e^{-i t H}. For product formulas the
 * reversed flag applies the factors in the opposite order, so that
 * apply(-t, !reversed) is the exact adjoint of apply(t, reversed).
 */
#pragma once

#include <memory>
#include <span>
#include <vector>

#include "hamiltonian.hpp"

namespace qetu::sim {

class ExactEvolver {
  public:
    explicit ExactEvolver(const Eigen::MatrixXcd &h)
        : es_(std::make_shared<EigenSystem>(hermitian_eigen(h))) {}
    explicit ExactEvolver(std::shared_ptr<const EigenSystem> es) : es_(std::move(es)) {}

    [[nodiscard]] std::size_t dim() const { return static_cast<std::size_t>(es_->values.size()); }
    [[nodiscard]] const EigenSystem &eigen() const { return *es_; }

    void apply(std::span<cplx> psi, real t, bool /*reversed*/ = false) const {
        const Eigen::Map<Eigen::VectorXcd> v(psi.data(), static_cast<Eigen::Index>(psi.size()));
        Eigen::VectorXcd c = es_->vectors.adjoint() * v;
        for (Eigen::Index j = 0; j < c.size(); ++j) {
            c[j] *= std::polar(1.0, -t * es_->values[j]);
        }
        Eigen::Map<Eigen::VectorXcd>(psi.data(), static_cast<Eigen::Index>(psi.size())) =
            es_->vectors * c;
    }

  private:
    std::shared_ptr<const EigenSystem> es_;
};

class DiagonalEvolver {
  public:
    explicit DiagonalEvolver(std::vector<real> diag) : diag_(std::move(diag)) {}
    [[nodiscard]] std::size_t dim() const { return diag_.size(); }
    [[nodiscard]] const std::vector<real> &diagonal() const { return diag_; }
    void apply(std::span<cplx> psi, real t, bool /*reversed*/ = false) const {
        apply_diagonal_phase(psi, diag_, t);
    }

  private:
    std::vector<real> diag_;
};

/// One first-order step. Forward order applies FT, e^{-i dt H_p}, FT^dagger,
/// then e^{-i dt H_x}; reversed applies them back to front.
inline void split_step(std::span<cplx> psi, const SplitHamiltonian &h, real dt, bool reversed) {
    if (!reversed) {
        h.ft(psi);
        apply_diagonal_phase(psi, h.hp, dt);
        h.ift(psi);
        apply_diagonal_phase(psi, h.hx, dt);
    } else {
        apply_diagonal_phase(psi, h.hx, dt);
        h.ft(psi);
        apply_diagonal_phase(psi, h.hp, dt);
        h.ift(psi);
    }
}

/// direction +1: e^{-i dt H_x} FT^dagger e^{-i dt H_p} FT; direction -1: its adjoint.
inline void trotter_step(std::span<cplx> psi, const SplitHamiltonian &h, real dt, int direction) {
    require(direction == 1 || direction == -1, "trotter_step: direction must be +1 or -1");
    if (direction == 1) {
        split_step(psi, h, dt, false);
    } else {
        split_step(psi, h, -dt, true);
    }
}

class TrotterEvolver {
  public:
    TrotterEvolver(std::shared_ptr<const SplitHamiltonian> h, std::size_t n_steps)
        : h_(std::move(h)), n_steps_(n_steps) {
        require(n_steps_ >= 1, "TrotterEvolver: n_steps must be at least 1");
        h_->validate();
    }
    [[nodiscard]] std::size_t dim() const { return h_->dim(); }
    [[nodiscard]] std::size_t n_steps() const { return n_steps_; }
    [[nodiscard]] const SplitHamiltonian &hamiltonian() const { return *h_; }

    void apply(std::span<cplx> psi, real t, bool reversed = false) const {
        const real dt = t / static_cast<real>(n_steps_);
        for (std::size_t k = 0; k < n_steps_; ++k) {
            split_step(psi, *h_, dt, reversed);
        }
    }

  private:
    std::shared_ptr<const SplitHamiltonian> h_;
    std::size_t n_steps_;
};

} // namespace qetu::sim

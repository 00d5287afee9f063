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
 * QETU circuit executors (controlled and control-free) and the
 * eigendecomposition reference filter.
 */
#pragma once

#include <algorithm>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "../cheb/poly.hpp"
#include "evolvers.hpp"

namespace qetu::sim {

enum class Mode { controlled, control_free };

inline const char *to_string(Mode m) {
    return m == Mode::controlled ? "controlled" : "control-free";
}

inline Mode mode_from_string(const std::string &s) {
    if (s == "controlled") {
        return Mode::controlled;
    }
    if (s == "control-free" || s == "control_free") {
        return Mode::control_free;
    }
    throw ValidationError("unknown mode '" + s + "'");
}

struct GateTally {
    std::size_t cnot = 0;
    std::size_t rz = 0;
    std::size_t rx = 0;
    std::size_t other = 0;

    GateTally &operator+=(const GateTally &o) {
        cnot += o.cnot;
        rz += o.rz;
        rx += o.rx;
        other += o.other;
        return *this;
    }
    friend GateTally operator*(std::size_t k, GateTally g) {
        g.cnot *= k;
        g.rz *= k;
        g.rx *= k;
        g.other *= k;
        return g;
    }
    [[nodiscard]] std::size_t rotations() const { return rz + rx; }
};

struct QetuRunReport {
    StateVector output;
    real success_prob = 0.0;
    std::size_t calls = 0;
    GateTally gates;
};

/// Simulates the ancilla ladder and returns the unnormalized ancilla-|0>
/// branch. phases_w are circuit (W-convention) angles. Controlled mode
/// applies U = e^{-i tau H} (odd calls) and U^dagger (even calls) on the
/// ancilla-|1> branch; control-free mode applies
/// V = diag(e^{i tau H}, e^{-i tau H}) and V^dagger.
template <class Evolver>
std::vector<cplx> qetu_block_apply(std::span<const cplx> psi, const std::vector<real> &phases_w,
                                   const Evolver &evolver, real tau, Mode mode) {
    require(!phases_w.empty(), "run_qetu: empty phase list");
    require(evolver.dim() == psi.size(), "run_qetu: evolver/state dimension mismatch");
    const std::size_t dim = psi.size();
    std::vector<cplx> amps(2 * dim, cplx{0.0, 0.0});
    std::copy(psi.begin(), psi.end(), amps.begin());
    std::span<cplx> all(amps);
    std::span<cplx> lo = all.subspan(0, dim);
    std::span<cplx> hi = all.subspan(dim, dim);

    apply_ancilla_rx(all, phases_w[0]);
    for (std::size_t j = 1; j < phases_w.size(); ++j) {
        const bool forward = (j % 2) == 1;
        if (mode == Mode::controlled) {
            if (forward) {
                evolver.apply(hi, tau, false);
            } else {
                evolver.apply(hi, -tau, true);
            }
        } else {
            if (forward) {
                evolver.apply(lo, -tau, false);
                evolver.apply(hi, tau, false);
            } else {
                evolver.apply(lo, tau, true);
                evolver.apply(hi, -tau, true);
            }
        }
        apply_ancilla_rx(all, phases_w[j]);
    }
    amps.resize(dim);
    // the quarter-pi shifts leave a global phase (-1)^{d/2} on the block
    if (((phases_w.size() - 1) / 2) % 2 == 1) {
        for (auto &a : amps) {
            a = -a;
        }
    }
    return amps;
}

template <class Evolver>
QetuRunReport run_qetu(const StateVector &psi_init, const std::vector<real> &phases_w,
                       const Evolver &evolver, real tau, Mode mode) {
    auto out = qetu_block_apply(std::span<const cplx>(psi_init.amplitudes), phases_w, evolver,
                                tau, mode);
    QetuRunReport rep;
    rep.calls = phases_w.size() - 1;
    rep.gates.rx = phases_w.size();
    real p = 0.0;
    for (const auto &a : out) {
        p += std::norm(a);
    }
    rep.success_prob = p;
    if (p < 1e-14) {
        throw ConvergenceError("run_qetu: post-selection probability below 1e-14 (filtered to nothing)");
    }
    const real s = 1.0 / std::sqrt(p);
    for (auto &a : out) {
        a *= s;
    }
    rep.output = StateVector(psi_init.n, std::move(out));
    return rep;
}

/// Binomial shot draw for the ancilla-|0> outcome.
inline std::size_t sample_success(real p, std::size_t shots, std::mt19937_64 &rng) {
    std::binomial_distribution<std::size_t> dist(shots, std::clamp(p, 0.0, 1.0));
    return dist(rng);
}

struct FilterResult {
    StateVector state;
    real norm_sq = 0.0;
};

/// F(cos(tau E / 2)) (half_angle) or F(cos(tau E)) applied eigenvalue-wise.
inline FilterResult exact_filter_oracle(const EigenSystem &es, const cheb::ChebyshevPoly &poly,
                                        real tau, const StateVector &psi, bool half_angle) {
    const auto dense = poly.dense();
    const Eigen::Map<const Eigen::VectorXcd> v(psi.amplitudes.data(),
                                               static_cast<Eigen::Index>(psi.dim()));
    Eigen::VectorXcd c = es.vectors.adjoint() * v;
    for (Eigen::Index j = 0; j < c.size(); ++j) {
        const real arg = half_angle ? tau * es.values[j] / 2.0 : tau * es.values[j];
        c[j] *= cheb::clenshaw(dense, std::cos(arg));
    }
    const Eigen::VectorXcd out = es.vectors * c;
    FilterResult r;
    r.norm_sq = out.squaredNorm();
    std::vector<cplx> a(out.data(), out.data() + out.size());
    r.state = StateVector(psi.n, std::move(a));
    if (r.norm_sq > 0.0) {
        r.state.normalize();
    }
    return r;
}

inline FilterResult exact_filter_oracle(const Eigen::MatrixXcd &h, const cheb::ChebyshevPoly &poly,
                                        real tau, const StateVector &psi, bool half_angle) {
    return exact_filter_oracle(hermitian_eigen(h), poly, tau, psi, half_angle);
}

} // namespace qetu::sim

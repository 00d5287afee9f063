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
 * Ground-state preparation: step fit, phases, QETU run, error against the
 * exact ground state.
 *
 * tau always denotes the filter argument F(cos(tau H / 2)). Control-free runs
 * reach the same filter with evolution time tau / 2 per call.
 */
#pragma once

#include <cmath>
#include <memory>
#include <optional>
#include <string>
#include <variant>

#include "../cheb/step.hpp"
#include "../qsp/phases.hpp"
#include "../sim/circuit.hpp"
#include "../sim/evolvers.hpp"
#include "../sim/qetu.hpp"

namespace qetu::gsprep {

enum class EvolverKind { exact, trotter };

inline const char *to_string(EvolverKind e) { return e == EvolverKind::exact ? "exact" : "trotter"; }

inline EvolverKind evolver_from_string(const std::string &s) {
    if (s == "exact") {
        return EvolverKind::exact;
    }
    if (s == "trotter") {
        return EvolverKind::trotter;
    }
    throw ValidationError("unknown evolver '" + s + "'");
}

struct PrepareConfig {
    real eta = 0.05;
    real eta_proj = 0.0;
    real mu = 0.0;
    real delta = 0.0;
    real tau = 1.0;
    std::size_t degree = 10;
    EvolverKind evolver = EvolverKind::exact;
    std::size_t n_steps = 1;
    sim::Mode mode = sim::Mode::controlled;
    real c = 0.999;
};

struct PrepareReport {
    real error = 0.0;
    real success_prob = 0.0;
    real epsilon = 0.0;
    real tau_max = 0.0;
    bool tau_exceeds_max = false;
    /// Trotter step per evolution call.
    real dtau = 0.0;
    sim::GateTally gates;
    sim::StateVector state;
};

/// Polynomial and phases for a window; reusable across runs.
struct Filter {
    cheb::ChebyshevPoly poly;
    cheb::ApproxReport approx;
    qsp::PhaseSequence phases;
};

inline Filter build_filter(const PrepareConfig &cfg) {
    const auto w = cheb::sigma_window(cfg.eta, cfg.eta_proj, cfg.mu, cfg.delta, cfg.tau, cfg.c);
    auto [poly, rep] = cheb::solve_step_poly(w, cfg.degree);
    auto ph = qsp::solve_phases(poly);
    return {std::move(poly), rep, std::move(ph)};
}

/// h is the rescaled Hamiltonian, es its eigensystem (shared by the exact
/// evolver), psi0 the exact ground state.
inline PrepareReport prepare_ground_state(const std::shared_ptr<const sim::SplitHamiltonian> &h,
                                          const std::shared_ptr<const sim::EigenSystem> &es,
                                          const sim::StateVector &psi0,
                                          const sim::StateVector &psi_init,
                                          const PrepareConfig &cfg,
                                          const std::optional<Filter> &filter = std::nullopt) {
    const Filter f = filter ? *filter : build_filter(cfg);
    PrepareReport rep;
    rep.epsilon = f.approx.epsilon;
    rep.tau_max = cheb::tau_max(cfg.eta, cfg.mu, cfg.delta);
    rep.tau_exceeds_max = cfg.tau > rep.tau_max + 1e-12;
    require(h != nullptr, "prepare_ground_state: missing Hamiltonian");
    const real t_call = cfg.mode == sim::Mode::controlled ? cfg.tau : cfg.tau / 2.0;
    sim::QetuRunReport run;
    if (cfg.evolver == EvolverKind::exact) {
        require(es != nullptr, "prepare_ground_state: exact evolver needs an eigensystem");
        const sim::ExactEvolver ev(es);
        run = sim::run_qetu(psi_init, f.phases.w_convention, ev, t_call, cfg.mode);
        rep.dtau = t_call;
    } else {
        const sim::TrotterEvolver ev(h, cfg.n_steps);
        run = sim::run_qetu(psi_init, f.phases.w_convention, ev, t_call, cfg.mode);
        rep.dtau = t_call / static_cast<real>(cfg.n_steps);
    }
    rep.success_prob = run.success_prob;
    rep.error = 1.0 - sim::overlap(run.output, psi0);
    // Gate tallies follow the first-order circuit for both evolvers.
    const std::size_t steps = cfg.evolver == EvolverKind::exact ? 1 : cfg.n_steps;
    const sim::GateTally per_step =
        cfg.mode == sim::Mode::controlled
            ? sim::controlled_split_gates(*h)
            : sim::count_gates(sim::control_free_split_circuit(*h, rep.dtau));
    rep.gates = run.gates;
    rep.gates += (run.calls * steps) * per_step;
    rep.state = std::move(run.output);
    return rep;
}

} // namespace qetu::gsprep

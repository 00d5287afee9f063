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
 * Gaussian state preparation with Methods I-V, grid shifts, the closed-form
 * success probability and gate counting against multiplexed amplitude encoding.
 */
#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "../cheb/gaussian.hpp"
#include "../models/digitization.hpp"
#include "../qsp/phases.hpp"
#include "../sim/evolvers.hpp"
#include "../sim/qetu.hpp"
#include "spec.hpp"

namespace qetu::wavepacket {

using GateCount = sim::GateTally;

/// I: eta = 0, tau = 1. II: eta optimized, tau = 1. III: eta and tau optimized.
/// IV: tau = 2, even, fit over all x. V: tau = 2, even, fit at the grid images only.
enum class Method { I, II, III, IV, V };

inline const char *to_string(Method m) {
    switch (m) {
    case Method::I:
        return "I";
    case Method::II:
        return "II";
    case Method::III:
        return "III";
    case Method::IV:
        return "IV";
    default:
        return "V";
    }
}

inline Method method_from_string(const std::string &s) {
    for (Method m : {Method::I, Method::II, Method::III, Method::IV, Method::V}) {
        if (s == to_string(m)) {
            return m;
        }
    }
    throw ValidationError("unknown method '" + s + "' (expected I, II, III, IV or V)");
}

inline bool is_mixed_parity(Method m) { return m == Method::I || m == Method::II || m == Method::III; }

/// Mixed methods use d = 2 n_ch - 1 (n_ch per parity part); IV and V use d = 2 (n_ch - 1).
inline std::size_t degree_for_nch(Method m, std::size_t n_ch) {
    require(n_ch >= 1, "degree_for_nch: n_ch must be at least 1");
    return is_mixed_parity(m) ? 2 * n_ch - 1 : 2 * (n_ch - 1);
}

inline std::size_t nch_for_degree(Method m, std::size_t d) {
    return is_mixed_parity(m) ? (d + 1) / 2 : d / 2 + 1;
}

/// Normalized e^{i p0 x} e^{-(x - x0)^2 / (2 sigma_x^2)} on the grid.
inline sim::StateVector target_state(const WavepacketSpec &s) {
    std::vector<cplx> a(s.size());
    for (std::size_t j = 0; j < s.size(); ++j) {
        const real u = (s.x(j) - s.x0) / s.sigma_x;
        a[j] = std::polar(std::exp(-0.5 * u * u), s.p0 * s.x(j));
    }
    sim::StateVector st(s.n_q, std::move(a));
    st.normalize();
    return st;
}

/// Amplitude j times e^{i p0 x_j}.
inline sim::StateVector shift_momentum(const sim::StateVector &st, const WavepacketSpec &s, real p0) {
    require(st.dim() == s.size(), "shift_momentum: state size does not match the grid");
    sim::StateVector out = st;
    for (std::size_t j = 0; j < s.size(); ++j) {
        out.amplitudes[j] *= std::polar(1.0, p0 * s.x(j));
    }
    return out;
}

/// e^{-i x0 p}: QFT, diagonal phase, inverse QFT.
inline sim::StateVector shift_position(const sim::StateVector &st, const WavepacketSpec &s, real x0) {
    require(st.dim() == s.size(), "shift_position: state size does not match the grid");
    const models::Digitization dig{s.n_q, s.x_max};
    sim::StateVector out = st;
    sim::apply_qft(out, 0, s.n_q);
    for (std::size_t j = 0; j < s.size(); ++j) {
        out.amplitudes[j] *= std::polar(1.0, -x0 * dig.p(j));
    }
    sim::apply_iqft(out, 0, s.n_q);
    return out;
}

/// (c^2 / 2^n_q) sum_j exp(-(x_j - x0)^2 / sigma_x^2)
inline real gamma_closed_form(const WavepacketSpec &s) {
    real sum = 0.0;
    for (std::size_t j = 0; j < s.size(); ++j) {
        const real u = (s.x(j) - s.x0) / s.sigma_x;
        sum += std::exp(-u * u);
    }
    return s.c * s.c * sum / static_cast<real>(s.size());
}

/// n(n-1)/2 controlled phases (2 CNOT + 3 Rz) and floor(n/2) swaps (3 CNOT).
inline GateCount gate_count_qft(std::size_t n_q) {
    GateCount g;
    const std::size_t cp = n_q * (n_q - 1) / 2;
    g.cnot = 2 * cp + 3 * (n_q / 2);
    g.rz = 3 * cp;
    g.other = n_q;
    return g;
}

/// d controlled e^{-i tau x_sh} calls at n_q CNOT + n_q Rz each, d + 1 ancilla
/// rotations; shifts add n_q Rz (momentum) and QFT, n_q Rz, QFT^dagger (position).
inline GateCount gate_count_qetu(std::size_t n_q, std::size_t d, bool with_shifts) {
    GateCount g;
    g.cnot = d * n_q;
    g.rz = d * n_q;
    g.rx = d + 1;
    if (with_shifts) {
        g.rz += n_q;
        g += 2 * gate_count_qft(n_q);
        g.rz += n_q;
    }
    return g;
}

/// Multiplexed-rotation amplitude encoding: 2^{n+1} - 2n - 2 CNOT, 2^{n+1} - 2 rotations.
inline GateCount gate_count_exact_prep(std::size_t n_q) {
    require(n_q >= 1, "gate_count_exact_prep: n_q must be at least 1");
    GateCount g;
    const std::size_t p = pow2(n_q + 1);
    g.cnot = p - 2 * n_q - 2;
    const std::size_t rot = p - 2;
    g.rz = rot / 2;
    g.rx = rot - rot / 2;
    return g;
}

enum class CountKind { cnot, rotations };

/// Smallest n_q in [1, n_max] from which QETU stays below the exact baseline; 0 if none.
inline std::size_t gate_crossover(std::size_t d, CountKind kind, bool with_shifts = false,
                                  std::size_t n_max = 16) {
    auto value = [&](const GateCount &g) {
        return kind == CountKind::cnot ? g.cnot : g.rotations();
    };
    std::size_t cross = 0;
    for (std::size_t n = 1; n <= n_max; ++n) {
        const bool cheaper = value(gate_count_qetu(n, d, with_shifts)) < value(gate_count_exact_prep(n));
        if (cheaper && cross == 0) {
            cross = n;
        } else if (!cheaper) {
            cross = 0;
        }
    }
    return cross;
}

struct GaussianPrep {
    sim::StateVector state;
    real error = 0.0;
    real gamma = 0.0;
    std::optional<GateCount> gates;
    cheb::GaussianFit fit;
    std::size_t n_ch = 0;
    bool search_on_boundary = false;
};

inline cheb::GaussianFit gaussian_fit_for(const WavepacketSpec &spec, Method method, std::size_t d,
                                          const cheb::EtaTauSearch &search, bool *boundary) {
    auto set_boundary = [&](bool b) {
        if (boundary != nullptr) {
            *boundary = b;
        }
    };
    set_boundary(false);
    switch (method) {
    case Method::I:
        return cheb::solve_gaussian_poly(spec, Parity::none, d, 0.0, 1.0, cheb::SampleMode::all_x);
    case Method::II: {
        auto r = cheb::optimize_eta_tau(spec, Parity::none, d, 1.0, cheb::SampleMode::all_x, search);
        set_boundary(r.on_boundary);
        return std::move(r.fit);
    }
    case Method::III: {
        auto r = cheb::optimize_eta_tau(spec, Parity::none, d, std::nullopt, cheb::SampleMode::all_x,
                                        search);
        set_boundary(r.on_boundary);
        return std::move(r.fit);
    }
    case Method::IV: {
        auto r = cheb::optimize_eta_tau(spec, Parity::even, d, 2.0, cheb::SampleMode::all_x, search);
        set_boundary(r.on_boundary);
        return std::move(r.fit);
    }
    default: {
        auto r = cheb::optimize_eta_tau(spec, Parity::even, d, 2.0,
                                        cheb::SampleMode::eigenvalues_only, search);
        set_boundary(r.on_boundary);
        return std::move(r.fit);
    }
    }
}

/// Mixed-parity methods apply F(cos(tau x_sh / 2)) to the uniform state
/// directly; IV and V run the controlled circuit with e^{-i tau x_sh}.
inline GaussianPrep prepare_gaussian(const WavepacketSpec &spec, Method method, std::size_t d,
                                     const cheb::EtaTauSearch &search = {}) {
    spec.validate();
    if (!is_mixed_parity(method)) {
        require(d % 2 == 0, "prepare_gaussian: Methods IV and V need an even degree");
    } else {
        require(d % 2 == 1, "prepare_gaussian: Methods I-III use odd d = 2 n_ch - 1");
    }
    GaussianPrep out;
    out.n_ch = nch_for_degree(method, d);
    // IV and V build the centered packet and translate it afterwards.
    WavepacketSpec base = spec;
    base.p0 = 0.0;
    if (!is_mixed_parity(method)) {
        base.x0 = 0.0;
    }
    out.fit = gaussian_fit_for(base, method, d, search, &out.search_on_boundary);
    const auto &f = out.fit;
    const std::size_t n = spec.size();
    std::vector<real> x_sh(n);
    for (std::size_t j = 0; j < n; ++j) {
        x_sh[j] = base.x_sh(j, f.eta);
    }

    const auto uniform = sim::StateVector::uniform(spec.n_q);
    if (is_mixed_parity(method)) {
        std::vector<cplx> a(n);
        real p = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            a[j] = f(std::cos(f.tau * x_sh[j] / 2.0)) * uniform.amplitudes[j];
            p += std::norm(a[j]);
        }
        if (p < 1e-14) {
            throw ConvergenceError("prepare_gaussian: filter output vanishes");
        }
        out.gamma = p;
        out.state = sim::StateVector(spec.n_q, std::move(a));
        out.state.normalize();
    } else {
        const auto ph = qsp::solve_phases(f.even);
        const sim::DiagonalEvolver ev(x_sh);
        auto run = sim::run_qetu(uniform, ph.w_convention, ev, f.tau, sim::Mode::controlled);
        out.gamma = run.success_prob;
        out.state = std::move(run.output);
        out.gates = gate_count_qetu(spec.n_q, d, spec.x0 != 0.0 || spec.p0 != 0.0);
        if (spec.x0 != 0.0) {
            out.state = shift_position(out.state, spec, spec.x0);
        }
    }
    if (spec.p0 != 0.0) {
        out.state = shift_momentum(out.state, spec, spec.p0);
    }
    out.error = 1.0 - sim::overlap(out.state, target_state(spec));
    return out;
}

} // namespace qetu::wavepacket

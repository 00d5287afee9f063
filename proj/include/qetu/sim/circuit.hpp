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
 * Ordered gate lists for the control-free V circuit, with a dense matrix
 * evaluator and gate tallies.
 */
#pragma once

#include <string>
#include <vector>

#include "pauli.hpp"
#include "hamiltonian.hpp"
#include "qetu.hpp"

namespace qetu::sim {

/// kind:
///   "pauli_exp"  exp(-i params[0] P) with P = pauli over the system qubits
///   "acx"/"acz"  X/Z on qubits[1] when qubits[0] (the ancilla) is |0>
///   "zrot"       exp(i params[0] Z) on qubits[0]
///   "xrot"       exp(i params[0] X) on qubits[0]
///   "qft"/"iqft" transform on the contiguous register qubits[0..]
struct Op {
    std::string kind;
    std::vector<std::size_t> qubits;
    std::vector<real> params;
    std::string pauli;
};

struct Circuit {
    std::size_t n_qubits = 0;
    std::vector<Op> ops;

    void append(const Circuit &other) {
        ops.insert(ops.end(), other.ops.begin(), other.ops.end());
    }
};

namespace detail {

inline void apply_op(const Op &op, std::vector<cplx> &amps) {
    if (op.kind == "pauli_exp") {
        std::vector<cplx> tmp(amps.size());
        // Embed the system string into the full register (ancilla idle).
        std::string full = op.pauli;
        full.resize(std::countr_zero(amps.size()), 'I');
        apply_pauli(full, amps, tmp);
        const real c = std::cos(op.params[0]);
        const cplx ms{0.0, -std::sin(op.params[0])};
        for (std::size_t i = 0; i < amps.size(); ++i) {
            amps[i] = c * amps[i] + ms * tmp[i];
        }
    } else if (op.kind == "acx" || op.kind == "acz") {
        const std::size_t ctrl = pow2(op.qubits[0]);
        const std::size_t tgt = pow2(op.qubits[1]);
        for (std::size_t i = 0; i < amps.size(); ++i) {
            if (i & ctrl) {
                continue;
            }
            if (op.kind == "acx") {
                if (!(i & tgt)) {
                    std::swap(amps[i], amps[i | tgt]);
                }
            } else if (i & tgt) {
                amps[i] = -amps[i];
            }
        }
    } else if (op.kind == "zrot") {
        const std::size_t bit = pow2(op.qubits[0]);
        for (std::size_t i = 0; i < amps.size(); ++i) {
            amps[i] *= std::polar(1.0, (i & bit) ? -op.params[0] : op.params[0]);
        }
    } else if (op.kind == "xrot") {
        const std::size_t bit = pow2(op.qubits[0]);
        const real c = std::cos(op.params[0]);
        const cplx is{0.0, std::sin(op.params[0])};
        for (std::size_t i = 0; i < amps.size(); ++i) {
            if (!(i & bit)) {
                const cplx a0 = amps[i];
                const cplx a1 = amps[i | bit];
                amps[i] = c * a0 + is * a1;
                amps[i | bit] = is * a0 + c * a1;
            }
        }
    } else if (op.kind == "qft") {
        apply_qft(amps, op.qubits.front(), op.qubits.size());
    } else if (op.kind == "iqft") {
        apply_iqft(amps, op.qubits.front(), op.qubits.size());
    } else {
        throw ValidationError("circuit: unknown op kind '" + op.kind + "'");
    }
}

} // namespace detail

inline void apply_circuit(const Circuit &c, std::vector<cplx> &amps) {
    require(amps.size() == pow2(c.n_qubits), "apply_circuit: dimension mismatch");
    for (const auto &op : c.ops) {
        detail::apply_op(op, amps);
    }
}

inline Eigen::MatrixXcd circuit_matrix(const Circuit &c) {
    const std::size_t dim = pow2(c.n_qubits);
    Eigen::MatrixXcd m(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    std::vector<cplx> v(dim);
    for (std::size_t k = 0; k < dim; ++k) {
        std::fill(v.begin(), v.end(), cplx{0.0, 0.0});
        v[k] = 1.0;
        apply_circuit(c, v);
        for (std::size_t j = 0; j < dim; ++j) {
            m(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k)) = v[j];
        }
    }
    return m;
}

/// Counting model: a weight-w Pauli exponential costs 2(w-1) CNOT and one Rz
/// plus two basis changes per X/Y; an anti-controlled K costs one CNOT (or CZ)
/// and two ancilla flips; a k-qubit QFT costs k(k-1)/2 controlled phases
/// (2 CNOT + 3 Rz each) plus floor(k/2) swaps (3 CNOT each) and k Hadamards.
inline GateTally count_gates(const Circuit &c) {
    GateTally t;
    for (const auto &op : c.ops) {
        if (op.kind == "pauli_exp") {
            const auto w = static_cast<std::size_t>(
                std::count_if(op.pauli.begin(), op.pauli.end(), [](char ch) { return ch != 'I'; }));
            t.cnot += w > 0 ? 2 * (w - 1) : 0;
            t.rz += w > 0 ? 1 : 0;
            t.other += 2 * static_cast<std::size_t>(std::count_if(
                               op.pauli.begin(), op.pauli.end(),
                               [](char ch) { return ch == 'X' || ch == 'Y'; }));
        } else if (op.kind == "acx" || op.kind == "acz") {
            t.cnot += 1;
            t.other += 2;
        } else if (op.kind == "zrot") {
            t.rz += 1;
        } else if (op.kind == "xrot") {
            t.rx += 1;
        } else if (op.kind == "qft" || op.kind == "iqft") {
            const std::size_t k = op.qubits.size();
            t.cnot += k * (k - 1) + 3 * (k / 2);
            t.rz += 3 * k * (k - 1) / 2;
            t.other += k;
        }
    }
    return t;
}

/// V = diag(e^{i dtau H}, e^{-i dtau H}) over the ancilla (qubit n) and the
/// system (qubits 0..n-1), as anti-controlled K_j sandwiches around
/// uncontrolled group exponentials. The identity term becomes an ancilla Z rotation.
inline Circuit build_v_circuit(const GroupedHamiltonian &g, real dtau) {
    Circuit c;
    c.n_qubits = g.n + 1;
    const std::size_t anc = g.n;
    for (const auto &grp : g.groups) {
        const std::string kk = grp.k_axis == 'X' ? "acx" : "acz";
        c.ops.push_back({kk, {anc, grp.k_qubit}, {}, {}});
        for (const auto &t : grp.terms) {
            c.ops.push_back({"pauli_exp", {}, {dtau * t.coeff}, t.pauli});
        }
        c.ops.push_back({kk, {anc, grp.k_qubit}, {}, {}});
    }
    if (g.identity_coeff != 0.0) {
        c.ops.push_back({"zrot", {anc}, {dtau * g.identity_coeff}, {}});
    }
    return c;
}

/// Per-site transform ops over the system register.
inline Circuit ft_circuit(std::size_t n_sites, std::size_t site_qubits, bool inverse) {
    Circuit c;
    c.n_qubits = n_sites * site_qubits + 1;
    for (std::size_t s = 0; s < n_sites; ++s) {
        Op op{inverse ? "iqft" : "qft", {}, {}, {}};
        for (std::size_t q = 0; q < site_qubits; ++q) {
            op.qubits.push_back(s * site_qubits + q);
        }
        c.ops.push_back(op);
    }
    return c;
}

/// One control-free first-order step: FT, V_p, FT^dagger, V_x in time order.
inline Circuit control_free_split_circuit(const SplitHamiltonian &h, real dtau) {
    auto v_of = [&](const std::vector<real> &diag) {
        const auto terms = pauli_decompose_diagonal(diag);
        if (terms.empty()) {
            return Circuit{h.n_qubits() + 1, {}};
        }
        return build_v_circuit(group_pauli(terms), dtau);
    };
    Circuit c;
    c.n_qubits = h.n_qubits() + 1;
    c.append(ft_circuit(h.n_sites, h.site_qubits, false));
    c.append(v_of(h.hp));
    c.append(ft_circuit(h.n_sites, h.site_qubits, true));
    c.append(v_of(h.hx));
    return c;
}

/// Tally for one controlled first-order step: every Z string of the two
/// diagonals picks up the ancilla (weight w + 1); the transforms stay uncontrolled.
inline GateTally controlled_split_gates(const SplitHamiltonian &h) {
    GateTally t;
    for (const auto *diag : {&h.hx, &h.hp}) {
        for (const auto &term : pauli_decompose_diagonal(*diag)) {
            const auto w = static_cast<std::size_t>(
                std::count(term.pauli.begin(), term.pauli.end(), 'Z'));
            t.cnot += 2 * w;
            t.rz += 1;
        }
    }
    const auto ft = count_gates(ft_circuit(h.n_sites, h.site_qubits, false));
    t += 2 * ft;
    return t;
}

} // namespace qetu::sim

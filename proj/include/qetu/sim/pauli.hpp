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
 * Pauli strings, Pauli decompositions and the anticommuting-K grouping used
 * by the control-free circuit.
 *
 * A string has one character per qubit from "IXYZ"; character q acts on qubit q.
 */
#pragma once

#include <algorithm>
#include <bit>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "../common.hpp"

namespace qetu::sim {

struct PauliTerm {
    real coeff = 0.0;
    std::string pauli;
};

using PauliTermSum = std::vector<PauliTerm>;

struct PauliMasks {
    std::size_t x = 0;
    std::size_t z = 0;
    int n_y = 0;
};

inline PauliMasks masks_of(const std::string &p) {
    PauliMasks m;
    for (std::size_t q = 0; q < p.size(); ++q) {
        switch (p[q]) {
        case 'I':
            break;
        case 'X':
            m.x |= pow2(q);
            break;
        case 'Y':
            m.x |= pow2(q);
            m.z |= pow2(q);
            ++m.n_y;
            break;
        case 'Z':
            m.z |= pow2(q);
            break;
        default:
            throw ValidationError("pauli: invalid character in '" + p + "'");
        }
    }
    return m;
}

/// out = P in
inline void apply_pauli(const std::string &p, std::span<const cplx> in, std::span<cplx> out) {
    const auto m = masks_of(p);
    static const cplx ipow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    const cplx ph = ipow[m.n_y % 4];
    for (std::size_t b = 0; b < in.size(); ++b) {
        const real sign = (std::popcount(b & m.z) % 2) ? -1.0 : 1.0;
        out[b ^ m.x] = ph * sign * in[b];
    }
}

inline Eigen::MatrixXcd pauli_matrix(const std::string &p) {
    const std::size_t dim = pow2(p.size());
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim),
                                                static_cast<Eigen::Index>(dim));
    std::vector<cplx> e(dim);
    std::vector<cplx> col(dim);
    for (std::size_t k = 0; k < dim; ++k) {
        std::fill(e.begin(), e.end(), cplx{0.0, 0.0});
        e[k] = 1.0;
        apply_pauli(p, e, col);
        for (std::size_t j = 0; j < dim; ++j) {
            m(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k)) = col[j];
        }
    }
    return m;
}

inline Eigen::MatrixXcd pauli_sum_matrix(const PauliTermSum &terms, std::size_t n) {
    const auto dim = static_cast<Eigen::Index>(pow2(n));
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
    for (const auto &t : terms) {
        require(t.pauli.size() == n, "pauli_sum_matrix: string length mismatch");
        m += t.coeff * pauli_matrix(t.pauli);
    }
    return m;
}

inline bool is_identity(const std::string &p) {
    return std::all_of(p.begin(), p.end(), [](char c) { return c == 'I'; });
}

/// Z-string expansion of a diagonal: a_S = 2^-n sum_k lambda_k (-1)^{|k & S|}.
inline PauliTermSum pauli_decompose_diagonal(std::span<const real> diag, real tol = 1e-14) {
    const std::size_t dim = diag.size();
    require(dim > 0 && std::has_single_bit(dim), "pauli_decompose_diagonal: length is not 2^n");
    const auto n = static_cast<std::size_t>(std::countr_zero(dim));
    std::vector<real> a(diag.begin(), diag.end());
    for (std::size_t len = 1; len < dim; len <<= 1) {
        for (std::size_t i = 0; i < dim; i += 2 * len) {
            for (std::size_t j = i; j < i + len; ++j) {
                const real u = a[j];
                const real v = a[j + len];
                a[j] = u + v;
                a[j + len] = u - v;
            }
        }
    }
    PauliTermSum out;
    for (std::size_t s = 0; s < dim; ++s) {
        const real c = a[s] / static_cast<real>(dim);
        if (std::abs(c) <= tol) {
            continue;
        }
        std::string p(n, 'I');
        for (std::size_t q = 0; q < n; ++q) {
            if (s & pow2(q)) {
                p[q] = 'Z';
            }
        }
        out.push_back({c, p});
    }
    return out;
}

/// Full decomposition a_P = tr(P H) / 2^n for small dense matrices.
inline PauliTermSum pauli_decompose(const Eigen::MatrixXcd &h, real tol = 1e-14) {
    const auto dim = static_cast<std::size_t>(h.rows());
    require(dim > 0 && std::has_single_bit(dim), "pauli_decompose: dimension is not 2^n");
    const auto n = static_cast<std::size_t>(std::countr_zero(dim));
    require(n <= 6, "pauli_decompose: limited to 6 qubits");
    static const char letters[4] = {'I', 'X', 'Y', 'Z'};
    PauliTermSum out;
    for (std::size_t code = 0; code < pow2(2 * n); ++code) {
        std::string p(n, 'I');
        for (std::size_t q = 0; q < n; ++q) {
            p[q] = letters[(code >> (2 * q)) & 3];
        }
        const cplx c = (pauli_matrix(p) * h).trace() / static_cast<real>(dim);
        if (std::abs(c) > tol) {
            out.push_back({c.real(), p});
        }
    }
    return out;
}

struct PauliGroup {
    PauliTermSum terms;
    std::size_t k_qubit = 0;
    char k_axis = 'X';

    [[nodiscard]] std::string k_string(std::size_t n) const {
        std::string s(n, 'I');
        s[k_qubit] = k_axis;
        return s;
    }
};

struct GroupedHamiltonian {
    std::size_t n = 0;
    std::vector<PauliGroup> groups;
    real identity_coeff = 0.0;
};

/// Two passes: {I,Z}-only strings join the group of their lowest Z qubit with
/// K = X there; remaining strings join the group of their lowest X/Y qubit
/// with K = Z there.
inline GroupedHamiltonian group_pauli(const PauliTermSum &terms) {
    GroupedHamiltonian g;
    require(!terms.empty(), "group_pauli: empty term list");
    g.n = terms.front().pauli.size();
    auto find_or_add = [&](std::size_t q, char axis) -> PauliGroup & {
        for (auto &grp : g.groups) {
            if (grp.k_qubit == q && grp.k_axis == axis) {
                return grp;
            }
        }
        g.groups.push_back({{}, q, axis});
        return g.groups.back();
    };
    std::vector<const PauliTerm *> rest;
    for (const auto &t : terms) {
        require(t.pauli.size() == g.n, "group_pauli: string length mismatch");
        masks_of(t.pauli);
        if (is_identity(t.pauli)) {
            g.identity_coeff += t.coeff;
            continue;
        }
        if (t.pauli.find_first_of("XY") == std::string::npos) {
            find_or_add(t.pauli.find('Z'), 'X').terms.push_back(t);
        } else {
            rest.push_back(&t);
        }
    }
    for (const auto *t : rest) {
        find_or_add(t->pauli.find_first_of("XY"), 'Z').terms.push_back(*t);
    }
    std::stable_sort(g.groups.begin(), g.groups.end(), [](const PauliGroup &a, const PauliGroup &b) {
        if (a.k_axis != b.k_axis) {
            return a.k_axis == 'X';
        }
        return a.k_qubit < b.k_qubit;
    });
    for (const auto &grp : g.groups) {
        for (const auto &t : grp.terms) {
            const char c = t.pauli[grp.k_qubit];
            const bool anti = (grp.k_axis == 'X') ? (c == 'Z' || c == 'Y') : (c == 'X' || c == 'Y');
            if (!anti) {
                throw ValidationError("group_pauli: grouping failure for " + t.pauli);
            }
        }
    }
    return g;
}

} // namespace qetu::sim

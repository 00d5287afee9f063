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
 * Compact U(1) lattice gauge theory on a periodic 2 x L plaquette lattice,
 * in the original or a rotated (weaved) operator basis.
 *
 * H = (g^2/2) sum_ij c_ij R_i R_j + (1/g^2) [ (N_p + 1) - sum_v cos(v . B) ]
 */
#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "../sim/hamiltonian.hpp"
#include "digitization.hpp"

namespace qetu::models {

enum class Basis { original, weaved, custom };

inline const char *to_string(Basis b) {
    switch (b) {
    case Basis::original:
        return "original";
    case Basis::weaved:
        return "weaved";
    default:
        return "custom";
    }
}

inline Basis basis_from_string(const std::string &s) {
    if (s == "original") {
        return Basis::original;
    }
    if (s == "weaved") {
        return Basis::weaved;
    }
    if (s == "custom") {
        return Basis::custom;
    }
    throw ValidationError("unknown basis '" + s + "'");
}

struct U1Model {
    std::size_t n_p = 3;
    std::size_t n_q = 1;
    real g = 1.0;
    Basis basis = Basis::original;
    Eigen::MatrixXd w;
    Eigen::MatrixXd electric;
    std::vector<Eigen::VectorXd> cosines;
    Eigen::VectorXd b_max;

    [[nodiscard]] std::size_t grid_size() const { return pow2(n_q); }
    [[nodiscard]] real db(std::size_t p) const {
        return 2.0 * b_max[static_cast<Eigen::Index>(p)] / static_cast<real>(grid_size());
    }
    [[nodiscard]] real dr(std::size_t p) const { return pi / b_max[static_cast<Eigen::Index>(p)]; }
    [[nodiscard]] real r_max(std::size_t p) const {
        return pi * static_cast<real>(grid_size()) / (2.0 * b_max[static_cast<Eigen::Index>(p)]);
    }
    [[nodiscard]] real b(std::size_t p, std::size_t j) const {
        return -b_max[static_cast<Eigen::Index>(p)] + static_cast<real>(j) * db(p);
    }
    /// Rotor value at QFT index j.
    [[nodiscard]] real r(std::size_t p, std::size_t j) const {
        return static_cast<real>(conjugate_label(j, grid_size())) * dr(p);
    }
};

/// c_ij for the periodic 2 x L lattice (N_p = 2L - 1) with the last rotor set
/// to zero: (g^2/2) sum_links (R_p - R_q)^2 = (g^2/2) R^T c R.
inline Eigen::MatrixXd lattice_electric(std::size_t nx, std::size_t ny) {
    const std::size_t n_all = nx * ny;
    require(n_all >= 2, "lattice_electric: need at least two plaquettes");
    Eigen::MatrixXd full = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n_all),
                                                 static_cast<Eigen::Index>(n_all));
    auto add_link = [&](std::size_t p, std::size_t q) {
        const auto ip = static_cast<Eigen::Index>(p);
        const auto iq = static_cast<Eigen::Index>(q);
        full(ip, ip) += 1.0;
        full(iq, iq) += 1.0;
        full(ip, iq) -= 1.0;
        full(iq, ip) -= 1.0;
    };
    for (std::size_t y = 0; y < ny; ++y) {
        for (std::size_t x = 0; x < nx; ++x) {
            const std::size_t p = x + nx * y;
            add_link(p, (x + 1) % nx + nx * y);
            add_link(p, x + nx * ((y + 1) % ny));
        }
    }
    const auto n = static_cast<Eigen::Index>(n_all - 1);
    return full.topLeftCorner(n, n);
}

inline Eigen::MatrixXd weave_np3() {
    const real s2 = std::sqrt(2.0);
    const real s3 = std::sqrt(3.0);
    Eigen::MatrixXd w(3, 3);
    w << s2, -2.0, 0.0, s2, 1.0, -s3, s2, 1.0, s3;
    return w / std::sqrt(6.0);
}

/// beta_R,p^2 = c_pp, beta_B,p^2 = sum over cosines of v_p^2.
inline std::pair<Eigen::VectorXd, Eigen::VectorXd> beta_match(const U1Model &m) {
    const auto n = static_cast<Eigen::Index>(m.n_p);
    Eigen::VectorXd br(n);
    Eigen::VectorXd bb = Eigen::VectorXd::Zero(n);
    for (Eigen::Index p = 0; p < n; ++p) {
        br[p] = std::sqrt(m.electric(p, p));
        for (const auto &v : m.cosines) {
            bb[p] += v[p] * v[p];
        }
        bb[p] = std::sqrt(bb[p]);
    }
    return {br, bb};
}

/// pi over the smallest nonzero |v_p| among the cosine terms.
inline Eigen::VectorXd smallest_coefficient_ceilings(const U1Model &m) {
    const auto n = static_cast<Eigen::Index>(m.n_p);
    Eigen::VectorXd ceil(n);
    for (Eigen::Index p = 0; p < n; ++p) {
        real smallest = 0.0;
        for (const auto &v : m.cosines) {
            const real a = std::abs(v[p]);
            if (a > 1e-12 && (smallest == 0.0 || a < smallest)) {
                smallest = a;
            }
        }
        ceil[p] = smallest > 0.0 ? pi / smallest : pi;
    }
    return ceil;
}

inline Eigen::VectorXd default_ceilings(const U1Model &m) {
    if (m.basis == Basis::weaved && m.n_p == 3) {
        Eigen::VectorXd c(3);
        c << std::sqrt(2.0) * pi, std::sqrt(6.0) * pi, std::sqrt(3.0) * pi;
        return c;
    }
    if (m.basis == Basis::original) {
        return Eigen::VectorXd::Constant(static_cast<Eigen::Index>(m.n_p), pi);
    }
    return smallest_coefficient_ceilings(m);
}

/// b_max,p = min(g (N/2) sqrt(beta_R / beta_B) sqrt(2 pi / N), ceiling_p)
inline Eigen::VectorXd bmax_prescription(const U1Model &m, const Eigen::VectorXd &ceilings) {
    const auto [br, bb] = beta_match(m);
    const real big_n = static_cast<real>(m.grid_size());
    Eigen::VectorXd out(static_cast<Eigen::Index>(m.n_p));
    for (Eigen::Index p = 0; p < out.size(); ++p) {
        const real v = m.g * big_n / 2.0 * std::sqrt(br[p] / bb[p]) * std::sqrt(2.0 * pi / big_n);
        out[p] = std::min(v, ceilings[p]);
    }
    return out;
}

inline void validate_orthogonal(const Eigen::MatrixXd &w, std::size_t n) {
    require(static_cast<std::size_t>(w.rows()) == n && static_cast<std::size_t>(w.cols()) == n,
            "u1_model: W has the wrong shape");
    const real err =
        (w * w.transpose() - Eigen::MatrixXd::Identity(w.rows(), w.cols())).cwiseAbs().maxCoeff();
    require(err < 1e-12, "u1_model: W is not orthogonal");
}

/// Original basis: N_p = 2L - 1 on the 2 x L lattice. Weaved: built-in W for
/// N_p = 3 unless w_custom is given (basis custom).
inline U1Model u1_model(std::size_t n_p, std::size_t n_q, real g, Basis basis,
                        std::optional<Eigen::MatrixXd> w_custom = std::nullopt,
                        std::optional<Eigen::VectorXd> bmax_override = std::nullopt) {
    require(n_q >= 1, "u1_model: n_q must be at least 1");
    require(g > 0.0, "u1_model: g must be positive");
    require(n_p >= 3 && n_p % 2 == 1, "u1_model: N_p must be odd and at least 3 (2 x L lattice)");
    U1Model m;
    m.n_p = n_p;
    m.n_q = n_q;
    m.g = g;
    m.basis = basis;
    const auto n = static_cast<Eigen::Index>(n_p);
    if (basis == Basis::original) {
        m.w = Eigen::MatrixXd::Identity(n, n);
    } else if (basis == Basis::weaved && !w_custom) {
        require(n_p == 3, "u1_model: built-in weave exists only for N_p = 3; supply W");
        m.w = weave_np3();
    } else {
        require(w_custom.has_value(), "u1_model: custom basis requires W");
        m.w = *w_custom;
        m.basis = Basis::custom;
    }
    validate_orthogonal(m.w, n_p);

    const Eigen::MatrixXd c = lattice_electric(2, (n_p + 1) / 2);
    m.electric = m.w.transpose() * c * m.w;
    for (Eigen::Index p = 0; p < n; ++p) {
        m.cosines.push_back(m.w.transpose() * Eigen::VectorXd::Unit(n, p));
    }
    m.cosines.push_back(m.w.transpose() * Eigen::VectorXd::Ones(n));
    if (bmax_override) {
        require(bmax_override->size() == n, "u1_model: b_max override has the wrong length");
        m.b_max = *bmax_override;
    } else {
        m.b_max = bmax_prescription(m, default_ceilings(m));
    }
    return m;
}

/// Magnetic basis as "position", rotor basis as "momentum"; plaquette p owns
/// register p.
inline sim::SplitHamiltonian u1_split(const U1Model &m) {
    sim::SplitHamiltonian h;
    h.n_sites = m.n_p;
    h.site_qubits = m.n_q;
    const std::size_t big_n = m.grid_size();
    const std::size_t dim = pow2(m.n_p * m.n_q);
    h.hx.assign(dim, 0.0);
    h.hp.assign(dim, 0.0);
    const real g2 = m.g * m.g;
    std::vector<real> bv(m.n_p);
    std::vector<real> rv(m.n_p);
    for (std::size_t idx = 0; idx < dim; ++idx) {
        std::size_t rest = idx;
        for (std::size_t p = 0; p < m.n_p; ++p) {
            const std::size_t j = rest % big_n;
            rest /= big_n;
            bv[p] = m.b(p, j);
            rv[p] = m.r(p, j);
        }
        real mag = static_cast<real>(m.n_p + 1);
        for (const auto &v : m.cosines) {
            real arg = 0.0;
            for (std::size_t p = 0; p < m.n_p; ++p) {
                arg += v[static_cast<Eigen::Index>(p)] * bv[p];
            }
            mag -= std::cos(arg);
        }
        h.hx[idx] = mag / g2;
        real el = 0.0;
        for (std::size_t i = 0; i < m.n_p; ++i) {
            for (std::size_t k = 0; k < m.n_p; ++k) {
                el += m.electric(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) *
                      rv[i] * rv[k];
            }
        }
        h.hp[idx] = 0.5 * g2 * el;
    }
    return h;
}

} // namespace qetu::models

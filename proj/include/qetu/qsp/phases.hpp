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
 * Symmetric QSP phase factors for definite-parity Chebyshev polynomials.
 */
#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <vector>

#include "../cheb/poly.hpp"
#include "lbfgs.hpp"

namespace qetu::qsp {

struct PhaseSequence {
    std::vector<real> reduced;
    std::vector<real> w_convention;
    real functional_residual = 0.0;
    real max_residual = 0.0;
    int iterations = 0;
    int evaluations = 0;

    [[nodiscard]] std::size_t degree() const {
        return reduced.empty() ? 0 : reduced.size() - 1;
    }
};

/// Row-major 2x2 complex matrix.
using Mat2 = std::array<cplx, 4>;

inline Mat2 mul(const Mat2 &a, const Mat2 &b) {
    return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3],
            a[2] * b[0] + a[3] * b[2], a[2] * b[1] + a[3] * b[3]};
}

inline Mat2 identity2() { return {1.0, 0.0, 0.0, 1.0}; }

/// e^{i phi Z}
inline Mat2 rz_signal(real phi) {
    return {std::polar(1.0, phi), 0.0, 0.0, std::polar(1.0, -phi)};
}

/// e^{i theta X}
inline Mat2 rx_signal(real theta) {
    const cplx s{0.0, std::sin(theta)};
    return {std::cos(theta), s, s, std::cos(theta)};
}

inline real checked_arccos(real x) {
    if (!(x >= -1.0 && x <= 1.0)) {
        throw ValidationError("qsp: x outside [-1, 1]");
    }
    return std::acos(x);
}

inline real eval_g(real x, const std::vector<real> &phases) {
    require(!phases.empty(), "eval_g: empty phase list");
    const Mat2 w = rx_signal(checked_arccos(x));
    Mat2 u = rz_signal(phases[0]);
    for (std::size_t j = 1; j < phases.size(); ++j) {
        u = mul(mul(u, w), rz_signal(phases[j]));
    }
    return u[0].real();
}

inline std::vector<real> to_w_convention(const std::vector<real> &reduced) {
    std::vector<real> w(reduced.size());
    for (std::size_t j = 0; j < reduced.size(); ++j) {
        const bool end = j == 0 || j + 1 == reduced.size();
        w[j] = reduced[j] + (end ? pi / 4 : pi / 2);
    }
    return w;
}

inline std::vector<real> from_w_convention(const std::vector<real> &w) {
    std::vector<real> r(w.size());
    for (std::size_t j = 0; j < w.size(); ++j) {
        const bool end = j == 0 || j + 1 == w.size();
        r[j] = w[j] - (end ? pi / 4 : pi / 2);
    }
    return r;
}

/// Fitting nodes x_k = cos(pi (2k - 1) / (4 n)), k = 1..n.
inline std::vector<real> qsp_nodes(std::size_t n) {
    std::vector<real> x(n);
    for (std::size_t k = 1; k <= n; ++k) {
        x[k - 1] = std::cos(pi * static_cast<real>(2 * k - 1) / static_cast<real>(4 * n));
    }
    return x;
}

/// Full symmetric list from the independent half.
inline std::vector<real> expand_symmetric(const Eigen::VectorXd &half, std::size_t d) {
    std::vector<real> phi(d + 1);
    for (std::size_t j = 0; j <= d; ++j) {
        phi[j] = half[static_cast<Eigen::Index>(std::min(j, d - j))];
    }
    return phi;
}

/// Mean squared mismatch over the nodes and its gradient in the independent phases.
class PhaseObjective {
  public:
    PhaseObjective(std::size_t d, std::vector<real> nodes, std::vector<real> targets)
        : d_(d), nodes_(std::move(nodes)), targets_(std::move(targets)) {
        for (real x : nodes_) {
            signal_.push_back(rx_signal(std::acos(x)));
        }
    }

    real operator()(const Eigen::VectorXd &half, Eigen::VectorXd &grad) const {
        const auto phi = expand_symmetric(half, d_);
        const std::size_t n = d_ + 1;
        std::vector<Mat2> a(n);
        std::vector<Mat2> da(n);
        for (std::size_t j = 0; j < n; ++j) {
            a[j] = rz_signal(phi[j]);
            // d/dphi e^{i phi Z} = i Z e^{i phi Z}
            da[j] = {cplx{0, 1} * a[j][0], 0.0, 0.0, cplx{0, -1} * a[j][3]};
        }
        grad.setZero(half.size());
        real f = 0.0;
        std::vector<Mat2> prefix(n);
        std::vector<Mat2> suffix(n);
        const real scale = 1.0 / static_cast<real>(nodes_.size());
        for (std::size_t k = 0; k < nodes_.size(); ++k) {
            const Mat2 &w = signal_[k];
            // prefix[j] = A_0 W A_1 W ... A_{j-1} W, suffix[j] = W A_{j+1} ... W A_d
            prefix[0] = identity2();
            for (std::size_t j = 1; j < n; ++j) {
                prefix[j] = mul(mul(prefix[j - 1], a[j - 1]), w);
            }
            suffix[n - 1] = identity2();
            for (std::size_t j = n - 1; j-- > 0;) {
                suffix[j] = mul(mul(w, a[j + 1]), suffix[j + 1]);
            }
            const Mat2 u = mul(mul(prefix[0], a[0]), suffix[0]);
            const real r = u[0].real() - targets_[k];
            f += scale * r * r;
            for (std::size_t j = 0; j < n; ++j) {
                const Mat2 du = mul(mul(prefix[j], da[j]), suffix[j]);
                grad[static_cast<Eigen::Index>(std::min(j, d_ - j))] +=
                    2.0 * scale * r * du[0].real();
            }
        }
        return f;
    }

  private:
    std::size_t d_;
    std::vector<real> nodes_;
    std::vector<real> targets_;
    std::vector<Mat2> signal_;
};

inline real canonical_angle(real phi) {
    // Map into (-pi/2, pi/2] by multiples of pi.
    real v = phi - pi * std::floor(phi / pi);
    if (v > pi / 2) {
        v -= pi;
    }
    return v;
}

/// L-BFGS over the independent phases from (pi/4, 0, ..., 0, pi/4) or a supplied guess.
inline PhaseSequence solve_phases(const cheb::ChebyshevPoly &poly,
                                  std::optional<std::vector<real>> initial = std::nullopt,
                                  int max_iter = 0) {
    require(poly.parity != Parity::none, "solve_phases: polynomial must have definite parity");
    const std::size_t d = poly.degree();
    require(d >= 1 || poly.parity == Parity::even, "solve_phases: empty polynomial");
    const std::size_t n_ch = cheb::ChebyshevPoly::n_ch_for(poly.parity, d);
    const std::size_t half = (d + 2) / 2;
    const auto nodes = qsp_nodes(std::max<std::size_t>(n_ch, 1));
    std::vector<real> targets;
    for (real x : nodes) {
        targets.push_back(cheb::eval_cheb(poly, x));
    }

    Eigen::VectorXd x0 = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(half));
    if (initial) {
        require(initial->size() == d + 1, "solve_phases: initial guess has wrong length");
        for (std::size_t j = 0; j < half; ++j) {
            x0[static_cast<Eigen::Index>(j)] = (*initial)[j];
        }
    } else {
        x0[0] = pi / 4;
    }
    const PhaseObjective obj(d, nodes, targets);
    LbfgsOptions opt;
    opt.max_iter = max_iter > 0 ? max_iter
                                : std::max(200, static_cast<int>(10 * d * d));
    auto run = [&](const Eigen::VectorXd &start) {
        return lbfgs_minimize(
            [&](const Eigen::VectorXd &v, Eigen::VectorXd &g) { return obj(v, g); }, start, opt);
    };
    auto res = run(x0);
    // |F| = 1 targets such as bare T_d sit on a flat valley from the default
    // start; zero phases realize T_d exactly, so try them too.
    if (!initial && res.f > 1e-22) {
        auto alt = run(Eigen::VectorXd::Zero(x0.size()));
        alt.evaluations += res.evaluations;
        if (alt.f < res.f) {
            res = std::move(alt);
        }
    }
    // Amplitude continuation: scaled-down targets converge from the default
    // start, then warm-start the next stage.
    if (!initial && res.f > 1e-22) {
        Eigen::VectorXd warm = x0;
        int evals = res.evaluations;
        LbfgsResult stage;
        for (int k = 1; k <= 4; ++k) {
            std::vector<real> scaled = targets;
            for (auto &v : scaled) {
                v *= static_cast<real>(k) / 4.0;
            }
            const PhaseObjective sobj(d, nodes, scaled);
            stage = lbfgs_minimize(
                [&](const Eigen::VectorXd &v, Eigen::VectorXd &g) { return sobj(v, g); }, warm, opt);
            evals += stage.evaluations;
            warm = stage.x;
        }
        stage.evaluations = evals;
        if (stage.f < res.f) {
            res = std::move(stage);
        }
    }

    PhaseSequence out;
    out.reduced = expand_symmetric(res.x, d);
    const real shift = canonical_angle(out.reduced[0]) - out.reduced[0];
    out.reduced.front() += shift;
    out.reduced.back() = out.reduced.front();
    out.w_convention = to_w_convention(out.reduced);
    out.functional_residual = res.f;
    out.iterations = res.iterations;
    out.evaluations = res.evaluations;
    for (std::size_t k = 0; k < nodes.size(); ++k) {
        out.max_residual =
            std::max(out.max_residual, std::abs(eval_g(nodes[k], out.reduced) - targets[k]));
    }
    if (out.max_residual >= 1e-10) {
        throw ConvergenceError("solve_phases: residual " + std::to_string(out.max_residual) +
                               " after " + std::to_string(res.iterations) +
                               " iterations; check |F| <= 1");
    }
    return out;
}

} // namespace qetu::qsp

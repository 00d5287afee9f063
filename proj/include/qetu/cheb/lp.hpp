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
 * Dense inequality-form linear programs: min c'x subject to A x <= b.
 *
 * Mehrotra predictor-corrector interior point on the normal equations,
 * followed by a vertex polish that re-solves the n tightest independent
 * rows as equalities.
 */
#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include <Eigen/Dense>

#include "../common.hpp"

namespace qetu::cheb {

struct LpResult {
    Eigen::VectorXd x;
    real objective = 0.0;
    int iterations = 0;
    bool polished = false;
};

struct LpOptions {
    real tol = 1e-11;
    int max_iter = 300;
};

namespace detail {

inline real max_step(const Eigen::VectorXd &v, const Eigen::VectorXd &dv) {
    real a = 1.0;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (dv[i] < 0.0) {
            a = std::min(a, -v[i] / dv[i]);
        }
    }
    return a;
}

/// Re-solve the n least-slack independent rows as equalities.
inline bool polish_vertex(const Eigen::MatrixXd &a, const Eigen::VectorXd &b,
                          const Eigen::VectorXd &c, LpResult &res) {
    const Eigen::Index m = a.rows();
    const Eigen::Index n = a.cols();
    Eigen::VectorXd slack = b - a * res.x;
    std::vector<Eigen::Index> order(static_cast<std::size_t>(m));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](Eigen::Index i, Eigen::Index j) { return slack[i] < slack[j]; });

    Eigen::MatrixXd basis(n, n);
    Eigen::MatrixXd q(n, n);
    Eigen::VectorXd rhs(n);
    Eigen::Index k = 0;
    for (auto row : order) {
        if (k == n) {
            break;
        }
        Eigen::VectorXd v = a.row(row).transpose();
        const real nrm = v.norm();
        if (nrm == 0.0) {
            continue;
        }
        v /= nrm;
        for (Eigen::Index j = 0; j < k; ++j) {
            v -= q.col(j).dot(v) * q.col(j);
        }
        const real r = v.norm();
        if (r < 1e-8) {
            continue;
        }
        q.col(k) = v / r;
        basis.row(k) = a.row(row);
        rhs[k] = b[row];
        ++k;
    }
    if (k < n) {
        return false;
    }
    Eigen::VectorXd x = basis.colPivHouseholderQr().solve(rhs);
    const real scale = 1.0 + b.cwiseAbs().maxCoeff();
    const real viol = (a * x - b).maxCoeff();
    const real obj = c.dot(x);
    if (!std::isfinite(obj) || viol > 1e-13 * scale ||
        obj > res.objective + 1e-10 * (1.0 + std::abs(res.objective))) {
        return false;
    }
    res.x = x;
    res.objective = obj;
    res.polished = true;
    return true;
}

} // namespace detail

/// Solves min c'x subject to A x <= b from the starting guess x0.
inline LpResult solve_lp(const Eigen::MatrixXd &a, const Eigen::VectorXd &b,
                         const Eigen::VectorXd &c, Eigen::VectorXd x0,
                         const LpOptions &opt = {}) {
    const Eigen::Index m = a.rows();
    const Eigen::Index n = a.cols();
    require(b.size() == m && c.size() == n && x0.size() == n,
            "solve_lp: dimension mismatch");

    Eigen::VectorXd x = std::move(x0);
    Eigen::VectorXd s = b - a * x;
    for (Eigen::Index i = 0; i < m; ++i) {
        s[i] = std::max(s[i], 1.0);
    }
    Eigen::VectorXd y = Eigen::VectorXd::Ones(m);

    const real bnorm = 1.0 + b.cwiseAbs().maxCoeff();
    const real cnorm = 1.0 + c.cwiseAbs().maxCoeff();
    LpResult res;
    int it = 0;
    for (; it < opt.max_iter; ++it) {
        const Eigen::VectorXd rd = c + a.transpose() * y;
        const Eigen::VectorXd rp = a * x + s - b;
        const real mu = s.dot(y) / static_cast<real>(m);
        const real pobj = c.dot(x);
        const real dobj = -b.dot(y);
        // Rounding in A'y sets the floor of the dual residual.
        const real yscale = (a.cwiseAbs().transpose() * y).maxCoeff();
        const bool primal_ok = rp.cwiseAbs().maxCoeff() < opt.tol * bnorm;
        if (primal_ok && rd.cwiseAbs().maxCoeff() < opt.tol * (cnorm + yscale) &&
            std::abs(pobj - dobj) < opt.tol * (1.0 + std::abs(pobj))) {
            break;
        }
        if (primal_ok && mu < 1e-4 * opt.tol * (1.0 + std::abs(pobj))) {
            break;
        }

        const Eigen::VectorXd dvec = y.cwiseQuotient(s);
        Eigen::MatrixXd normal = a.transpose() * dvec.asDiagonal() * a;
        normal.diagonal().array() += 1e-14 * (1.0 + normal.diagonal().maxCoeff());
        const Eigen::LDLT<Eigen::MatrixXd> ldlt(normal);

        auto direction = [&](const Eigen::VectorXd &rc, Eigen::VectorXd &dx,
                             Eigen::VectorXd &dy, Eigen::VectorXd &ds) {
            const Eigen::VectorXd sinv_rc = rc.cwiseQuotient(s);
            const Eigen::VectorXd rhs =
                -rd - a.transpose() * (dvec.cwiseProduct(rp) - sinv_rc);
            dx = ldlt.solve(rhs);
            dy = dvec.cwiseProduct(a * dx + rp) - sinv_rc;
            ds = -(rc + s.cwiseProduct(dy)).cwiseQuotient(y);
        };

        Eigen::VectorXd dx;
        Eigen::VectorXd dy;
        Eigen::VectorXd ds;
        Eigen::VectorXd rc = s.cwiseProduct(y);
        direction(rc, dx, dy, ds);
        const real ap = detail::max_step(s, ds);
        const real ad = detail::max_step(y, dy);
        const real mu_aff =
            (s + ap * ds).dot(y + ad * dy) / static_cast<real>(m);
        const real sigma = std::pow(mu_aff / mu, 3);

        rc = s.cwiseProduct(y) + ds.cwiseProduct(dy);
        rc.array() -= sigma * mu;
        direction(rc, dx, dy, ds);
        const real step_p = std::min(1.0, 0.995 * detail::max_step(s, ds));
        const real step_d = std::min(1.0, 0.995 * detail::max_step(y, dy));
        x += step_p * dx;
        s += step_p * ds;
        y += step_d * dy;
        if (!x.allFinite() || !y.allFinite()) {
            throw ConvergenceError("solve_lp: non-finite iterate");
        }
    }
    if (it == opt.max_iter) {
        throw ConvergenceError("solve_lp: interior point did not converge");
    }
    res.x = x;
    res.objective = c.dot(x);
    res.iterations = it;
    detail::polish_vertex(a, b, c, res);
    return res;
}

} // namespace qetu::cheb

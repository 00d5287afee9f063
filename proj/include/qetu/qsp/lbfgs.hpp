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
 * Limited-memory BFGS with Armijo backtracking.
 */
#pragma once

#include <cmath>
#include <deque>
#include <functional>

#include <Eigen/Dense>

#include "../common.hpp"

namespace qetu::qsp {

struct LbfgsOptions {
    int memory = 10;
    int max_iter = 1000;
    real f_tol = 1e-24;
    real g_tol = 1e-14;
    real armijo = 1e-4;
};

struct LbfgsResult {
    Eigen::VectorXd x;
    real f = 0.0;
    real grad_norm = 0.0;
    int iterations = 0;
    int evaluations = 0;
    bool converged = false;
};

/// fg(x, grad) returns f(x) and writes the gradient.
using Objective = std::function<real(const Eigen::VectorXd &, Eigen::VectorXd &)>;

inline LbfgsResult lbfgs_minimize(const Objective &fg, Eigen::VectorXd x,
                                  const LbfgsOptions &opt = {}) {
    const Eigen::Index n = x.size();
    Eigen::VectorXd g(n);
    LbfgsResult res;
    real f = fg(x, g);
    res.evaluations = 1;
    std::deque<Eigen::VectorXd> s_hist;
    std::deque<Eigen::VectorXd> y_hist;
    std::deque<real> rho_hist;

    int it = 0;
    for (; it < opt.max_iter; ++it) {
        if (f < opt.f_tol || g.norm() < opt.g_tol) {
            res.converged = true;
            break;
        }
        // Two-loop recursion.
        Eigen::VectorXd q = g;
        std::vector<real> alpha(s_hist.size());
        for (std::size_t i = s_hist.size(); i-- > 0;) {
            alpha[i] = rho_hist[i] * s_hist[i].dot(q);
            q -= alpha[i] * y_hist[i];
        }
        if (!s_hist.empty()) {
            q *= s_hist.back().dot(y_hist.back()) / y_hist.back().squaredNorm();
        }
        for (std::size_t i = 0; i < s_hist.size(); ++i) {
            const real beta = rho_hist[i] * y_hist[i].dot(q);
            q += (alpha[i] - beta) * s_hist[i];
        }
        Eigen::VectorXd dir = -q;
        real slope = g.dot(dir);
        if (slope >= 0.0) {
            dir = -g;
            slope = -g.squaredNorm();
            s_hist.clear();
            y_hist.clear();
            rho_hist.clear();
        }

        real step = 1.0;
        Eigen::VectorXd x_new(n);
        Eigen::VectorXd g_new(n);
        real f_new = f;
        bool accepted = false;
        for (int ls = 0; ls < 60; ++ls) {
            x_new = x + step * dir;
            f_new = fg(x_new, g_new);
            ++res.evaluations;
            if (std::isfinite(f_new) && f_new <= f + opt.armijo * step * slope) {
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted) {
            break;
        }
        const Eigen::VectorXd s = x_new - x;
        const Eigen::VectorXd y = g_new - g;
        const real sy = s.dot(y);
        if (sy > 1e-300) {
            s_hist.push_back(s);
            y_hist.push_back(y);
            rho_hist.push_back(1.0 / sy);
            if (static_cast<int>(s_hist.size()) > opt.memory) {
                s_hist.pop_front();
                y_hist.pop_front();
                rho_hist.pop_front();
            }
        }
        x = x_new;
        g = g_new;
        f = f_new;
    }
    if (!res.converged && (f < opt.f_tol || g.norm() < opt.g_tol)) {
        res.converged = true;
    }
    res.x = x;
    res.f = f;
    res.grad_norm = g.norm();
    res.iterations = it;
    return res;
}

} // namespace qetu::qsp

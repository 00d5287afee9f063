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
 * Rescaled ground-state problems and degree scans with a saturation summary.
 */
#pragma once

#include <algorithm>
#include <memory>
#include <string>
#include <thread>
#include <vector>

#include "../models/rescale.hpp"
#include "../models/spectrum.hpp"
#include "prepare.hpp"

namespace qetu::gsprep {

/// Hamiltonian mapped into [eta, pi - eta] with its eigensystem and ground state.
struct GroundStateProblem {
    std::shared_ptr<const sim::SplitHamiltonian> h;
    std::shared_ptr<const sim::EigenSystem> es;
    models::RescaleParams rescaled;
    sim::StateVector psi0;
};

inline GroundStateProblem make_problem(const sim::SplitHamiltonian &raw, real eta,
                                       models::GapPreset preset = models::GapPreset::full) {
    const auto es0 = models::exact_eigensystem(raw);
    const auto n = es0.values.size();
    GroundStateProblem p;
    p.rescaled = models::rescale(eta, es0.values[0], es0.values[1], es0.values[n - 1], preset);
    auto h = std::make_shared<sim::SplitHamiltonian>(raw.affine(p.rescaled.c1, p.rescaled.c2));
    auto es = std::make_shared<sim::EigenSystem>(sim::hermitian_eigen(h->dense()));
    p.psi0 = sim::eigenstate(*es, 0, h->n_qubits());
    p.h = std::move(h);
    p.es = std::move(es);
    return p;
}

struct ScanRow {
    std::size_t degree = 0;
    real tau = 0.0;
    real dtau = 0.0;
    std::size_t n_steps = 1;
    sim::Mode mode = sim::Mode::controlled;
    real error = 0.0;
    real success_prob = 0.0;
    real epsilon = 0.0;
    sim::GateTally gates;
    bool ok = true;
    std::string message;
};

/// Runs each config independently on up to `jobs` threads; rows keep input order.
inline std::vector<ScanRow> run_scan(const GroundStateProblem &prob, const sim::StateVector &init,
                                     const std::vector<PrepareConfig> &configs, std::size_t jobs = 1) {
    std::vector<ScanRow> rows(configs.size());
    auto one = [&](std::size_t k) {
        const auto &cfg = configs[k];
        ScanRow &r = rows[k];
        r.degree = cfg.degree;
        r.tau = cfg.tau;
        r.n_steps = cfg.n_steps;
        r.mode = cfg.mode;
        try {
            auto rep = prepare_ground_state(prob.h, prob.es, prob.psi0, init, cfg);
            r.dtau = rep.dtau;
            r.error = rep.error;
            r.success_prob = rep.success_prob;
            r.epsilon = rep.epsilon;
            r.gates = rep.gates;
        } catch (const std::exception &e) {
            r.ok = false;
            r.message = e.what();
        }
    };
    jobs = std::max<std::size_t>(1, std::min(jobs, configs.size()));
    if (jobs == 1) {
        for (std::size_t k = 0; k < configs.size(); ++k) {
            one(k);
        }
        return rows;
    }
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < jobs; ++w) {
        pool.emplace_back([&, w] {
            for (std::size_t k = w; k < configs.size(); k += jobs) {
                one(k);
            }
        });
    }
    for (auto &t : pool) {
        t.join();
    }
    return rows;
}

/// Median of the errors at the `tail` largest degrees.
inline real saturation_error(std::vector<ScanRow> rows, std::size_t tail = 3) {
    std::erase_if(rows, [](const ScanRow &r) { return !r.ok; });
    require(!rows.empty(), "saturation_error: no successful rows");
    std::sort(rows.begin(), rows.end(),
              [](const ScanRow &a, const ScanRow &b) { return a.degree < b.degree; });
    tail = std::min(tail, rows.size());
    std::vector<real> e;
    for (std::size_t k = rows.size() - tail; k < rows.size(); ++k) {
        e.push_back(rows[k].error);
    }
    std::sort(e.begin(), e.end());
    return tail % 2 == 1 ? e[tail / 2] : 0.5 * (e[tail / 2 - 1] + e[tail / 2]);
}

struct LogLinearFit {
    real slope = 0.0;
    real intercept = 0.0;
    real r2 = 0.0;
};

/// Least squares of log(y) against x (or log x when log_x is set).
inline LogLinearFit log_linear_fit(const std::vector<real> &x, const std::vector<real> &y,
                                   bool log_x = false) {
    require(x.size() == y.size() && x.size() >= 2, "log_linear_fit: need at least two points");
    const auto n = static_cast<Eigen::Index>(x.size());
    Eigen::MatrixXd a(n, 2);
    Eigen::VectorXd b(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const auto k = static_cast<std::size_t>(i);
        require(y[k] > 0.0, "log_linear_fit: y must be positive");
        a(i, 0) = log_x ? std::log(x[k]) : x[k];
        a(i, 1) = 1.0;
        b[i] = std::log(y[k]);
    }
    const Eigen::VectorXd c = a.colPivHouseholderQr().solve(b);
    const real ss_res = (a * c - b).squaredNorm();
    const real ss_tot = (b.array() - b.mean()).matrix().squaredNorm();
    return {c[0], c[1], ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0};
}

} // namespace qetu::gsprep

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
 * Two-term error budget eps = a e^{-b Delta N_tot dtau} + c dtau^p: optimal
 * step, (tau, N_steps) split and least-squares fit of (a, b, c, p).
 */
#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/LevenbergMarquardt>
#include <unsupported/Eigen/NumericalDiff>

#include "../common.hpp"

namespace qetu::gsprep {

struct ErrorModel {
    real a = 1.0;
    real b = 1.0;
    real c = 0.1;
    real p = 1.0;

    void validate() const {
        require(a > 0.0 && b > 0.0, "ErrorModel: a and b must be positive");
        require(c >= 0.0, "ErrorModel: c must be non-negative");
        require(p >= 1.0, "ErrorModel: p must be at least 1");
    }
    [[nodiscard]] real eval(real tau_d, real dtau, real delta) const {
        return a * std::exp(-b * delta * tau_d) + c * std::pow(dtau, p);
    }
};

/// N_tot = log(a / (eps - c dtau^p)) / (b Delta dtau)
inline real n_tot_of(const ErrorModel &m, real eps, real delta, real dtau) {
    return std::log(m.a / (eps - m.c * std::pow(dtau, m.p))) / (m.b * delta * dtau);
}

inline real n_tot_second_derivative(const ErrorModel &m, real eps, real delta, real dtau) {
    const real t = m.c * std::pow(dtau, m.p);
    const real bracket = m.p * t * ((m.p - 3.0) * eps + 3.0 * t) / ((eps - t) * (eps - t)) +
                         2.0 * std::log(m.a / (eps - t));
    return bracket / (m.b * delta * dtau * dtau * dtau);
}

struct OptimalStep {
    real dtau_numeric = 0.0;
    real dtau_approx = 0.0;
    /// |approx - numeric| / numeric
    real relative_gap = 0.0;
    /// Residual of p x / (1 - x) + log(eps / a) + log(1 - x) at the root.
    real residual = 0.0;
    real second_derivative = 0.0;
    real n_tot_real = 0.0;
    std::size_t n_tot = 0;
    /// Set when log(a / eps) <= 0: take N_tot = 1 and shrink dtau instead.
    bool boundary = false;
    std::string note;
};

/// Root of p x/(1-x) + log(eps/a) + log(1-x) with x = (c/eps) dtau^p by bisection.
inline OptimalStep optimal_dtau(const ErrorModel &m, real eps, real delta) {
    m.validate();
    require(eps > 0.0, "optimal_dtau: epsilon must be positive");
    require(delta > 0.0, "optimal_dtau: Delta must be positive");
    OptimalStep out;
    if (m.a <= eps) {
        out.boundary = true;
        out.n_tot = 1;
        out.note = "N_tot = 1 and shrink dtau";
        return out;
    }
    if (m.c == 0.0) {
        out.boundary = true;
        out.note = "no Trotter error: dtau limited only by tau_max";
        out.dtau_numeric = std::numeric_limits<real>::infinity();
        out.dtau_approx = out.dtau_numeric;
        return out;
    }
    const real la = std::log(eps / m.a);
    auto h = [&](real x) { return m.p * x / (1.0 - x) + la + std::log1p(-x); };
    real lo = 0.0;
    real hi = 1.0;
    while (hi - lo > 1e-16) {
        const real mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) {
            break;
        }
        (h(mid) < 0.0 ? lo : hi) = mid;
    }
    const real x = std::abs(h(lo)) < std::abs(h(hi)) ? lo : hi;
    const real x_approx = 1.0 - m.p / (m.p + std::log(m.a / eps));
    out.residual = h(x);
    out.dtau_numeric = std::pow(eps / m.c * x, 1.0 / m.p);
    out.dtau_approx = std::pow(eps / m.c * x_approx, 1.0 / m.p);
    out.relative_gap = std::abs(out.dtau_approx - out.dtau_numeric) / out.dtau_numeric;
    out.second_derivative = n_tot_second_derivative(m, eps, delta, out.dtau_numeric);
    out.n_tot_real = n_tot_of(m, eps, delta, out.dtau_numeric);
    if (out.n_tot_real <= 1.0) {
        out.boundary = true;
        out.n_tot = 1;
        out.note = "N_tot = 1 and shrink dtau";
    } else {
        out.n_tot = static_cast<std::size_t>(std::ceil(out.n_tot_real));
    }
    return out;
}

struct TauSteps {
    real tau = 0.0;
    std::size_t n_steps = 0;
};

/// Largest multiple of dtau* not above tau_max.
inline TauSteps choose_tau_steps(real dtau_star, real tau_max) {
    require(dtau_star > 0.0, "choose_tau_steps: dtau* must be positive");
    if (dtau_star > tau_max * (1.0 + 1e-12)) {
        throw ValidationError("choose_tau_steps: dtau* exceeds tau_max; shrink dtau");
    }
    auto n = static_cast<std::size_t>(std::floor(tau_max / dtau_star + 1e-9));
    n = std::max<std::size_t>(n, 1);
    return {static_cast<real>(n) * dtau_star, n};
}

/// One scan point: error at a given tau d product and step dtau.
struct ScanPoint {
    real tau_d = 0.0;
    real dtau = 0.0;
    real error = 0.0;
};

struct ErrorModelFit {
    ErrorModel model;
    /// RMS of log(model) - log(error).
    real rms_log_residual = 0.0;
    int lm_status = 0;
};

namespace detail {

struct BudgetFunctor {
    using Scalar = real;
    using InputType = Eigen::VectorXd;
    using ValueType = Eigen::VectorXd;
    using JacobianType = Eigen::MatrixXd;
    using QRSolver = Eigen::ColPivHouseholderQR<JacobianType>;
    enum { InputsAtCompileTime = Eigen::Dynamic, ValuesAtCompileTime = Eigen::Dynamic };

    const std::vector<ScanPoint> *pts;
    real delta;
    bool with_qetu;
    bool with_trotter;

    [[nodiscard]] int inputs() const { return with_qetu ? 4 : 2; }
    [[nodiscard]] int values() const { return static_cast<int>(pts->size()); }

    /// Parameters (log a, log b, log c, p), or (log c, p) without the QETU term.
    int operator()(const Eigen::VectorXd &q, Eigen::VectorXd &f) const {
        const Eigen::Index t = with_qetu ? 2 : 0;
        for (std::size_t i = 0; i < pts->size(); ++i) {
            const auto &s = (*pts)[i];
            real v = 0.0;
            if (with_qetu) {
                v += std::exp(q[0] - std::exp(q[1]) * delta * s.tau_d);
            }
            if (with_trotter) {
                v += std::exp(q[t]) * std::pow(s.dtau, q[t + 1]);
            }
            f[static_cast<Eigen::Index>(i)] = std::log(std::max(v, 1e-300)) - std::log(s.error);
        }
        return 0;
    }
};

} // namespace detail

/// Least squares on log error. Set with_qetu = false for pure Trotter data.
inline ErrorModelFit fit_error_model(const std::vector<ScanPoint> &scan, real delta,
                                     bool with_qetu = true) {
    require(delta > 0.0, "fit_error_model: Delta must be positive");
    std::vector<real> tds;
    std::vector<real> dts;
    for (const auto &s : scan) {
        require(s.error > 0.0, "fit_error_model: errors must be positive");
        if (std::find(tds.begin(), tds.end(), s.tau_d) == tds.end()) {
            tds.push_back(s.tau_d);
        }
        if (std::find(dts.begin(), dts.end(), s.dtau) == dts.end()) {
            dts.push_back(s.dtau);
        }
    }
    require(dts.size() >= 3, "fit_error_model: degenerate scan (need at least 3 dtau values)");
    require(!with_qetu || scan.size() >= 4, "fit_error_model: fewer points than parameters");
    require(!with_qetu || tds.size() >= 3,
            "fit_error_model: degenerate scan (need at least 3 tau d values)");

    detail::BudgetFunctor fn{&scan, delta, with_qetu, true};
    Eigen::NumericalDiff<detail::BudgetFunctor> nd(fn);
    Eigen::LevenbergMarquardt<Eigen::NumericalDiff<detail::BudgetFunctor>> lm(nd);
    lm.setMaxfev(4000);
    lm.setXtol(1e-14);
    lm.setFtol(1e-14);

    // Starts: the largest error sets a, the smallest dtau tail sets c; p over a few seeds.
    real emax = 0.0;
    real emin = std::numeric_limits<real>::infinity();
    for (const auto &s : scan) {
        emax = std::max(emax, s.error);
        emin = std::min(emin, s.error);
    }
    ErrorModelFit best;
    real best_cost = std::numeric_limits<real>::infinity();
    for (real p0 : {1.0, 2.0, 3.0}) {
        for (real b0 : {0.1, 1.0}) {
            const real lc = std::log(emin / std::pow(dts.front(), p0));
            Eigen::VectorXd q(fn.inputs());
            if (with_qetu) {
                q << std::log(emax), std::log(b0), lc, p0;
            } else {
                q << lc, p0;
            }
            const auto status = lm.minimize(q);
            Eigen::VectorXd f(static_cast<Eigen::Index>(scan.size()));
            fn(q, f);
            const real cost = f.squaredNorm();
            if (std::isfinite(cost) && cost < best_cost) {
                best_cost = cost;
                const Eigen::Index t = with_qetu ? 2 : 0;
                best.model = {with_qetu ? std::exp(q[0]) : 0.0, with_qetu ? std::exp(q[1]) : 0.0,
                              std::exp(q[t]), q[t + 1]};
                best.lm_status = static_cast<int>(status);
            }
            if (!with_qetu) {
                break;
            }
        }
    }
    if (!std::isfinite(best_cost)) {
        throw ConvergenceError("fit_error_model: no finite fit");
    }
    best.rms_log_residual = std::sqrt(best_cost / static_cast<real>(scan.size()));
    return best;
}

} // namespace qetu::gsprep

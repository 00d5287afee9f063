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
 * Minimax fits to the cosine-transformed Gaussian
 *
 *   F(x) = c exp(-((2/tau) arccos x - x0_q)^2 / (2 sigma_q^2))
 *
 * over an x interval (all_x) or only at the images x~_j = cos(tau x_sh,j / 2)
 * of the grid (eigenvalues_only), plus the (eta, tau) search.
 */
#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "../wavepacket/spec.hpp"
#include "minimax.hpp"
#include "step.hpp"

namespace qetu::cheb {

enum class SampleMode { all_x, eigenvalues_only };

inline const char *to_string(SampleMode m) {
    return m == SampleMode::all_x ? "all_x" : "eigenvalues_only";
}

inline SampleMode sample_mode_from_string(const std::string &s) {
    if (s == "all_x" || s == "all-x") {
        return SampleMode::all_x;
    }
    if (s == "eigenvalues_only" || s == "eigenvalues-only") {
        return SampleMode::eigenvalues_only;
    }
    throw ValidationError("unknown sample mode '" + s + "'");
}

/// F = even + odd; a part with no coefficients contributes zero.
struct GaussianFit {
    Parity parity = Parity::even;
    ChebyshevPoly even{Parity::even, {}};
    ChebyshevPoly odd{Parity::odd, {}};
    ApproxReport report;
    real eta = 0.0;
    real tau = 1.0;
    /// max_j |F(x~_j) - c exp(-(x_j - x0)^2 / (2 sigma_x^2))|
    real grid_residual = 0.0;

    [[nodiscard]] real operator()(real x) const {
        real v = 0.0;
        if (!even.coeffs.empty()) {
            v += clenshaw(even.dense(), x);
        }
        if (!odd.coeffs.empty()) {
            v += clenshaw(odd.dense(), x);
        }
        return v;
    }
    [[nodiscard]] std::size_t degree() const {
        return std::max(even.coeffs.empty() ? 0 : even.degree(),
                        odd.coeffs.empty() ? 0 : odd.degree());
    }
};

inline real gaussian_target(const wavepacket::WavepacketSpec &s, real eta, real tau, real x) {
    const real u = (2.0 / tau) * std::acos(std::clamp(x, -1.0, 1.0)) - s.x0_qetu(eta);
    const real sq = s.sigma_qetu(eta);
    return s.c * std::exp(-u * u / (2.0 * sq * sq));
}

/// Image of cos over [tau eta / 2, tau (pi - eta) / 2].
inline std::pair<real, real> cos_image(real eta, real tau) {
    const real a = tau * eta / 2.0;
    const real b = tau * (pi - eta) / 2.0;
    real lo = std::min(std::cos(a), std::cos(b));
    real hi = std::max(std::cos(a), std::cos(b));
    // Interior extrema at multiples of pi.
    for (long k = static_cast<long>(std::ceil(a / pi)); static_cast<real>(k) * pi <= b; ++k) {
        if (k % 2 == 0) {
            hi = 1.0;
        } else {
            lo = -1.0;
        }
    }
    return {lo, hi};
}

namespace detail {

inline std::vector<real> bound_grid(std::size_t d, bool half) {
    std::vector<real> z;
    for (real x : chebyshev_grid(default_samples(d))) {
        if (!half || x >= 0.0) {
            z.push_back(x);
        }
    }
    return z;
}

inline ChebyshevPoly part_of(Parity p, const std::vector<real> &coeffs) {
    return {p, coeffs};
}

inline std::size_t part_degree(Parity p, std::size_t d) {
    if (p == Parity::even) {
        return d % 2 == 0 ? d : d - 1;
    }
    return d % 2 == 1 ? d : d - 1;
}

} // namespace detail

/// Fit of parity `parity` and degree d. For parity none the even and odd parts
/// are fitted separately (all_x) or jointly with part-wise bounds
/// (eigenvalues_only). |F_part| <= 1 is enforced on a dense grid.
inline GaussianFit solve_gaussian_poly(const wavepacket::WavepacketSpec &spec, Parity parity,
                                       std::size_t d, real eta, real tau, SampleMode mode) {
    spec.validate();
    require(tau > 0.0, "solve_gaussian_poly: tau must be positive");
    require(eta < pi / 2.0, "solve_gaussian_poly: eta must be below pi/2");
    if (parity == Parity::none && std::abs(tau - 2.0) < 1e-12) {
        throw ValidationError("solve_gaussian_poly: tau = 2 gives an even target; request parity even");
    }
    if (parity == Parity::even) {
        require(d % 2 == 0, "solve_gaussian_poly: even fit needs even degree");
    } else if (parity == Parity::odd) {
        require(d % 2 == 1, "solve_gaussian_poly: odd fit needs odd degree");
    } else {
        require(d >= 1, "solve_gaussian_poly: parity none needs degree >= 1");
    }
    if (parity != Parity::none) {
        // The target must carry the requested symmetry.
        real off = 0.0;
        for (int i = 0; i <= 200; ++i) {
            const real x = -1.0 + 0.01 * i;
            const real fp = gaussian_target(spec, eta, tau, x);
            const real fm = gaussian_target(spec, eta, tau, -x);
            off = std::max(off, std::abs(parity == Parity::even ? fp - fm : fp + fm));
        }
        if (off > 1e-10) {
            throw ValidationError(std::string("solve_gaussian_poly: target has no ") +
                                  to_string(parity) + " symmetry for these tau, x0");
        }
    }

    GaussianFit fit;
    fit.parity = parity;
    fit.eta = eta;
    fit.tau = tau;
    const std::size_t n = spec.size();
    const auto g = spec.filter_targets();
    std::vector<real> xt(n);
    for (std::size_t j = 0; j < n; ++j) {
        xt[j] = std::cos(tau * spec.x_sh(j, eta) / 2.0);
    }

    std::vector<Parity> parts;
    if (parity == Parity::none) {
        parts = {Parity::even, Parity::odd};
    } else {
        parts = {parity};
    }

    if (mode == SampleMode::all_x) {
        const auto [lo, hi] = cos_image(eta, tau);
        const std::size_t m = default_samples(d);
        std::vector<real> xs;
        for (real x : chebyshev_grid(m)) {
            if (x >= lo && x <= hi) {
                xs.push_back(x);
            }
        }
        if (xs.size() < 5) {
            throw ValidationError("solve_gaussian_poly: fewer than 5 samples in the x window");
        }
        fit.report.samples_used = xs.size();
        for (Parity p : parts) {
            const real sgn = p == Parity::even ? 1.0 : -1.0;
            std::vector<FitPoint> pts;
            for (real x : xs) {
                pts.push_back({x, 0.5 * (gaussian_target(spec, eta, tau, x) +
                                         sgn * gaussian_target(spec, eta, tau, -x))});
            }
            const auto idx = parity_indices(p, detail::part_degree(p, d));
            const BoundSet bound{detail::bound_grid(d, true), 1.0, all_columns(idx.size())};
            const auto mf = minimax_fit(idx, pts, {bound});
            (p == Parity::even ? fit.even : fit.odd) = detail::part_of(p, mf.coeffs);
            fit.report.regions[to_string(p)] = mf.epsilon;
        }
        for (real x : xs) {
            fit.report.epsilon =
                std::max(fit.report.epsilon, std::abs(fit(x) - gaussian_target(spec, eta, tau, x)));
        }
    } else {
        std::vector<FitPoint> pts;
        for (std::size_t j = 0; j < n; ++j) {
            pts.push_back({xt[j], g[j]});
        }
        fit.report.samples_used = n;
        if (parity != Parity::none) {
            const auto idx = parity_indices(parity, d);
            const BoundSet bound{detail::bound_grid(d, true), 1.0, all_columns(idx.size())};
            const auto mf = minimax_fit(idx, pts, {bound});
            (parity == Parity::even ? fit.even : fit.odd) = detail::part_of(parity, mf.coeffs);
        } else {
            // Columns 0..d, even indices first in T-order.
            std::vector<std::size_t> idx;
            BoundSet be{detail::bound_grid(d, true), 1.0, {}};
            BoundSet bo{detail::bound_grid(d, true), 1.0, {}};
            for (std::size_t k = 0; k <= d; ++k) {
                (k % 2 == 0 ? be : bo).columns.push_back(idx.size());
                idx.push_back(k);
            }
            const auto mf = minimax_fit(idx, pts, {be, bo});
            std::vector<real> ce;
            std::vector<real> co;
            for (std::size_t k = 0; k <= d; ++k) {
                (k % 2 == 0 ? ce : co).push_back(mf.coeffs[k]);
            }
            fit.even = detail::part_of(Parity::even, ce);
            fit.odd = detail::part_of(Parity::odd, co);
        }
        for (const auto &p : pts) {
            fit.report.epsilon = std::max(fit.report.epsilon, std::abs(fit(p.x) - p.target));
        }
        fit.report.regions["samples"] = fit.report.epsilon;
    }
    for (std::size_t j = 0; j < n; ++j) {
        fit.grid_residual = std::max(fit.grid_residual, std::abs(fit(xt[j]) - g[j]));
    }
    return fit;
}

struct EtaTauSearch {
    std::vector<real> eta_grid = arange_inclusive(-1.0, 1.5, 0.05);
    std::vector<real> tau_grid = arange_inclusive(0.5, 6.0, 0.1);
    real refine_tol = 1e-4;
    std::size_t jobs = 1;
};

struct EtaTauResult {
    GaussianFit fit;
    real objective = 0.0;
    bool on_boundary = false;
    std::size_t evaluations = 0;
};

/// Objective max(fit epsilon, grid residual); the second term catches arccos
/// folding when tau x_sh / 2 leaves [0, pi].
inline real eta_tau_objective(const GaussianFit &f) {
    return std::max(f.report.epsilon, f.grid_residual);
}

/// Grid search over (eta, tau) (or eta only when tau_fixed is set) followed by
/// coordinate descent from the best grid point.
inline EtaTauResult optimize_eta_tau(const wavepacket::WavepacketSpec &spec, Parity parity,
                                     std::size_t d, std::optional<real> tau_fixed,
                                     SampleMode mode, const EtaTauSearch &search = {}) {
    struct Eval {
        real obj = std::numeric_limits<real>::infinity();
        std::optional<GaussianFit> fit;
    };
    auto evaluate = [&](real eta, real tau) {
        Eval e;
        if (!(eta < pi / 2.0) || tau <= 0.0) {
            return e;
        }
        try {
            e.fit = solve_gaussian_poly(spec, parity, d, eta, tau, mode);
            e.obj = eta_tau_objective(*e.fit);
        } catch (const ValidationError &) {
        } catch (const ConvergenceError &) {
        }
        return e;
    };

    const std::vector<real> taus = tau_fixed ? std::vector<real>{*tau_fixed} : search.tau_grid;
    const std::vector<real> &etas = search.eta_grid;
    require(!etas.empty() && !taus.empty(), "optimize_eta_tau: empty search grid");
    const std::size_t total = etas.size() * taus.size();
    std::vector<real> objs(total, std::numeric_limits<real>::infinity());
    const std::size_t jobs = std::max<std::size_t>(1, std::min(search.jobs, total));
    auto worker = [&](std::size_t w) {
        for (std::size_t k = w; k < total; k += jobs) {
            objs[k] = evaluate(etas[k / taus.size()], taus[k % taus.size()]).obj;
        }
    };
    if (jobs == 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        for (std::size_t w = 0; w < jobs; ++w) {
            pool.emplace_back(worker, w);
        }
        for (auto &t : pool) {
            t.join();
        }
    }
    // Lowest index wins ties, independent of scheduling.
    std::size_t best = 0;
    for (std::size_t k = 1; k < total; ++k) {
        if (objs[k] < objs[best]) {
            best = k;
        }
    }
    if (!std::isfinite(objs[best])) {
        throw ConvergenceError("optimize_eta_tau: no grid point produced a valid fit");
    }
    EtaTauResult res;
    res.evaluations = total;
    const std::size_t ie = best / taus.size();
    const std::size_t it = best % taus.size();
    res.on_boundary = ie == 0 || ie + 1 == etas.size() ||
                      (!tau_fixed && (it == 0 || it + 1 == taus.size()));

    real eta = etas[ie];
    real tau = taus[it];
    Eval cur = evaluate(eta, tau);
    ++res.evaluations;
    real step_eta = etas.size() > 1 ? std::abs(etas[1] - etas[0]) : 0.05;
    real step_tau = taus.size() > 1 ? std::abs(taus[1] - taus[0]) : 0.0;
    while (step_eta > search.refine_tol || (!tau_fixed && step_tau > search.refine_tol)) {
        bool moved = false;
        for (int axis = 0; axis < (tau_fixed ? 1 : 2); ++axis) {
            for (real sgn : {-1.0, 1.0}) {
                const real ne = axis == 0 ? eta + sgn * step_eta : eta;
                const real nt = axis == 1 ? tau + sgn * step_tau : tau;
                Eval cand = evaluate(ne, nt);
                ++res.evaluations;
                if (cand.obj < cur.obj) {
                    cur = std::move(cand);
                    eta = ne;
                    tau = nt;
                    moved = true;
                    break;
                }
            }
        }
        if (!moved) {
            step_eta /= 2.0;
            step_tau /= 2.0;
        }
    }
    res.fit = std::move(*cur.fit);
    res.objective = cur.obj;
    return res;
}

} // namespace qetu::cheb

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

#include <array>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include <qetu/cheb/gaussian.hpp>
#include <qetu/cheb/step.hpp>

using namespace qetu;
using namespace qetu::cheb;

namespace {

/// max residual over the step regions on the default grid, plus max |F|
struct StepEval {
    real eps = 0.0;
    real fmax = 0.0;
};

StepEval eval_step(const SigmaWindow &w, const std::vector<real> &dense, const std::vector<real> &grid) {
    StepEval e;
    for (real x : grid) {
        const real ax = std::abs(x);
        const real f = clenshaw(dense, x);
        e.fmax = std::max(e.fmax, std::abs(f));
        if (ax >= w.sigma_plus && ax <= w.sigma_max) {
            e.eps = std::max(e.eps, std::abs(f - w.c));
        } else if (ax >= w.sigma_min && ax <= w.sigma_minus) {
            e.eps = std::max(e.eps, std::abs(f));
        }
    }
    return e;
}

} // namespace

TEST(EvalCheb, LowOrderValues) {
    EXPECT_NEAR(eval_cheb(ChebyshevPoly{Parity::none, {0.0, 0.0, 1.0}}, 0.5), -0.5, 1e-15);
    for (real x : {-1.0, -0.3, 0.0, 0.7, 1.0}) {
        EXPECT_DOUBLE_EQ(eval_cheb(ChebyshevPoly{Parity::none, {1.0}}, x), 1.0);
    }
}

TEST(EvalCheb, RandomPolyMatchesTrigonometricForm) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<real> u(-1.0, 1.0);
    std::vector<real> c(21);
    for (auto &v : c) {
        v = u(rng);
    }
    const ChebyshevPoly p{Parity::none, c};
    real worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        const real x = u(rng);
        real ref = 0.0;
        for (std::size_t k = 0; k < c.size(); ++k) {
            ref += c[k] * std::cos(static_cast<real>(k) * std::acos(x));
        }
        worst = std::max(worst, std::abs(eval_cheb(p, x) - ref));
    }
    EXPECT_LT(worst, 1e-13);
}

TEST(EvalCheb, ParityLayouts) {
    const ChebyshevPoly even{Parity::even, {0.5, 0.25}};
    EXPECT_EQ(even.degree(), 2u);
    EXPECT_EQ(even.dense(), (std::vector<real>{0.5, 0.0, 0.25}));
    const ChebyshevPoly odd{Parity::odd, {1.0, 2.0}};
    EXPECT_EQ(odd.degree(), 3u);
    EXPECT_NEAR(eval_cheb(odd, 0.3), 0.3 + 2.0 * (4 * 0.027 - 0.9), 1e-14);
}

TEST(SigmaWindow, WorkedExample) {
    const auto w = sigma_window(0.3, 0.3, 1.3, 0.6, 1.0);
    EXPECT_NEAR(w.sigma_min, 0.15, 0.005);
    EXPECT_NEAR(w.sigma_minus, 0.70, 0.005);
    EXPECT_NEAR(w.sigma_plus, 0.88, 0.005);
    EXPECT_NEAR(w.sigma_max, 0.99, 0.005);
}

TEST(SigmaWindow, NoProjectionMargin) {
    const auto w = sigma_window(0.2, 0.0, 0.9, 0.3, 1.0);
    EXPECT_NEAR(w.sigma_min, 0.0, 1e-15);
    EXPECT_DOUBLE_EQ(w.sigma_max, 1.0);
}

TEST(SigmaWindow, ExactCosines) {
    const auto w = sigma_window(0.05, 0.0, 0.233, 0.244, 1.823);
    const long double tau = 1.823L;
    EXPECT_NEAR(w.sigma_plus, static_cast<real>(std::cos(tau * (0.233L - 0.122L) / 2)), 1e-15);
    EXPECT_NEAR(w.sigma_minus, static_cast<real>(std::cos(tau * (0.233L + 0.122L) / 2)), 1e-15);
    EXPECT_NEAR(w.sigma_min, static_cast<real>(std::cos(tau * std::numbers::pi_v<long double> / 2)),
                1e-15);
}

TEST(SigmaWindow, RejectsBadInput) {
    EXPECT_THROW(sigma_window(0.3, 0.3, 1.3, -0.1, 1.0), ValidationError);
    EXPECT_THROW(sigma_window(0.1, 0.3, 1.3, 0.6, 1.0), ValidationError);
    EXPECT_THROW(sigma_window(0.3, 0.3, 1.3, 0.6, 0.0), ValidationError);
}

TEST(TauMax, Values) {
    EXPECT_NEAR(tau_max(0.05, 0.233, 0.244), 1.823, 1e-3);
    EXPECT_NEAR(tau_max(0.05, 0.1498, 0.1330), 1.90, 5e-3);
    EXPECT_NEAR(tau_max(0.0, pi - 0.5, 1.0), 1.0, 1e-15);
}

TEST(StepPoly, WorkedExampleError) {
    const auto w = sigma_window(0.3, 0.3, 1.3, 0.6, 1.0);
    const auto [p, rep] = solve_step_poly(w, 22);
    EXPECT_GE(rep.epsilon, 0.0048);
    EXPECT_LE(rep.epsilon, 0.0192);
    EXPECT_LE(max_abs_on_grid(p), 1.0);
}

TEST(StepPoly, ConstantFit) {
    const auto w = sigma_window(0.3, 0.3, 1.3, 0.6, 1.0);
    const auto [p, rep] = solve_step_poly(w, 0);
    ASSERT_EQ(p.coeffs.size(), 1u);
    EXPECT_NEAR(p.coeffs[0], w.c / 2, 1e-9);
    EXPECT_NEAR(rep.epsilon, w.c / 2, 1e-9);
}

TEST(StepPoly, ReportedErrorIsRecomputable) {
    const auto w = sigma_window(0.3, 0.3, 1.3, 0.6, 1.0);
    const auto grid = chebyshev_grid(default_samples(12));
    const auto [p, rep] = solve_step_poly(w, 12);
    const auto e = eval_step(w, p.dense(), grid);
    EXPECT_NEAR(e.eps, rep.epsilon, 1e-12);
    EXPECT_LE(e.fmax, w.c + 1e-9);
}

TEST(StepPoly, MatchesZoomedGridSearchAtDegreeFour) {
    const auto w = sigma_window(0.3, 0.3, 1.3, 0.6, 1.0);
    const auto grid = chebyshev_grid(default_samples(4));
    const auto [p, rep] = solve_step_poly(w, 4);
    ASSERT_EQ(p.coeffs.size(), 3u);

    auto cost = [&](const std::array<real, 3> &c) {
        const auto e = eval_step(w, {c[0], 0.0, c[1], 0.0, c[2]}, grid);
        return e.eps + 1e3 * std::max(0.0, e.fmax - w.c);
    };
    std::array<real, 3> best{0.5, 0.0, 0.0};
    real half = 1.0;
    for (int round = 0; round < 28; ++round) {
        std::array<real, 3> centre = best;
        real best_cost = cost(best);
        for (int i = -10; i <= 10; ++i) {
            for (int j = -10; j <= 10; ++j) {
                for (int k = -10; k <= 10; ++k) {
                    const std::array<real, 3> c{centre[0] + half * i / 10.0, centre[1] + half * j / 10.0,
                                                centre[2] + half * k / 10.0};
                    const real v = cost(c);
                    if (v < best_cost) {
                        best_cost = v;
                        best = c;
                    }
                }
            }
        }
        half *= 0.5;
    }
    EXPECT_NEAR(cost(best), rep.epsilon, 1e-8);
    for (std::size_t k = 0; k < 3; ++k) {
        EXPECT_NEAR(best[k], p.coeffs[k], 1e-6) << "k=" << k;
    }
}

TEST(StepPoly, ErrorNonIncreasingInDegree) {
    const auto w = sigma_window(0.3, 0.3, 1.3, 0.6, 1.0);
    real prev = 1.0;
    for (std::size_t d = 4; d <= 40; d += 4) {
        const real e = solve_step_poly(w, d).second.epsilon;
        EXPECT_LE(e, prev + 1e-10) << "d=" << d;
        prev = e;
    }
}

TEST(StepPoly, SteeperDecayAtLargerTau) {
    auto slope = [](real tau) {
        const auto w = sigma_window(0.05, 0.0, 0.233, 0.244, tau);
        std::vector<real> ds;
        std::vector<real> le;
        for (std::size_t d = 10; d <= 30; d += 4) {
            ds.push_back(static_cast<real>(d));
            le.push_back(std::log(solve_step_poly(w, d).second.epsilon));
        }
        const real mx = std::accumulate(ds.begin(), ds.end(), 0.0) / static_cast<real>(ds.size());
        const real my = std::accumulate(le.begin(), le.end(), 0.0) / static_cast<real>(le.size());
        real sxy = 0.0;
        real sxx = 0.0;
        for (std::size_t i = 0; i < ds.size(); ++i) {
            sxy += (ds[i] - mx) * (le[i] - my);
            sxx += (ds[i] - mx) * (ds[i] - mx);
        }
        return sxy / sxx;
    };
    const real s1 = slope(1.0);
    const real s2 = slope(tau_max(0.05, 0.233, 0.244));
    EXPECT_LT(s1, 0.0);
    EXPECT_GT(s2 / s1, 1.0);
}

TEST(StepPoly, OddDegreeRejected) {
    const auto w = sigma_window(0.3, 0.3, 1.3, 0.6, 1.0);
    EXPECT_THROW(solve_step_poly(w, 5), ValidationError);
}

TEST(GaussianPoly, TauTwoTargetIsEven) {
    wavepacket::WavepacketSpec s;
    s.n_q = 4;
    s.sigma_x = 0.3;
    real worst = 0.0;
    for (int i = 0; i <= 100; ++i) {
        const real x = -1.0 + 0.02 * i;
        worst = std::max(worst, std::abs(gaussian_target(s, 0.2, 2.0, x) - gaussian_target(s, 0.2, 2.0, -x)));
    }
    EXPECT_LT(worst, 1e-14);
    EXPECT_THROW(solve_gaussian_poly(s, Parity::none, 5, 0.0, 2.0, SampleMode::all_x), ValidationError);
    EXPECT_THROW(solve_gaussian_poly(s, Parity::even, 6, 0.0, 1.0, SampleMode::all_x), ValidationError);
}

TEST(GaussianPoly, InterpolatesGridImages) {
    wavepacket::WavepacketSpec s;
    s.n_q = 3;
    s.sigma_x = 0.4;
    // four distinct |x~_j| for eight symmetric points; the bound is slack at eta = 0.5
    const auto fit = solve_gaussian_poly(s, Parity::even, 6, 0.5, 2.0, SampleMode::eigenvalues_only);
    EXPECT_LE(fit.report.epsilon, 1e-12);
}

TEST(GaussianPoly, FlatTargetNeedsOneCoefficient) {
    wavepacket::WavepacketSpec s;
    s.n_q = 4;
    s.sigma_x = 40.0;
    ASSERT_GE(s.sigma_qetu(0.0), 10 * pi);
    const auto fit = solve_gaussian_poly(s, Parity::even, 0, 0.0, 2.0, SampleMode::all_x);
    EXPECT_LT(fit.report.epsilon, 1e-3);
}

TEST(GaussianPoly, MixedParityResidualDecays) {
    wavepacket::WavepacketSpec s;
    s.n_q = 4;
    s.sigma_x = 0.4;
    std::vector<real> nch;
    std::vector<real> eps;
    for (std::size_t n = 3; n <= 8; ++n) {
        const auto fit = solve_gaussian_poly(s, Parity::none, 2 * n - 1, 0.0, 1.0, SampleMode::all_x);
        nch.push_back(std::log(static_cast<real>(n)));
        eps.push_back(std::log(fit.report.epsilon));
    }
    const real slope = (eps.back() - eps.front()) / (nch.back() - nch.front());
    EXPECT_NEAR(slope, -2.0, 0.5);
}

TEST(EtaTau, PrefersLargeTau) {
    wavepacket::WavepacketSpec s;
    s.n_q = 4;
    s.sigma_x = 0.4;
    EtaTauSearch se;
    se.eta_grid = arange_inclusive(-0.5, 1.0, 0.25);
    se.tau_grid = {1.0, 2.0, 3.0, 4.0, 5.0};
    se.refine_tol = 1e-2;
    const auto best = optimize_eta_tau(s, Parity::none, 9, std::nullopt, SampleMode::all_x, se);
    const auto tau1 = optimize_eta_tau(s, Parity::none, 9, 1.0, SampleMode::all_x, se);
    EXPECT_LE(best.objective, tau1.objective);
    EXPECT_GT(best.fit.tau, 1.0);
}

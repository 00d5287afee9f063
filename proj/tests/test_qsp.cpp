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

#include <chrono>
#include <cmath>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include <qetu/cheb/step.hpp>
#include <qetu/qsp/phases.hpp>

using namespace qetu;
using namespace qetu::qsp;

namespace {

cheb::ChebyshevPoly step22() {
    return cheb::solve_step_poly(cheb::sigma_window(0.3, 0.3, 1.3, 0.6, 1.0), 22).first;
}

} // namespace

TEST(EvalG, ZeroPhasesGiveChebyshev) {
    for (std::size_t d : {1u, 2u, 5u, 8u}) {
        const std::vector<real> phi(d + 1, 0.0);
        for (real x : {-0.9, -0.2, 0.0, 0.4, 0.95}) {
            EXPECT_NEAR(eval_g(x, phi), std::cos(static_cast<real>(d) * std::acos(x)), 1e-14);
        }
    }
}

TEST(EvalG, QuarterPiEndsCancel) {
    const std::vector<real> phi{pi / 4, 0.0, pi / 4};
    for (real x : {-1.0, -0.5, 0.0, 0.3, 1.0}) {
        EXPECT_NEAR(eval_g(x, phi), 0.0, 1e-15);
    }
}

TEST(EvalG, RejectsOutOfRange) {
    EXPECT_THROW(eval_g(1.5, {0.0, 0.0}), ValidationError);
}

TEST(WConvention, OffsetsAndRoundTrip) {
    EXPECT_EQ(to_w_convention({0.0, 0.0, 0.0}), (std::vector<real>{pi / 4, pi / 2, pi / 4}));
    const auto w = to_w_convention({pi / 4, 0.0, 0.0, 0.0, pi / 4});
    for (real v : w) {
        EXPECT_NEAR(v, pi / 2, 1e-15);
    }
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<real> u(-pi, pi);
    std::vector<real> r(9);
    for (auto &v : r) {
        v = u(rng);
    }
    const auto back = from_w_convention(to_w_convention(r));
    for (std::size_t j = 0; j < r.size(); ++j) {
        EXPECT_NEAR(back[j], r[j], 1e-15);
    }
}

TEST(PhaseObjective, GradientMatchesFiniteDifferences) {
    const auto poly = step22();
    const std::size_t d = poly.degree();
    const auto nodes = qsp_nodes(poly.n_ch());
    std::vector<real> targets;
    for (real x : nodes) {
        targets.push_back(cheb::eval_cheb(poly, x));
    }
    const PhaseObjective obj(d, nodes, targets);
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<real> u(-1.0, 1.0);
    const Eigen::Index half = static_cast<Eigen::Index>((d + 2) / 2);
    for (int trial = 0; trial < 20; ++trial) {
        Eigen::VectorXd x(half);
        for (Eigen::Index k = 0; k < half; ++k) {
            x[k] = u(rng);
        }
        Eigen::VectorXd g;
        obj(x, g);
        Eigen::VectorXd scratch;
        for (Eigen::Index k = 0; k < half; ++k) {
            Eigen::VectorXd xp = x;
            Eigen::VectorXd xm = x;
            xp[k] += 1e-6;
            xm[k] -= 1e-6;
            const real fd = (obj(xp, scratch) - obj(xm, scratch)) / 2e-6;
            EXPECT_NEAR(g[k], fd, 1e-5 * std::max(1.0, std::abs(fd))) << "trial " << trial << " k " << k;
        }
    }
}

TEST(SolvePhases, ChebyshevTwo) {
    const auto ph = solve_phases(cheb::ChebyshevPoly{Parity::even, {0.0, 1.0}});
    EXPECT_LT(ph.functional_residual, 1e-24);
    for (real x : {-0.7, 0.0, 0.3, 0.9}) {
        EXPECT_NEAR(eval_g(x, ph.reduced), 2 * x * x - 1, 1e-12);
    }
}

TEST(SolvePhases, StepPolynomialAtRandomPoints) {
    const auto poly = step22();
    ASSERT_LE(cheb::max_abs_on_grid(poly), 1.0);
    const auto ph = solve_phases(poly);
    ASSERT_EQ(ph.reduced.size(), 23u);
    for (std::size_t j = 0; j < ph.reduced.size(); ++j) {
        EXPECT_DOUBLE_EQ(ph.reduced[j], ph.reduced[22 - j]);
    }
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<real> u(-1.0, 1.0);
    real worst = 0.0;
    for (int i = 0; i < 200; ++i) {
        const real x = u(rng);
        worst = std::max(worst, std::abs(eval_g(x, ph.reduced) - cheb::eval_cheb(poly, x)));
    }
    EXPECT_LT(worst, 1e-10);
    // the fitting nodes themselves
    for (real x : qsp_nodes(poly.n_ch())) {
        EXPECT_NEAR(eval_g(x, ph.reduced), cheb::eval_cheb(poly, x), 1e-10);
    }
}

TEST(SolvePhases, StableUnderPerturbedStart) {
    const auto poly = step22();
    const auto ph = solve_phases(poly);
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<real> u(-1e-3, 1e-3);
    auto guess = ph.reduced;
    for (auto &v : guess) {
        v += u(rng);
    }
    for (std::size_t j = 0; j < guess.size(); ++j) {
        guess[guess.size() - 1 - j] = guess[j];
    }
    const auto again = solve_phases(poly, guess);
    EXPECT_LT(again.functional_residual, 1e-20);
    for (std::size_t j = 0; j < guess.size(); ++j) {
        EXPECT_NEAR(again.reduced[j], ph.reduced[j], 1e-6);
    }
}

TEST(SolvePhases, OddPolynomial) {
    const cheb::ChebyshevPoly p{Parity::odd, {0.5, -0.2, 0.1}};
    const auto ph = solve_phases(p);
    for (real x : {-0.8, -0.1, 0.35, 0.99}) {
        EXPECT_NEAR(eval_g(x, ph.reduced), cheb::eval_cheb(p, x), 1e-10);
    }
}

TEST(SolvePhases, RejectsMixedParity) {
    EXPECT_THROW(solve_phases(cheb::ChebyshevPoly{Parity::none, {0.1, 0.2}}), ValidationError);
}

TEST(SolvePhases, EvaluationCountGrowsAtMostQuadratically) {
    const auto w = cheb::sigma_window(0.3, 0.3, 1.3, 0.6, 1.0);
    auto evals = [&](std::size_t d) {
        return static_cast<real>(solve_phases(cheb::solve_step_poly(w, d).first).evaluations);
    };
    EXPECT_LT(evals(64) / evals(8), std::pow(64.0 / 8.0, 2.0));
}

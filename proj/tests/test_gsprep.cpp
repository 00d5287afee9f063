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

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include <qetu/gsprep/adiabatic.hpp>
#include <qetu/gsprep/budget.hpp>
#include <qetu/gsprep/scan.hpp>
#include <qetu/models/sho.hpp>
#include <qetu/models/u1.hpp>

using namespace qetu;
using namespace qetu::gsprep;

namespace {

GroundStateProblem sho_problem() {
    return make_problem(models::sho_model(3, 1.0, models::default_sho_xmax(3, 1.0)), 0.05);
}

PrepareConfig config_for(const GroundStateProblem &p, std::size_t d, real tau) {
    PrepareConfig cfg;
    cfg.eta = p.rescaled.eta;
    cfg.mu = p.rescaled.mu;
    cfg.delta = p.rescaled.delta;
    cfg.tau = tau;
    cfg.degree = d;
    return cfg;
}

} // namespace

TEST(Prepare, EigenstateInputIsKept) {
    const auto p = sho_problem();
    const auto cfg = config_for(p, 12, 1.0);
    const auto rep = prepare_ground_state(p.h, p.es, p.psi0, p.psi0, cfg);
    EXPECT_LT(rep.error, 1e-12);
    const auto f = build_filter(cfg);
    const real amp = cheb::eval_cheb(f.poly, std::cos(cfg.tau * p.es->values[0] / 2));
    EXPECT_NEAR(rep.success_prob, amp * amp, 1e-10);
}

TEST(Prepare, ErrorFallsWithDegree) {
    const auto p = sho_problem();
    const auto init = sim::StateVector::uniform(3);
    real prev = 1.0;
    for (std::size_t d : {6u, 12u, 18u, 24u}) {
        const auto rep = prepare_ground_state(p.h, p.es, p.psi0, init, config_for(p, d, 1.0));
        EXPECT_LT(rep.error, prev) << "d " << d;
        prev = rep.error;
    }
    EXPECT_LT(prev, 1e-3);
}

TEST(Prepare, TrotterApproachesExact) {
    const auto p = sho_problem();
    const auto init = sim::StateVector::uniform(3);
    auto cfg = config_for(p, 14, 1.0);
    const auto exact = prepare_ground_state(p.h, p.es, p.psi0, init, cfg);
    cfg.evolver = EvolverKind::trotter;
    real prev = 1.0;
    for (std::size_t n : {1u, 4u, 16u, 64u}) {
        cfg.n_steps = n;
        const auto rep = prepare_ground_state(p.h, p.es, p.psi0, init, cfg);
        const real gap = std::abs(rep.error - exact.error);
        EXPECT_LT(gap, prev) << "n_steps " << n;
        prev = gap;
        EXPECT_NEAR(rep.dtau, 1.0 / static_cast<real>(n), 1e-15);
    }
    EXPECT_LT(prev, 1e-4);
}

TEST(Prepare, ControlFreeHalvesTheCall) {
    const auto p = sho_problem();
    auto cfg = config_for(p, 10, 1.2);
    cfg.mode = sim::Mode::control_free;
    const auto rep = prepare_ground_state(p.h, p.es, p.psi0, sim::StateVector::uniform(3), cfg);
    EXPECT_NEAR(rep.dtau, 0.6, 1e-15);
    EXPECT_GT(rep.gates.cnot, 0u);
    EXPECT_EQ(rep.gates.rx, 11u);
}

TEST(Prepare, FlagsTauAboveMax) {
    const auto p = sho_problem();
    const real tm = cheb::tau_max(p.rescaled.eta, p.rescaled.mu, p.rescaled.delta);
    const auto below = prepare_ground_state(p.h, p.es, p.psi0, p.psi0, config_for(p, 10, tm * 0.9));
    EXPECT_FALSE(below.tau_exceeds_max);
    EXPECT_NEAR(below.tau_max, tm, 1e-15);
    auto cfg = config_for(p, 10, tm * 1.05);
    const auto above = prepare_ground_state(p.h, p.es, p.psi0, p.psi0, cfg);
    EXPECT_TRUE(above.tau_exceeds_max);
}

TEST(Prepare, FixedBudgetSplitIsNeutral) {
    // N_tot = d N_steps and dtau fixed; only the split changes
    const auto p = sho_problem();
    const auto init = sim::StateVector::uniform(3);
    auto a = config_for(p, 24, 0.5);
    a.evolver = EvolverKind::trotter;
    a.n_steps = 1;
    auto b = config_for(p, 12, 1.0);
    b.evolver = EvolverKind::trotter;
    b.n_steps = 2;
    const real ea = prepare_ground_state(p.h, p.es, p.psi0, init, a).error;
    const real eb = prepare_ground_state(p.h, p.es, p.psi0, init, b).error;
    EXPECT_NEAR(ea / eb, 1.0, 0.2) << ea << " vs " << eb;
}

TEST(Scan, ThreadedMatchesSerialAndKeepsFailures) {
    const auto p = sho_problem();
    const auto init = sim::StateVector::uniform(3);
    std::vector<PrepareConfig> cfgs;
    for (std::size_t d : {6u, 10u, 14u, 18u}) {
        cfgs.push_back(config_for(p, d, 1.0));
    }
    cfgs.push_back(config_for(p, 7, 1.0));
    const auto serial = run_scan(p, init, cfgs, 1);
    const auto threaded = run_scan(p, init, cfgs, 3);
    ASSERT_EQ(serial.size(), threaded.size());
    for (std::size_t k = 0; k < serial.size(); ++k) {
        EXPECT_EQ(serial[k].degree, cfgs[k].degree);
        EXPECT_EQ(threaded[k].degree, cfgs[k].degree);
        EXPECT_EQ(serial[k].ok, threaded[k].ok);
        EXPECT_DOUBLE_EQ(serial[k].error, threaded[k].error);
    }
    EXPECT_FALSE(serial.back().ok);
    EXPECT_FALSE(serial.back().message.empty());
}

TEST(Scan, SaturationIsTailMedian) {
    std::vector<ScanRow> rows;
    const std::vector<real> errs{1e-1, 1e-2, 3e-4, 1e-4, 2e-4};
    for (std::size_t k = 0; k < errs.size(); ++k) {
        ScanRow r;
        r.degree = 10 + 4 * k;
        r.error = errs[k];
        rows.push_back(r);
    }
    std::swap(rows[0], rows[4]);
    EXPECT_DOUBLE_EQ(saturation_error(rows), 2e-4);
    EXPECT_DOUBLE_EQ(saturation_error(rows, 2), 1.5e-4);
    rows[4].ok = false;
    EXPECT_DOUBLE_EQ(saturation_error(rows, 1), 2e-4);
}

TEST(Scan, LogLinearFitExactLine) {
    std::vector<real> x;
    std::vector<real> y;
    for (int k = 0; k < 6; ++k) {
        x.push_back(2.0 + k);
        y.push_back(3.0 * std::exp(-0.7 * (2.0 + k)));
    }
    const auto f = log_linear_fit(x, y);
    EXPECT_NEAR(f.slope, -0.7, 1e-12);
    EXPECT_NEAR(f.intercept, std::log(3.0), 1e-12);
    EXPECT_NEAR(f.r2, 1.0, 1e-12);
    y[2] = -1.0;
    EXPECT_THROW(log_linear_fit(x, y), ValidationError);
}

TEST(Budget, WorkedExample) {
    const auto r = optimal_dtau(ErrorModel{1.0, 1.0, 0.1, 1.0}, 1e-3, 0.5);
    EXPECT_NEAR(r.relative_gap, 0.032, 0.005);
    EXPECT_LT(std::abs(r.residual), 1e-12);
    EXPECT_GT(r.second_derivative, 0.0);
    EXPECT_FALSE(r.boundary);
    EXPECT_EQ(r.n_tot, static_cast<std::size_t>(std::ceil(r.n_tot_real)));
}

TEST(Budget, RandomParametersMinimizeNtot) {
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<real> la(0.0, 1.0);
    std::uniform_real_distribution<real> lc(-3.0, 0.0);
    std::uniform_real_distribution<real> lp(1.0, 3.0);
    std::uniform_real_distribution<real> le(-6.0, -2.0);
    for (int trial = 0; trial < 50; ++trial) {
        const ErrorModel m{std::exp(la(rng)), 0.5 + la(rng), std::exp(lc(rng)), lp(rng)};
        const real eps = std::exp(le(rng));
        const real delta = 0.2 + la(rng);
        const auto r = optimal_dtau(m, eps, delta);
        ASSERT_FALSE(r.boundary);
        EXPECT_LT(std::abs(r.residual), 1e-12) << "trial " << trial;
        EXPECT_GT(r.second_derivative, 0.0) << "trial " << trial;
        const real h = 1e-4 * r.dtau_numeric;
        EXPECT_LE(r.n_tot_real, n_tot_of(m, eps, delta, r.dtau_numeric - h));
        EXPECT_LE(r.n_tot_real, n_tot_of(m, eps, delta, r.dtau_numeric + h));
    }
}

TEST(Budget, BoundaryRegimes) {
    const auto flat = optimal_dtau(ErrorModel{1e-3, 1.0, 0.1, 1.0}, 1e-3, 0.5);
    EXPECT_TRUE(flat.boundary);
    EXPECT_EQ(flat.n_tot, 1u);
    const auto exact = optimal_dtau(ErrorModel{1.0, 1.0, 0.0, 2.0}, 1e-3, 0.5);
    EXPECT_TRUE(exact.boundary);
    EXPECT_THROW(optimal_dtau(ErrorModel{1.0, 1.0, 0.1, 0.5}, 1e-3, 0.5), ValidationError);
    EXPECT_THROW(optimal_dtau(ErrorModel{}, -1.0, 0.5), ValidationError);
}

TEST(Budget, ChooseTauSteps) {
    auto a = choose_tau_steps(0.5, 1.9);
    EXPECT_NEAR(a.tau, 1.5, 1e-15);
    EXPECT_EQ(a.n_steps, 3u);
    auto b = choose_tau_steps(1.9, 1.9);
    EXPECT_NEAR(b.tau, 1.9, 1e-15);
    EXPECT_EQ(b.n_steps, 1u);
    auto c = choose_tau_steps(0.3, 1.823);
    EXPECT_NEAR(c.tau, 1.8, 1e-14);
    EXPECT_EQ(c.n_steps, 6u);
    EXPECT_THROW(choose_tau_steps(2.0, 1.9), ValidationError);
}

TEST(Budget, FitRecoversSyntheticModel) {
    const ErrorModel truth{0.8, 0.6, 0.05, 2.0};
    const real delta = 0.3;
    std::vector<ScanPoint> scan;
    for (real td : {5.0, 10.0, 20.0, 30.0, 40.0, 60.0}) {
        for (real dt : {0.1, 0.2, 0.4, 0.8}) {
            scan.push_back({td, dt, truth.eval(td, dt, delta)});
        }
    }
    const auto fit = fit_error_model(scan, delta);
    EXPECT_NEAR(fit.model.a, truth.a, 0.05 * truth.a);
    EXPECT_NEAR(fit.model.b, truth.b, 0.05 * truth.b);
    EXPECT_NEAR(fit.model.c, truth.c, 0.05 * truth.c);
    EXPECT_NEAR(fit.model.p, truth.p, 0.05 * truth.p);
    EXPECT_LT(fit.rms_log_residual, 1e-6);
}

TEST(Budget, FitPureTrotter) {
    std::vector<ScanPoint> scan;
    for (real dt : {0.1, 0.2, 0.4, 0.8}) {
        scan.push_back({0.0, dt, 0.03 * std::pow(dt, 1.5)});
    }
    const auto fit = fit_error_model(scan, 1.0, false);
    EXPECT_NEAR(fit.model.c, 0.03, 1e-6);
    EXPECT_NEAR(fit.model.p, 1.5, 1e-6);
    EXPECT_THROW(fit_error_model({scan[0], scan[1]}, 1.0, false), ValidationError);
}

TEST(Budget, U1TrotterOrderNearTwo) {
    const auto m = models::u1_model(3, 2, 0.6, models::Basis::weaved);
    const auto p = make_problem(models::u1_split(m), 0.05);
    const auto init = sim::StateVector::uniform(6);
    std::vector<ScanPoint> pts;
    for (std::size_t n : {1u, 2u, 4u}) {
        std::vector<PrepareConfig> cfgs;
        for (std::size_t d : {90u, 98u, 106u}) {
            auto cfg = config_for(p, d, 1.5);
            cfg.evolver = EvolverKind::trotter;
            cfg.n_steps = n;
            cfg.mode = sim::Mode::control_free;
            cfgs.push_back(cfg);
        }
        const auto rows = run_scan(p, init, cfgs);
        pts.push_back({0.0, rows.front().dtau, saturation_error(rows)});
    }
    const auto fit = fit_error_model(pts, p.rescaled.delta, false);
    EXPECT_GE(fit.model.p, 1.7);
    EXPECT_LE(fit.model.p, 2.3);
}

TEST(Adiabatic, LinearRampPairs) {
    AdiabaticSchedule s;
    s.total_time = 1.0;
    s.steps = 2;
    const auto pr = s.pairs();
    ASSERT_EQ(pr.size(), 2u);
    EXPECT_NEAR(pr[0].dt1, 0.375, 1e-15);
    EXPECT_NEAR(pr[0].dt2, 0.125, 1e-15);
    EXPECT_NEAR(pr[1].dt1, 0.125, 1e-15);
    EXPECT_NEAR(pr[1].dt2, 0.375, 1e-15);
    s.total_time = 2.7;
    s.steps = 7;
    real sum = 0.0;
    for (const auto &q : s.pairs()) {
        sum += q.dt1 + q.dt2;
    }
    EXPECT_NEAR(sum, 2.7, 1e-14);
}

TEST(Adiabatic, TableValidation) {
    AdiabaticSchedule s;
    s.ramp = Ramp::table;
    s.steps = 2;
    s.u_table = {0.5};
    EXPECT_THROW(s.pairs(), ValidationError);
    s.u_table = {0.5, 1.5};
    EXPECT_THROW(s.pairs(), ValidationError);
    s.steps = 0;
    EXPECT_THROW(s.pairs(), ValidationError);
}

TEST(Adiabatic, ZeroRampKeepsH1Eigenstate) {
    // constant position table: the uniform state is the zero-momentum eigenstate
    sim::SplitHamiltonian h1;
    h1.n_sites = 1;
    h1.site_qubits = 3;
    h1.hx.assign(8, 0.4);
    h1.hp = {0.0, 1.0, 2.0, 3.0, 4.0, 3.0, 2.0, 1.0};
    auto h2 = models::sho_model(3, 1.0, 2.0);
    AdiabaticSchedule s;
    s.ramp = Ramp::table;
    s.steps = 3;
    s.u_table = {0.0, 0.0, 0.0};
    const auto psi = adiabatic_init(h1, h2, s);
    EXPECT_NEAR(gamma(psi, sim::StateVector::uniform(3)), 1.0, 1e-12);
}

TEST(Adiabatic, GammaBasics) {
    const auto a = sim::StateVector::basis(2, 1);
    EXPECT_NEAR(gamma(a, a), 1.0, 1e-15);
    EXPECT_NEAR(gamma(a, sim::StateVector::basis(2, 2)), 0.0, 1e-15);
}

TEST(Adiabatic, StrongTargetCouplingGivesLargeOverlap) {
    for (std::size_t nq : {2u, 3u}) {
        const auto target = models::u1_model(3, nq, 2.0, models::Basis::weaved);
        const auto [h1, h2] = u1_adiabatic_pair(target, 10.0);
        const auto psi = adiabatic_init(h1, h2, AdiabaticSchedule{10.0, 2.0, 1.0, 2, Ramp::linear, {}});
        const auto es = models::exact_eigensystem(h2);
        EXPECT_GT(gamma(psi, sim::eigenstate(es, 0, h2.n_qubits())), 0.9) << "nq " << nq;
    }
}

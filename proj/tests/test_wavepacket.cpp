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

#include <algorithm>
#include <chrono>
#include <cmath>

#include <gtest/gtest.h>

#include <qetu/wavepacket/prepare.hpp>

using namespace qetu;
using namespace qetu::wavepacket;

namespace {

WavepacketSpec packet(std::size_t nq, real sigma_ratio) {
    WavepacketSpec s;
    s.n_q = nq;
    s.x_max = 1.0;
    s.sigma_x = sigma_ratio;
    return s;
}

} // namespace

TEST(PacketSpec, SymmetricGridCentresAtHalfPi) {
    const auto s = packet(4, 0.3);
    for (real eta : {0.0, 0.1, -0.4, 0.9}) {
        EXPECT_NEAR(s.c2(eta), pi / 2, 1e-15);
        EXPECT_NEAR(s.x_sh(0, eta), eta, 1e-15);
        EXPECT_NEAR(s.x_sh(15, eta), pi - eta, 1e-14);
    }
    EXPECT_GT(s.sigma_qetu(0.2), 0.0);
    const auto t = s.filter_targets();
    EXPECT_NEAR(t[7], t[8], 1e-15);
    EXPECT_LT(*std::max_element(t.begin(), t.end()), s.c);
}

TEST(PacketSpec, Validation) {
    auto s = packet(3, 0.0);
    EXPECT_THROW(s.validate(), ValidationError);
    s.sigma_x = 0.2;
    s.c = 1.2;
    EXPECT_THROW(s.validate(), ValidationError);
}

TEST(Shifts, ZeroMomentumIsIdentity) {
    const auto s = packet(4, 0.3);
    const auto t = target_state(s);
    const auto u = shift_momentum(t, s, 0.0);
    for (std::size_t j = 0; j < t.dim(); ++j) {
        EXPECT_EQ(u.amplitudes[j], t.amplitudes[j]);
    }
}

TEST(Shifts, MomentumShiftBuildsBoostedTarget) {
    auto s = packet(5, 0.25);
    const auto moved = shift_momentum(target_state(s), s, 3.0);
    s.p0 = 3.0;
    EXPECT_NEAR(sim::overlap(moved, target_state(s)), 1.0, 1e-12);
}

TEST(Shifts, GridStepPositionShiftIsCyclicPermutation) {
    const auto s = packet(5, 0.2);
    const auto t = target_state(s);
    const auto moved = shift_position(t, s, s.dx());
    const std::size_t n = t.dim();
    for (std::size_t j = 0; j < n; ++j) {
        EXPECT_NEAR(std::abs(moved.amplitudes[j] - t.amplitudes[(j + n - 1) % n]), 0.0, 1e-12);
    }
}

TEST(Shifts, RoundTrips) {
    auto s = packet(4, 0.3);
    std::mt19937_64 rng(4);
    const auto st = sim::StateVector::random(4, rng);
    const auto a = shift_position(shift_position(st, s, 0.37), s, -0.37);
    const auto b = shift_momentum(shift_momentum(st, s, 1.9), s, -1.9);
    for (std::size_t j = 0; j < st.dim(); ++j) {
        EXPECT_NEAR(std::abs(a.amplitudes[j] - st.amplitudes[j]), 0.0, 1e-12);
        EXPECT_NEAR(std::abs(b.amplitudes[j] - st.amplitudes[j]), 0.0, 1e-12);
    }
}

TEST(Gamma, NarrowPacketInverse) {
    EXPECT_NEAR(1.0 / gamma_closed_form(packet(5, 0.1)), 13.0, 2.0);
}

TEST(Gamma, WidePacketTendsToCSquared) {
    auto s = packet(4, 1e4);
    EXPECT_NEAR(gamma_closed_form(s), s.c * s.c, 1e-8);
}

TEST(Gamma, LevelsOffWithQubits) {
    std::vector<real> inv;
    for (std::size_t nq = 2; nq <= 9; ++nq) {
        inv.push_back(1.0 / gamma_closed_form(packet(nq, 0.2)));
    }
    for (std::size_t k = 1; k < inv.size(); ++k) {
        EXPECT_LE(inv[k], inv[k - 1] + 1e-12);
    }
    // n_q = 5 sits within 5% of the n_q = 9 value
    EXPECT_NEAR(inv[3] / inv.back(), 1.0, 0.05);
}

TEST(Gamma, MatchesCircuitSuccessProbability) {
    for (real sr : {0.4, 0.2}) {
        const auto s = packet(4, sr);
        const auto r = prepare_gaussian(s, Method::V, 16);
        EXPECT_NEAR(r.gamma, gamma_closed_form(s), 2 * r.fit.grid_residual + 1e-6) << "sigma " << sr;
    }
}

TEST(GateCounts, Formulas) {
    const auto none = gate_count_qetu(4, 0, false);
    EXPECT_EQ(none.cnot, 0u);
    EXPECT_EQ(none.rx, 1u);
    const auto q = gate_count_qetu(3, 6, false);
    EXPECT_EQ(q.cnot, 18u);
    EXPECT_EQ(q.rz, 18u);
    EXPECT_EQ(q.rx, 7u);
    const auto qft = gate_count_qft(3);
    EXPECT_EQ(qft.cnot, 9u);
    EXPECT_EQ(qft.rz, 9u);
    const auto sh = gate_count_qetu(3, 6, true);
    EXPECT_EQ(sh.cnot, 18u + 18u);
    EXPECT_EQ(sh.rz, 18u + 3u + 18u + 3u);
    const auto ex = gate_count_exact_prep(5);
    EXPECT_EQ(ex.cnot, 64u - 12u);
    EXPECT_EQ(ex.rotations(), 62u);
    EXPECT_THROW(gate_count_exact_prep(0), ValidationError);
}

TEST(GateCounts, Crossovers) {
    const auto cn = gate_crossover(4, CountKind::cnot);
    EXPECT_GE(cn, 4u);
    EXPECT_LE(cn, 6u);
    const auto rot = gate_crossover(4, CountKind::rotations);
    EXPECT_GE(rot, 1u);
    EXPECT_LE(rot, 4u);
}

TEST(Prepare, ExactInterpolationAtThreeQubits) {
    for (std::size_t d : {6u, 10u}) {
        const auto r = prepare_gaussian(packet(3, 0.3), Method::V, d);
        EXPECT_LT(r.error, 1e-12) << "d " << d;
        ASSERT_TRUE(r.gates.has_value());
        EXPECT_EQ(r.gates->cnot, 3 * d);
    }
}

TEST(Prepare, MethodFiveReachesPlateau) {
    const auto r = prepare_gaussian(packet(5, 0.2), Method::V, 16);
    EXPECT_LT(r.error, 1e-8);
    EXPECT_NEAR(r.fit.tau, 2.0, 0.0);
}

TEST(Prepare, EvenFilterIsSymmetricOnGrid) {
    const auto s = packet(4, 0.3);
    const auto r = prepare_gaussian(s, Method::IV, 8);
    for (std::size_t j = 0; j < s.size(); ++j) {
        const real a = r.fit(std::cos(r.fit.tau * s.x_sh(j, r.fit.eta) / 2));
        const real b = r.fit(std::cos(r.fit.tau * s.x_sh(s.size() - 1 - j, r.fit.eta) / 2));
        EXPECT_NEAR(a, b, 1e-14);
    }
}

TEST(Prepare, WidthMonotonicity) {
    real prev = 0.0;
    for (real sr : {0.4, 0.3, 0.2, 0.1}) {
        const auto r = prepare_gaussian(packet(5, sr), Method::V, 6);
        EXPECT_GE(r.error, prev) << "sigma " << sr;
        prev = r.error;
    }
}

TEST(Prepare, MethodFiveErrorInsensitiveToQubits) {
    std::vector<real> errs;
    for (std::size_t nq : {4u, 5u, 6u, 7u}) {
        errs.push_back(prepare_gaussian(packet(nq, 0.3), Method::V, 8).error);
    }
    const auto [lo, hi] = std::minmax_element(errs.begin(), errs.end());
    EXPECT_LT(*hi / *lo, 10.0);
}

TEST(Prepare, MethodOneQuadraticDecay) {
    std::vector<real> nch;
    std::vector<real> err;
    for (std::size_t k = 3; k <= 8; ++k) {
        nch.push_back(static_cast<real>(k));
        err.push_back(
            prepare_gaussian(packet(4, 0.4), Method::I, degree_for_nch(Method::I, k)).fit.report.epsilon);
    }
    // least-squares slope of log fit error on log n_ch
    real mx = 0.0;
    real my = 0.0;
    for (std::size_t i = 0; i < nch.size(); ++i) {
        mx += std::log(nch[i]);
        my += std::log(err[i]);
    }
    mx /= static_cast<real>(nch.size());
    my /= static_cast<real>(nch.size());
    real sxy = 0.0;
    real sxx = 0.0;
    for (std::size_t i = 0; i < nch.size(); ++i) {
        sxy += (std::log(nch[i]) - mx) * (std::log(err[i]) - my);
        sxx += (std::log(nch[i]) - mx) * (std::log(nch[i]) - mx);
    }
    EXPECT_NEAR(sxy / sxx, -2.0, 0.5);
}

TEST(Prepare, ParityDefiniteMethodsBeatFreeOnes) {
    const auto s = packet(4, 0.4);
    for (std::size_t k : {4u, 6u}) {
        const real e1 = prepare_gaussian(s, Method::I, degree_for_nch(Method::I, k)).error;
        const real e2 = prepare_gaussian(s, Method::II, degree_for_nch(Method::II, k)).error;
        const real e4 = prepare_gaussian(s, Method::IV, degree_for_nch(Method::IV, k)).error;
        const real e5 = prepare_gaussian(s, Method::V, degree_for_nch(Method::V, k)).error;
        EXPECT_LE(e2, e1 * (1 + 1e-6)) << "n_ch " << k;
        EXPECT_LE(e5, e4 * (1 + 1e-6)) << "n_ch " << k;
    }
}

TEST(Prepare, ShiftedPacket) {
    auto s = packet(5, 0.2);
    s.x0 = 4 * s.dx();
    s.p0 = 2.5;
    const auto r = prepare_gaussian(s, Method::V, 16);
    EXPECT_LT(r.error, 1e-4);
    ASSERT_TRUE(r.gates.has_value());
    EXPECT_GT(r.gates->cnot, gate_count_qetu(5, 16, false).cnot);
}

TEST(Prepare, DegreeParityChecks) {
    EXPECT_THROW(prepare_gaussian(packet(3, 0.3), Method::V, 5), ValidationError);
    EXPECT_THROW(prepare_gaussian(packet(3, 0.3), Method::I, 6), ValidationError);
    EXPECT_EQ(degree_for_nch(Method::V, 4), 6u);
    EXPECT_EQ(degree_for_nch(Method::I, 4), 7u);
    EXPECT_EQ(nch_for_degree(Method::V, 6), 4u);
    EXPECT_EQ(nch_for_degree(Method::III, 7), 4u);
    EXPECT_EQ(method_from_string("IV"), Method::IV);
    EXPECT_THROW(method_from_string("VI"), ValidationError);
}

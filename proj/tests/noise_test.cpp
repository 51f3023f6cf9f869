// Copyright 2026 The Sawtooth Trajectories Authors
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
#include <stdexcept>

#include <gtest/gtest.h>

#include "sawtooth/circuit.hpp"
#include "sawtooth/engines.hpp"
#include "sawtooth/noise.hpp"
#include "sawtooth/observables.hpp"
#include "test_support.hpp"

namespace sawtooth {
namespace {

using testing::Dense;

TEST(NoiseModel, JumpProbability) {
    EXPECT_DOUBLE_EQ(NoiseModel(0.3).jump_probability(), 1.0 - std::exp(-0.3));
    EXPECT_TRUE(NoiseModel(0.0).is_noiseless());
    EXPECT_THROW(NoiseModel{-1e-3}, std::invalid_argument);
    EXPECT_THROW(NoiseModel{INFINITY}, std::invalid_argument);
}

TEST(ExactChannel, ExcitedQubitDecays) {
    const NoiseModel model(0.4);
    const double p = model.jump_probability();
    DensityMatrix rho(1);
    rho(1, 1) = 1.0;
    apply_channel_exact(rho, 0, model);
    EXPECT_NEAR(rho(0, 0).real(), p, 1e-15);
    EXPECT_NEAR(rho(1, 1).real(), 1.0 - p, 1e-15);
    EXPECT_EQ(rho(0, 1), Complex(0.0));
}

TEST(ExactChannel, CoherenceScalesBySqrt) {
    const NoiseModel model(0.25);
    const double p = model.jump_probability();
    DensityMatrix rho(1);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) rho(i, j) = 0.5;
    apply_channel_exact(rho, 0, model);
    EXPECT_NEAR(rho(0, 1).real(), 0.5 * std::sqrt(1.0 - p), 1e-15);
    EXPECT_NEAR(rho(1, 0).real(), 0.5 * std::sqrt(1.0 - p), 1e-15);
    EXPECT_NEAR(rho(0, 0).real(), 0.5 + 0.5 * p, 1e-15);
}

TEST(ExactChannel, NoiselessIsIdentity) {
    std::mt19937_64 rng(1);
    auto rho = testing::random_density(3, rng);
    const auto orig = rho;
    apply_noise_after_gate(rho, NoiseModel(0.0));
    EXPECT_EQ(rho, orig);
    apply_channel_exact(rho, 1, NoiseModel(0.0));
    EXPECT_EQ(rho, orig);
}

TEST(ExactChannel, MatchesDenseKraus) {
    std::mt19937_64 rng(2);
    const NoiseModel model(0.07);
    for (int q = 0; q < 3; ++q) {
        auto rho = testing::random_density(3, rng);
        const auto [k0, k1] = testing::dense_damping(q, 3, model.jump_probability());
        const Dense r = testing::to_dense(rho);
        const Dense want = k0 * r * k0.adjoint() + k1 * r * k1.adjoint();
        apply_channel_exact(rho, q, model);
        EXPECT_LT(testing::max_abs_diff(testing::to_dense(rho), want), 1e-15);
    }
}

TEST(ExactChannel, QubitOrderCommutes) {
    std::mt19937_64 rng(3);
    const NoiseModel model(0.2);
    auto a = testing::random_density(2, rng);
    auto b = a;
    apply_channel_exact(a, 0, model);
    apply_channel_exact(a, 1, model);
    apply_channel_exact(b, 1, model);
    apply_channel_exact(b, 0, model);
    EXPECT_LT(testing::max_abs_diff(testing::to_dense(a), testing::to_dense(b)), 1e-15);
    EXPECT_NEAR(a.trace().real(), 1.0, 1e-12);
}

TEST(ExactChannel, GroundStateIsFixedPoint) {
    DensityMatrix rho(3);
    rho(0, 0) = 1.0;
    const auto orig = rho;
    for (int i = 0; i < 5; ++i) apply_noise_after_gate(rho, NoiseModel(0.5));
    EXPECT_EQ(rho, orig);
}

TEST(ExactChannel, PreservesPositivityTraceHermiticity) {
    std::mt19937_64 rng(4);
    const NoiseModel model(0.3);
    for (int trial = 0; trial < 10; ++trial) {
        auto rho = testing::random_density(3, rng, 4);
        for (int k = 0; k < 6; ++k) apply_noise_after_gate(rho, model);
        EXPECT_NEAR(rho.trace().real(), 1.0, 1e-12);
        EXPECT_LT(rho.hermiticity_error(), 1e-15);
        EXPECT_GT(min_eigenvalue(rho), -1e-12);
    }
}

TEST(ExactChannel, RejectsBadQubit) {
    DensityMatrix rho(2);
    EXPECT_THROW(apply_channel_exact(rho, 2, NoiseModel(0.1)), std::out_of_range);
}

TEST(StochasticStep, GroundQubitUnchanged) {
    std::mt19937_64 g(5);
    StateVector psi(2, {0.6, 0.0, Complex(0.0, 0.8), 0.0});  // qubit 0 down
    const auto orig = psi;
    RandomStream rng(99);
    for (int i = 0; i < 100; ++i) EXPECT_FALSE(stochastic_step(psi, 0, NoiseModel(0.9), rng));
    EXPECT_LT((testing::to_dense(psi) - testing::to_dense(orig)).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(StochasticStep, NoiselessUnchanged) {
    std::mt19937_64 g(6);
    auto psi = testing::random_state(3, g);
    const auto orig = psi;
    RandomStream rng(1);
    EXPECT_EQ(apply_noise_after_gate(psi, NoiseModel(0.0), rng), 0);
    EXPECT_EQ(psi, orig);
}

TEST(StochasticStep, AverageMatchesExactChannel) {
    const NoiseModel model(0.3);
    const int draws = 100000;
    // Superposition so populations and coherences are both tested.
    const StateVector start(1, {std::sqrt(0.3), std::sqrt(0.7)});
    DensityMatrix exact = DensityMatrix::pure(start);
    apply_channel_exact(exact, 0, model);

    RandomStream rng(12345);
    double s00 = 0, s00sq = 0, s01 = 0, s01sq = 0;
    for (int i = 0; i < draws; ++i) {
        StateVector psi = start;
        stochastic_step(psi, 0, model, rng);
        const double a = std::norm(psi[0]);
        const double c = (psi[0] * std::conj(psi[1])).real();
        s00 += a;
        s00sq += a * a;
        s01 += c;
        s01sq += c * c;
    }
    const auto check = [&](double sum, double sumsq, double want) {
        const double mean = sum / draws;
        const double se = std::sqrt((sumsq / draws - mean * mean) / draws);
        EXPECT_LT(std::abs(mean - want), 3.0 * se) << mean << " vs " << want << " se " << se;
    };
    check(s00, s00sq, exact(0, 0).real());
    check(s01, s01sq, exact(0, 1).real());
}

TEST(StochasticStep, TwoQubitEnsembleAfterTenGates) {
    const auto p = make_params(2, OneCell{0.5});
    const auto seq = build_map_sequence(p);
    const NoiseModel model(0.05);
    std::mt19937_64 g(7);
    const auto psi0 = testing::random_state(2, g);

    DensityMatrix exact = DensityMatrix::pure(psi0);
    for (std::size_t i = 0; i < 10; ++i) {
        conjugate_by_gate(exact, seq.gates[i]);
        apply_noise_after_gate(exact, model);
    }

    const int M = 10000;
    TrajectoryEnsemble ens;
    for (int m = 0; m < M; ++m) {
        auto rng = RandomStream::for_trajectory(77, static_cast<std::uint64_t>(m));
        StateVector psi = psi0;
        for (std::size_t i = 0; i < 10; ++i) {
            apply_gate(psi, seq.gates[i]);
            apply_noise_after_gate(psi, model, rng);
        }
        ens.members.push_back(std::move(psi));
    }
    const auto rho = reconstruct_density(ens);
    const double l1 = (testing::to_dense(rho) - testing::to_dense(exact)).cwiseAbs().sum();
    EXPECT_LE(l1, 0.03);
}

double mean_trace_distance(std::size_t M, int repeats, const DensityMatrix& exact, const StateVector& start,
                           const NoiseModel& model) {
    double total = 0.0;
    for (int r = 0; r < repeats; ++r) {
        TrajectoryEnsemble ens;
        for (std::size_t m = 0; m < M; ++m) {
            auto rng = RandomStream::for_trajectory(1000 + r, m);
            StateVector psi = start;
            apply_noise_after_gate(psi, model, rng);
            ens.members.push_back(std::move(psi));
        }
        total += trace_distance(reconstruct_density(ens), exact);
    }
    return total / repeats;
}

TEST(StochasticStep, ErrorScalesAsInverseSqrtM) {
    const NoiseModel model(0.5);
    std::mt19937_64 g(8);
    const auto start = testing::random_state(2, g);
    DensityMatrix exact = DensityMatrix::pure(start);
    apply_noise_after_gate(exact, model);
    const double coarse = mean_trace_distance(100, 40, exact, start, model);
    const double fine = mean_trace_distance(1600, 40, exact, start, model);
    const double ratio = coarse / fine;
    EXPECT_GT(ratio, 4.0 / 1.5) << ratio;
    EXPECT_LT(ratio, 4.0 * 1.5) << ratio;
}

TEST(RandomStream, DerivedSeedsAreDistinctAndStable) {
    EXPECT_NE(derive_stream_seed(1, 0), derive_stream_seed(1, 1));
    EXPECT_NE(derive_stream_seed(1, 0), derive_stream_seed(2, 0));
    EXPECT_EQ(derive_stream_seed(5, 9), derive_stream_seed(5, 9));
    // splitmix64 reference output for input 0
    EXPECT_EQ(splitmix64(0), 0xE220A8397B1DCDAFull);
    RandomStream a(3), b(3);
    for (int i = 0; i < 10; ++i) {
        const double x = a.uniform();
        EXPECT_EQ(x, b.uniform());
        EXPECT_GE(x, 0.0);
        EXPECT_LT(x, 1.0);
    }
}

}  // namespace
}  // namespace sawtooth

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

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <vector>

#include <gtest/gtest.h>

#include "sawtooth/engines.hpp"
#include "sawtooth/observables.hpp"
#include "test_support.hpp"

namespace sawtooth {
namespace {

TEST(DecayFit, RecoversSyntheticRate) {
    std::vector<double> f(60);
    for (std::size_t t = 0; t < f.size(); ++t) f[t] = std::exp(-0.1 * double(t));
    const auto fit = fit_decay_rate(f);
    EXPECT_NEAR(fit.rate, 0.1, 1e-12);
    EXPECT_NEAR(fit.intercept, 0.0, 1e-11);
    EXPECT_LT(fit.stderr_rate, 1e-12);
    // f > 0.05 keeps t <= 29
    EXPECT_EQ(fit.points, 29);
}

TEST(DecayFit, ConstantSeriesHasZeroRate) {
    const std::vector<double> f(51, 1.0);
    EXPECT_NEAR(fit_decay_rate(f).rate, 0.0, 1e-15);
}

TEST(DecayFit, TooFewPointsThrows) {
    std::vector<double> f(60);
    for (std::size_t t = 0; t < f.size(); ++t) f[t] = std::exp(-1.0 * double(t));
    EXPECT_THROW(fit_decay_rate(f), std::invalid_argument);
}

TEST(DecayFit, ProportionalSlope) {
    const std::vector<double> x{1, 2, 3, 4}, y{0.5, 1.0, 1.5, 2.0};
    EXPECT_NEAR(fit_proportional(x, y).rate, 0.5, 1e-15);
}

TEST(FidelityTimescale, Examples) {
    const auto t8 = fidelity_timescale(make_params(8, OneCell{-0.5}), NoiseModel(0.001));
    EXPECT_NEAR(t8.iterations, 0.625, 1e-12);
    const auto t6 = fidelity_timescale(make_params(6, OneCell{-0.5}), NoiseModel(0.001));
    EXPECT_NEAR(t6.gates, 1000.0 / 6.0, 1e-9);
    EXPECT_EQ(t6.iterations, 1.0 / (6.0 * 114.0 * 0.001));
    const auto inf = fidelity_timescale(make_params(6, OneCell{-0.5}), NoiseModel(0.0));
    EXPECT_EQ(inf.iterations, std::numeric_limits<double>::infinity());
}

TEST(CrossingTime, Interpolates) {
    const std::vector<double> f{1.0, 0.95, 0.85, 0.7};
    EXPECT_NEAR(crossing_time(f, 0.9), 1.5, 1e-12);
    EXPECT_EQ(crossing_time(f, 0.1), -1.0);
}

TEST(Ipr, Bounds) {
    const auto p = make_params(5, OneCell{1.0});
    EXPECT_DOUBLE_EQ(ipr(momentum_distribution(basis_state(p, 4))), 1.0);
    const auto mixed = DensityMatrix::maximally_mixed(5);
    EXPECT_NEAR(ipr(mixed), 32.0, 1e-10);
    const auto w = momentum_distribution(mixed);
    for (int n = -16; n < 16; ++n) EXPECT_NEAR(w.at(n), 1.0 / 32.0, 1e-15);
    EXPECT_NEAR(fidelity(basis_state(p, 0), mixed), 1.0 / 32.0, 1e-15);
}

TEST(MomentumDistribution, DisplayOrder) {
    const auto p = make_params(3, OneCell{1.0});
    const auto w = momentum_distribution(basis_state(p, -1));
    EXPECT_EQ(w.min_momentum(), -4);
    EXPECT_EQ(w.at(-1), 1.0);
    EXPECT_EQ(w.weights()[3], 1.0);
    EXPECT_THROW(w.at(4), std::out_of_range);
}

TEST(IprRatio, NoiselessIsOne) {
    const auto p = make_params(4, ExplicitKick{std::sqrt(3.0), std::sqrt(2.0)});
    const auto a = run_trajectories(p, NoiseModel(0.0), basis_state(p, 0), 40, 1, 1);
    const auto b = run_exact(p, NoiseModel(0.0), basis_state(p, 0), 40);
    EXPECT_NEAR(ipr_ratio(a, b), 1.0, 1e-9);
    const auto other = run_exact(make_params(4, OneCell{1.0}), NoiseModel(0.0), basis_state(p, 0), 40);
    EXPECT_THROW(ipr_ratio(a, other), std::invalid_argument);
}

TEST(TraceDistance, Examples) {
    const auto p = make_params(2, OneCell{1.0});
    const auto a = DensityMatrix::pure(basis_state(p, 0));
    const auto b = DensityMatrix::pure(basis_state(p, 1));
    EXPECT_NEAR(trace_distance(a, b), 1.0, 1e-14);
    EXPECT_NEAR(trace_distance(a, a), 0.0, 1e-14);
    EXPECT_NEAR(min_eigenvalue(DensityMatrix::maximally_mixed(2)), 0.25, 1e-14);
}

// Reference: explicit sum over n for every grid point.
std::vector<double> direct_husimi(const StateVector& psi, const MapParams& p, std::size_t tb, std::size_t mb) {
    const double N = double(p.dim), w = husimi_momentum_width(p);
    std::vector<double> out(tb * mb);
    for (std::size_t r = 0; r < mb; ++r) {
        const double center = -N / 2 + N * double(r) / double(mb);
        std::vector<double> g(p.dim);
        double norm = 0;
        for (std::size_t j = 0; j < p.dim; ++j) {
            const double d = std::remainder(momentum_of_index(j, p.dim) - center, N);
            for (int im = -2; im <= 2; ++im) g[j] += std::exp(-(d + im * N) * (d + im * N) / (4 * w * w));
            norm += g[j] * g[j];
        }
        for (std::size_t a = 0; a < tb; ++a) {
            const double th = kTwoPi * double(a) / double(tb);
            Complex s = 0;
            for (std::size_t j = 0; j < p.dim; ++j)
                s += g[j] * std::polar(1.0, momentum_of_index(j, p.dim) * th) * psi[j];
            out[a * mb + r] = std::norm(s) / norm;
        }
    }
    double total = 0;
    for (double v : out) total += v;
    for (double& v : out) v /= total;
    return out;
}

TEST(Husimi, MatchesDirectOverlapSums) {
    std::mt19937_64 g(3);
    for (int q : {3, 5}) {
        const auto p = make_params(q, OneCell{1.0});
        const auto psi = testing::random_state(q, g);
        const auto h = husimi(psi, p);
        const auto ref = direct_husimi(psi, p, h.theta_bins, h.momentum_bins);
        for (std::size_t i = 0; i < ref.size(); ++i) EXPECT_NEAR(h.values[i], ref[i], 1e-12);
    }
}

TEST(Husimi, BasisStateIsGaussianRidge) {
    const auto p = make_params(6, OneCell{1.0});
    const auto h = husimi(basis_state(p, 5), p);
    ASSERT_EQ(h.theta_bins, 128u);
    ASSERT_EQ(h.momentum_bins, 64u);
    const double w = husimi_momentum_width(p);
    EXPECT_NEAR(w, std::sqrt(64.0 / (4.0 * kPi)), 1e-12);
    EXPECT_NEAR(h.theta_width, 1.0 / (2.0 * w), 1e-15);
    const std::size_t peak = 32 + 5;
    for (std::size_t a = 0; a < h.theta_bins; ++a) {
        EXPECT_NEAR(h.at(a, peak), h.at(0, peak), 1e-14);
        for (int d = 1; d <= 6; ++d) {
            EXPECT_NEAR(h.at(a, peak + d) / h.at(a, peak), std::exp(-d * d / (2 * w * w)), 1e-10);
            EXPECT_NEAR(h.at(a, peak - d), h.at(a, peak + d), 1e-15);
        }
    }
    EXPECT_NEAR(h.total(), 1.0, 1e-8);
    EXPECT_GT(h.raw_mass, 0.0);
}

TEST(Husimi, EnsembleEqualsReconstructedDensity) {
    const auto p = make_params(4, OneCell{1.0});
    RunOptions opts;
    opts.keep_final = true;
    const auto rec = run_trajectories(p, NoiseModel(0.01), basis_state(p, 2), 5, 20, 9, opts);
    const auto a = husimi(*rec.final_ensemble, p);
    const auto b = husimi(reconstruct_density(*rec.final_ensemble), p);
    for (std::size_t i = 0; i < a.values.size(); ++i) EXPECT_NEAR(a.values[i], b.values[i], 1e-13);
}

TEST(Husimi, WindowMassIsNormalized) {
    const auto p = make_params(5, OneCell{1.0});
    RunOptions opts;
    opts.husimi_windows = {{0, 3}, {2, 5}};
    const auto ex = run_exact(p, NoiseModel(0.02), basis_state(p, 0), 5, opts);
    const auto mc = run_trajectories(p, NoiseModel(0.02), basis_state(p, 0), 5, 10, 1, opts);
    for (const auto* r : {&ex, &mc}) {
        ASSERT_EQ(r->husimi.size(), 2u);
        for (const auto& h : r->husimi) {
            EXPECT_NEAR(h.total(), 1.0, 1e-8);
            EXPECT_GT(h.raw_mass, 0.0);
            for (double v : h.values) EXPECT_GE(v, 0.0);
        }
    }
    EXPECT_THROW(HusimiProjector(p, HusimiGrid{1, 8}), std::invalid_argument);
}

TEST(Distributions, L1AndCorrelation) {
    const auto p = make_params(4, OneCell{1.0});
    const auto a = husimi(basis_state(p, 0), p);
    const auto b = husimi(basis_state(p, 4), p);
    EXPECT_NEAR(l1_distance(a, a), 0.0, 1e-15);
    EXPECT_NEAR(correlation(a, a), 1.0, 1e-12);
    EXPECT_GT(l1_distance(a, b), 0.5);
    EXPECT_LT(correlation(a, b), 0.5);
}

double exact_decay_rate(const MapParams& p, const GateSequence& seq, const NoiseModel& model, int t_max) {
    const auto ideal = ideal_evolution(p, basis_state(p, 0), t_max);
    auto rho = DensityMatrix::pure(basis_state(p, 0));
    std::vector<double> f{1.0};
    for (int t = 1; t <= t_max; ++t) {
        step_density(rho, seq, model);
        f.push_back(fidelity(ideal[static_cast<std::size_t>(t)], rho));
    }
    return fit_decay_rate(f).rate;
}

TEST(DecayFit, InsensitiveToKickBlockOrder) {
    const auto p = make_params(4, OneCell{0.5});
    const NoiseModel model(0.001);
    const auto seq = build_map_sequence(p);
    auto shuffled = seq;
    const std::size_t qft = 4 * 5 / 2;
    std::mt19937_64 rng(31);
    std::shuffle(shuffled.gates.begin() + qft, shuffled.gates.begin() + qft + 16, rng);
    ASSERT_NE(shuffled.gates, seq.gates);
    const double a = exact_decay_rate(p, seq, model, 50);
    const double b = exact_decay_rate(p, shuffled, model, 50);
    EXPECT_LT(std::abs(a - b) / a, 0.05) << a << " vs " << b;
}

}  // namespace
}  // namespace sawtooth

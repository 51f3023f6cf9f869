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

#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "sawtooth/noise.hpp"
#include "sawtooth/state.hpp"

namespace sawtooth {

struct TrajectoryEnsemble;
struct RunRecord;

/// Closed range of map iterations [first, last].
struct IterationWindow {
    int first = 0;
    int last = 0;

    bool contains(int t) const { return t >= first && t <= last; }
    int size() const { return last - first + 1; }
    bool operator==(const IterationWindow&) const = default;
};

/// W_n over physical momenta, stored in display order n = -N/2, ..., N/2-1.
class MomentumDistribution {
public:
    MomentumDistribution() = default;
    /// Builds from probabilities in storage (FFT-natural) order.
    static MomentumDistribution from_storage_order(std::span<const double> by_index);

    std::size_t dim() const { return weights_.size(); }
    int min_momentum() const { return -static_cast<int>(weights_.size() / 2); }
    double at(int momentum) const;
    std::span<const double> weights() const { return weights_; }
    double total() const;

    bool operator==(const MomentumDistribution&) const = default;

private:
    std::vector<double> weights_;
};

/// Nonnegative density on theta in [0, 2 pi) x momentum n in [-N/2, N/2),
/// row-major with theta as the slow index. Grid point (a, i) sits at
/// theta = 2 pi a / theta_bins, n = -N/2 + i * N / momentum_bins.
struct PhaseSpaceDistribution {
    std::size_t theta_bins = 0;
    std::size_t momentum_bins = 0;
    double momentum_min = 0.0;
    double momentum_max = 0.0;
    double theta_width = 0.0;     // packet or smoothing width in theta
    double momentum_width = 0.0;  // same, in units of n
    double raw_mass = 0.0;        // total before normalization
    std::vector<double> values;

    double at(std::size_t theta_index, std::size_t momentum_index) const {
        return values[theta_index * momentum_bins + momentum_index];
    }
    double theta_at(std::size_t a) const { return kTwoPi * static_cast<double>(a) / static_cast<double>(theta_bins); }
    double momentum_at(std::size_t i) const {
        return momentum_min + (momentum_max - momentum_min) * static_cast<double>(i) /
                                  static_cast<double>(momentum_bins);
    }
    double total() const;
    /// Sum over the grid of |n| times the mass.
    double mean_abs_momentum() const;
    /// Scales to unit mass, recording the previous total in raw_mass.
    void normalize();
};

double l1_distance(const PhaseSpaceDistribution& a, const PhaseSpaceDistribution& b);
double l1_distance(const MomentumDistribution& a, const MomentumDistribution& b);
/// Pearson correlation of the grid values.
double correlation(const PhaseSpaceDistribution& a, const PhaseSpaceDistribution& b);

MomentumDistribution momentum_distribution(const StateVector& psi);
MomentumDistribution momentum_distribution(const DensityMatrix& rho);
MomentumDistribution momentum_distribution(const TrajectoryEnsemble& ensemble);

/// <ideal|rho|ideal>.
double fidelity(const StateVector& ideal, const DensityMatrix& rho);
/// (1/M) sum_alpha |<ideal|psi_alpha>|^2.
double fidelity(const StateVector& ideal, const TrajectoryEnsemble& ensemble);

struct DecayFit {
    double rate = 0.0;
    double stderr_rate = 0.0;
    double intercept = 0.0;
    int points = 0;
};

inline constexpr IterationWindow kDefaultFitWindow{1, 50};
inline constexpr double kDefaultFitFloor = 0.05;

/// Least-squares slope of -ln f(t) against t over the window, using only
/// points with f > floor. `series[t]` is f at iteration t.
DecayFit fit_decay_rate(std::span<const double> series, IterationWindow window = kDefaultFitWindow,
                        double floor = kDefaultFitFloor);

/// Least-squares slope through the origin of y against x, with its standard error.
DecayFit fit_proportional(std::span<const double> x, std::span<const double> y);

struct FidelityTimescale {
    double iterations = 0.0;  // t_f = 1/(n_q n_g Gamma)
    double gates = 0.0;       // N_g = 1/(n_q Gamma)
};

/// Infinite for a noiseless model.
FidelityTimescale fidelity_timescale(const MapParams& params, const NoiseModel& model);

/// First t (linearly interpolated between iterations) with f(t) <= level,
/// or a negative value if the series never reaches it.
double crossing_time(std::span<const double> series, double level);

double ipr(const MomentumDistribution& w);
double ipr(const DensityMatrix& rho);
/// Uses the ensemble-averaged distribution, not per-member IPRs.
double ipr(const TrajectoryEnsemble& ensemble);

inline constexpr IterationWindow kDefaultIprWindow{30, 40};

/// Window-averaged IPR of `noisy` over window-averaged IPR of `ideal`.
double ipr_ratio(const RunRecord& noisy, const RunRecord& ideal, IterationWindow window = kDefaultIprWindow);

/// 0.5 * sum |eig(rho - sigma)|.
double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma);
double min_eigenvalue(const DensityMatrix& rho);

/// Grid resolution; zero selects the default 2N x N.
struct HusimiGrid {
    std::size_t theta_bins = 0;
    std::size_t momentum_bins = 0;
    bool operator==(const HusimiGrid&) const = default;
};

/// Momentum width of the minimum-uncertainty packet that is symmetric in
/// (theta, p = T n): 1/sqrt(2T), i.e. sqrt(N / 4 pi) on one classical cell.
double husimi_momentum_width(const MapParams& params);

/// Squared overlaps with periodized Gaussian packets on a fixed grid.
///
/// Each grid row of fixed n0 is evaluated with one FFT over theta. A single
/// projector may be shared by threads.
class HusimiProjector {
public:
    HusimiProjector(const MapParams& params, HusimiGrid grid);

    std::size_t theta_bins() const;
    std::size_t momentum_bins() const;
    std::size_t grid_size() const { return theta_bins() * momentum_bins(); }

    /// grid += weight * |<packet|psi>|^2
    void accumulate(const StateVector& psi, std::span<double> grid, double weight = 1.0) const;
    /// grid += weight * <packet|rho|packet>
    void accumulate(const DensityMatrix& rho, std::span<double> grid, double weight = 1.0) const;

    /// Wraps raw sums into a normalized distribution.
    PhaseSpaceDistribution finish(std::vector<double> sums) const;

private:
    struct Impl;
    std::shared_ptr<const Impl> impl_;
};

PhaseSpaceDistribution husimi(const StateVector& psi, const MapParams& params, HusimiGrid grid = {});
PhaseSpaceDistribution husimi(const TrajectoryEnsemble& ensemble, const MapParams& params,
                              HusimiGrid grid = {});
PhaseSpaceDistribution husimi(const DensityMatrix& rho, const MapParams& params, HusimiGrid grid = {});

}  // namespace sawtooth

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
#include <vector>

#include "sawtooth/observables.hpp"

namespace sawtooth {

/// Point of the rescaled classical map: theta in [0, 2 pi), p = T n in
/// [-pi L, pi L).
struct PhasePoint {
    double theta = 0.0;
    double momentum = 0.0;
};

/// p' = p + K (theta - pi), theta' = theta + p', both wrapped to the torus.
PhasePoint classical_step(PhasePoint point, double chaos, int cells);

struct ClassicalEnsemble {
    std::vector<PhasePoint> points;
    double chaos = 0.0;
    int cells = 1;

    void step();
};

/// Points evenly spaced in theta on the line p = p0, mirroring a momentum
/// eigenstate.
ClassicalEnsemble momentum_line(double chaos, int cells, double p0, std::size_t points);

struct ClassicalDensityRequest {
    double chaos = 0.0;
    int cells = 1;
    double initial_momentum = 0.0;  // p0
    std::size_t points = 100000;
    IterationWindow window{0, 9};
    double sigma_theta = 0.0;
    double sigma_momentum = 0.0;  // in units of p
    std::size_t theta_bins = 512;
    std::size_t momentum_bins = 256;
    /// Momentum axis unit: the grid reports n = p / hbar. Zero selects
    /// 2 pi L / momentum_bins, one grid row per quantum level.
    double hbar = 0.0;
};

/// Window-accumulated histogram of the evolved line, smoothed with a periodic
/// Gaussian and normalized. Cells are centred on the Husimi grid points, so
/// the result compares point-for-point with a Husimi grid of the same shape.
PhaseSpaceDistribution classical_density(const ClassicalDensityRequest& request);

/// Largest Lyapunov exponent from two trajectories started `separation`
/// apart, renormalized every step.
double lyapunov_two_point(PhasePoint start, double chaos, int cells, int steps, double separation = 1e-8);

}  // namespace sawtooth

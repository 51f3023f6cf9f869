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

#include "sawtooth/classical.hpp"

#include <cmath>
#include <stdexcept>

namespace sawtooth {
namespace {

double wrap(double x, double period) {
    double r = std::fmod(x, period);
    if (r < 0.0) r += period;
    return r >= period ? 0.0 : r;
}

double wrap_centered(double x, double period) { return wrap(x + 0.5 * period, period) - 0.5 * period; }

// Minimal displacement on the torus.
double torus_delta(double a, double b, double period) { return std::remainder(a - b, period); }

// Periodic Gaussian smoothing along one axis of a row-major grid.
void smooth_axis(std::vector<double>& grid, std::size_t rows, std::size_t cols, bool along_rows, double sigma_bins) {
    const std::size_t len = along_rows ? rows : cols;
    std::vector<double> kernel(len, 0.0);
    double total = 0.0;
    for (std::size_t d = 0; d < len; ++d) {
        const double base = std::remainder(static_cast<double>(d), static_cast<double>(len));
        double k = 0.0;
        for (int image = -3; image <= 3; ++image) {
            const double s = base + image * static_cast<double>(len);
            k += std::exp(-0.5 * s * s / (sigma_bins * sigma_bins));
        }
        kernel[d] = k;
        total += k;
    }
    for (auto& k : kernel) k /= total;

    std::vector<double> line(len), out(len);
    const std::size_t lines = along_rows ? cols : rows;
    for (std::size_t l = 0; l < lines; ++l) {
        for (std::size_t i = 0; i < len; ++i) line[i] = along_rows ? grid[i * cols + l] : grid[l * cols + i];
        for (std::size_t i = 0; i < len; ++i) {
            double acc = 0.0;
            for (std::size_t j = 0; j < len; ++j) acc += kernel[(i + len - j) % len] * line[j];
            out[i] = acc;
        }
        for (std::size_t i = 0; i < len; ++i) (along_rows ? grid[i * cols + l] : grid[l * cols + i]) = out[i];
    }
}

}  // namespace

PhasePoint classical_step(PhasePoint point, double chaos, int cells) {
    const double period = kTwoPi * cells;
    const double momentum = wrap_centered(point.momentum + chaos * (point.theta - kPi), period);
    const double theta = wrap(point.theta + momentum, kTwoPi);
    return {theta, momentum};
}

void ClassicalEnsemble::step() {
    for (auto& p : points) p = classical_step(p, chaos, cells);
}

ClassicalEnsemble momentum_line(double chaos, int cells, double p0, std::size_t points) {
    ClassicalEnsemble e;
    e.chaos = chaos;
    e.cells = cells;
    e.points.reserve(points);
    const double start = wrap_centered(p0, kTwoPi * cells);
    for (std::size_t i = 0; i < points; ++i) {
        e.points.push_back({kTwoPi * (static_cast<double>(i) + 0.5) / static_cast<double>(points), start});
    }
    return e;
}

PhaseSpaceDistribution classical_density(const ClassicalDensityRequest& request) {
    if (request.window.first < 0 || request.window.last < request.window.first) {
        throw std::invalid_argument("classical density window is empty");
    }
    if (request.points == 0) throw std::invalid_argument("classical density needs at least one point");
    if (request.theta_bins < 2 || request.momentum_bins < 2) throw std::invalid_argument("degenerate grid");
    if (request.cells < 1) throw std::invalid_argument("torus length L must be >= 1");

    const double period = kTwoPi * request.cells;
    const double theta_cell = kTwoPi / static_cast<double>(request.theta_bins);
    const double momentum_cell = period / static_cast<double>(request.momentum_bins);
    std::vector<double> grid(request.theta_bins * request.momentum_bins, 0.0);

    ClassicalEnsemble ensemble = momentum_line(request.chaos, request.cells, request.initial_momentum, request.points);
    for (int t = 0; t <= request.window.last; ++t) {
        if (t > 0) ensemble.step();
        if (t < request.window.first) continue;
        for (const auto& pt : ensemble.points) {
            const auto a = static_cast<std::size_t>(std::lround(pt.theta / theta_cell)) % request.theta_bins;
            const auto i = static_cast<std::size_t>(std::lround((pt.momentum + 0.5 * period) / momentum_cell)) %
                           request.momentum_bins;
            grid[a * request.momentum_bins + i] += 1.0;
        }
    }

    if (request.sigma_theta > 0.0) {
        smooth_axis(grid, request.theta_bins, request.momentum_bins, true, request.sigma_theta / theta_cell);
    }
    if (request.sigma_momentum > 0.0) {
        smooth_axis(grid, request.theta_bins, request.momentum_bins, false, request.sigma_momentum / momentum_cell);
    }

    const double hbar = request.hbar > 0.0 ? request.hbar : momentum_cell;
    PhaseSpaceDistribution out;
    out.theta_bins = request.theta_bins;
    out.momentum_bins = request.momentum_bins;
    out.momentum_min = -0.5 * period / hbar;
    out.momentum_max = 0.5 * period / hbar;
    out.theta_width = request.sigma_theta;
    out.momentum_width = request.sigma_momentum / hbar;
    out.values = std::move(grid);
    out.normalize();
    return out;
}

double lyapunov_two_point(PhasePoint start, double chaos, int cells, int steps, double separation) {
    if (steps < 1) throw std::invalid_argument("Lyapunov estimate needs at least one step");
    const double period = kTwoPi * cells;
    PhasePoint a = start;
    PhasePoint b{wrap(start.theta + separation, kTwoPi), start.momentum};
    double log_growth = 0.0;
    for (int s = 0; s < steps; ++s) {
        a = classical_step(a, chaos, cells);
        b = classical_step(b, chaos, cells);
        const double dt = torus_delta(b.theta, a.theta, kTwoPi);
        const double dp = torus_delta(b.momentum, a.momentum, period);
        const double dist = std::hypot(dt, dp);
        log_growth += std::log(dist / separation);
        const double scale = separation / dist;
        b = {wrap(a.theta + dt * scale, kTwoPi), wrap_centered(a.momentum + dp * scale, period)};
    }
    return log_growth / steps;
}

}  // namespace sawtooth

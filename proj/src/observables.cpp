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

#include "sawtooth/observables.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "fourier.hpp"
#include "sawtooth/circuit.hpp"
#include "sawtooth/engines.hpp"

namespace sawtooth {
namespace {

Eigen::MatrixXcd to_eigen(const DensityMatrix& rho) {
    const auto n = static_cast<Eigen::Index>(rho.dim());
    Eigen::MatrixXcd m(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) m(i, j) = rho(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
    }
    return m;
}

std::size_t wrap_index(long long value, std::size_t period) {
    const auto p = static_cast<long long>(period);
    return static_cast<std::size_t>(((value % p) + p) % p);
}

}  // namespace

MomentumDistribution MomentumDistribution::from_storage_order(std::span<const double> by_index) {
    MomentumDistribution w;
    const std::size_t dim = by_index.size();
    w.weights_.resize(dim);
    const std::size_t half = dim / 2;
    for (std::size_t j = 0; j < dim; ++j) w.weights_[(j + half) % dim] = by_index[j];
    return w;
}

double MomentumDistribution::at(int momentum) const {
    const auto half = static_cast<long long>(weights_.size() / 2);
    if (momentum < -half || momentum >= half) throw std::out_of_range("momentum outside distribution");
    return weights_[static_cast<std::size_t>(momentum + half)];
}

double MomentumDistribution::total() const { return std::accumulate(weights_.begin(), weights_.end(), 0.0); }

double PhaseSpaceDistribution::total() const { return std::accumulate(values.begin(), values.end(), 0.0); }

double PhaseSpaceDistribution::mean_abs_momentum() const {
    double sum = 0.0;
    for (std::size_t a = 0; a < theta_bins; ++a) {
        for (std::size_t i = 0; i < momentum_bins; ++i) sum += at(a, i) * std::abs(momentum_at(i));
    }
    return sum;
}

void PhaseSpaceDistribution::normalize() {
    const double mass = total();
    if (!(mass > 0.0)) throw std::runtime_error("phase-space distribution has no mass");
    raw_mass = mass;
    for (auto& v : values) v /= mass;
}

double l1_distance(const PhaseSpaceDistribution& a, const PhaseSpaceDistribution& b) {
    if (a.values.size() != b.values.size()) throw std::invalid_argument("grid shape mismatch");
    double sum = 0.0;
    for (std::size_t i = 0; i < a.values.size(); ++i) sum += std::abs(a.values[i] - b.values[i]);
    return sum;
}

double l1_distance(const MomentumDistribution& a, const MomentumDistribution& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("distribution dimension mismatch");
    double sum = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) sum += std::abs(a.weights()[i] - b.weights()[i]);
    return sum;
}

double correlation(const PhaseSpaceDistribution& a, const PhaseSpaceDistribution& b) {
    if (a.values.size() != b.values.size() || a.values.empty()) throw std::invalid_argument("grid shape mismatch");
    const double n = static_cast<double>(a.values.size());
    const double ma = a.total() / n;
    const double mb = b.total() / n;
    double sab = 0.0, saa = 0.0, sbb = 0.0;
    for (std::size_t i = 0; i < a.values.size(); ++i) {
        const double da = a.values[i] - ma;
        const double db = b.values[i] - mb;
        sab += da * db;
        saa += da * da;
        sbb += db * db;
    }
    return sab / std::sqrt(saa * sbb);
}

MomentumDistribution momentum_distribution(const StateVector& psi) {
    std::vector<double> p(psi.dim());
    for (std::size_t j = 0; j < psi.dim(); ++j) p[j] = std::norm(psi[j]);
    return MomentumDistribution::from_storage_order(p);
}

MomentumDistribution momentum_distribution(const DensityMatrix& rho) {
    std::vector<double> p(rho.dim());
    for (std::size_t j = 0; j < rho.dim(); ++j) p[j] = rho(j, j).real();
    return MomentumDistribution::from_storage_order(p);
}

MomentumDistribution momentum_distribution(const TrajectoryEnsemble& ensemble) {
    if (ensemble.members.empty()) throw std::invalid_argument("empty ensemble");
    const std::size_t dim = ensemble.members.front().dim();
    std::vector<double> p(dim, 0.0);
    for (const auto& psi : ensemble.members) {
        for (std::size_t j = 0; j < dim; ++j) p[j] += std::norm(psi[j]);
    }
    const double inv = 1.0 / static_cast<double>(ensemble.members.size());
    for (auto& v : p) v *= inv;
    return MomentumDistribution::from_storage_order(p);
}

double fidelity(const StateVector& ideal, const DensityMatrix& rho) {
    if (ideal.dim() != rho.dim()) throw std::invalid_argument("fidelity dimension mismatch");
    Complex sum = 0.0;
    for (std::size_t i = 0; i < rho.dim(); ++i) {
        Complex row = 0.0;
        const auto r = rho.row(i);
        for (std::size_t j = 0; j < rho.dim(); ++j) row += r[j] * ideal[j];
        sum += std::conj(ideal[i]) * row;
    }
    return sum.real();
}

double fidelity(const StateVector& ideal, const TrajectoryEnsemble& ensemble) {
    if (ensemble.members.empty()) throw std::invalid_argument("empty ensemble");
    double sum = 0.0;
    for (const auto& psi : ensemble.members) sum += std::norm(inner(ideal, psi));
    return sum / static_cast<double>(ensemble.members.size());
}

DecayFit fit_decay_rate(std::span<const double> series, IterationWindow window, double floor) {
    std::vector<double> xs, ys;
    for (int t = std::max(window.first, 0); t <= window.last && t < static_cast<int>(series.size()); ++t) {
        const double f = series[static_cast<std::size_t>(t)];
        if (f > floor) {
            xs.push_back(t);
            ys.push_back(-std::log(f));
        }
    }
    if (xs.size() < 5) throw std::invalid_argument("decay fit needs at least 5 points above the floor");
    const double n = static_cast<double>(xs.size());
    const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
    const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }
    DecayFit fit;
    fit.rate = sxy / sxx;
    fit.intercept = my - fit.rate * mx;
    fit.points = static_cast<int>(xs.size());
    double ssr = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double r = ys[i] - fit.intercept - fit.rate * xs[i];
        ssr += r * r;
    }
    fit.stderr_rate = std::sqrt(ssr / (n - 2.0) / sxx);
    return fit;
}

DecayFit fit_proportional(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("proportional fit needs matching points");
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    DecayFit fit;
    fit.rate = sxy / sxx;
    fit.points = static_cast<int>(x.size());
    double ssr = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) ssr += (y[i] - fit.rate * x[i]) * (y[i] - fit.rate * x[i]);
    fit.stderr_rate = std::sqrt(ssr / (static_cast<double>(x.size()) - 1.0) / sxx);
    return fit;
}

FidelityTimescale fidelity_timescale(const MapParams& params, const NoiseModel& model) {
    constexpr double inf = std::numeric_limits<double>::infinity();
    if (model.is_noiseless()) return {inf, inf};
    const double nq = params.qubits;
    const double ng = static_cast<double>(gates_per_iteration(params.qubits));
    return {1.0 / (nq * ng * model.gamma()), 1.0 / (nq * model.gamma())};
}

double crossing_time(std::span<const double> series, double level) {
    for (std::size_t t = 1; t < series.size(); ++t) {
        if (series[t] <= level) {
            const double before = series[t - 1];
            const double after = series[t];
            if (before == after) return static_cast<double>(t);
            return static_cast<double>(t - 1) + (before - level) / (before - after);
        }
    }
    return -1.0;
}

double ipr(const MomentumDistribution& w) {
    double sum = 0.0;
    for (double v : w.weights()) sum += v * v;
    return 1.0 / sum;
}

double ipr(const DensityMatrix& rho) { return ipr(momentum_distribution(rho)); }
double ipr(const TrajectoryEnsemble& ensemble) { return ipr(momentum_distribution(ensemble)); }

double ipr_ratio(const RunRecord& noisy, const RunRecord& ideal, IterationWindow window) {
    if (!(noisy.params == ideal.params)) throw std::invalid_argument("IPR ratio of runs with different map parameters");
    if (window.first < 0 || window.last > noisy.t_max || window.last > ideal.t_max || window.size() < 1) {
        throw std::invalid_argument("IPR window outside the recorded iterations");
    }
    double a = 0.0, b = 0.0;
    for (int t = window.first; t <= window.last; ++t) {
        a += noisy.snapshots[static_cast<std::size_t>(t)].ipr;
        b += ideal.snapshots[static_cast<std::size_t>(t)].ipr;
    }
    return a / b;
}

double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma) {
    if (rho.dim() != sigma.dim()) throw std::invalid_argument("trace distance dimension mismatch");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(to_eigen(rho) - to_eigen(sigma),
                                                            Eigen::EigenvaluesOnly);
    return 0.5 * solver.eigenvalues().cwiseAbs().sum();
}

double min_eigenvalue(const DensityMatrix& rho) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(to_eigen(rho), Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

double husimi_momentum_width(const MapParams& params) { return 1.0 / std::sqrt(2.0 * params.hbar); }

struct HusimiProjector::Impl {
    struct Tap {
        std::size_t index;  // storage index
        long long momentum;
        double weight;
    };

    MapParams params;
    std::size_t theta_bins;
    std::size_t momentum_bins;
    double width;
    std::vector<std::vector<Tap>> packets;  // one per momentum row
    detail::FourierTransform transform;

    Impl(const MapParams& p, HusimiGrid grid)
        : params(p),
          theta_bins(grid.theta_bins != 0 ? grid.theta_bins : 2 * p.dim),
          momentum_bins(grid.momentum_bins != 0 ? grid.momentum_bins : p.dim),
          width(husimi_momentum_width(p)),
          transform(theta_bins, detail::FourierTransform::Sign::positive) {
        const double dim = static_cast<double>(p.dim);
        packets.resize(momentum_bins);
        for (std::size_t row = 0; row < momentum_bins; ++row) {
            const double center = -dim / 2.0 + dim * static_cast<double>(row) / static_cast<double>(momentum_bins);
            std::vector<double> amp(p.dim);
            double norm2 = 0.0;
            for (std::size_t j = 0; j < p.dim; ++j) {
                const double n = momentum_of_index(j, p.dim);
                double d = std::remainder(n - center, dim);
                double a = 0.0;
                for (int image = -2; image <= 2; ++image) {
                    const double s = d + image * dim;
                    a += std::exp(-s * s / (4.0 * width * width));
                }
                amp[j] = a;
                norm2 += a * a;
            }
            const double inv = 1.0 / std::sqrt(norm2);
            const double cutoff = 1e-12 * *std::max_element(amp.begin(), amp.end()) * inv;
            for (std::size_t j = 0; j < p.dim; ++j) {
                const double w = amp[j] * inv;
                if (w > cutoff) packets[row].push_back({j, momentum_of_index(j, p.dim), w});
            }
        }
    }
};

HusimiProjector::HusimiProjector(const MapParams& params, HusimiGrid grid)
    : impl_(std::make_shared<const Impl>(params, grid)) {
    if (impl_->theta_bins < 2 || impl_->momentum_bins < 2) throw std::invalid_argument("degenerate Husimi grid");
}

std::size_t HusimiProjector::theta_bins() const { return impl_->theta_bins; }
std::size_t HusimiProjector::momentum_bins() const { return impl_->momentum_bins; }

void HusimiProjector::accumulate(const StateVector& psi, std::span<double> grid, double weight) const {
    const Impl& im = *impl_;
    if (psi.dim() != im.params.dim) throw std::invalid_argument("Husimi state dimension mismatch");
    if (grid.size() != grid_size()) throw std::invalid_argument("Husimi grid size mismatch");
    std::vector<Complex> buffer(im.theta_bins);
    for (std::size_t row = 0; row < im.momentum_bins; ++row) {
        std::fill(buffer.begin(), buffer.end(), Complex{});
        // <packet|psi> = sum_n g(n - n0) exp(+i n theta) psi_n
        for (const auto& tap : im.packets[row]) {
            buffer[wrap_index(tap.momentum, im.theta_bins)] += tap.weight * psi[tap.index];
        }
        im.transform(buffer);
        for (std::size_t a = 0; a < im.theta_bins; ++a) {
            grid[a * im.momentum_bins + row] += weight * std::norm(buffer[a]);
        }
    }
}

void HusimiProjector::accumulate(const DensityMatrix& rho, std::span<double> grid, double weight) const {
    const Impl& im = *impl_;
    if (rho.dim() != im.params.dim) throw std::invalid_argument("Husimi density dimension mismatch");
    if (grid.size() != grid_size()) throw std::invalid_argument("Husimi grid size mismatch");
    std::vector<Complex> buffer(im.theta_bins);
    for (std::size_t row = 0; row < im.momentum_bins; ++row) {
        std::fill(buffer.begin(), buffer.end(), Complex{});
        // <packet|rho|packet> = sum_{n,n'} g g' exp(i (n - n') theta) rho_{n n'}
        for (const auto& a : im.packets[row]) {
            for (const auto& b : im.packets[row]) {
                buffer[wrap_index(a.momentum - b.momentum, im.theta_bins)] +=
                    a.weight * b.weight * rho(a.index, b.index);
            }
        }
        im.transform(buffer);
        for (std::size_t t = 0; t < im.theta_bins; ++t) {
            grid[t * im.momentum_bins + row] += weight * buffer[t].real();
        }
    }
}

PhaseSpaceDistribution HusimiProjector::finish(std::vector<double> sums) const {
    const Impl& im = *impl_;
    if (sums.size() != grid_size()) throw std::invalid_argument("Husimi grid size mismatch");
    PhaseSpaceDistribution out;
    out.theta_bins = im.theta_bins;
    out.momentum_bins = im.momentum_bins;
    out.momentum_min = -static_cast<double>(im.params.dim) / 2.0;
    out.momentum_max = static_cast<double>(im.params.dim) / 2.0;
    out.momentum_width = im.width;
    out.theta_width = 1.0 / (2.0 * im.width);
    // Density-matrix sums can carry -1e-17 rounding on empty cells.
    for (auto& v : sums) v = std::max(v, 0.0);
    out.values = std::move(sums);
    out.normalize();
    return out;
}

PhaseSpaceDistribution husimi(const StateVector& psi, const MapParams& params, HusimiGrid grid) {
    HusimiProjector projector(params, grid);
    std::vector<double> sums(projector.grid_size(), 0.0);
    projector.accumulate(psi, sums);
    return projector.finish(std::move(sums));
}

PhaseSpaceDistribution husimi(const TrajectoryEnsemble& ensemble, const MapParams& params, HusimiGrid grid) {
    if (ensemble.members.empty()) throw std::invalid_argument("empty ensemble");
    HusimiProjector projector(params, grid);
    std::vector<double> sums(projector.grid_size(), 0.0);
    for (const auto& psi : ensemble.members) projector.accumulate(psi, sums);
    return projector.finish(std::move(sums));
}

PhaseSpaceDistribution husimi(const DensityMatrix& rho, const MapParams& params, HusimiGrid grid) {
    HusimiProjector projector(params, grid);
    std::vector<double> sums(projector.grid_size(), 0.0);
    projector.accumulate(rho, sums);
    return projector.finish(std::move(sums));
}

}  // namespace sawtooth

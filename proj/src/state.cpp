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

#include "sawtooth/state.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace sawtooth {
namespace {

constexpr int kMaxQubits = 24;

void validate_qubits(int qubits) {
    if (qubits < 2 || qubits > kMaxQubits) {
        throw std::invalid_argument("qubit count must be in [2, " + std::to_string(kMaxQubits) +
                                    "], got " + std::to_string(qubits));
    }
}

MapParams finish(int qubits, double kick, double hbar, double chaos, int cells) {
    if (!std::isfinite(hbar) || hbar <= 0.0) {
        throw std::invalid_argument("effective Planck constant T must be positive and finite");
    }
    MapParams p;
    p.qubits = qubits;
    p.dim = std::size_t{1} << qubits;
    p.kick = kick;
    p.hbar = hbar;
    p.chaos = chaos;
    p.cells = cells;
    return p;
}

}  // namespace

MapParams make_params(int qubits, OneCell mode) {
    validate_qubits(qubits);
    if (!std::isfinite(mode.chaos)) throw std::invalid_argument("chaos parameter K must be finite");
    if (mode.cells < 1) throw std::invalid_argument("torus length L must be >= 1");
    const double dim = std::ldexp(1.0, qubits);
    const double hbar = kTwoPi * mode.cells / dim;
    return finish(qubits, mode.chaos / hbar, hbar, mode.chaos, mode.cells);
}

MapParams make_params(int qubits, ExplicitKick mode) {
    validate_qubits(qubits);
    if (!std::isfinite(mode.kick) || !std::isfinite(mode.chaos)) {
        throw std::invalid_argument("kick k and chaos parameter K must be finite");
    }
    if (mode.kick == 0.0) throw std::invalid_argument("kick k must be nonzero to fix T = K/k");
    const double hbar = mode.chaos / mode.kick;
    const double dim = std::ldexp(1.0, qubits);
    // Number of classical cells covered by the N levels, rounded; informational only.
    const int cells = std::max(1, static_cast<int>(std::lround(dim * hbar / kTwoPi)));
    return finish(qubits, mode.kick, hbar, mode.chaos, cells);
}

int momentum_of_index(std::size_t index, std::size_t dim) {
    if (index >= dim) throw std::out_of_range("storage index out of range");
    const auto j = static_cast<long long>(index);
    const auto n = static_cast<long long>(dim);
    return static_cast<int>(index < dim / 2 ? j : j - n);
}

std::size_t index_of_momentum(int momentum, std::size_t dim) {
    const auto half = static_cast<long long>(dim / 2);
    if (momentum < -half || momentum >= half) {
        throw std::out_of_range("momentum " + std::to_string(momentum) + " outside [-" +
                                std::to_string(half) + ", " + std::to_string(half) + ")");
    }
    return momentum >= 0 ? static_cast<std::size_t>(momentum)
                         : static_cast<std::size_t>(momentum + 2 * half);
}

StateVector::StateVector(int qubits) : qubits_(qubits), amplitudes_(std::size_t{1} << qubits) {}

StateVector::StateVector(int qubits, std::vector<Complex> amplitudes)
    : qubits_(qubits), amplitudes_(std::move(amplitudes)) {
    if (amplitudes_.size() != (std::size_t{1} << qubits)) {
        throw std::invalid_argument("amplitude count does not match 2^qubits");
    }
}

double StateVector::norm_squared() const {
    double sum = 0.0;
    for (const auto& a : amplitudes_) sum += std::norm(a);
    return sum;
}

void StateVector::normalize() {
    const double n2 = norm_squared();
    if (!(n2 > 0.0)) throw std::runtime_error("cannot normalize a zero state");
    const double scale = 1.0 / std::sqrt(n2);
    for (auto& a : amplitudes_) a *= scale;
}

StateVector basis_state(const MapParams& params, int momentum) {
    StateVector psi(params.qubits);
    psi[index_of_momentum(momentum, params.dim)] = 1.0;
    return psi;
}

Complex inner(const StateVector& a, const StateVector& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("inner product of states with different dimension");
    Complex sum = 0.0;
    for (std::size_t j = 0; j < a.dim(); ++j) sum += std::conj(a[j]) * b[j];
    return sum;
}

DensityMatrix::DensityMatrix(int qubits)
    : qubits_(qubits), dim_(std::size_t{1} << qubits), entries_(dim_ * dim_) {}

DensityMatrix DensityMatrix::pure(const StateVector& psi) {
    DensityMatrix rho(psi.qubits());
    rho.add_projector(psi, 1.0);
    return rho;
}

DensityMatrix DensityMatrix::maximally_mixed(int qubits) {
    DensityMatrix rho(qubits);
    const double w = 1.0 / static_cast<double>(rho.dim_);
    for (std::size_t i = 0; i < rho.dim_; ++i) rho(i, i) = w;
    return rho;
}

Complex DensityMatrix::trace() const {
    Complex t = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
    return t;
}

double DensityMatrix::purity() const {
    // Tr(rho^2) = sum_ij rho_ij rho_ji = sum_ij |rho_ij|^2 for Hermitian rho.
    double sum = 0.0;
    for (const auto& e : entries_) sum += std::norm(e);
    return sum;
}

double DensityMatrix::hermiticity_error() const {
    double worst = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) {
        for (std::size_t j = i; j < dim_; ++j) {
            worst = std::max(worst, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
        }
    }
    return worst;
}

void DensityMatrix::add_projector(const StateVector& psi, double weight) {
    if (psi.dim() != dim_) throw std::invalid_argument("projector dimension mismatch");
    for (std::size_t i = 0; i < dim_; ++i) {
        const Complex left = weight * psi[i];
        Complex* out = entries_.data() + i * dim_;
        for (std::size_t j = 0; j < dim_; ++j) out[j] += left * std::conj(psi[j]);
    }
}

}  // namespace sawtooth

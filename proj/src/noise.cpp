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

#include "sawtooth/noise.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace sawtooth {
namespace {

void validate_qubit(int qubit, int qubits) {
    if (qubit < 0 || qubit >= qubits) {
        throw std::out_of_range("damping qubit " + std::to_string(qubit) + " out of range");
    }
}

}  // namespace

NoiseModel::NoiseModel(double gamma) : gamma_(gamma) {
    if (!std::isfinite(gamma) || gamma < 0.0) {
        throw std::invalid_argument("damping rate gamma must be finite and >= 0");
    }
    p_jump_ = -std::expm1(-gamma);
}

void apply_channel_exact(DensityMatrix& rho, int qubit, const NoiseModel& model) {
    validate_qubit(qubit, rho.qubits());
    if (model.is_noiseless()) return;
    const double p = model.jump_probability();
    const double keep = std::sqrt(1.0 - p);
    const std::size_t dim = rho.dim();
    const std::size_t mask = std::size_t{1} << qubit;
    for (std::size_t i = 0; i < dim; ++i) {
        Complex* row = rho.row(i).data();
        if ((i & mask) == 0) {
            const Complex* upper = rho.row(i | mask).data();
            for (std::size_t j = 0; j < dim; ++j) {
                if ((j & mask) == 0) {
                    row[j] += p * upper[j | mask];
                } else {
                    row[j] *= keep;
                }
            }
        } else {
            for (std::size_t j = 0; j < dim; ++j) row[j] *= ((j & mask) == 0) ? keep : 1.0 - p;
        }
    }
}

bool stochastic_step(StateVector& state, int qubit, const NoiseModel& model, RandomStream& rng) {
    validate_qubit(qubit, state.qubits());
    if (model.is_noiseless()) return false;
    const double p = model.jump_probability();
    const std::size_t dim = state.dim();
    const std::size_t mask = std::size_t{1} << qubit;
    auto amps = state.amplitudes();

    double upper = 0.0;
    for (std::size_t base = mask; base < dim; base += 2 * mask) {
        for (std::size_t i = base; i < base + mask; ++i) upper += std::norm(amps[i]);
    }
    const double jump_probability = p * upper;
    const double draw = rng.uniform();

    if (draw < jump_probability) {
        const double scale = 1.0 / std::sqrt(upper);
        for (std::size_t base = 0; base < dim; base += 2 * mask) {
            for (std::size_t i = base; i < base + mask; ++i) {
                amps[i] = amps[i | mask] * scale;
                amps[i | mask] = 0.0;
            }
        }
        return true;
    }
    const double down_scale = 1.0 / std::sqrt(1.0 - jump_probability);
    const double up_scale = std::sqrt(1.0 - p) * down_scale;
    for (std::size_t base = 0; base < dim; base += 2 * mask) {
        for (std::size_t i = base; i < base + mask; ++i) {
            amps[i] *= down_scale;
            amps[i | mask] *= up_scale;
        }
    }
    return false;
}

void apply_noise_after_gate(DensityMatrix& rho, const NoiseModel& model) {
    if (model.is_noiseless()) return;
    for (int q = 0; q < rho.qubits(); ++q) apply_channel_exact(rho, q, model);
}

int apply_noise_after_gate(StateVector& state, const NoiseModel& model, RandomStream& rng) {
    if (model.is_noiseless()) return 0;
    int jumps = 0;
    for (int q = 0; q < state.qubits(); ++q) jumps += stochastic_step(state, q, model, rng) ? 1 : 0;
    return jumps;
}

}  // namespace sawtooth

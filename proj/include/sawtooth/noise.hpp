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

#include "sawtooth/random.hpp"
#include "sawtooth/state.hpp"

namespace sawtooth {

/// Per-gate amplitude damping, identical on every qubit. The damping
/// probability per gate interval is p = 1 - exp(-gamma), the exact
/// integral of the damping master equation with no Hamiltonian.
class NoiseModel {
public:
    NoiseModel() = default;
    explicit NoiseModel(double gamma);

    double gamma() const { return gamma_; }
    double jump_probability() const { return p_jump_; }
    bool is_noiseless() const { return p_jump_ == 0.0; }

    bool operator==(const NoiseModel&) const = default;

private:
    double gamma_ = 0.0;
    double p_jump_ = 0.0;
};

/// Kraus pair K0 = diag(1, sqrt(1-p)), K1 = sqrt(p) |0><1| on one qubit.
void apply_channel_exact(DensityMatrix& rho, int qubit, const NoiseModel& model);

/// Jump/no-jump unraveling of the same channel. Draws exactly one uniform
/// number when the model is noisy. Returns true when a jump occurred.
bool stochastic_step(StateVector& state, int qubit, const NoiseModel& model, RandomStream& rng);

/// Damping of qubits 0..n_q-1 in ascending order, applied after a gate.
void apply_noise_after_gate(DensityMatrix& rho, const NoiseModel& model);
/// Returns the number of jumps.
int apply_noise_after_gate(StateVector& state, const NoiseModel& model, RandomStream& rng);

}  // namespace sawtooth

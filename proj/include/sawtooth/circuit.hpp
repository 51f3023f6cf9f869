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
#include <vector>

#include "sawtooth/state.hpp"

namespace sawtooth {

enum class GateKind { hadamard, controlled_phase, phase, swap };

/// Elementary gate. Phase gates multiply the |1> component of `target` by
/// exp(i*angle); controlled-phase gates multiply the |11> component of
/// (control, target).
struct Gate {
    GateKind kind = GateKind::hadamard;
    int target = 0;
    int control = -1;
    double angle = 0.0;

    static Gate hadamard(int qubit) { return {GateKind::hadamard, qubit, -1, 0.0}; }
    static Gate phase(int qubit, double angle) { return {GateKind::phase, qubit, -1, angle}; }
    static Gate controlled_phase(int control, int target, double angle) {
        return {GateKind::controlled_phase, target, control, angle};
    }
    static Gate swap(int a, int b) { return {GateKind::swap, b, a, 0.0}; }

    bool is_diagonal() const { return kind == GateKind::phase || kind == GateKind::controlled_phase; }
    Gate inverse() const {
        Gate g = *this;
        g.angle = -angle;
        return g;
    }

    bool operator==(const Gate&) const = default;
};

/// Gates making up one map iteration, in application order, plus the global
/// phase that turns their product into the exact map propagator.
struct GateSequence {
    int qubits = 0;
    std::vector<Gate> gates;
    double global_phase = 0.0;
};

/// n_g = 3 n_q^2 + n_q.
std::size_t gates_per_iteration(int qubits);

/// QFT ladder without the final qubit reversal: n_q Hadamards and
/// n_q(n_q-1)/2 controlled phases. Output index x holds Fourier index
/// reverse_bits(x).
std::vector<Gate> fourier_block(int qubits);
std::vector<Gate> inverse_fourier_block(int qubits);

std::size_t reverse_bits(std::size_t value, int bits);

/// One sawtooth iteration as QFT, kick phases, inverse QFT, free-rotation
/// phases; both diagonal blocks hold exactly n_q^2 gates.
GateSequence build_map_sequence(const MapParams& params);

void apply_gate(StateVector& state, const Gate& gate);
/// Applies every gate, then the global phase.
void apply_sequence(StateVector& state, const GateSequence& sequence);

/// rho -> G rho G^dagger.
void conjugate_by_gate(DensityMatrix& rho, const Gate& gate);

/// FFT split-operator propagator exp(-i T n^2/2) exp(-i k V(theta)) with
/// V(theta) = -(theta - pi)^2/2 on theta_l = 2 pi l / N.
class SplitOperatorMap {
public:
    explicit SplitOperatorMap(const MapParams& params);

    const MapParams& params() const;
    void apply(StateVector& state) const;

private:
    struct Impl;
    std::shared_ptr<const Impl> impl_;
};

StateVector apply_map_oracle(StateVector state, const MapParams& params);

}  // namespace sawtooth

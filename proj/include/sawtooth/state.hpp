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

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace sawtooth {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

/// Parameters of the quantum sawtooth map on N = 2^qubits momentum levels.
///
/// `hbar` is the effective Planck constant T, `chaos` is K = k*T and `cells`
/// is the torus length L in classical cells.
struct MapParams {
    int qubits = 0;
    std::size_t dim = 0;
    double kick = 0.0;
    double hbar = 0.0;
    double chaos = 0.0;
    int cells = 1;

    bool operator==(const MapParams&) const = default;
};

/// T = 2*pi*L/N, k = K/T.
struct OneCell {
    double chaos;
    int cells = 1;
};

/// Kick strength and chaos parameter given separately; T = K/k.
struct ExplicitKick {
    double kick;
    double chaos;
};

MapParams make_params(int qubits, OneCell mode);
MapParams make_params(int qubits, ExplicitKick mode);

// Storage index j holds physical momentum n = j for j < N/2 and n = j - N
// otherwise. Qubit m is bit m of j.
int momentum_of_index(std::size_t index, std::size_t dim);
std::size_t index_of_momentum(int momentum, std::size_t dim);

class StateVector {
public:
    StateVector() = default;
    explicit StateVector(int qubits);
    StateVector(int qubits, std::vector<Complex> amplitudes);

    int qubits() const { return qubits_; }
    std::size_t dim() const { return amplitudes_.size(); }

    Complex& operator[](std::size_t j) { return amplitudes_[j]; }
    const Complex& operator[](std::size_t j) const { return amplitudes_[j]; }

    std::span<Complex> amplitudes() { return amplitudes_; }
    std::span<const Complex> amplitudes() const { return amplitudes_; }

    double norm_squared() const;
    void normalize();

    bool operator==(const StateVector&) const = default;

private:
    int qubits_ = 0;
    std::vector<Complex> amplitudes_;
};

/// Momentum eigenstate |n> with n in [-N/2, N/2).
StateVector basis_state(const MapParams& params, int momentum);

/// <a|b>, conjugating a.
Complex inner(const StateVector& a, const StateVector& b);

/// Dense N x N density matrix stored row-major.
class DensityMatrix {
public:
    DensityMatrix() = default;
    explicit DensityMatrix(int qubits);

    static DensityMatrix pure(const StateVector& psi);
    static DensityMatrix maximally_mixed(int qubits);

    int qubits() const { return qubits_; }
    std::size_t dim() const { return dim_; }

    Complex& operator()(std::size_t row, std::size_t col) { return entries_[row * dim_ + col]; }
    const Complex& operator()(std::size_t row, std::size_t col) const {
        return entries_[row * dim_ + col];
    }

    std::span<Complex> entries() { return entries_; }
    std::span<const Complex> entries() const { return entries_; }
    std::span<Complex> row(std::size_t r) { return {entries_.data() + r * dim_, dim_}; }
    std::span<const Complex> row(std::size_t r) const { return {entries_.data() + r * dim_, dim_}; }

    Complex trace() const;
    double purity() const;
    /// max |rho - rho^dagger|
    double hermiticity_error() const;

    /// rho += weight * |psi><psi|
    void add_projector(const StateVector& psi, double weight);

    bool operator==(const DensityMatrix&) const = default;

private:
    int qubits_ = 0;
    std::size_t dim_ = 0;
    std::vector<Complex> entries_;
};

}  // namespace sawtooth

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

#include "sawtooth/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "fourier.hpp"

namespace sawtooth {
namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

Complex unit_phase(double angle) { return std::polar(1.0, std::remainder(angle, kTwoPi)); }

void validate_gate(const Gate& g, int qubits) {
    auto bad = [&](int q) { return q < 0 || q >= qubits; };
    if (bad(g.target)) {
        throw std::out_of_range("gate target qubit " + std::to_string(g.target) + " out of range");
    }
    if (g.kind == GateKind::controlled_phase || g.kind == GateKind::swap) {
        if (bad(g.control)) {
            throw std::out_of_range("gate control qubit " + std::to_string(g.control) + " out of range");
        }
        if (g.control == g.target) throw std::invalid_argument("two-qubit gate on a single qubit");
    }
}

// Gate action on a strided vector; stride > 1 is used for matrix columns.
void apply_to_vector(Complex* data, std::size_t dim, const Gate& g) {
    const std::size_t tmask = std::size_t{1} << g.target;
    switch (g.kind) {
        case GateKind::hadamard:
            for (std::size_t base = 0; base < dim; base += 2 * tmask) {
                for (std::size_t i = base; i < base + tmask; ++i) {
                    const Complex a = data[i];
                    const Complex b = data[i | tmask];
                    data[i] = (a + b) * kInvSqrt2;
                    data[i | tmask] = (a - b) * kInvSqrt2;
                }
            }
            break;
        case GateKind::phase: {
            const Complex f = unit_phase(g.angle);
            for (std::size_t base = tmask; base < dim; base += 2 * tmask) {
                for (std::size_t i = base; i < base + tmask; ++i) data[i] *= f;
            }
            break;
        }
        case GateKind::controlled_phase: {
            const Complex f = unit_phase(g.angle);
            const std::size_t both = tmask | (std::size_t{1} << g.control);
            for (std::size_t i = 0; i < dim; ++i) {
                if ((i & both) == both) data[i] *= f;
            }
            break;
        }
        case GateKind::swap: {
            const std::size_t cmask = std::size_t{1} << g.control;
            for (std::size_t i = 0; i < dim; ++i) {
                if ((i & tmask) != 0 && (i & cmask) == 0) std::swap(data[i], data[(i ^ tmask) | cmask]);
            }
            break;
        }
    }
}

// Diagonal of a phase gate as a per-index factor.
std::vector<Complex> diagonal_of(const Gate& g, std::size_t dim) {
    std::size_t mask = std::size_t{1} << g.target;
    if (g.kind == GateKind::controlled_phase) mask |= std::size_t{1} << g.control;
    const Complex f = unit_phase(g.angle);
    std::vector<Complex> d(dim, Complex{1.0, 0.0});
    for (std::size_t i = 0; i < dim; ++i) {
        if ((i & mask) == mask) d[i] = f;
    }
    return d;
}

// Appends n_q^2 diagonal gates realizing exp(i * sum_{a,b} coeff(a,b) x_a x_b)
// where x_a is the bit of Fourier/momentum weight 2^a living on qubit_of(a).
// Ordered pairs (a,b) and (b,a) each carry half of the symmetric cross term.
template <class Coeff, class QubitOf>
void append_quadratic_block(std::vector<Gate>& out, int qubits, Coeff coeff, QubitOf qubit_of) {
    for (int a = 0; a < qubits; ++a) {
        for (int b = 0; b < qubits; ++b) {
            const double angle = std::remainder(coeff(a, b), kTwoPi);
            if (a == b) {
                out.push_back(Gate::phase(qubit_of(a), angle));
            } else {
                out.push_back(Gate::controlled_phase(qubit_of(a), qubit_of(b), angle));
            }
        }
    }
}

}  // namespace

std::size_t gates_per_iteration(int qubits) {
    const auto q = static_cast<std::size_t>(qubits);
    return 3 * q * q + q;
}

std::size_t reverse_bits(std::size_t value, int bits) {
    std::size_t out = 0;
    for (int b = 0; b < bits; ++b) {
        out = (out << 1) | ((value >> b) & 1U);
    }
    return out;
}

std::vector<Gate> fourier_block(int qubits) {
    std::vector<Gate> gates;
    gates.reserve(static_cast<std::size_t>(qubits * (qubits + 1) / 2));
    for (int q = qubits - 1; q >= 0; --q) {
        gates.push_back(Gate::hadamard(q));
        for (int c = q - 1; c >= 0; --c) {
            gates.push_back(Gate::controlled_phase(c, q, kPi / std::ldexp(1.0, q - c)));
        }
    }
    return gates;
}

std::vector<Gate> inverse_fourier_block(int qubits) {
    std::vector<Gate> forward = fourier_block(qubits);
    std::vector<Gate> gates;
    gates.reserve(forward.size());
    for (auto it = forward.rbegin(); it != forward.rend(); ++it) gates.push_back(it->inverse());
    return gates;
}

GateSequence build_map_sequence(const MapParams& params) {
    const int n = params.qubits;
    const double dim = static_cast<double>(params.dim);
    GateSequence seq;
    seq.qubits = n;
    seq.gates.reserve(gates_per_iteration(n));

    const auto qft = fourier_block(n);
    seq.gates.insert(seq.gates.end(), qft.begin(), qft.end());

    // exp(-i k V(theta_l)) = exp(i alpha (l - N/2)^2), alpha = k (2 pi / N)^2 / 2.
    // After the unswapped QFT the Fourier bit a sits on qubit n-1-a.
    const double alpha = 0.5 * params.kick * (kTwoPi / dim) * (kTwoPi / dim);
    append_quadratic_block(
        seq.gates, n,
        [&](int a, int b) {
            const double wa = std::ldexp(1.0, a);
            const double wb = std::ldexp(1.0, b);
            return a == b ? alpha * (wa * wa - dim * wa) : alpha * wa * wb;
        },
        [&](int a) { return n - 1 - a; });
    seq.global_phase = std::remainder(alpha * dim * dim / 4.0, kTwoPi);

    const auto iqft = inverse_fourier_block(n);
    seq.gates.insert(seq.gates.end(), iqft.begin(), iqft.end());

    // exp(-i T n^2 / 2) with two's-complement momentum n = sum_a w_a x_a.
    auto weight = [&](int a) { return a == n - 1 ? -std::ldexp(1.0, a) : std::ldexp(1.0, a); };
    append_quadratic_block(
        seq.gates, n, [&](int a, int b) { return -0.5 * params.hbar * weight(a) * weight(b); },
        [](int a) { return a; });

    return seq;
}

void apply_gate(StateVector& state, const Gate& gate) {
    validate_gate(gate, state.qubits());
    apply_to_vector(state.amplitudes().data(), state.dim(), gate);
}

void apply_sequence(StateVector& state, const GateSequence& sequence) {
    if (sequence.qubits != state.qubits()) throw std::invalid_argument("sequence/state qubit mismatch");
    for (const auto& g : sequence.gates) apply_gate(state, g);
    const Complex f = unit_phase(sequence.global_phase);
    for (auto& a : state.amplitudes()) a *= f;
}

void conjugate_by_gate(DensityMatrix& rho, const Gate& gate) {
    validate_gate(gate, rho.qubits());
    const std::size_t dim = rho.dim();
    if (gate.is_diagonal()) {
        const auto d = diagonal_of(gate, dim);
        for (std::size_t i = 0; i < dim; ++i) {
            Complex* row = rho.row(i).data();
            for (std::size_t j = 0; j < dim; ++j) row[j] *= d[i] * std::conj(d[j]);
        }
        return;
    }
    // Hadamard and swap are real, so the right action uses the same gate.
    const std::size_t tmask = std::size_t{1} << gate.target;
    if (gate.kind == GateKind::hadamard) {
        for (std::size_t i = 0; i < dim; ++i) {
            if ((i & tmask) != 0) continue;
            Complex* r0 = rho.row(i).data();
            Complex* r1 = rho.row(i | tmask).data();
            for (std::size_t j = 0; j < dim; ++j) {
                const Complex a = r0[j];
                const Complex b = r1[j];
                r0[j] = (a + b) * kInvSqrt2;
                r1[j] = (a - b) * kInvSqrt2;
            }
        }
    } else {
        const std::size_t cmask = std::size_t{1} << gate.control;
        for (std::size_t i = 0; i < dim; ++i) {
            if ((i & tmask) != 0 && (i & cmask) == 0) {
                auto a = rho.row(i);
                auto b = rho.row((i ^ tmask) | cmask);
                std::swap_ranges(a.begin(), a.end(), b.begin());
            }
        }
    }
    for (std::size_t i = 0; i < dim; ++i) apply_to_vector(rho.row(i).data(), dim, gate);
}

struct SplitOperatorMap::Impl {
    MapParams params;
    std::vector<Complex> kick;      // includes the 1/N of the transform pair
    std::vector<Complex> rotation;  // by storage index
    detail::FourierTransform to_angle;
    detail::FourierTransform to_momentum;

    explicit Impl(const MapParams& p)
        : params(p),
          kick(p.dim),
          rotation(p.dim),
          to_angle(p.dim, detail::FourierTransform::Sign::positive),
          to_momentum(p.dim, detail::FourierTransform::Sign::negative) {
        const double dim = static_cast<double>(p.dim);
        for (std::size_t l = 0; l < p.dim; ++l) {
            const double theta = kTwoPi * static_cast<double>(l) / dim;
            const double potential = -0.5 * (theta - kPi) * (theta - kPi);
            kick[l] = unit_phase(-p.kick * potential) / dim;
        }
        for (std::size_t j = 0; j < p.dim; ++j) {
            const double n = momentum_of_index(j, p.dim);
            rotation[j] = unit_phase(-0.5 * p.hbar * n * n);
        }
    }
};

SplitOperatorMap::SplitOperatorMap(const MapParams& params) : impl_(std::make_shared<const Impl>(params)) {}

const MapParams& SplitOperatorMap::params() const { return impl_->params; }

void SplitOperatorMap::apply(StateVector& state) const {
    if (state.dim() != impl_->params.dim) throw std::invalid_argument("state/map dimension mismatch");
    auto amps = state.amplitudes();
    impl_->to_angle(amps);
    for (std::size_t l = 0; l < amps.size(); ++l) amps[l] *= impl_->kick[l];
    impl_->to_momentum(amps);
    for (std::size_t j = 0; j < amps.size(); ++j) amps[j] *= impl_->rotation[j];
}

StateVector apply_map_oracle(StateVector state, const MapParams& params) {
    SplitOperatorMap(params).apply(state);
    return state;
}

}  // namespace sawtooth

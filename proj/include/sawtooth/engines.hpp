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
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sawtooth/circuit.hpp"
#include "sawtooth/noise.hpp"
#include "sawtooth/observables.hpp"
#include "sawtooth/state.hpp"

namespace sawtooth {

/// M trajectories; member alpha was driven by
/// RandomStream::for_trajectory(master_seed, alpha).
struct TrajectoryEnsemble {
    std::vector<StateVector> members;
    std::uint64_t master_seed = 0;
};

struct RunOptions {
    /// Windows over which Husimi distributions are averaged.
    std::vector<IterationWindow> husimi_windows;
    HusimiGrid husimi_grid;
    /// Keep the final density matrix or ensemble in the record.
    bool keep_final = false;
    /// Worker threads for trajectories; 0 uses every hardware thread.
    unsigned threads = 0;
    /// Largest Hilbert dimension the exact engine accepts.
    std::size_t exact_dim_cap = 256;
};

/// Observables after t complete map iterations.
struct Snapshot {
    int t = 0;
    MomentumDistribution momentum;
    double fidelity = 0.0;  // NaN when no ideal reference exists
    double ipr = 0.0;
};

struct RunRecord {
    MapParams params;
    NoiseModel noise;
    bool exact = false;
    std::size_t trajectories = 0;
    std::uint64_t master_seed = 0;
    int t_max = 0;
    std::vector<Snapshot> snapshots;  // t = 0..t_max
    std::vector<IterationWindow> husimi_windows;
    std::vector<PhaseSpaceDistribution> husimi;  // one per window
    std::optional<DensityMatrix> final_density;
    std::optional<TrajectoryEnsemble> final_ensemble;

    /// "exact" or "M=<count>".
    std::string label() const;
    std::vector<double> fidelity_series() const;
    std::vector<double> ipr_series() const;
};

/// Gates act by conjugation, each followed by exact damping on every qubit.
/// Fidelity is recorded when `reference` is given.
RunRecord run_exact(const MapParams& params, const NoiseModel& noise, const DensityMatrix& rho0, int t_max,
                    const RunOptions& options = {}, const std::optional<StateVector>& reference = std::nullopt);
RunRecord run_exact(const MapParams& params, const NoiseModel& noise, const StateVector& psi0, int t_max,
                    const RunOptions& options = {});

/// Monte Carlo unraveling. Results are bit-identical for a given seed
/// whatever the thread count: per-trajectory streams come from
/// (master_seed, index) and sums run in ascending trajectory index.
RunRecord run_trajectories(const MapParams& params, const NoiseModel& noise, const StateVector& psi0, int t_max,
                           std::size_t trajectories, std::uint64_t master_seed, const RunOptions& options = {});

/// Advances one trajectory by a full map iteration.
void step_trajectory(StateVector& psi, const GateSequence& sequence, const NoiseModel& noise, RandomStream& rng);
/// Same for the density matrix.
void step_density(DensityMatrix& rho, const GateSequence& sequence, const NoiseModel& noise);

/// (1/M) sum_alpha |psi_alpha><psi_alpha|.
DensityMatrix reconstruct_density(const TrajectoryEnsemble& ensemble);

/// Oracle evolution psi0, U psi0, ..., U^t_max psi0.
std::vector<StateVector> ideal_evolution(const MapParams& params, const StateVector& psi0, int t_max);

}  // namespace sawtooth

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

#include "sawtooth/engines.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace sawtooth {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

unsigned resolve_threads(unsigned requested) {
    if (requested != 0) return requested;
    return std::max(1U, std::thread::hardware_concurrency());
}

// Runs body(i) for i in [begin, end) on up to `threads` workers.
template <class Body>
void parallel_for(std::size_t begin, std::size_t end, unsigned threads, Body&& body) {
    const std::size_t count = end - begin;
    const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(threads, count));
    if (workers <= 1) {
        for (std::size_t i = begin; i < end; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{begin};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < end; i = next++) {
                try {
                    body(i);
                } catch (...) {
                    std::lock_guard lock(failure_mutex);
                    if (!failure) failure = std::current_exception();
                }
            }
        });
    }
    pool.clear();
    if (failure) std::rethrow_exception(failure);
}

// Everything one trajectory contributes to the ensemble averages.
struct TrajectoryTrace {
    std::vector<double> probabilities;  // (t_max + 1) x N, storage order
    std::vector<double> overlaps;       // |<ideal(t)|psi(t)>|^2
    std::vector<std::vector<double>> husimi;
    StateVector final_state;
};

void validate_run(const MapParams& params, int t_max, std::size_t dim) {
    if (t_max < 0) throw std::invalid_argument("t_max must be >= 0");
    if (dim != params.dim) throw std::invalid_argument("initial state dimension does not match the map");
}

void validate_windows(const std::vector<IterationWindow>& windows, int t_max) {
    for (const auto& w : windows) {
        if (w.first < 0 || w.last < w.first || w.last > t_max) {
            throw std::invalid_argument("Husimi window outside [0, t_max]");
        }
    }
}

Snapshot make_snapshot(int t, std::span<const double> probabilities, double fid) {
    Snapshot s;
    s.t = t;
    s.momentum = MomentumDistribution::from_storage_order(probabilities);
    s.fidelity = fid;
    s.ipr = ipr(s.momentum);
    return s;
}

}  // namespace

std::string RunRecord::label() const { return exact ? "exact" : "M=" + std::to_string(trajectories); }

std::vector<double> RunRecord::fidelity_series() const {
    std::vector<double> out;
    out.reserve(snapshots.size());
    for (const auto& s : snapshots) out.push_back(s.fidelity);
    return out;
}

std::vector<double> RunRecord::ipr_series() const {
    std::vector<double> out;
    out.reserve(snapshots.size());
    for (const auto& s : snapshots) out.push_back(s.ipr);
    return out;
}

void step_trajectory(StateVector& psi, const GateSequence& sequence, const NoiseModel& noise, RandomStream& rng) {
    for (const auto& g : sequence.gates) {
        apply_gate(psi, g);
        apply_noise_after_gate(psi, noise, rng);
    }
    const Complex phase = std::polar(1.0, sequence.global_phase);
    for (auto& a : psi.amplitudes()) a *= phase;
}

void step_density(DensityMatrix& rho, const GateSequence& sequence, const NoiseModel& noise) {
    for (const auto& g : sequence.gates) {
        conjugate_by_gate(rho, g);
        apply_noise_after_gate(rho, noise);
    }
}

std::vector<StateVector> ideal_evolution(const MapParams& params, const StateVector& psi0, int t_max) {
    const SplitOperatorMap oracle(params);
    std::vector<StateVector> out;
    out.reserve(static_cast<std::size_t>(t_max) + 1);
    out.push_back(psi0);
    for (int t = 1; t <= t_max; ++t) {
        StateVector next = out.back();
        oracle.apply(next);
        out.push_back(std::move(next));
    }
    return out;
}

RunRecord run_exact(const MapParams& params, const NoiseModel& noise, const DensityMatrix& rho0, int t_max,
                    const RunOptions& options, const std::optional<StateVector>& reference) {
    validate_run(params, t_max, rho0.dim());
    validate_windows(options.husimi_windows, t_max);
    if (params.dim > options.exact_dim_cap) {
        throw std::invalid_argument("exact engine limited to N <= " + std::to_string(options.exact_dim_cap) +
                                    " (n_q = " + std::to_string(params.qubits) + " requested)");
    }
    if (rho0.hermiticity_error() > 1e-8 || std::abs(rho0.trace() - 1.0) > 1e-8) {
        throw std::invalid_argument("initial density matrix must be Hermitian with unit trace");
    }

    RunRecord record;
    record.params = params;
    record.noise = noise;
    record.exact = true;
    record.t_max = t_max;
    record.husimi_windows = options.husimi_windows;

    std::vector<StateVector> ideal;
    if (reference) ideal = ideal_evolution(params, *reference, t_max);

    std::optional<HusimiProjector> projector;
    std::vector<std::vector<double>> husimi_sums;
    if (!options.husimi_windows.empty()) {
        projector.emplace(params, options.husimi_grid);
        husimi_sums.assign(options.husimi_windows.size(), std::vector<double>(projector->grid_size(), 0.0));
    }

    const GateSequence sequence = build_map_sequence(params);
    DensityMatrix rho = rho0;
    std::vector<double> diag(params.dim);
    for (int t = 0; t <= t_max; ++t) {
        if (t > 0) step_density(rho, sequence, noise);
        for (std::size_t j = 0; j < params.dim; ++j) diag[j] = rho(j, j).real();
        const double fid = reference ? fidelity(ideal[static_cast<std::size_t>(t)], rho) : kNaN;
        record.snapshots.push_back(make_snapshot(t, diag, fid));
        for (std::size_t w = 0; w < options.husimi_windows.size(); ++w) {
            if (options.husimi_windows[w].contains(t)) projector->accumulate(rho, husimi_sums[w]);
        }
    }
    for (auto& sums : husimi_sums) record.husimi.push_back(projector->finish(std::move(sums)));
    if (options.keep_final) record.final_density = std::move(rho);
    return record;
}

RunRecord run_exact(const MapParams& params, const NoiseModel& noise, const StateVector& psi0, int t_max,
                    const RunOptions& options) {
    return run_exact(params, noise, DensityMatrix::pure(psi0), t_max, options, psi0);
}

RunRecord run_trajectories(const MapParams& params, const NoiseModel& noise, const StateVector& psi0, int t_max,
                           std::size_t trajectories, std::uint64_t master_seed, const RunOptions& options) {
    validate_run(params, t_max, psi0.dim());
    validate_windows(options.husimi_windows, t_max);
    if (trajectories == 0) throw std::invalid_argument("trajectory count M must be >= 1");
    if (std::abs(psi0.norm_squared() - 1.0) > 1e-10) throw std::invalid_argument("initial state must be normalized");

    const std::size_t dim = params.dim;
    const auto steps = static_cast<std::size_t>(t_max) + 1;
    const GateSequence sequence = build_map_sequence(params);
    const std::vector<StateVector> ideal = ideal_evolution(params, psi0, t_max);
    std::optional<HusimiProjector> projector;
    if (!options.husimi_windows.empty()) projector.emplace(params, options.husimi_grid);
    const std::size_t windows = options.husimi_windows.size();

    auto run_one = [&](std::size_t index) {
        TrajectoryTrace trace;
        trace.probabilities.resize(steps * dim);
        trace.overlaps.resize(steps);
        if (projector) trace.husimi.assign(windows, std::vector<double>(projector->grid_size(), 0.0));
        RandomStream rng = RandomStream::for_trajectory(master_seed, index);
        StateVector psi = psi0;
        for (std::size_t t = 0; t < steps; ++t) {
            if (t > 0) step_trajectory(psi, sequence, noise, rng);
            double* probs = trace.probabilities.data() + t * dim;
            for (std::size_t j = 0; j < dim; ++j) probs[j] = std::norm(psi[j]);
            trace.overlaps[t] = std::norm(inner(ideal[t], psi));
            for (std::size_t w = 0; w < windows; ++w) {
                if (options.husimi_windows[w].contains(static_cast<int>(t))) {
                    projector->accumulate(psi, trace.husimi[w]);
                }
            }
        }
        trace.final_state = std::move(psi);
        return trace;
    };

    std::vector<double> probability_sum(steps * dim, 0.0);
    std::vector<double> overlap_sum(steps, 0.0);
    std::vector<std::vector<double>> husimi_sum(windows);
    if (projector) {
        for (auto& h : husimi_sum) h.assign(projector->grid_size(), 0.0);
    }
    TrajectoryEnsemble ensemble;
    ensemble.master_seed = master_seed;

    // Batches bound memory; accumulation stays in ascending trajectory order,
    // so the sums do not depend on the batch size or the thread count.
    const unsigned threads = resolve_threads(options.threads);
    const std::size_t batch = std::max<std::size_t>(16, 4 * static_cast<std::size_t>(threads));
    std::vector<TrajectoryTrace> traces;
    for (std::size_t first = 0; first < trajectories; first += batch) {
        const std::size_t last = std::min(trajectories, first + batch);
        traces.assign(last - first, TrajectoryTrace{});
        parallel_for(first, last, threads, [&](std::size_t i) { traces[i - first] = run_one(i); });
        for (auto& trace : traces) {
            for (std::size_t i = 0; i < probability_sum.size(); ++i) probability_sum[i] += trace.probabilities[i];
            for (std::size_t t = 0; t < steps; ++t) overlap_sum[t] += trace.overlaps[t];
            for (std::size_t w = 0; w < windows; ++w) {
                for (std::size_t i = 0; i < husimi_sum[w].size(); ++i) husimi_sum[w][i] += trace.husimi[w][i];
            }
            if (options.keep_final) ensemble.members.push_back(std::move(trace.final_state));
        }
    }

    RunRecord record;
    record.params = params;
    record.noise = noise;
    record.exact = false;
    record.trajectories = trajectories;
    record.master_seed = master_seed;
    record.t_max = t_max;
    record.husimi_windows = options.husimi_windows;
    const double inv = 1.0 / static_cast<double>(trajectories);
    std::vector<double> probs(dim);
    for (std::size_t t = 0; t < steps; ++t) {
        for (std::size_t j = 0; j < dim; ++j) probs[j] = probability_sum[t * dim + j] * inv;
        record.snapshots.push_back(make_snapshot(static_cast<int>(t), probs, overlap_sum[t] * inv));
    }
    for (auto& sums : husimi_sum) record.husimi.push_back(projector->finish(std::move(sums)));
    if (options.keep_final) record.final_ensemble = std::move(ensemble);
    return record;
}

DensityMatrix reconstruct_density(const TrajectoryEnsemble& ensemble) {
    if (ensemble.members.empty()) throw std::invalid_argument("cannot reconstruct a density from an empty ensemble");
    DensityMatrix rho(ensemble.members.front().qubits());
    const double w = 1.0 / static_cast<double>(ensemble.members.size());
    for (const auto& psi : ensemble.members) rho.add_projector(psi, w);
    return rho;
}

}  // namespace sawtooth

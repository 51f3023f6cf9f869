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
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "sawtooth/engines.hpp"
#include "sawtooth/observables.hpp"
#include "sawtooth/state.hpp"

namespace sawtooth {

/// Raised for malformed configuration text; the message names the key.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class EngineKind { exact, trajectories, classical };
enum class ParamMode { one_cell, explicit_kick };

struct ObservableSet {
    bool momentum = true;
    bool fidelity = true;
    bool ipr = true;
    bool husimi = false;
    bool operator==(const ObservableSet&) const = default;
};

/// Initial momentum eigenstate, either an integer n or a fraction of N.
struct InitialMomentum {
    bool fraction = false;
    double value = 0.0;
    bool operator==(const InitialMomentum&) const = default;
};

/// One experiment, parsed from flat `key = value` text.
struct ExperimentConfig {
    std::string name = "run";
    EngineKind engine = EngineKind::trajectories;
    int qubits = 6;
    ParamMode mode = ParamMode::one_cell;
    double chaos = 1.0;  // K
    double kick = 0.0;   // k, explicit_k mode only
    int cells = 1;       // L, one_cell mode only
    double gamma = 0.0;
    std::size_t trajectories = 50;
    int t_max = 30;
    std::uint64_t seed = 1;
    unsigned threads = 0;
    InitialMomentum initial;
    ObservableSet observables;
    std::vector<int> momentum_times;  // empty: t_max only
    std::vector<IterationWindow> husimi_windows;
    std::size_t husimi_theta_bins = 0;
    std::size_t husimi_momentum_bins = 0;
    IterationWindow fit_window = kDefaultFitWindow;
    std::size_t classical_points = 100000;
    int exact_cap_qubits = 8;

    bool operator==(const ExperimentConfig&) const = default;
};

/// Evaluates a numeric expression: decimals, pi, sqrt2, sqrt3, sqrt(...),
/// + - * / and parentheses.
double evaluate_expression(std::string_view text);

ExperimentConfig parse_config(std::string_view text);
/// Canonical text; parse_config(to_config_text(c)) == c.
std::string to_config_text(const ExperimentConfig& config);

/// Rebuilds the config from the `# key = value` header of an output file.
ExperimentConfig parse_output_header(std::string_view file_contents);

MapParams resolve_params(const ExperimentConfig& config);
int resolve_initial_momentum(const ExperimentConfig& config, const MapParams& params);
RunOptions resolve_run_options(const ExperimentConfig& config);

std::string version_string();

}  // namespace sawtooth

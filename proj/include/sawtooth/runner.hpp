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

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "sawtooth/config.hpp"
#include "sawtooth/engines.hpp"

namespace sawtooth {

enum class PresetSummary { none, decay_table, ipr_ratio_table };

struct Preset {
    std::string name;
    std::string figure;
    std::string description;
    std::vector<ExperimentConfig> runs;
    PresetSummary summary = PresetSummary::none;
};

std::vector<Preset> list_presets();
/// Throws std::invalid_argument for an unknown name.
Preset find_preset(const std::string& name);
/// Catalogue text: every preset with the full parameter set of each run.
std::string describe_presets();

struct RunOutcome {
    std::optional<RunRecord> record;
    std::optional<std::vector<PhaseSpaceDistribution>> classical;
    std::vector<std::filesystem::path> files;
    std::string summary;
};

/// Executes one config and writes its outputs under out_dir.
RunOutcome run_config(const ExperimentConfig& config, const std::filesystem::path& out_dir);

struct PresetOutcome {
    std::vector<RunOutcome> runs;
    std::vector<std::filesystem::path> files;
    std::string summary;
};

struct PresetOverrides {
    std::optional<std::uint64_t> seed;
    std::optional<unsigned> threads;
};

PresetOutcome run_preset(const Preset& preset, const std::filesystem::path& out_dir,
                         const PresetOverrides& overrides = {});

/// SAWTOOTH_OUT_DIR if set, otherwise the working directory.
std::filesystem::path default_output_dir();

// Output formats.
std::string format_series_csv(const ExperimentConfig& config, const RunRecord& record);
std::string format_momentum_csv(const ExperimentConfig& config, const RunRecord& record);
/// Text header terminated by "end-header\n", then row-major little-endian
/// float64 values.
std::string format_grid(const ExperimentConfig& config, const PhaseSpaceDistribution& grid,
                        const IterationWindow& window);

struct GridFile {
    ExperimentConfig config;
    IterationWindow window;
    PhaseSpaceDistribution grid;
};
GridFile parse_grid(std::string_view contents);

}  // namespace sawtooth

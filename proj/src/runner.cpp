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

#include "sawtooth/runner.hpp"

#include <array>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "sawtooth/circuit.hpp"
#include "sawtooth/classical.hpp"

namespace sawtooth {
namespace {

std::string num(double v) {
    std::array<char, 64> buf{};
    const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), ptr);
}

std::string header_block(const ExperimentConfig& config) {
    std::ostringstream out;
    out << "# version: " << version_string() << '\n';
    std::istringstream lines(to_config_text(config));
    for (std::string line; std::getline(lines, line);) out << "# " << line << '\n';
    return out.str();
}

std::string window_tag(const IterationWindow& w) { return std::to_string(w.first) + "-" + std::to_string(w.last); }

void write_file(const std::filesystem::path& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) throw std::runtime_error("failed writing " + path.string());
}

std::string trim_copy(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return std::string(s.substr(first, last - first + 1));
}

RunOutcome run_classical(const ExperimentConfig& config, const MapParams& params, const std::filesystem::path& out_dir) {
    RunOutcome outcome;
    const int n0 = resolve_initial_momentum(config, params);
    const double width = husimi_momentum_width(params);
    std::vector<PhaseSpaceDistribution> grids;
    std::ostringstream summary;
    summary << config.name << " engine=classical K=" << num(params.chaos) << " L=" << params.cells;
    for (const auto& window : config.husimi_windows) {
        ClassicalDensityRequest request;
        request.chaos = params.chaos;
        request.cells = params.cells;
        request.initial_momentum = params.hbar * n0;
        request.points = config.classical_points;
        request.window = window;
        request.sigma_theta = 1.0 / (2.0 * width);
        request.sigma_momentum = params.hbar * width;
        request.theta_bins = config.husimi_theta_bins != 0 ? config.husimi_theta_bins : 2 * params.dim;
        request.momentum_bins = config.husimi_momentum_bins != 0 ? config.husimi_momentum_bins : params.dim;
        request.hbar = params.hbar;
        grids.push_back(classical_density(request));
        const auto path = out_dir / (config.name + ".classical." + window_tag(window) + ".bin");
        write_file(path, format_grid(config, grids.back(), window));
        outcome.files.push_back(path);
        summary << " <|n|>[" << window_tag(window) << "]=" << num(grids.back().mean_abs_momentum());
    }
    outcome.classical = std::move(grids);
    outcome.summary = summary.str();
    return outcome;
}

}  // namespace

std::filesystem::path default_output_dir() {
    if (const char* env = std::getenv("SAWTOOTH_OUT_DIR"); env != nullptr && *env != '\0') return env;
    return std::filesystem::current_path();
}

std::string format_series_csv(const ExperimentConfig& config, const RunRecord& record) {
    std::ostringstream out;
    out << header_block(config) << "t,fidelity,ipr\n";
    for (const auto& s : record.snapshots) out << s.t << ',' << num(s.fidelity) << ',' << num(s.ipr) << '\n';
    return out.str();
}

std::string format_momentum_csv(const ExperimentConfig& config, const RunRecord& record) {
    std::ostringstream out;
    out << header_block(config) << "t,n,W\n";
    std::vector<int> times = config.momentum_times;
    if (times.empty()) times.push_back(record.t_max);
    for (int t : times) {
        const auto& w = record.snapshots.at(static_cast<std::size_t>(t)).momentum;
        const int lo = w.min_momentum();
        for (std::size_t i = 0; i < w.dim(); ++i) {
            out << t << ',' << lo + static_cast<int>(i) << ',' << num(w.weights()[i]) << '\n';
        }
    }
    return out.str();
}

std::string format_grid(const ExperimentConfig& config, const PhaseSpaceDistribution& grid,
                        const IterationWindow& window) {
    std::ostringstream out;
    out << "SAWTOOTH-GRID 1\n" << header_block(config);
    out << "grid.window = " << window_tag(window) << '\n';
    out << "grid.theta_bins = " << grid.theta_bins << '\n';
    out << "grid.momentum_bins = " << grid.momentum_bins << '\n';
    out << "grid.theta_range = 0 " << num(kTwoPi) << '\n';
    out << "grid.momentum_range = " << num(grid.momentum_min) << ' ' << num(grid.momentum_max) << '\n';
    out << "grid.theta_width = " << num(grid.theta_width) << '\n';
    out << "grid.momentum_width = " << num(grid.momentum_width) << '\n';
    out << "grid.raw_mass = " << num(grid.raw_mass) << '\n';
    out << "grid.layout = row-major theta-major float64 little-endian\n";
    out << "end-header\n";
    std::string bytes(grid.values.size() * 8, '\0');
    for (std::size_t i = 0; i < grid.values.size(); ++i) {
        const auto bits = std::bit_cast<std::uint64_t>(grid.values[i]);
        for (int b = 0; b < 8; ++b) bytes[i * 8 + static_cast<std::size_t>(b)] = static_cast<char>((bits >> (8 * b)) & 0xFFU);
    }
    out << bytes;
    return out.str();
}

GridFile parse_grid(std::string_view contents) {
    constexpr std::string_view marker = "end-header\n";
    const auto end = contents.find(marker);
    if (!contents.starts_with("SAWTOOTH-GRID 1\n") || end == std::string_view::npos) {
        throw std::runtime_error("not a SAWTOOTH-GRID file");
    }
    const auto header = contents.substr(0, end);
    std::map<std::string, std::string> fields;
    std::size_t start = 0;
    while (start < header.size()) {
        auto stop = header.find('\n', start);
        if (stop == std::string_view::npos) stop = header.size();
        const auto line = header.substr(start, stop - start);
        if (line.starts_with("grid.")) {
            const auto eq = line.find('=');
            fields[trim_copy(line.substr(0, eq))] = trim_copy(line.substr(eq + 1));
        }
        start = stop + 1;
    }
    GridFile file;
    file.config = parse_output_header(contents.substr(0, end + marker.size()));
    auto field = [&](const std::string& key) {
        const auto it = fields.find(key);
        if (it == fields.end()) throw std::runtime_error("grid header lacks " + key);
        return it->second;
    };
    const std::string window = field("grid.window");
    const auto dash = window.find('-');
    file.window = {std::stoi(window.substr(0, dash)), std::stoi(window.substr(dash + 1))};
    auto& g = file.grid;
    g.theta_bins = std::stoull(field("grid.theta_bins"));
    g.momentum_bins = std::stoull(field("grid.momentum_bins"));
    std::istringstream range(field("grid.momentum_range"));
    range >> g.momentum_min >> g.momentum_max;
    g.theta_width = std::stod(field("grid.theta_width"));
    g.momentum_width = std::stod(field("grid.momentum_width"));
    g.raw_mass = std::stod(field("grid.raw_mass"));
    const auto data = contents.substr(end + marker.size());
    const std::size_t count = g.theta_bins * g.momentum_bins;
    if (data.size() != count * 8) throw std::runtime_error("grid payload size mismatch");
    g.values.resize(count);
    for (std::size_t i = 0; i < count; ++i) {
        std::uint64_t bits = 0;
        for (int b = 0; b < 8; ++b) {
            bits |= static_cast<std::uint64_t>(static_cast<unsigned char>(data[i * 8 + static_cast<std::size_t>(b)]))
                    << (8 * b);
        }
        g.values[i] = std::bit_cast<double>(bits);
    }
    return file;
}

RunOutcome run_config(const ExperimentConfig& config, const std::filesystem::path& out_dir) {
    // Round-trip through the parser so programmatic configs get the same checks.
    const ExperimentConfig checked = parse_config(to_config_text(config));
    std::filesystem::create_directories(out_dir);
    const MapParams params = resolve_params(checked);
    if (checked.engine == EngineKind::classical) return run_classical(checked, params, out_dir);

    const StateVector psi0 = basis_state(params, resolve_initial_momentum(checked, params));
    const NoiseModel noise(checked.gamma);
    const RunOptions options = resolve_run_options(checked);
    RunRecord record = checked.engine == EngineKind::exact
                           ? run_exact(params, noise, psi0, checked.t_max, options)
                           : run_trajectories(params, noise, psi0, checked.t_max, checked.trajectories, checked.seed,
                                              options);

    RunOutcome outcome;
    std::ostringstream summary;
    summary << checked.name << " engine=" << (record.exact ? "exact" : "trajectories") << " " << record.label()
            << " n_q=" << params.qubits << " K=" << num(params.chaos) << " k=" << num(params.kick)
            << " gamma=" << num(checked.gamma) << " t_max=" << checked.t_max;
    if (checked.observables.fidelity || checked.observables.ipr) {
        const auto path = out_dir / (checked.name + ".series.csv");
        write_file(path, format_series_csv(checked, record));
        outcome.files.push_back(path);
        summary << " final_ipr=" << num(record.snapshots.back().ipr)
                << " final_fidelity=" << num(record.snapshots.back().fidelity);
    }
    if (checked.observables.fidelity && checked.gamma > 0.0) {
        try {
            const auto fit = fit_decay_rate(record.fidelity_series(), checked.fit_window);
            summary << " gamma_fit=" << num(fit.rate) << " stderr=" << num(fit.stderr_rate);
        } catch (const std::invalid_argument&) {
            summary << " gamma_fit=n/a";
        }
    }
    if (checked.observables.momentum) {
        const auto path = out_dir / (checked.name + ".momentum.csv");
        write_file(path, format_momentum_csv(checked, record));
        outcome.files.push_back(path);
    }
    for (std::size_t w = 0; w < record.husimi.size(); ++w) {
        const auto& window = record.husimi_windows[w];
        const auto path = out_dir / (checked.name + ".husimi." + window_tag(window) + ".bin");
        write_file(path, format_grid(checked, record.husimi[w], window));
        outcome.files.push_back(path);
        summary << " <|n|>[" << window_tag(window) << "]=" << num(record.husimi[w].mean_abs_momentum());
    }
    outcome.summary = summary.str();
    outcome.record = std::move(record);
    return outcome;
}

PresetOutcome run_preset(const Preset& preset, const std::filesystem::path& out_dir, const PresetOverrides& overrides) {
    PresetOutcome result;
    std::ostringstream summary;
    for (ExperimentConfig config : preset.runs) {
        if (overrides.seed) config.seed = *overrides.seed;
        if (overrides.threads) config.threads = *overrides.threads;
        RunOutcome run = run_config(config, out_dir);
        summary << run.summary << '\n';
        result.files.insert(result.files.end(), run.files.begin(), run.files.end());
        result.runs.push_back(std::move(run));
    }

    if (preset.summary == PresetSummary::decay_table) {
        std::ostringstream table;
        table << "# version: " << version_string() << "\n# preset = " << preset.name << '\n';
        table << "n_q,K,gamma,gamma_eff,gamma_fit,stderr\n";
        std::vector<double> x, y;
        for (std::size_t i = 0; i < preset.runs.size(); ++i) {
            const auto& cfg = preset.runs[i];
            const auto& rec = *result.runs[i].record;
            const double ng = static_cast<double>(gates_per_iteration(cfg.qubits));
            const double eff = cfg.qubits * ng * cfg.gamma;
            const auto fit = fit_decay_rate(rec.fidelity_series(), cfg.fit_window);
            table << cfg.qubits << ',' << num(cfg.chaos) << ',' << num(cfg.gamma) << ',' << num(eff) << ','
                  << num(fit.rate) << ',' << num(fit.stderr_rate) << '\n';
            x.push_back(eff);
            y.push_back(fit.rate);
        }
        const auto slope = fit_proportional(x, y);
        summary << preset.name << " decay constant C=" << num(slope.rate) << " stderr=" << num(slope.stderr_rate)
                << '\n';
        const auto path = out_dir / (preset.name + ".decay.csv");
        write_file(path, table.str());
        result.files.push_back(path);
    } else if (preset.summary == PresetSummary::ipr_ratio_table) {
        std::ostringstream table;
        table << "# version: " << version_string() << "\n# preset = " << preset.name << '\n';
        table << "n_q,gamma,ipr_ratio\n";
        for (std::size_t i = 0; i < preset.runs.size(); ++i) {
            const auto& cfg = preset.runs[i];
            if (cfg.gamma == 0.0) continue;
            for (std::size_t j = 0; j < preset.runs.size(); ++j) {
                if (preset.runs[j].gamma == 0.0 && preset.runs[j].qubits == cfg.qubits) {
                    const double ratio = ipr_ratio(*result.runs[i].record, *result.runs[j].record);
                    table << cfg.qubits << ',' << num(cfg.gamma) << ',' << num(ratio) << '\n';
                    summary << preset.name << " n_q=" << cfg.qubits << " gamma=" << num(cfg.gamma)
                            << " xi/xi0=" << num(ratio) << '\n';
                }
            }
        }
        const auto path = out_dir / (preset.name + ".ipr_ratio.csv");
        write_file(path, table.str());
        result.files.push_back(path);
    }
    result.summary = summary.str();
    return result;
}

}  // namespace sawtooth

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

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "sawtooth/config.hpp"
#include "sawtooth/runner.hpp"

namespace sawtooth {
namespace {

namespace fs = std::filesystem;

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
}

fs::path scratch_dir(const std::string& tag) {
    const auto dir = fs::temp_directory_path() / ("sawtooth_config_test_" + tag);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

TEST(Expression, Arithmetic) {
    EXPECT_DOUBLE_EQ(evaluate_expression("1.5"), 1.5);
    EXPECT_DOUBLE_EQ(evaluate_expression("sqrt(2)"), std::sqrt(2.0));
    EXPECT_DOUBLE_EQ(evaluate_expression("sqrt3"), std::sqrt(3.0));
    EXPECT_DOUBLE_EQ(evaluate_expression("2*pi/64"), 2 * kPi / 64);
    EXPECT_DOUBLE_EQ(evaluate_expression("-0.5"), -0.5);
    EXPECT_DOUBLE_EQ(evaluate_expression("(1 + 2) * 3 - 4 / 8"), 8.5);
    EXPECT_DOUBLE_EQ(evaluate_expression("1e-3"), 1e-3);
    EXPECT_THROW(evaluate_expression("2 *"), ConfigError);
    EXPECT_THROW(evaluate_expression("tau"), ConfigError);
    EXPECT_THROW(evaluate_expression("(1"), ConfigError);
}

TEST(ParseConfig, Defaults) {
    const auto c = parse_config("");
    EXPECT_EQ(c, ExperimentConfig{});
}

TEST(ParseConfig, FullExample) {
    const auto c = parse_config(R"(
# localization run
name = demo
engine = exact
qubits = 6
mode = explicit_k
kick = sqrt(3)
chaos = sqrt(2)   # K
gamma = 0.001
t_max = 30
observables = momentum, ipr
momentum_times = 10, 30
husimi_windows = 0-9, 20-29
)");
    EXPECT_EQ(c.name, "demo");
    EXPECT_EQ(c.engine, EngineKind::exact);
    EXPECT_EQ(c.mode, ParamMode::explicit_kick);
    EXPECT_DOUBLE_EQ(c.kick, std::sqrt(3.0));
    EXPECT_DOUBLE_EQ(c.chaos, std::sqrt(2.0));
    EXPECT_FALSE(c.observables.fidelity);
    EXPECT_TRUE(c.observables.ipr);
    EXPECT_EQ(c.momentum_times, (std::vector<int>{10, 30}));
    ASSERT_EQ(c.husimi_windows.size(), 2u);
    EXPECT_EQ(c.husimi_windows[1], (IterationWindow{20, 29}));
    const auto p = resolve_params(c);
    EXPECT_NEAR(p.hbar, std::sqrt(2.0 / 3.0), 1e-15);
}

TEST(ParseConfig, UnknownKeyIsNamed) {
    try {
        parse_config("qubits = 4\ngama = 0.1\n");
        FAIL() << "accepted unknown key";
    } catch (const ConfigError& e) {
        EXPECT_NE(std::string(e.what()).find("gama"), std::string::npos) << e.what();
        EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos) << e.what();
    }
}

TEST(ParseConfig, FailsClosed) {
    EXPECT_THROW(parse_config("qubits = 4\nqubits = 5\n"), ConfigError);
    EXPECT_THROW(parse_config("qubits 4\n"), ConfigError);
    EXPECT_THROW(parse_config("qubits = 4.5\n"), ConfigError);
    EXPECT_THROW(parse_config("gamma =\n"), ConfigError);
    EXPECT_THROW(parse_config("gamma = -0.1\n"), ConfigError);
    EXPECT_THROW(parse_config("engine = magic\n"), ConfigError);
    EXPECT_THROW(parse_config("kick = 2\n"), ConfigError);
    EXPECT_THROW(parse_config("mode = explicit_k\nchaos = 1\n"), ConfigError);
    EXPECT_THROW(parse_config("mode = explicit_k\nkick = 1\ncells = 2\n"), ConfigError);
    EXPECT_THROW(parse_config("initial_n = 3\ninitial_fraction = 0.1\n"), ConfigError);
    EXPECT_THROW(parse_config("engine = exact\nqubits = 9\n"), ConfigError);
    EXPECT_THROW(parse_config("t_max = 10\nhusimi_windows = 5-20\n"), ConfigError);
    EXPECT_THROW(parse_config("observables = momentum, husimi\n"), ConfigError);
    EXPECT_THROW(parse_config("engine = classical\n"), ConfigError);
    EXPECT_THROW(parse_config("observables = entropy\n"), ConfigError);
    EXPECT_THROW(parse_config("trajectories = 0\n"), ConfigError);
}

TEST(ParseConfig, InitialMomentum) {
    const auto c = parse_config("qubits = 8\ninitial_fraction = 0.1\n");
    EXPECT_EQ(resolve_initial_momentum(c, resolve_params(c)), 26);
    const auto d = parse_config("qubits = 8\ninitial_n = -3\n");
    EXPECT_EQ(resolve_initial_momentum(d, resolve_params(d)), -3);
    const auto e = parse_config("qubits = 4\ninitial_n = 8\n");
    EXPECT_THROW(resolve_initial_momentum(e, resolve_params(e)), ConfigError);
}

TEST(ParseConfig, RoundTripsThroughText) {
    ExperimentConfig c;
    c.name = "round";
    c.engine = EngineKind::exact;
    c.qubits = 5;
    c.mode = ParamMode::explicit_kick;
    c.kick = std::sqrt(3.0);
    c.chaos = std::sqrt(2.0) / 7.0;
    c.gamma = 2.5e-4;
    c.t_max = 12;
    c.seed = 123456789012345ull;
    c.initial = {true, -0.125};
    c.observables = {true, false, true, true};
    c.momentum_times = {0, 5, 12};
    c.husimi_windows = {{0, 3}, {10, 12}};
    c.husimi_theta_bins = 40;
    c.fit_window = {2, 9};
    const auto text = to_config_text(c);
    EXPECT_EQ(parse_config(text), c);
    EXPECT_EQ(to_config_text(parse_config(text)), text);
}

TEST(Runner, OutputsAreByteIdenticalAndSelfDescribing) {
    const auto cfg = parse_config(R"(
name = small
qubits = 4
chaos = 0.5
gamma = 0.002
trajectories = 12
t_max = 6
seed = 3
observables = momentum, fidelity, ipr, husimi
momentum_times = 3, 6
husimi_windows = 1-4
)");
    const auto a = run_config(cfg, scratch_dir("a"));
    const auto b = run_config(cfg, scratch_dir("b"));
    ASSERT_EQ(a.files.size(), b.files.size());
    ASSERT_GE(a.files.size(), 3u);
    for (std::size_t i = 0; i < a.files.size(); ++i) {
        EXPECT_EQ(a.files[i].filename(), b.files[i].filename());
        EXPECT_EQ(slurp(a.files[i]), slurp(b.files[i])) << a.files[i];
    }
    for (const auto& f : a.files) {
        const auto contents = slurp(f);
        if (f.extension() == ".csv") {
            EXPECT_EQ(parse_output_header(contents), cfg) << f;
            EXPECT_NE(contents.find(version_string()), std::string::npos);
        } else {
            const auto grid = parse_grid(contents);
            EXPECT_EQ(grid.config, cfg);
            EXPECT_EQ(grid.window, (IterationWindow{1, 4}));
            EXPECT_EQ(grid.grid.values, a.record->husimi[0].values);
        }
    }
}

TEST(Runner, GridFormatRoundTrip) {
    ExperimentConfig cfg;
    cfg.name = "grid";
    PhaseSpaceDistribution g;
    g.theta_bins = 3;
    g.momentum_bins = 2;
    g.momentum_min = -1.0;
    g.momentum_max = 1.0;
    g.theta_width = 0.25;
    g.momentum_width = 2.0;
    g.raw_mass = 7.5;
    g.values = {0.1, 0.2, 0.3, 0.15, 0.05, 0.2};
    const auto text = format_grid(cfg, g, {4, 9});
    const auto back = parse_grid(text);
    EXPECT_EQ(back.config, cfg);
    EXPECT_EQ(back.window, (IterationWindow{4, 9}));
    EXPECT_EQ(back.grid.values, g.values);
    EXPECT_EQ(back.grid.theta_bins, 3u);
    EXPECT_EQ(back.grid.momentum_width, 2.0);
    EXPECT_EQ(back.grid.raw_mass, 7.5);
    EXPECT_THROW(parse_grid(text.substr(0, text.size() - 3)), std::exception);
}

TEST(Runner, ClassicalEngineWritesGrid) {
    const auto cfg = parse_config(R"(
name = cl
engine = classical
qubits = 5
chaos = -0.5
t_max = 4
initial_fraction = 0.1
classical_points = 2000
husimi_windows = 0-4
)");
    const auto out = run_config(cfg, scratch_dir("cl"));
    ASSERT_TRUE(out.classical.has_value());
    ASSERT_EQ(out.files.size(), 1u);
    const auto grid = parse_grid(slurp(out.files[0]));
    EXPECT_NEAR(grid.grid.total(), 1.0, 1e-12);
}

TEST(Presets, CatalogueIsComplete) {
    const auto all = list_presets();
    EXPECT_GE(all.size(), 6u);
    for (const auto& name : {"fig1", "fig2", "fig3", "fig3-inset", "fig4", "fig5", "fig6"}) {
        const auto p = find_preset(name);
        EXPECT_FALSE(p.runs.empty()) << name;
        for (const auto& r : p.runs) EXPECT_NO_THROW(parse_config(to_config_text(r))) << name << " " << r.name;
    }
    EXPECT_THROW(find_preset("fig7"), std::exception);

    const auto fig6 = find_preset("fig6");
    bool n60 = false, n0 = false;
    for (const auto& r : fig6.runs) {
        EXPECT_EQ(r.qubits, 8);
        EXPECT_DOUBLE_EQ(r.chaos, 1.0);
        EXPECT_EQ(r.trajectories, 50u);
        n60 |= r.initial.value == 60.0;
        n0 |= r.initial.value == 0.0;
    }
    EXPECT_TRUE(n60 && n0);

    const auto fig4 = find_preset("fig4");
    for (const auto& r : fig4.runs) {
        EXPECT_EQ(r.mode, ParamMode::explicit_kick);
        EXPECT_DOUBLE_EQ(r.kick, std::sqrt(3.0));
        EXPECT_EQ(r.trajectories, r.gamma > 0 ? 50u : 1u);
    }
    EXPECT_EQ(find_preset("fig3-inset").summary, PresetSummary::decay_table);
    EXPECT_EQ(find_preset("fig5").summary, PresetSummary::ipr_ratio_table);
    EXPECT_NE(describe_presets().find("fig3-inset"), std::string::npos);
}

}  // namespace
}  // namespace sawtooth

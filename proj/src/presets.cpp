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
#include <sstream>
#include <stdexcept>

#include "sawtooth/runner.hpp"

namespace sawtooth {
namespace {

ExperimentConfig localization_base() {
    ExperimentConfig c;
    c.mode = ParamMode::explicit_kick;
    c.kick = std::sqrt(3.0);
    c.chaos = std::sqrt(2.0);
    c.initial = {false, 0.0};
    return c;
}

std::string gamma_tag(double gamma) {
    std::ostringstream s;
    s << gamma;
    return s.str();
}

Preset fig1() {
    Preset p{"fig1", "Fig. 1",
             "Momentum distribution W_n at t=30 under per-gate damping; exact density matrix vs M=20,50,200,1000 "
             "trajectories (dynamical localization).",
             {},
             PresetSummary::none};
    ExperimentConfig base = localization_base();
    base.qubits = 6;
    base.gamma = 0.001;
    base.t_max = 30;
    base.momentum_times = {30};
    ExperimentConfig exact = base;
    exact.name = "fig1-exact";
    exact.engine = EngineKind::exact;
    p.runs.push_back(exact);
    for (std::size_t m : {20U, 50U, 200U, 1000U}) {
        ExperimentConfig c = base;
        c.name = "fig1-M" + std::to_string(m);
        c.trajectories = m;
        p.runs.push_back(c);
    }
    return p;
}

Preset fig2() {
    Preset p{"fig2", "Fig. 2",
             "Quasi-integrable phase space (K=-0.5, one cell): Gaussian-smoothed classical density, Husimi at "
             "Gamma=0, and Husimi with Gamma=5e-4 for n_q=8 and 10, averaged over t in 0-9, 40-49, 90-99.",
             {},
             PresetSummary::none};
    ExperimentConfig base;
    base.mode = ParamMode::one_cell;
    base.chaos = -0.5;
    base.t_max = 99;
    base.initial = {true, 0.1};
    base.observables = {false, true, true, true};
    base.husimi_windows = {{0, 9}, {40, 49}, {90, 99}};
    base.qubits = 8;

    ExperimentConfig classical = base;
    classical.name = "fig2-classical";
    classical.engine = EngineKind::classical;
    p.runs.push_back(classical);

    ExperimentConfig ideal = base;
    ideal.name = "fig2-ideal-nq8";
    ideal.trajectories = 1;
    p.runs.push_back(ideal);

    ExperimentConfig nq8 = base;
    nq8.name = "fig2-nq8";
    nq8.gamma = 0.0005;
    nq8.trajectories = 50;
    p.runs.push_back(nq8);

    ExperimentConfig nq10 = nq8;
    nq10.name = "fig2-nq10";
    nq10.qubits = 10;
    nq10.husimi_theta_bins = 512;
    nq10.husimi_momentum_bins = 256;
    p.runs.push_back(nq10);
    return p;
}

Preset fig3() {
    Preset p{"fig3", "Fig. 3",
             "Fidelity decay f(t) for n_q=8, M=50, Gamma in {5e-4, 1e-3}, K=-0.5 and K=0.5 (one cell).",
             {},
             PresetSummary::decay_table};
    for (double gamma : {0.0005, 0.001}) {
        for (double chaos : {-0.5, 0.5}) {
            ExperimentConfig c;
            c.name = "fig3-K" + gamma_tag(chaos) + "-gamma" + gamma_tag(gamma);
            c.qubits = 8;
            c.chaos = chaos;
            c.gamma = gamma;
            c.trajectories = 50;
            c.t_max = 100;
            c.observables = {false, true, false, false};
            p.runs.push_back(c);
        }
    }
    return p;
}

Preset fig3_inset() {
    Preset p{"fig3-inset", "Fig. 3 inset",
             "Fitted fidelity decay rate against Gamma_eff = n_q n_g Gamma for n_q in {4,6,8}, Gamma in "
             "{2.5e-4, 5e-4, 1e-3}, K = +-0.5, M=50.",
             {},
             PresetSummary::decay_table};
    for (int q : {4, 6, 8}) {
        for (double gamma : {0.00025, 0.0005, 0.001}) {
            for (double chaos : {-0.5, 0.5}) {
                ExperimentConfig c;
                c.name = "fig3inset-nq" + std::to_string(q) + "-K" + gamma_tag(chaos) + "-gamma" + gamma_tag(gamma);
                c.qubits = q;
                c.chaos = chaos;
                c.gamma = gamma;
                c.trajectories = 50;
                c.t_max = 50;
                c.observables = {false, true, false, false};
                p.runs.push_back(c);
            }
        }
    }
    return p;
}

Preset fig4() {
    Preset p{"fig4", "Fig. 4",
             "IPR xi(t) for n_q in {4,6,8}, k=sqrt3, K=sqrt2, Gamma=1e-3 with M=50, and Gamma=0 references.",
             {},
             PresetSummary::none};
    for (int q : {4, 6, 8}) {
        for (double gamma : {0.001, 0.0}) {
            ExperimentConfig c = localization_base();
            c.name = "fig4-nq" + std::to_string(q) + (gamma > 0 ? "-gamma0.001" : "-ideal");
            c.qubits = q;
            c.gamma = gamma;
            // Noiseless trajectories are identical; one suffices.
            c.trajectories = gamma > 0 ? 50 : 1;
            c.t_max = 100;
            c.observables = {false, false, true, false};
            p.runs.push_back(c);
        }
    }
    return p;
}

Preset fig5() {
    Preset p{"fig5", "Fig. 5",
             "Ratio xi/xi_0 averaged over 30 <= t <= 40 against Gamma for n_q in {4,6,8}; k=sqrt3, K=sqrt2, M=50.",
             {},
             PresetSummary::ipr_ratio_table};
    for (int q : {4, 6, 8}) {
        ExperimentConfig ideal = localization_base();
        ideal.name = "fig5-nq" + std::to_string(q) + "-ideal";
        ideal.qubits = q;
        ideal.trajectories = 1;
        ideal.t_max = 40;
        ideal.observables = {false, false, true, false};
        p.runs.push_back(ideal);
        for (double gamma : {1e-4, 3e-4, 1e-3, 3e-3, 1e-2, 3e-2, 0.1, 0.2}) {
            ExperimentConfig c = ideal;
            c.name = "fig5-nq" + std::to_string(q) + "-gamma" + gamma_tag(gamma);
            c.gamma = gamma;
            c.trajectories = 50;
            p.runs.push_back(c);
        }
    }
    return p;
}

Preset fig6() {
    Preset p{"fig6", "Fig. 6",
             "Dissipative attractors at K=1, n_q=8, M=50: Husimi distributions for Gamma in {0.01, 0.05, 0.1} from "
             "|n=60>, and late-time distributions from |n=0>.",
             {},
             PresetSummary::none};
    for (double gamma : {0.01, 0.05, 0.1}) {
        ExperimentConfig c;
        c.name = "fig6-n60-gamma" + gamma_tag(gamma);
        c.qubits = 8;
        c.chaos = 1.0;
        c.gamma = gamma;
        c.trajectories = 50;
        c.t_max = 99;
        c.initial = {false, 60.0};
        c.observables = {false, false, true, true};
        c.husimi_windows = {{0, 9}, {40, 49}, {90, 99}};
        p.runs.push_back(c);
    }
    for (double gamma : {0.01, 0.05, 0.1}) {
        ExperimentConfig c = p.runs.front();
        c.name = "fig6-n0-gamma" + gamma_tag(gamma);
        c.gamma = gamma;
        c.initial = {false, 0.0};
        c.husimi_windows = {{90, 99}};
        p.runs.push_back(c);
    }
    return p;
}

}  // namespace

std::vector<Preset> list_presets() { return {fig1(), fig2(), fig3(), fig3_inset(), fig4(), fig5(), fig6()}; }

Preset find_preset(const std::string& name) {
    for (auto& p : list_presets()) {
        if (p.name == name) return p;
    }
    throw std::invalid_argument("unknown preset '" + name + "' (see list-presets)");
}

std::string describe_presets() {
    std::ostringstream out;
    for (const auto& p : list_presets()) {
        out << "== " << p.name << " (" << p.figure << ", " << p.runs.size() << " runs)\n";
        out << p.description << "\n";
        for (const auto& run : p.runs) {
            out << "-- run " << run.name << "\n" << to_config_text(run);
        }
        out << "\n";
    }
    return out.str();
}

}  // namespace sawtooth

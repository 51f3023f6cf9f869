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

#include "sawtooth/config.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "sawtooth/circuit.hpp"

namespace sawtooth {
namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(sep, start);
        parts.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return parts;
}

class ExpressionParser {
public:
    explicit ExpressionParser(std::string_view text) : text_(text) {}

    double parse() {
        const double v = expression();
        skip_space();
        if (pos_ != text_.size()) fail("unexpected '" + std::string(text_.substr(pos_)) + "'");
        if (!std::isfinite(v)) fail("value is not finite");
        return v;
    }

private:
    [[noreturn]] void fail(const std::string& what) const {
        throw ConfigError("cannot evaluate '" + std::string(text_) + "': " + what);
    }

    void skip_space() {
        while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t')) ++pos_;
    }

    bool accept(char c) {
        skip_space();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    double expression() {
        double v = term();
        while (true) {
            if (accept('+')) {
                v += term();
            } else if (accept('-')) {
                v -= term();
            } else {
                return v;
            }
        }
    }

    double term() {
        double v = unary();
        while (true) {
            if (accept('*')) {
                v *= unary();
            } else if (accept('/')) {
                v /= unary();
            } else {
                return v;
            }
        }
    }

    double unary() {
        if (accept('-')) return -unary();
        if (accept('+')) return unary();
        return primary();
    }

    double primary() {
        skip_space();
        if (accept('(')) {
            const double v = expression();
            if (!accept(')')) fail("missing ')'");
            return v;
        }
        if (pos_ < text_.size() && (std::isalpha(static_cast<unsigned char>(text_[pos_])) != 0)) {
            const std::size_t start = pos_;
            while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) != 0)) ++pos_;
            const std::string_view name = text_.substr(start, pos_ - start);
            if (name == "pi") return kPi;
            if (name == "sqrt2") return std::sqrt(2.0);
            if (name == "sqrt3") return std::sqrt(3.0);
            if (name == "sqrt") {
                if (!accept('(')) fail("sqrt needs '('");
                const double v = expression();
                if (!accept(')')) fail("missing ')'");
                if (v < 0.0) fail("sqrt of a negative number");
                return std::sqrt(v);
            }
            fail("unknown name '" + std::string(name) + "'");
        }
        double v = 0.0;
        const char* begin = text_.data() + pos_;
        const char* end = text_.data() + text_.size();
        const auto [ptr, ec] = std::from_chars(begin, end, v);
        if (ec != std::errc{} || ptr == begin) fail("expected a number");
        pos_ += static_cast<std::size_t>(ptr - begin);
        return v;
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

template <class Int>
Int parse_integer(std::string_view key, std::string_view text) {
    Int v{};
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
        throw ConfigError("key '" + std::string(key) + "': expected an integer, got '" + std::string(text) + "'");
    }
    return v;
}

IterationWindow parse_window(std::string_view key, std::string_view text) {
    const auto dash = text.find('-', 1);
    if (dash == std::string_view::npos) {
        throw ConfigError("key '" + std::string(key) + "': expected a window 'first-last', got '" + std::string(text) +
                          "'");
    }
    return {parse_integer<int>(key, trim(text.substr(0, dash))), parse_integer<int>(key, trim(text.substr(dash + 1)))};
}

std::string format_double(double v) {
    std::array<char, 64> buf{};
    const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), ptr);
}

std::string format_window(const IterationWindow& w) { return std::to_string(w.first) + "-" + std::to_string(w.last); }

std::string engine_name(EngineKind e) {
    switch (e) {
        case EngineKind::exact: return "exact";
        case EngineKind::trajectories: return "trajectories";
        case EngineKind::classical: return "classical";
    }
    return "";
}

void validate(const ExperimentConfig& c) {
    auto fail = [](const std::string& key, const std::string& why) {
        throw ConfigError("key '" + key + "': " + why);
    };
    if (c.name.empty() || c.name.find_first_of("/\\ \t") != std::string::npos) {
        fail("name", "must be non-empty without spaces or path separators");
    }
    if (c.qubits < 2 || c.qubits > 24) fail("qubits", "must be in [2, 24]");
    if (c.mode == ParamMode::explicit_kick && c.kick == 0.0) fail("kick", "must be nonzero with mode = explicit_k");
    if (c.mode == ParamMode::explicit_kick && c.chaos / c.kick <= 0.0) {
        fail("chaos", "T = K/k must be positive; K and k need the same sign");
    }
    if (c.cells < 1) fail("cells", "must be >= 1");
    if (!(c.gamma >= 0.0)) fail("gamma", "must be >= 0");
    if (c.trajectories < 1) fail("trajectories", "must be >= 1");
    if (c.t_max < 0) fail("t_max", "must be >= 0");
    if (c.initial.fraction && (c.initial.value < -0.5 || c.initial.value >= 0.5)) {
        fail("initial_fraction", "must be in [-0.5, 0.5)");
    }
    if (!c.initial.fraction && c.initial.value != std::floor(c.initial.value)) fail("initial_n", "must be an integer");
    for (int t : c.momentum_times) {
        if (t < 0 || t > c.t_max) fail("momentum_times", "time " + std::to_string(t) + " outside [0, t_max]");
    }
    for (const auto& w : c.husimi_windows) {
        if (w.first < 0 || w.last < w.first || w.last > c.t_max) {
            fail("husimi_windows", "window " + format_window(w) + " outside [0, t_max]");
        }
    }
    if (c.observables.husimi && c.husimi_windows.empty()) fail("husimi_windows", "required when husimi is observed");
    if (c.engine == EngineKind::classical && c.husimi_windows.empty()) {
        fail("husimi_windows", "required by the classical engine");
    }
    if (c.fit_window.first < 0 || c.fit_window.last < c.fit_window.first) fail("fit_window", "empty window");
    if (c.classical_points < 1) fail("classical_points", "must be >= 1");
    if (c.exact_cap_qubits < 2) fail("exact_cap_qubits", "must be >= 2");
    if (c.engine == EngineKind::exact && c.qubits > c.exact_cap_qubits) {
        fail("qubits", "exact engine limited to qubits <= " + std::to_string(c.exact_cap_qubits) + ", got " +
                           std::to_string(c.qubits));
    }
}

using Setter = std::function<void(ExperimentConfig&, std::string_view key, std::string_view value)>;

const std::map<std::string, Setter, std::less<>>& setters() {
    static const std::map<std::string, Setter, std::less<>> table = {
        {"name", [](ExperimentConfig& c, std::string_view, std::string_view v) { c.name = std::string(v); }},
        {"engine",
         [](ExperimentConfig& c, std::string_view k, std::string_view v) {
             if (v == "exact") {
                 c.engine = EngineKind::exact;
             } else if (v == "trajectories") {
                 c.engine = EngineKind::trajectories;
             } else if (v == "classical") {
                 c.engine = EngineKind::classical;
             } else {
                 throw ConfigError("key '" + std::string(k) + "': unknown engine '" + std::string(v) + "'");
             }
         }},
        {"qubits", [](ExperimentConfig& c, std::string_view k, std::string_view v) { c.qubits = parse_integer<int>(k, v); }},
        {"mode",
         [](ExperimentConfig& c, std::string_view k, std::string_view v) {
             if (v == "one_cell") {
                 c.mode = ParamMode::one_cell;
             } else if (v == "explicit_k") {
                 c.mode = ParamMode::explicit_kick;
             } else {
                 throw ConfigError("key '" + std::string(k) + "': unknown mode '" + std::string(v) + "'");
             }
         }},
        {"chaos", [](ExperimentConfig& c, std::string_view, std::string_view v) { c.chaos = evaluate_expression(v); }},
        {"kick", [](ExperimentConfig& c, std::string_view, std::string_view v) { c.kick = evaluate_expression(v); }},
        {"cells", [](ExperimentConfig& c, std::string_view k, std::string_view v) { c.cells = parse_integer<int>(k, v); }},
        {"gamma", [](ExperimentConfig& c, std::string_view, std::string_view v) { c.gamma = evaluate_expression(v); }},
        {"trajectories",
         [](ExperimentConfig& c, std::string_view k, std::string_view v) {
             c.trajectories = parse_integer<std::size_t>(k, v);
         }},
        {"t_max", [](ExperimentConfig& c, std::string_view k, std::string_view v) { c.t_max = parse_integer<int>(k, v); }},
        {"seed",
         [](ExperimentConfig& c, std::string_view k, std::string_view v) { c.seed = parse_integer<std::uint64_t>(k, v); }},
        {"threads",
         [](ExperimentConfig& c, std::string_view k, std::string_view v) { c.threads = parse_integer<unsigned>(k, v); }},
        {"initial_n",
         [](ExperimentConfig& c, std::string_view k, std::string_view v) {
             c.initial = {false, static_cast<double>(parse_integer<int>(k, v))};
         }},
        {"initial_fraction",
         [](ExperimentConfig& c, std::string_view, std::string_view v) { c.initial = {true, evaluate_expression(v)}; }},
        {"observables",
         [](ExperimentConfig& c, std::string_view k, std::string_view v) {
             c.observables = {false, false, false, false};
             for (auto item : split(v, ',')) {
                 if (item == "momentum") {
                     c.observables.momentum = true;
                 } else if (item == "fidelity") {
                     c.observables.fidelity = true;
                 } else if (item == "ipr") {
                     c.observables.ipr = true;
                 } else if (item == "husimi") {
                     c.observables.husimi = true;
                 } else if (!item.empty()) {
                     throw ConfigError("key '" + std::string(k) + "': unknown observable '" + std::string(item) + "'");
                 }
             }
         }},
        {"momentum_times",
         [](ExperimentConfig& c, std::string_view k, std::string_view v) {
             c.momentum_times.clear();
             for (auto item : split(v, ',')) {
                 if (!item.empty()) c.momentum_times.push_back(parse_integer<int>(k, item));
             }
         }},
        {"husimi_windows",
         [](ExperimentConfig& c, std::string_view k, std::string_view v) {
             c.husimi_windows.clear();
             for (auto item : split(v, ',')) {
                 if (!item.empty()) c.husimi_windows.push_back(parse_window(k, item));
             }
         }},
        {"husimi_theta_bins",
         [](ExperimentConfig& c, std::string_view k, std::string_view v) {
             c.husimi_theta_bins = parse_integer<std::size_t>(k, v);
         }},
        {"husimi_momentum_bins",
         [](ExperimentConfig& c, std::string_view k, std::string_view v) {
             c.husimi_momentum_bins = parse_integer<std::size_t>(k, v);
         }},
        {"fit_window", [](ExperimentConfig& c, std::string_view k, std::string_view v) { c.fit_window = parse_window(k, v); }},
        {"classical_points",
         [](ExperimentConfig& c, std::string_view k, std::string_view v) {
             c.classical_points = parse_integer<std::size_t>(k, v);
         }},
        {"exact_cap_qubits",
         [](ExperimentConfig& c, std::string_view k, std::string_view v) { c.exact_cap_qubits = parse_integer<int>(k, v); }},
    };
    return table;
}

}  // namespace

double evaluate_expression(std::string_view text) {
    if (trim(text).empty()) throw ConfigError("empty numeric value");
    return ExpressionParser(trim(text)).parse();
}

ExperimentConfig parse_config(std::string_view text) {
    ExperimentConfig config;
    std::set<std::string, std::less<>> seen;
    int line_number = 0;
    for (auto raw : split(text, '\n')) {
        ++line_number;
        const auto hash = raw.find('#');
        const auto line = trim(hash == std::string_view::npos ? raw : raw.substr(0, hash));
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError("line " + std::to_string(line_number) + ": expected 'key = value', got '" +
                              std::string(line) + "'");
        }
        const auto key = trim(line.substr(0, eq));
        const auto value = trim(line.substr(eq + 1));
        const auto& table = setters();
        const auto it = table.find(key);
        if (it == table.end()) {
            throw ConfigError("line " + std::to_string(line_number) + ": unknown key '" + std::string(key) + "'");
        }
        if (!seen.insert(std::string(key)).second) {
            throw ConfigError("line " + std::to_string(line_number) + ": duplicate key '" + std::string(key) + "'");
        }
        if (value.empty() && key != "momentum_times" && key != "husimi_windows" && key != "observables") {
            throw ConfigError("line " + std::to_string(line_number) + ": key '" + std::string(key) + "' has no value");
        }
        try {
            it->second(config, key, value);
        } catch (const ConfigError& e) {
            throw ConfigError("line " + std::to_string(line_number) + ": key '" + std::string(key) + "': " + e.what());
        }
    }
    if (config.mode == ParamMode::one_cell && seen.contains("kick")) {
        throw ConfigError("key 'kick' is only valid with mode = explicit_k");
    }
    if (config.mode == ParamMode::explicit_kick && seen.contains("cells")) {
        throw ConfigError("key 'cells' is only valid with mode = one_cell");
    }
    if (config.mode == ParamMode::explicit_kick && !seen.contains("kick")) {
        throw ConfigError("key 'kick' is required with mode = explicit_k");
    }
    if (seen.contains("initial_n") && seen.contains("initial_fraction")) {
        throw ConfigError("keys 'initial_n' and 'initial_fraction' are mutually exclusive");
    }
    validate(config);
    return config;
}

std::string to_config_text(const ExperimentConfig& c) {
    std::ostringstream out;
    auto kv = [&](const std::string& key, const std::string& value) { out << key << " = " << value << '\n'; };
    kv("name", c.name);
    kv("engine", engine_name(c.engine));
    kv("qubits", std::to_string(c.qubits));
    kv("mode", c.mode == ParamMode::one_cell ? "one_cell" : "explicit_k");
    kv("chaos", format_double(c.chaos));
    if (c.mode == ParamMode::explicit_kick) {
        kv("kick", format_double(c.kick));
    } else {
        kv("cells", std::to_string(c.cells));
    }
    kv("gamma", format_double(c.gamma));
    kv("trajectories", std::to_string(c.trajectories));
    kv("t_max", std::to_string(c.t_max));
    kv("seed", std::to_string(c.seed));
    kv("threads", std::to_string(c.threads));
    if (c.initial.fraction) {
        kv("initial_fraction", format_double(c.initial.value));
    } else {
        kv("initial_n", std::to_string(static_cast<long long>(c.initial.value)));
    }
    std::vector<std::string> obs;
    if (c.observables.momentum) obs.emplace_back("momentum");
    if (c.observables.fidelity) obs.emplace_back("fidelity");
    if (c.observables.ipr) obs.emplace_back("ipr");
    if (c.observables.husimi) obs.emplace_back("husimi");
    std::string joined;
    for (std::size_t i = 0; i < obs.size(); ++i) joined += (i ? "," : "") + obs[i];
    kv("observables", joined);
    joined.clear();
    for (std::size_t i = 0; i < c.momentum_times.size(); ++i) {
        joined += (i ? "," : "") + std::to_string(c.momentum_times[i]);
    }
    kv("momentum_times", joined);
    joined.clear();
    for (std::size_t i = 0; i < c.husimi_windows.size(); ++i) {
        joined += (i ? "," : "") + format_window(c.husimi_windows[i]);
    }
    kv("husimi_windows", joined);
    kv("husimi_theta_bins", std::to_string(c.husimi_theta_bins));
    kv("husimi_momentum_bins", std::to_string(c.husimi_momentum_bins));
    kv("fit_window", format_window(c.fit_window));
    kv("classical_points", std::to_string(c.classical_points));
    kv("exact_cap_qubits", std::to_string(c.exact_cap_qubits));
    return out.str();
}

ExperimentConfig parse_output_header(std::string_view contents) {
    std::string config_text;
    for (auto line : split(contents, '\n')) {
        if (line == "end-header") break;
        if (!line.starts_with("# ")) {
            if (line.starts_with("#") || line.find('=') != std::string_view::npos || line.starts_with("SAWTOOTH")) {
                continue;
            }
            break;
        }
        const auto body = line.substr(2);
        if (body.find(" = ") == std::string_view::npos) continue;
        config_text.append(body);
        config_text.push_back('\n');
    }
    return parse_config(config_text);
}

MapParams resolve_params(const ExperimentConfig& c) {
    if (c.mode == ParamMode::one_cell) return make_params(c.qubits, OneCell{c.chaos, c.cells});
    return make_params(c.qubits, ExplicitKick{c.kick, c.chaos});
}

int resolve_initial_momentum(const ExperimentConfig& c, const MapParams& params) {
    const double n = c.initial.fraction ? std::round(c.initial.value * static_cast<double>(params.dim))
                                        : c.initial.value;
    const double half = static_cast<double>(params.dim) / 2.0;
    if (n < -half || n >= half) {
        throw ConfigError("initial momentum " + format_double(n) + " outside [-N/2, N/2)");
    }
    return static_cast<int>(n);
}

RunOptions resolve_run_options(const ExperimentConfig& c) {
    RunOptions o;
    if (c.observables.husimi) o.husimi_windows = c.husimi_windows;
    o.husimi_grid = {c.husimi_theta_bins, c.husimi_momentum_bins};
    o.threads = c.threads;
    o.exact_dim_cap = std::size_t{1} << c.exact_cap_qubits;
    return o;
}

std::string version_string() { return std::string("sawtooth-sim ") + SAWTOOTH_VERSION + " (git " + SAWTOOTH_GIT_DESCRIBE + ")"; }

}  // namespace sawtooth

// Copyright 2026 The entdetect Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "entdetect/config.h"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace entdetect {

namespace {

std::string_view trim(std::string_view s) {
    const char *ws = " \t\r\n";
    size_t b = s.find_first_not_of(ws);
    if (b == std::string_view::npos) {
        return {};
    }
    size_t e = s.find_last_not_of(ws);
    return s.substr(b, e - b + 1);
}

[[noreturn]] void fail(std::string_view where, const std::string &message) {
    throw ConfigError(std::string(where) + ": " + message);
}

uint64_t parse_count(std::string_view text) {
    text = trim(text);
    uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
        throw std::invalid_argument("expected a non-negative integer, got '" + std::string(text) + "'");
    }
    return v;
}

}  // namespace

double parse_real(std::string_view text) {
    text = trim(text);
    double v = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size() || text.empty() || !std::isfinite(v)) {
        throw std::invalid_argument("expected a real number, got '" + std::string(text) + "'");
    }
    return v;
}

Complex parse_complex(std::string_view text) {
    size_t comma = text.find(',');
    if (comma == std::string_view::npos) {
        return {parse_real(text), 0};
    }
    return {parse_real(text.substr(0, comma)), parse_real(text.substr(comma + 1))};
}

const std::vector<std::string> &config_keys() {
    static const std::vector<std::string> keys{
        "alpha",   "beta",  "gamma",   "delta",     "preset",    "omega_0", "omega_c", "kappa",
        "gamma_decay", "lambda_coupling", "omega_p", "theta", "t_f", "t_o", "eta_d", "trials",
        "seed",    "threads", "theta_min", "theta_max", "steps", "rho", "output", "format",
    };
    return keys;
}

void apply_setting(RunConfig &cfg, std::string_view key, std::string_view value, std::string_view where) {
    value = trim(value);
    try {
        if (key == "alpha") {
            cfg.alpha = parse_complex(value);
        } else if (key == "beta") {
            cfg.beta = parse_complex(value);
        } else if (key == "gamma") {
            cfg.gamma = parse_complex(value);
        } else if (key == "delta") {
            cfg.delta = parse_complex(value);
        } else if (key == "preset") {
            if (value != "ideal" && value != "rb87") {
                throw std::invalid_argument("unknown preset '" + std::string(value) + "' (expected ideal or rb87)");
            }
            cfg.preset = std::string(value);
        } else if (key == "omega_0") {
            cfg.omega_0 = parse_real(value);
        } else if (key == "omega_c") {
            cfg.omega_c = parse_real(value);
        } else if (key == "kappa") {
            cfg.kappa = parse_real(value);
        } else if (key == "gamma_decay") {
            cfg.gamma_decay = parse_real(value);
        } else if (key == "lambda_coupling") {
            cfg.lambda_coupling = parse_real(value);
        } else if (key == "omega_p") {
            cfg.omega_p = parse_real(value);
        } else if (key == "theta") {
            cfg.theta = parse_real(value);
        } else if (key == "t_f") {
            cfg.efficiencies.t_f = parse_real(value);
        } else if (key == "t_o") {
            cfg.efficiencies.t_o = parse_real(value);
        } else if (key == "eta_d") {
            cfg.efficiencies.eta_d = parse_real(value);
        } else if (key == "trials") {
            cfg.trials = parse_count(value);
            if (cfg.trials == 0) {
                throw std::invalid_argument("trials must be at least 1");
            }
        } else if (key == "seed") {
            cfg.seed = parse_count(value);
        } else if (key == "threads") {
            uint64_t t = parse_count(value);
            if (t == 0 || t > 256) {
                throw std::invalid_argument("threads must be in [1, 256]");
            }
            cfg.threads = static_cast<unsigned>(t);
        } else if (key == "theta_min") {
            cfg.theta_min = parse_real(value);
        } else if (key == "theta_max") {
            cfg.theta_max = parse_real(value);
        } else if (key == "steps") {
            cfg.steps = parse_count(value);
        } else if (key == "rho") {
            cfg.rho_path = std::string(value);
        } else if (key == "output") {
            cfg.output = std::string(value);
        } else if (key == "format") {
            if (value == "csv") {
                cfg.format = OutputFormat::kCsv;
            } else if (value == "text") {
                cfg.format = OutputFormat::kText;
            } else {
                throw std::invalid_argument("format must be csv or text");
            }
        } else {
            throw std::invalid_argument("unknown key '" + std::string(key) + "'");
        }
    } catch (const std::invalid_argument &e) {
        fail(where, std::string(key) + ": " + e.what());
    }
    if (key == "t_f" || key == "t_o" || key == "eta_d") {
        try {
            cfg.efficiencies.validate();
        } catch (const std::invalid_argument &) {
            fail(where, std::string(key) + ": efficiency must lie in [0, 1]");
        }
    }
}

void parse_config_text(RunConfig &cfg, std::string_view text, std::string_view source) {
    size_t line_no = 0;
    size_t pos = 0;
    while (pos <= text.size()) {
        size_t nl = text.find('\n', pos);
        std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        line_no++;
        size_t hash = line.find('#');
        if (hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        std::string where = std::string(source) + ":" + std::to_string(line_no);
        size_t eq = line.find('=');
        if (eq == std::string_view::npos) {
            fail(where, "expected 'key = value'");
        }
        std::string_view key = trim(line.substr(0, eq));
        apply_setting(cfg, key, line.substr(eq + 1), where);
    }
}

void load_config_file(RunConfig &cfg, const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError(path + ": cannot open config file");
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    parse_config_text(cfg, buffer.str(), path);
}

ResolvedPair resolve_pair(const RunConfig &cfg) {
    double n2 = std::norm(cfg.alpha) + std::norm(cfg.beta) + std::norm(cfg.gamma) + std::norm(cfg.delta);
    double deviation = std::abs(n2 - 1);
    if (deviation > 1e-3) {
        std::ostringstream msg;
        msg << "normalization: |alpha|^2+|beta|^2+|gamma|^2+|delta|^2 = " << n2 << ", expected 1";
        throw ConfigError(msg.str());
    }
    double scale = 1 / std::sqrt(n2);
    ResolvedPair out{AtomPair{cfg.alpha * scale, cfg.beta * scale, cfg.gamma * scale, cfg.delta * scale}, {}};
    if (deviation > 1e-6) {
        std::ostringstream msg;
        msg << "warning: normalization: amplitudes renormalized (squared norm was " << n2 << ")";
        out.warning = msg.str();
    }
    return out;
}

CavityParams resolve_cavity(const RunConfig &cfg) {
    CavityParams p = cfg.preset == "rb87" ? CavityParams::rb87() : CavityParams::ideal();
    if (cfg.omega_0) {
        p.omega_0 = *cfg.omega_0;
    }
    if (cfg.omega_c) {
        p.omega_c = *cfg.omega_c;
    }
    if (cfg.kappa) {
        p.kappa = *cfg.kappa;
    }
    if (cfg.gamma_decay) {
        p.gamma_decay = *cfg.gamma_decay;
    }
    if (cfg.lambda_coupling) {
        p.lambda_coupling = *cfg.lambda_coupling;
    }
    try {
        p.validate();
    } catch (const std::invalid_argument &e) {
        throw ConfigError(std::string("cavity: ") + e.what());
    }
    return p;
}

ResolvedPhases resolve_phases(const RunConfig &cfg) {
    CavityParams p = resolve_cavity(cfg);
    ResolvedPhases out;
    out.omega_p = cfg.omega_p.value_or(p.ideal_probe_frequency());
    if (cfg.theta) {
        out.phases = FaradayPhases::from_angles(*cfg.theta, std::numbers::pi / 2);
        out.theta_override = true;
    } else {
        try {
            out.phases = faraday_phases(p, out.omega_p);
        } catch (const std::invalid_argument &e) {
            throw ConfigError(std::string("cavity: ") + e.what());
        }
    }
    out.mode = out.phases.is_ideal() ? ScatterMode::kIdeal : ScatterMode::kGeneral;
    return out;
}

}  // namespace entdetect

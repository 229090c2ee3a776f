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

#ifndef ENTDETECT_CONFIG_H
#define ENTDETECT_CONFIG_H

#include <cstdint>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "entdetect/imperfections.h"
#include "entdetect/montecarlo.h"

namespace entdetect {

/// A usage or configuration problem; the CLI maps it to exit code 2.
class ConfigError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

enum class OutputFormat { kText, kCsv };

/// Everything a CLI command needs. Populated from a `key = value` config file and then from
/// command-line flags, which use the same keys.
struct RunConfig {
    /// Raw amplitudes as given; resolve_pair() applies the normalization policy.
    Complex alpha{std::numbers::sqrt2 / 2, 0};
    Complex beta{0, 0};
    Complex gamma{0, 0};
    Complex delta{std::numbers::sqrt2 / 2, 0};

    std::string preset = "ideal";
    std::optional<double> omega_0;
    std::optional<double> omega_c;
    std::optional<double> kappa;
    std::optional<double> gamma_decay;
    std::optional<double> lambda_coupling;
    /// Probe frequency; defaults to omega_c - kappa/2.
    std::optional<double> omega_p;
    /// Overrides the cavity-derived phases with e^{i theta}, theta_0 = pi/2.
    std::optional<double> theta;

    Efficiencies efficiencies;
    uint64_t trials = kDefaultTrials;
    uint64_t seed = 0;
    unsigned threads = 1;

    std::optional<double> theta_min;
    std::optional<double> theta_max;
    std::optional<uint64_t> steps;

    /// Density-matrix file for the oracle command.
    std::optional<std::string> rho_path;

    std::string output;
    OutputFormat format = OutputFormat::kText;
};

/// Sets one key. `where` prefixes diagnostics (e.g. "run.cfg:7" or "--alpha").
void apply_setting(RunConfig &cfg, std::string_view key, std::string_view value, std::string_view where);

/// Parses config-file text: one `key = value` per line, `#` starts a comment.
void parse_config_text(RunConfig &cfg, std::string_view text, std::string_view source);
void load_config_file(RunConfig &cfg, const std::string &path);

/// Every key accepted by apply_setting.
const std::vector<std::string> &config_keys();

/// "re,im" or a bare real.
Complex parse_complex(std::string_view text);
double parse_real(std::string_view text);

struct ResolvedPair {
    AtomPair pair;
    /// Set when the amplitudes were renormalized.
    std::optional<std::string> warning;
};

/// Squared-norm deviation up to 1e-6 is renormalized silently, up to 1e-3 with a warning;
/// anything larger is a ConfigError naming the normalization field.
ResolvedPair resolve_pair(const RunConfig &cfg);

CavityParams resolve_cavity(const RunConfig &cfg);

struct ResolvedPhases {
    FaradayPhases phases;
    ScatterMode mode;
    double omega_p = 0;
    /// True when --theta replaced the cavity-derived phases.
    bool theta_override = false;
};

ResolvedPhases resolve_phases(const RunConfig &cfg);

}  // namespace entdetect

#endif

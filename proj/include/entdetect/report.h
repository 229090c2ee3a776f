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

#ifndef ENTDETECT_REPORT_H
#define ENTDETECT_REPORT_H

#include <string>
#include <string_view>
#include <vector>

#include "entdetect/config.h"

namespace entdetect {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitUnmeasurable = 3;

inline constexpr uint64_t kDefaultSweepSteps = 512;

/// What a command produced: the report body (written to --output or stdout), lines for
/// stderr, and the process exit code.
struct CommandOutput {
    int exit_code = kExitOk;
    std::string body;
    std::vector<std::string> diagnostics;
};

/// 17 significant digits in scientific notation; round-trips a double exactly.
std::string format_csv_number(double v);
/// 6 significant digits for human-readable reports.
std::string format_text_number(double v);

/// Protocol report: analytic round probabilities, exact imperfect run, Monte Carlo estimate and
/// the oracle concurrence. Exits 3 when the post-selection is unmeasurable.
CommandOutput cmd_detect(const RunConfig &cfg);

/// CSV `theta,p_error,exact_success,approx_success`. Without theta_min/theta_max the grid is
/// the open interval (0, 2pi) with kDefaultSweepSteps points; otherwise the closed interval.
CommandOutput cmd_sweep_theta(const RunConfig &cfg);

/// Monte Carlo estimate only; CSV schema `quantity,value,ci_low,ci_high`.
CommandOutput cmd_estimate(const RunConfig &cfg);

/// Wootters concurrence of a density-matrix file (cfg.rho_path) or of the configured pure
/// state, in which case 2|ad - bg| is printed alongside.
CommandOutput cmd_oracle(const RunConfig &cfg);

/// Four rows of four `re,im` entries separated by whitespace; `#` comments and blank lines
/// are skipped.
DensityMatrix parse_density_matrix(std::string_view text, std::string_view source);

/// The theta grid used by cmd_sweep_theta.
std::vector<double> sweep_grid(const RunConfig &cfg);

}  // namespace entdetect

#endif

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

#include "entdetect/report.h"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <optional>
#include <sstream>

namespace entdetect {

namespace {

/// One line of a `quantity,value,ci_low,ci_high` table.
struct Row {
    std::string quantity;
    std::string value;
    std::optional<Interval> ci;
};

Row real_row(std::string name, double v, OutputFormat f, std::optional<Interval> ci = std::nullopt) {
    return Row{std::move(name), f == OutputFormat::kCsv ? format_csv_number(v) : format_text_number(v), ci};
}

Row count_row(std::string name, uint64_t v) {
    return Row{std::move(name), std::to_string(v), std::nullopt};
}

std::string render_csv(const std::vector<Row> &rows) {
    std::string out = "quantity,value,ci_low,ci_high\n";
    for (const auto &r : rows) {
        out += r.quantity + "," + r.value + ",";
        if (r.ci) {
            out += format_csv_number(r.ci->low) + "," + format_csv_number(r.ci->high);
        } else {
            out += ",";
        }
        out += "\n";
    }
    return out;
}

/// Sections of (title, rows); the text renderer indents rows under their title.
using Sections = std::vector<std::pair<std::string, std::vector<Row>>>;

std::string render(const Sections &sections, const std::vector<std::string> &notes, OutputFormat f) {
    if (f == OutputFormat::kCsv) {
        std::vector<Row> all;
        for (const auto &[title, rows] : sections) {
            all.insert(all.end(), rows.begin(), rows.end());
        }
        return render_csv(all);
    }
    size_t width = 0;
    for (const auto &[title, rows] : sections) {
        for (const auto &r : rows) {
            width = std::max(width, r.quantity.size());
        }
    }
    std::string out;
    for (const auto &[title, rows] : sections) {
        out += title + "\n";
        for (const auto &r : rows) {
            out += "  " + r.quantity + std::string(width - r.quantity.size() + 2, ' ') + r.value;
            if (r.ci) {
                out += "  [" + format_text_number(r.ci->low) + ", " + format_text_number(r.ci->high) + "]";
            }
            out += "\n";
        }
    }
    for (const auto &n : notes) {
        out += "note: " + n + "\n";
    }
    return out;
}

std::string format_complex(Complex c) {
    return format_text_number(c.real()) + (c.imag() < 0 ? "-" : "+") + format_text_number(std::abs(c.imag())) + "i";
}

ProtocolConfig monte_carlo_config(const AtomPair &pair, const ResolvedPhases &phases, const Efficiencies &eff) {
    ProtocolConfig mc;
    mc.pair = pair;
    mc.phases = phases.phases;
    mc.mode = phases.mode;
    if (eff.per_photon() < 1) {
        mc.efficiencies = eff;
    }
    return mc;
}

std::vector<Row> monte_carlo_rows(const TrialStats &stats, OutputFormat f) {
    ConcurrenceEstimate est = estimate_concurrence(stats);
    const TrialCounts &c = stats.counts;
    return {
        count_row("mc_trials", stats.n_trials),
        count_row("mc_seed", stats.seed),
        count_row("mc_round1_success", stats.n_round1_success),
        count_row("mc_full_success", stats.n_full_success),
        count_row("mc_clicks_d1d3", c.round_one_clicks[0]),
        count_row("mc_clicks_d1d4", c.round_one_clicks[1]),
        count_row("mc_clicks_d2d3", c.round_one_clicks[2]),
        count_row("mc_clicks_d2d4", c.round_one_clicks[3]),
        count_row("mc_round2_d1", c.round_two_d1),
        count_row("mc_round2_d2", c.round_two_d2),
        count_row("mc_photons_sent", c.photons_sent),
        real_row("mc_p_hat", est.p_hat, f, est.p_interval),
        real_row("mc_c_hat", est.c_hat, f, est.c_interval),
        real_row("mc_p_hat_loss_adjusted", stats.p_hat_loss_adjusted, f),
        real_row("mc_triples_per_photon", stats.triples_per_photon, f),
    };
}

std::string read_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError(path + ": cannot open file");
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

}  // namespace

std::string format_csv_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.16e", v);
    return buf;
}

std::string format_text_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

CommandOutput cmd_detect(const RunConfig &cfg) {
    CommandOutput out;
    ResolvedPair resolved = resolve_pair(cfg);
    if (resolved.warning) {
        out.diagnostics.push_back(*resolved.warning);
    }
    const AtomPair &pair = resolved.pair;
    const OutputFormat f = cfg.format;
    Sections sections;
    std::vector<std::string> notes;

    if (f == OutputFormat::kText) {
        sections.push_back({"pair: alpha=" + format_complex(pair.alpha) + " beta=" + format_complex(pair.beta) +
                                " gamma=" + format_complex(pair.gamma) + " delta=" + format_complex(pair.delta),
                            {}});
    }

    ProtocolResult ideal = run_protocol(pair, FaradayPhases::ideal(), ScatterMode::kIdeal);
    double concurrence = concurrence_from_probability(std::min(ideal.p_total, 0.25));
    sections.push_back({"ideal protocol",
                        {
                            real_row("p1", ideal.p1, f),
                            real_row("p2", ideal.p2, f),
                            real_row("p_total", ideal.p_total, f),
                            real_row("concurrence", concurrence, f),
                            real_row("p1_closed_form", analytic_round_one(pair), f),
                            real_row("p2_closed_form", analytic_round_two(pair), f),
                            real_row("p_total_closed_form", analytic_success(pair), f),
                        }});
    if (ideal.status == ProtocolStatus::kUnmeasurableRoundOne) {
        notes.push_back("unmeasurable round 1: the D1/D3 coincidence has zero probability");
        out.exit_code = kExitUnmeasurable;
    } else if (ideal.status == ProtocolStatus::kUnmeasurableRoundTwo) {
        notes.push_back("unmeasurable round 2: the singlet branch is absent");
        out.exit_code = kExitUnmeasurable;
    }

    DensityMatrix rho = DensityMatrix::from_pure(pair.state("a", "b"));
    sections.push_back({"oracle",
                        {
                            real_row("oracle_concurrence", wootters_concurrence(rho), f),
                            real_row("pure_concurrence", pure_concurrence(pair.alpha, pair.beta, pair.gamma, pair.delta), f),
                        }});

    ResolvedPhases phases = resolve_phases(cfg);
    std::vector<Row> cavity_rows{
        real_row("omega_p", phases.omega_p, f),
        real_row("theta", phases.phases.theta, f),
        real_row("theta_0", phases.phases.theta_0, f),
        real_row("faraday_rotation", phases.phases.rotation(), f),
        real_row("abs_r_hot", std::abs(phases.phases.r_hot), f),
        real_row("abs_r_cold", std::abs(phases.phases.r_cold), f),
    };
    sections.push_back({std::string("cavity (") + (phases.theta_override ? "theta override" : "preset " + cfg.preset) +
                            ")",
                        std::move(cavity_rows)});

    double configured_p = ideal.p_total;
    double configured_p1 = ideal.p1;
    if (phases.mode == ScatterMode::kGeneral) {
        ExactImperfectionReport exact = phases.theta_override ? exact_success_theta(pair, *cfg.theta)
                                                              : exact_success(pair, phases.phases);
        configured_p = exact.exact_probability;
        configured_p1 = exact.p1;
        sections.push_back({"imperfect protocol",
                            {
                                real_row("p_error", exact.p_error, f),
                                real_row("exact_p1", exact.p1, f),
                                real_row("exact_p2", exact.p2, f),
                                real_row("exact_success", exact.exact_probability, f),
                                real_row("approx_success", exact.approx_probability, f),
                                real_row("exact_concurrence_estimate", 2 * std::sqrt(exact.exact_probability), f),
                                real_row("singlet_fidelity", exact.singlet_fidelity, f),
                                real_row("final_concurrence_a", exact.concurrence_a, f),
                                real_row("final_concurrence_b", exact.concurrence_b, f),
                            }});
    }

    LossBudget budget = conditional_loss_budget(configured_p1, configured_p, cfg.efficiencies);
    sections.push_back({"detection budget",
                        {
                            real_row("t_f", cfg.efficiencies.t_f, f),
                            real_row("t_o", cfg.efficiencies.t_o, f),
                            real_row("eta_d", cfg.efficiencies.eta_d, f),
                            real_row("detected_probability", detected_probability(configured_p, cfg.efficiencies), f),
                            real_row("expected_photons_per_trial", budget.expected_photons_per_trial, f),
                            real_row("triples_per_photon", budget.triples_per_photon, f),
                        }});

    TrialStats stats = run_trials(monte_carlo_config(pair, phases, cfg.efficiencies), cfg.trials, cfg.seed, cfg.threads);
    sections.push_back({"monte carlo", monte_carlo_rows(stats, f)});

    out.body = render(sections, notes, f);
    if (f == OutputFormat::kCsv) {
        for (const auto &n : notes) {
            out.diagnostics.push_back("note: " + n);
        }
    }
    return out;
}

std::vector<double> sweep_grid(const RunConfig &cfg) {
    uint64_t steps = cfg.steps.value_or(kDefaultSweepSteps);
    if (steps < 2) {
        throw ConfigError("steps: at least 2 grid points are required");
    }
    if (steps > 10'000'000) {
        throw ConfigError("steps: at most 10000000 grid points are supported");
    }
    std::vector<double> grid(steps);
    if (!cfg.theta_min && !cfg.theta_max) {
        double spacing = 2 * std::numbers::pi / static_cast<double>(steps + 1);
        for (uint64_t k = 0; k < steps; k++) {
            grid[k] = spacing * static_cast<double>(k + 1);
        }
        return grid;
    }
    if (!cfg.theta_min || !cfg.theta_max) {
        throw ConfigError("theta_min/theta_max: give both ends of the range or neither");
    }
    double lo = *cfg.theta_min;
    double hi = *cfg.theta_max;
    if (!(lo < hi)) {
        throw ConfigError("theta_min/theta_max: need theta_min < theta_max");
    }
    for (uint64_t k = 0; k < steps; k++) {
        grid[k] = lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(steps - 1);
    }
    return grid;
}

CommandOutput cmd_sweep_theta(const RunConfig &cfg) {
    CommandOutput out;
    ResolvedPair resolved = resolve_pair(cfg);
    if (resolved.warning) {
        out.diagnostics.push_back(*resolved.warning);
    }
    std::string body = "theta,p_error,exact_success,approx_success\n";
    for (double theta : sweep_grid(cfg)) {
        ExactImperfectionReport r = exact_success_theta(resolved.pair, theta);
        body += format_csv_number(theta) + "," + format_csv_number(r.p_error) + "," +
                format_csv_number(r.exact_probability) + "," + format_csv_number(r.approx_probability) + "\n";
    }
    out.body = std::move(body);
    return out;
}

CommandOutput cmd_estimate(const RunConfig &cfg) {
    CommandOutput out;
    ResolvedPair resolved = resolve_pair(cfg);
    if (resolved.warning) {
        out.diagnostics.push_back(*resolved.warning);
    }
    ResolvedPhases phases = resolve_phases(cfg);
    TrialStats stats =
        run_trials(monte_carlo_config(resolved.pair, phases, cfg.efficiencies), cfg.trials, cfg.seed, cfg.threads);
    out.body = render({{"monte carlo estimate", monte_carlo_rows(stats, cfg.format)}}, {}, cfg.format);
    return out;
}

DensityMatrix parse_density_matrix(std::string_view text, std::string_view source) {
    DensityMatrix::Entries entries{};
    size_t row = 0;
    size_t line_no = 0;
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
        line_no++;
        size_t hash = line.find('#');
        if (hash != std::string::npos) {
            line.resize(hash);
        }
        std::istringstream fields(line);
        std::vector<std::string> cells;
        std::string cell;
        while (fields >> cell) {
            cells.push_back(cell);
        }
        if (cells.empty()) {
            continue;
        }
        std::string where = std::string(source) + ":" + std::to_string(line_no);
        if (row >= 4) {
            throw ConfigError(where + ": density matrix has more than 4 rows");
        }
        if (cells.size() != 4) {
            throw ConfigError(where + ": expected 4 entries of the form re,im");
        }
        for (size_t col = 0; col < 4; col++) {
            try {
                entries[row][col] = parse_complex(cells[col]);
            } catch (const std::invalid_argument &e) {
                throw ConfigError(where + ": " + e.what());
            }
        }
        row++;
    }
    if (row != 4) {
        throw ConfigError(std::string(source) + ": density matrix needs 4 rows, found " + std::to_string(row));
    }
    try {
        return DensityMatrix(entries);
    } catch (const std::invalid_argument &e) {
        throw ConfigError(std::string(source) + ": " + e.what());
    }
}

CommandOutput cmd_oracle(const RunConfig &cfg) {
    CommandOutput out;
    const OutputFormat f = cfg.format;
    std::vector<Row> rows;
    if (cfg.rho_path) {
        DensityMatrix rho = parse_density_matrix(read_file(*cfg.rho_path), *cfg.rho_path);
        rows.push_back(real_row("wootters_concurrence", wootters_concurrence(rho), f));
    } else {
        ResolvedPair resolved = resolve_pair(cfg);
        if (resolved.warning) {
            out.diagnostics.push_back(*resolved.warning);
        }
        const AtomPair &p = resolved.pair;
        rows.push_back(real_row("wootters_concurrence", wootters_concurrence(DensityMatrix::from_pure(p.state("a", "b"))), f));
        rows.push_back(real_row("pure_concurrence", pure_concurrence(p.alpha, p.beta, p.gamma, p.delta), f));
    }
    out.body = render({{"concurrence oracle", std::move(rows)}}, {}, f);
    return out;
}

}  // namespace entdetect

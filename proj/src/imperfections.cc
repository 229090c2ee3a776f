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

#include "entdetect/imperfections.h"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace entdetect {

void Efficiencies::validate() const {
    for (double v : {t_f, t_o, eta_d}) {
        if (!(v >= 0 && v <= 1)) {
            throw std::invalid_argument("Efficiencies must lie in [0, 1].");
        }
    }
}

double Efficiencies::per_photon() const {
    return t_f * t_o * eta_d;
}

Efficiencies Efficiencies::laboratory() {
    return Efficiencies{0.5, 0.95, 0.28};
}

double p_error(double theta) {
    Complex shifted = std::polar(1.0, 2 * theta) - 1.0;
    return std::norm(shifted) / 4;
}

double approx_success(const AtomPair &pair, double theta) {
    double e = p_error(theta);
    return analytic_success(pair) * (1 + e) * (1 + e);
}

double detected_probability(double p_prime, const Efficiencies &eff) {
    if (!(p_prime >= 0 && p_prime <= 1)) {
        throw std::invalid_argument("Success probability must lie in [0, 1].");
    }
    eff.validate();
    double eta = eff.per_photon();
    return p_prime * eta * eta * eta;
}

LossBudget conditional_loss_budget(double p1, double p_total, const Efficiencies &eff) {
    eff.validate();
    double eta = eff.per_photon();
    LossBudget budget;
    budget.p_detected_triple = detected_probability(p_total, eff);
    budget.p_round_one_detected = p1 * eta * eta;
    budget.expected_photons_per_trial = 2 + budget.p_round_one_detected;
    budget.triples_per_photon = budget.p_detected_triple / budget.expected_photons_per_trial;
    return budget;
}

ExactImperfectionReport exact_success(const AtomPair &pair, const FaradayPhases &phases) {
    ExactImperfectionReport report;
    report.theta = phases.theta;
    report.p_error = p_error(phases.theta);
    report.analytic_probability = analytic_success(pair);
    report.approx_probability = approx_success(pair, phases.theta);

    ProtocolResult run = run_protocol(pair, phases, ScatterMode::kGeneral);
    report.status = run.status;
    report.p1 = run.p1;
    report.p2 = run.p2;
    report.exact_probability = run.p_total;
    if (run.state_after_round2) {
        const PureState &final_state = *run.state_after_round2;
        report.singlet_fidelity = fidelity(final_state, singlet_product());
        report.concurrence_a = wootters_concurrence(reduced_density(final_state, "a1", "a2"));
        report.concurrence_b = wootters_concurrence(reduced_density(final_state, "b1", "b2"));
        report.final_state = final_state;
    }
    return report;
}

ExactImperfectionReport exact_success_theta(const AtomPair &pair, double theta) {
    ExactImperfectionReport report = exact_success(pair, FaradayPhases::from_angles(theta, std::numbers::pi / 2));
    // Keep the caller's angle rather than its wrapped argument.
    report.theta = theta;
    report.p_error = p_error(theta);
    report.approx_probability = approx_success(pair, theta);
    return report;
}

}  // namespace entdetect

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

#ifndef ENTDETECT_IMPERFECTIONS_H
#define ENTDETECT_IMPERFECTIONS_H

#include <optional>

#include "entdetect/protocol.h"

namespace entdetect {

/// Per-photon transmission and detection efficiencies.
struct Efficiencies {
    double t_f = 1;    ///< fiber-to-cavity coupling and transmission
    double t_o = 1;    ///< other optical components
    double eta_d = 1;  ///< single-photon detector efficiency

    void validate() const;
    /// t_f * t_o * eta_d: probability that one photon survives and clicks.
    double per_photon() const;

    static Efficiencies perfect() {
        return {};
    }
    /// t_f = 0.5, t_o = 0.95, eta_d = 0.28.
    static Efficiencies laboratory();
};

/// Probability that an even-parity atom pair leaves a two-cavity photon in |+>:
/// |e^{2i theta} - 1|^2 / 4.
double p_error(double theta);

/// First-order estimate |ad - bg|^2 (1 + p_error(theta))^2.
double approx_success(const AtomPair &pair, double theta);

/// p_prime * (t_f t_o eta_d)^3, one factor per photon of a full detection round.
double detected_probability(double p_prime, const Efficiencies &eff);

/// Photon accounting when the third photon is only sent after a round-one coincidence. This
/// goes beyond the fixed three-photon budget of detected_probability.
struct LossBudget {
    /// Probability that a trial ends in a detected triple (same as detected_probability).
    double p_detected_triple = 0;
    /// Probability that both round-one photons click on D1 and D3.
    double p_round_one_detected = 0;
    /// 2 + p_round_one_detected.
    double expected_photons_per_trial = 0;
    /// Detected triples per photon sent.
    double triples_per_photon = 0;
};

LossBudget conditional_loss_budget(double p1, double p_total, const Efficiencies &eff);

struct ExactImperfectionReport {
    double theta = 0;
    double p_error = 0;
    ProtocolStatus status = ProtocolStatus::kSuccess;
    /// Probability of D1 and D3 in round one followed by D1 in round two.
    double exact_probability = 0;
    double p1 = 0;
    double p2 = 0;
    /// |ad - bg|^2.
    double analytic_probability = 0;
    /// |ad - bg|^2 (1 + p_error)^2.
    double approx_probability = 0;
    std::optional<PureState> final_state;
    /// Fidelity of the final state with the singlet product; 0 when unmeasurable.
    double singlet_fidelity = 0;
    /// Wootters concurrence of the reduced (a1, a2) and (b1, b2) states; 0 when unmeasurable.
    double concurrence_a = 0;
    double concurrence_b = 0;
};

/// Runs the whole protocol with e^{i theta} in place of -1 and theta_0 held at pi/2.
ExactImperfectionReport exact_success_theta(const AtomPair &pair, double theta);

/// Same, with arbitrary reflection coefficients (modulus included).
ExactImperfectionReport exact_success(const AtomPair &pair, const FaradayPhases &phases);

}  // namespace entdetect

#endif

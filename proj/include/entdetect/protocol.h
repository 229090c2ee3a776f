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

#ifndef ENTDETECT_PROTOCOL_H
#define ENTDETECT_PROTOCOL_H

#include <optional>
#include <string>
#include <vector>

#include "entdetect/cavity.h"
#include "entdetect/qstate.h"

namespace entdetect {

/// Register layout of the four atoms: Alice holds a1 and a2, Bob holds b1 and b2. Pair k is
/// (ak, bk).
inline const std::vector<std::string> kAtomLabels{"a1", "a2", "b1", "b2"};

/// Below this the post-selected branch is reported as unmeasurable.
inline constexpr double kUnmeasurableProbability = 1e-30;

/// alpha|00> + beta|01> + gamma|10> + delta|11> shared by one atom of Alice and one of Bob.
struct AtomPair {
    Complex alpha;
    Complex beta;
    Complex gamma;
    Complex delta;

    double norm_squared() const;
    /// Throws std::invalid_argument unless normalized within kNormTolerance.
    void validate() const;
    /// The pair as a two-qubit state over (first, second).
    PureState state(std::string first, std::string second) const;

    static AtomPair bell();
};

/// |alpha delta|, |beta gamma| based closed forms.
double analytic_round_one(const AtomPair &pair);  ///< 2|ad|^2 + 2|bg|^2
double analytic_round_two(const AtomPair &pair);  ///< |ad - bg|^2 / (2(|ad|^2 + |bg|^2)), 0 if undefined
double analytic_success(const AtomPair &pair);    ///< |ad - bg|^2

/// 2 sqrt(p), clamped to [0, 1]. Rejects p outside [0, 1/4 + 1e-9].
double concurrence_from_probability(double p);

/// Two copies of the pair, over kAtomLabels.
PureState build_initial(const AtomPair &pair);

/// Joint detector statistics of the two round-one photons. "+" is the transmitted PBS port
/// (D1 for photon 1, D3 for photon 2), "-" the reflected port (D2, D4).
struct RoundOneOutcomes {
    double plus_plus = 0;
    double plus_minus = 0;
    double minus_plus = 0;
    double minus_minus = 0;
    /// Norm lost to |r| < 1.
    double lost = 0;
};

struct RoundOneResult {
    /// Probability of the D1 and D3 coincidence.
    double p1 = 0;
    RoundOneOutcomes outcomes;
    /// Renormalized four-atom state after the coincidence; empty when p1 is unmeasurable.
    std::optional<PureState> state;

    bool measurable() const {
        return state.has_value();
    }
};

/// Photon p1 reflects off a1 then a2, photon p2 off b1 then b2, and both are post-selected on
/// the transmitted port.
RoundOneResult round_one(const PureState &atoms, const FaradayPhases &phases, ScatterMode mode);

/// Hadamard on a1 and a2.
PureState apply_hadamards(const PureState &atoms);

struct RoundTwoResult {
    /// Conditional probability of the D1 click.
    double p2 = 0;
    double p_minus = 0;
    double p_lost = 0;
    std::optional<PureState> state;

    bool measurable() const {
        return state.has_value();
    }
};

/// A third photon reflects off a1 then a2 and is post-selected on the transmitted port.
RoundTwoResult round_two(const PureState &atoms, const FaradayPhases &phases, ScatterMode mode);

enum class ProtocolStatus {
    kSuccess,
    kUnmeasurableRoundOne,
    kUnmeasurableRoundTwo,
};

struct ProtocolResult {
    ProtocolStatus status = ProtocolStatus::kSuccess;
    double p1 = 0;
    /// Zero when round one is unmeasurable.
    double p2 = 0;
    double p_total = 0;
    /// 2 sqrt(p_total), not clamped: imperfect phases can push it above one.
    double concurrence_estimate = 0;
    RoundOneOutcomes round_one_outcomes;
    double round_two_minus = 0;
    double round_two_lost = 0;
    std::optional<PureState> state_after_round1;
    std::optional<PureState> state_after_hadamards;
    std::optional<PureState> state_after_round2;
};

/// Both rounds end to end on two copies of the pair.
ProtocolResult run_protocol(const AtomPair &pair, const FaradayPhases &phases, ScatterMode mode);

/// (|01> - |10>)/sqrt2 on (a1, a2) times the same on (b1, b2).
PureState singlet_product();

}  // namespace entdetect

#endif

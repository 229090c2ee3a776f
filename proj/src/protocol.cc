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

#include "entdetect/protocol.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace entdetect {

namespace {

const std::array<Complex, 2> kPlusBra{std::numbers::sqrt2 / 2, std::numbers::sqrt2 / 2};
const std::array<Complex, 2> kMinusBra{std::numbers::sqrt2 / 2, -std::numbers::sqrt2 / 2};

void require_atom_register(const PureState &s) {
    if (s.num_qubits() != kAtomLabels.size()) {
        throw std::invalid_argument("Expected a four-atom register [a1, a2, b1, b2].");
    }
    for (const auto &label : kAtomLabels) {
        if (!s.has_label(label)) {
            throw std::invalid_argument("Atom register is missing '" + label + "'.");
        }
    }
}

/// Sends a |+> photon past two atoms.
PureState send_photon(
    const PureState &s,
    const std::string &photon,
    const std::string &first,
    const std::string &second,
    const FaradayPhases &phases,
    ScatterMode mode) {
    PureState out = tensor(s, PureState::plus(photon));
    out = scatter(out, photon, first, phases, mode);
    return scatter(out, photon, second, phases, mode);
}

}  // namespace

double AtomPair::norm_squared() const {
    return std::norm(alpha) + std::norm(beta) + std::norm(gamma) + std::norm(delta);
}

void AtomPair::validate() const {
    for (const auto &c : {alpha, beta, gamma, delta}) {
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
            throw std::invalid_argument("Pair amplitudes must be finite.");
        }
    }
    double n2 = norm_squared();
    if (std::abs(n2 - 1) > kNormTolerance) {
        throw std::invalid_argument(
            "Pair amplitudes are not normalized (|alpha|^2+|beta|^2+|gamma|^2+|delta|^2 = " + std::to_string(n2) +
            ").");
    }
}

PureState AtomPair::state(std::string first, std::string second) const {
    validate();
    return PureState({std::move(first), std::move(second)}, {alpha, beta, gamma, delta});
}

AtomPair AtomPair::bell() {
    const double h = std::numbers::sqrt2 / 2;
    return AtomPair{h, 0, 0, h};
}

double analytic_round_one(const AtomPair &pair) {
    pair.validate();
    return 2 * std::norm(pair.alpha * pair.delta) + 2 * std::norm(pair.beta * pair.gamma);
}

double analytic_round_two(const AtomPair &pair) {
    pair.validate();
    double denom = 2 * (std::norm(pair.alpha * pair.delta) + std::norm(pair.beta * pair.gamma));
    if (denom < kUnmeasurableProbability) {
        return 0;
    }
    return std::norm(pair.alpha * pair.delta - pair.beta * pair.gamma) / denom;
}

double analytic_success(const AtomPair &pair) {
    pair.validate();
    return std::norm(pair.alpha * pair.delta - pair.beta * pair.gamma);
}

double concurrence_from_probability(double p) {
    if (!(p >= 0 && p <= 0.25 + 1e-9)) {
        throw std::invalid_argument(
            "Success probability " + std::to_string(p) + " is outside [0, 1/4]; the estimate is miscalibrated.");
    }
    return std::clamp(2 * std::sqrt(p), 0.0, 1.0);
}

PureState build_initial(const AtomPair &pair) {
    PureState product = tensor(pair.state("a1", "b1"), pair.state("a2", "b2"));
    return product.reordered(kAtomLabels);
}

RoundOneResult round_one(const PureState &atoms, const FaradayPhases &phases, ScatterMode mode) {
    require_atom_register(atoms);
    PureState s = send_photon(atoms, "p1", "a1", "a2", phases, mode);
    s = send_photon(s, "p2", "b1", "b2", phases, mode);

    double input = atoms.norm_squared();
    auto branch = [&](const std::array<Complex, 2> &first, const std::array<Complex, 2> &second) {
        return condition_on(condition_on(s, "p1", first), "p2", second);
    };
    PureState coincidence = branch(kPlusBra, kPlusBra);

    RoundOneResult result;
    result.outcomes.plus_plus = coincidence.norm_squared() / input;
    result.outcomes.plus_minus = branch(kPlusBra, kMinusBra).norm_squared() / input;
    result.outcomes.minus_plus = branch(kMinusBra, kPlusBra).norm_squared() / input;
    result.outcomes.minus_minus = branch(kMinusBra, kMinusBra).norm_squared() / input;
    double detected = result.outcomes.plus_plus + result.outcomes.plus_minus + result.outcomes.minus_plus +
                      result.outcomes.minus_minus;
    result.outcomes.lost = std::max(0.0, 1 - detected);
    result.p1 = result.outcomes.plus_plus;
    if (result.p1 >= kUnmeasurableProbability) {
        result.state = coincidence.normalized().reordered(kAtomLabels);
    }
    return result;
}

PureState apply_hadamards(const PureState &atoms) {
    require_atom_register(atoms);
    Mat2 h = hadamard();
    return apply_1q(apply_1q(atoms, "a1", h), "a2", h);
}

RoundTwoResult round_two(const PureState &atoms, const FaradayPhases &phases, ScatterMode mode) {
    require_atom_register(atoms);
    PureState s = send_photon(atoms, "p3", "a1", "a2", phases, mode);
    double input = atoms.norm_squared();
    PureState plus = condition_on(s, "p3", kPlusBra);
    PureState minus = condition_on(s, "p3", kMinusBra);

    RoundTwoResult result;
    result.p2 = plus.norm_squared() / input;
    result.p_minus = minus.norm_squared() / input;
    result.p_lost = std::max(0.0, 1 - result.p2 - result.p_minus);
    if (result.p2 >= kUnmeasurableProbability) {
        result.state = plus.normalized().reordered(kAtomLabels);
    }
    return result;
}

ProtocolResult run_protocol(const AtomPair &pair, const FaradayPhases &phases, ScatterMode mode) {
    ProtocolResult result;
    RoundOneResult first = round_one(build_initial(pair), phases, mode);
    result.p1 = first.p1;
    result.round_one_outcomes = first.outcomes;
    if (!first.measurable()) {
        result.status = ProtocolStatus::kUnmeasurableRoundOne;
        return result;
    }
    result.state_after_round1 = first.state;
    result.state_after_hadamards = apply_hadamards(*first.state);

    RoundTwoResult second = round_two(*result.state_after_hadamards, phases, mode);
    result.p2 = second.p2;
    result.round_two_minus = second.p_minus;
    result.round_two_lost = second.p_lost;
    result.p_total = result.p1 * result.p2;
    result.concurrence_estimate = 2 * std::sqrt(result.p_total);
    if (!second.measurable()) {
        result.status = ProtocolStatus::kUnmeasurableRoundTwo;
        return result;
    }
    result.state_after_round2 = second.state;
    return result;
}

PureState singlet_product() {
    std::vector<Complex> amps(16);
    // (|01> - |10>)_{a1a2} (|01> - |10>)_{b1b2} / 2, index bits a1 a2 b1 b2.
    amps[0b0101] = 0.5;
    amps[0b0110] = -0.5;
    amps[0b1001] = -0.5;
    amps[0b1010] = 0.5;
    return PureState(kAtomLabels, std::move(amps));
}

}  // namespace entdetect

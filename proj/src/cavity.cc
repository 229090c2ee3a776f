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

#include "entdetect/cavity.h"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace entdetect {

namespace {

constexpr double kPhaseTolerance = 1e-9;
constexpr double kSingularDenominator = 1e-300;

Complex unit(double angle) {
    return std::polar(1.0, angle);
}

}  // namespace

void CavityParams::validate() const {
    for (double v : {omega_0, omega_c, kappa, gamma_decay, lambda_coupling}) {
        if (!std::isfinite(v)) {
            throw std::invalid_argument("Cavity parameters must be finite.");
        }
    }
    if (!(kappa > 0)) {
        throw std::invalid_argument("Cavity damping rate kappa must be positive.");
    }
    if (gamma_decay < 0) {
        throw std::invalid_argument("Atomic decay rate must be non-negative.");
    }
    if (lambda_coupling < 0) {
        throw std::invalid_argument("Atom-cavity coupling must be non-negative.");
    }
}

CavityParams CavityParams::ideal() {
    return CavityParams{0, 0, 1, 0, 0.5};
}

CavityParams CavityParams::rb87() {
    constexpr double kSpeedOfLight = 299792458.0;
    // omega_0 / kappa = (2 pi c / wavelength) / (2 pi x 53 MHz).
    double omega = kSpeedOfLight / rb87::kTransitionWavelengthM / rb87::kCavityDecayHz;
    return CavityParams{omega, omega, 1, 0, 0.5};
}

Complex reflection_coefficient(const CavityParams &p, double omega_p) {
    p.validate();
    const Complex i{0, 1};
    Complex cavity_detuning = i * (p.omega_c - omega_p);
    Complex atom_term = i * (p.omega_0 - omega_p) + p.gamma_decay / 2;
    double g2 = p.lambda_coupling * p.lambda_coupling;
    Complex numerator = (cavity_detuning - p.kappa / 2) * atom_term + g2;
    Complex denominator = (cavity_detuning + p.kappa / 2) * atom_term + g2;
    if (std::abs(denominator) < kSingularDenominator) {
        throw std::invalid_argument("Cavity parameters make the reflection coefficient singular.");
    }
    return numerator / denominator;
}

Complex empty_reflection(const CavityParams &p, double omega_p) {
    if (!(p.kappa > 0)) {
        throw std::invalid_argument("Cavity damping rate kappa must be positive.");
    }
    const Complex i{0, 1};
    Complex detuning = i * (p.omega_c - omega_p);
    return (detuning - p.kappa / 2) / (detuning + p.kappa / 2);
}

double phase_of(Complex z) {
    if (z.real() < 0 && std::abs(z.imag()) <= 1e-15 * std::abs(z)) {
        return std::numbers::pi;
    }
    double a = std::arg(z);
    return a <= -std::numbers::pi ? a + 2 * std::numbers::pi : a;
}

double FaradayPhases::rotation() const {
    return std::abs(theta - theta_0);
}

bool FaradayPhases::is_ideal() const {
    return std::abs(theta - std::numbers::pi) <= kPhaseTolerance &&
           std::abs(theta_0 - std::numbers::pi / 2) <= kPhaseTolerance &&
           std::abs(std::abs(r_hot) - 1) <= kPhaseTolerance && std::abs(std::abs(r_cold) - 1) <= kPhaseTolerance;
}

FaradayPhases FaradayPhases::from_angles(double theta, double theta_0) {
    Complex hot = unit(theta);
    Complex cold = unit(theta_0);
    return FaradayPhases{hot, cold, phase_of(hot), phase_of(cold)};
}

FaradayPhases FaradayPhases::ideal() {
    return FaradayPhases{Complex{-1, 0}, Complex{0, 1}, std::numbers::pi, std::numbers::pi / 2};
}

FaradayPhases faraday_phases(const CavityParams &p, double omega_p) {
    Complex hot = reflection_coefficient(p, omega_p);
    Complex cold = empty_reflection(p, omega_p);
    return FaradayPhases{hot, cold, phase_of(hot), phase_of(cold)};
}

PureState scatter(
    const PureState &s, std::string_view photon, std::string_view atom, const FaradayPhases &ph, ScatterMode mode) {
    Complex hot = ph.r_hot;
    Complex cold = ph.r_cold;
    if (mode == ScatterMode::kIdeal) {
        if (!ph.is_ideal()) {
            throw std::invalid_argument("Ideal scattering requested with non-ideal Faraday phases.");
        }
        hot = -1;
        cold = Complex{0, 1};
    }
    // Index (photon bit << 1) | atom bit: |L g_L>, |L g_R>, |R g_L>, |R g_R>.
    return apply_diagonal_2q(s, photon, atom, {hot, cold, cold, hot});
}

}  // namespace entdetect

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

#ifndef ENTDETECT_CAVITY_H
#define ENTDETECT_CAVITY_H

#include <string_view>

#include "entdetect/qstate.h"

namespace entdetect {

/// One atom-cavity unit. Frequencies and rates are dimensionless, in units of the cavity
/// damping rate (so kappa defaults to 1).
struct CavityParams {
    double omega_0 = 0;          ///< atomic transition frequency
    double omega_c = 0;          ///< cavity mode frequency
    double kappa = 1;            ///< cavity damping rate, > 0
    double gamma_decay = 0;      ///< atomic decay rate, >= 0
    double lambda_coupling = 0;  ///< atom-cavity coupling strength, >= 0

    void validate() const;

    /// Resonant atom and cavity, kappa = 1, no atomic decay, coupling kappa/2. Probing at
    /// omega_c - kappa/2 gives theta = pi and theta_0 = pi/2.
    static CavityParams ideal();
    /// Rb-87 in a fiber Fabry-Perot cavity: 780 nm transition, kappa = 2pi x 53 MHz, operated
    /// at the resonance condition lambda = kappa/2 with decay neglected.
    static CavityParams rb87();
    /// omega_c - kappa/2.
    double ideal_probe_frequency() const {
        return omega_c - kappa / 2;
    }
};

/// Physical constants behind the rb87() preset.
namespace rb87 {
inline constexpr double kTransitionWavelengthM = 780e-9;
inline constexpr double kCavityDecayHz = 53e6;  ///< kappa / 2pi
inline constexpr double kCavityLengthM = 38.6e-6;
inline constexpr double kFinesse = 37000;
}  // namespace rb87

/// Reflection of a probe photon at omega_p from the atom-coupled cavity.
Complex reflection_coefficient(const CavityParams &p, double omega_p);

/// Reflection from the empty cavity (lambda = 0); always of unit modulus.
Complex empty_reflection(const CavityParams &p, double omega_p);

/// Reflection coefficients seen by a photon whose polarization couples to the atom ("hot") and
/// by one that only sees the empty cavity ("cold").
struct FaradayPhases {
    Complex r_hot;
    Complex r_cold;
    double theta;    ///< arg(r_hot) in (-pi, pi]
    double theta_0;  ///< arg(r_cold) in (-pi, pi]

    /// |theta - theta_0|.
    double rotation() const;
    /// theta = pi and theta_0 = pi/2 within 1e-9, both at unit modulus within 1e-9.
    bool is_ideal() const;

    /// Unit-modulus phases e^{i theta}, e^{i theta_0}.
    static FaradayPhases from_angles(double theta, double theta_0);
    /// r_hot = -1, r_cold = i exactly.
    static FaradayPhases ideal();
};

/// Argument in (-pi, pi]; values on the negative real axis, including those with a
/// rounding-level negative imaginary part, map to +pi.
double phase_of(Complex z);

FaradayPhases faraday_phases(const CavityParams &p, double omega_p);

enum class ScatterMode {
    kIdeal,    ///< exact -1 / i table, requires ideal phases
    kGeneral,  ///< the complex coefficients as given, modulus included
};

/// Reflects the photon off the cavity holding the atom. Diagonal in {L,R} x {g_L,g_R}:
/// |L g_L> and |R g_R> pick up r_hot, |R g_L> and |L g_R> pick up r_cold. When the
/// coefficients have modulus below one the result is subnormalized and the norm deficit is
/// the photon-loss probability.
PureState scatter(
    const PureState &s, std::string_view photon, std::string_view atom, const FaradayPhases &ph, ScatterMode mode);

}  // namespace entdetect

#endif

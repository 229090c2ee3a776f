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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace entdetect;

namespace {

constexpr double kPi = std::numbers::pi;
const double kH = std::numbers::sqrt2 / 2;

double wrap(double a) {
    while (a <= -kPi) {
        a += 2 * kPi;
    }
    while (a > kPi) {
        a -= 2 * kPi;
    }
    return a;
}

/// Photon polarization after |+> scatters off two atoms fixed in computational basis states.
PureState photon_after_two_atoms(int x, int y, const FaradayPhases &ph, ScatterMode mode) {
    PureState s = tensor(PureState::basis({"a", "b"}, static_cast<uint64_t>(x * 2 + y)), PureState::plus("p"));
    s = scatter(scatter(s, "p", "a", ph, mode), "p", "b", ph, mode);
    return condition_on(condition_on(s, "a", x == 0 ? std::array<Complex, 2>{1, 0} : std::array<Complex, 2>{0, 1}),
                        "b", y == 0 ? std::array<Complex, 2>{1, 0} : std::array<Complex, 2>{0, 1});
}

}  // namespace

TEST(cavity, reflection_reduces_to_empty_cavity_without_coupling) {
    CavityParams p{0.3, -0.2, 1.0, 0.4, 0.0};
    for (double w : {-3.0, -0.5, 0.0, 0.7, 10.0}) {
        EXPECT_NEAR(std::abs(reflection_coefficient(p, w) - empty_reflection(p, w)), 0, 1e-15);
    }
}

TEST(cavity, reflection_at_operating_point_is_minus_one) {
    Complex r = reflection_coefficient(CavityParams{0, 0, 1, 0, 0.5}, -0.5);
    EXPECT_NEAR(std::abs(r - Complex(-1, 0)), 0, 1e-15);
}

TEST(cavity, reflection_far_detuned_tends_to_one) {
    CavityParams p = CavityParams::ideal();
    EXPECT_NEAR(std::abs(reflection_coefficient(p, 1e6) - 1.0), 0, 1e-5);
    EXPECT_NEAR(std::abs(reflection_coefficient(p, -1e6) - 1.0), 0, 1e-5);
}

TEST(cavity, reflection_rejects_bad_params) {
    EXPECT_THROW(reflection_coefficient(CavityParams{0, 0, 0, 0, 0.5}, 0), std::invalid_argument);
    EXPECT_THROW(reflection_coefficient(CavityParams{0, 0, 1, -1, 0.5}, 0), std::invalid_argument);
    EXPECT_THROW(reflection_coefficient(CavityParams{0, 0, 1, 0, -0.5}, 0), std::invalid_argument);
}

TEST(cavity, reflection_singular_parameters) {
    // Probing an uncoupled, undamped atom on resonance zeroes the denominator.
    EXPECT_THROW(reflection_coefficient(CavityParams{0, 0, 1, 0, 0}, 0), std::invalid_argument);
}

TEST(cavity, empty_reflection_examples) {
    CavityParams p = CavityParams::ideal();
    EXPECT_NEAR(std::abs(empty_reflection(p, 0) - Complex(-1, 0)), 0, 1e-15);
    EXPECT_NEAR(std::abs(empty_reflection(p, -0.5) - Complex(0, 1)), 0, 1e-15);
}

TEST(cavity, empty_reflection_mobius_phase) {
    // With omega_c - omega_p = (kappa/2) tan(phi/2), (it - 1)/(it + 1) = e^{i(pi - phi)}.
    for (double kappa : {1.0, 2.5}) {
        CavityParams p{0, 0.4, kappa, 0, 0};
        for (int k = 0; k < 10; k++) {
            double phi = -2.8 + 0.6 * k;
            double omega_p = p.omega_c - kappa / 2 * std::tan(phi / 2);
            double got = std::arg(empty_reflection(p, omega_p));
            EXPECT_NEAR(std::abs(wrap(got - (kPi - phi))), 0, 1e-12) << phi;
        }
    }
}

TEST(cavity, modulus_properties) {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> det(-50, 50);
    std::uniform_real_distribution<double> pos(0.01, 5);
    for (int trial = 0; trial < 1000; trial++) {
        CavityParams p{det(rng), det(rng), pos(rng), 0, pos(rng)};
        double w = det(rng);
        EXPECT_NEAR(std::abs(empty_reflection(p, w)), 1, 1e-12);
        EXPECT_NEAR(std::abs(reflection_coefficient(p, w)), 1, 1e-10);
        p.gamma_decay = pos(rng);
        EXPECT_LE(std::abs(reflection_coefficient(p, w)), 1 + 1e-12);
    }
}

TEST(cavity, ideal_phases) {
    CavityParams p = CavityParams::ideal();
    FaradayPhases ph = faraday_phases(p, p.ideal_probe_frequency());
    EXPECT_NEAR(ph.theta, kPi, 1e-12);
    EXPECT_NEAR(ph.theta_0, kPi / 2, 1e-12);
    EXPECT_NEAR(ph.rotation(), kPi / 2, 1e-12);
    EXPECT_TRUE(ph.is_ideal());
}

TEST(cavity, rb87_preset_reaches_operating_point) {
    CavityParams p = CavityParams::rb87();
    EXPECT_GT(p.omega_c, 1e6);
    FaradayPhases ph = faraday_phases(p, p.ideal_probe_frequency());
    EXPECT_NEAR(ph.theta, kPi, 1e-9);
    EXPECT_NEAR(ph.theta_0, kPi / 2, 1e-9);
}

TEST(cavity, uncoupled_phases_coincide) {
    CavityParams p{0, 0, 1, 0.2, 0};
    FaradayPhases ph = faraday_phases(p, 0.3);
    EXPECT_NEAR(ph.theta, ph.theta_0, 1e-15);
}

TEST(cavity, phase_range) {
    EXPECT_DOUBLE_EQ(phase_of(Complex(-1, -1e-17)), kPi);
    EXPECT_DOUBLE_EQ(phase_of(Complex(-1, 0)), kPi);
    EXPECT_NEAR(phase_of(Complex(-1, -1e-3)), -kPi + 1e-3, 1e-9);
    EXPECT_DOUBLE_EQ(phase_of(Complex(0, 1)), kPi / 2);
}

TEST(cavity, scatter_ideal_single_atom) {
    PureState s = tensor(PureState::plus("p"), PureState::basis({"a"}, 0));
    PureState out = scatter(s, "p", "a", FaradayPhases::ideal(), ScatterMode::kIdeal);
    // (-|L> + i|R>)/sqrt2 with the atom in g_L.
    EXPECT_NEAR(std::abs(out.amplitude(0b00) - Complex(-kH, 0)), 0, 1e-15);
    EXPECT_NEAR(std::abs(out.amplitude(0b10) - Complex(0, kH)), 0, 1e-15);
    EXPECT_NEAR(std::abs(out.amplitude(0b01)), 0, 1e-15);
}

TEST(cavity, scatter_is_diagonal_table) {
    FaradayPhases ph = FaradayPhases::from_angles(2.1, 0.4);
    for (uint64_t k = 0; k < 4; k++) {
        PureState out = scatter(PureState::basis({"p", "a"}, k), "p", "a", ph, ScatterMode::kGeneral);
        bool hot = k == 0b00 || k == 0b11;
        for (uint64_t j = 0; j < 4; j++) {
            Complex expected = j == k ? (hot ? ph.r_hot : ph.r_cold) : Complex(0);
            EXPECT_NEAR(std::abs(out.amplitude(j) - expected), 0, 1e-15);
        }
    }
}

TEST(cavity, general_two_atom_relations) {
    for (double theta : {kPi, kPi - 0.1, 2.0, 0.3}) {
        FaradayPhases ph = FaradayPhases::from_angles(theta, kPi / 2);
        Complex e2 = std::polar(1.0, 2 * theta);
        // Odd parity: i e^{i theta} (|L> + |R>)/sqrt2.
        PureState odd = photon_after_two_atoms(0, 1, ph, ScatterMode::kGeneral);
        Complex f = Complex(0, 1) * std::polar(1.0, theta) * kH;
        EXPECT_NEAR(std::abs(odd.amplitude(0) - f), 0, 1e-14);
        EXPECT_NEAR(std::abs(odd.amplitude(1) - f), 0, 1e-14);
        // |00>: (e^{2i theta}|L> - |R>)/sqrt2.
        PureState even = photon_after_two_atoms(0, 0, ph, ScatterMode::kGeneral);
        EXPECT_NEAR(std::abs(even.amplitude(0) - e2 * kH), 0, 1e-14);
        EXPECT_NEAR(std::abs(even.amplitude(1) + kH), 0, 1e-14);
        // |11>: (-|L> + e^{2i theta}|R>)/sqrt2.
        PureState both = photon_after_two_atoms(1, 1, ph, ScatterMode::kGeneral);
        EXPECT_NEAR(std::abs(both.amplitude(0) + kH), 0, 1e-14);
        EXPECT_NEAR(std::abs(both.amplitude(1) - e2 * kH), 0, 1e-14);
    }
}

TEST(cavity, scatter_orderings_commute) {
    std::mt19937_64 rng(4);
    std::normal_distribution<double> normal;
    FaradayPhases ph = FaradayPhases::from_angles(2.5, 1.1);
    for (int trial = 0; trial < 20; trial++) {
        std::vector<Complex> amps(8);
        double n2 = 0;
        for (auto &a : amps) {
            a = {normal(rng), normal(rng)};
            n2 += std::norm(a);
        }
        for (auto &a : amps) {
            a /= std::sqrt(n2);
        }
        PureState s({"a", "b", "p"}, amps);
        PureState ab = scatter(scatter(s, "p", "a", ph, ScatterMode::kGeneral), "p", "b", ph, ScatterMode::kGeneral);
        PureState ba = scatter(scatter(s, "p", "b", ph, ScatterMode::kGeneral), "p", "a", ph, ScatterMode::kGeneral);
        for (uint64_t i = 0; i < 8; i++) {
            EXPECT_NEAR(std::abs(ab.amplitude(i) - ba.amplitude(i)), 0, 1e-12);
        }
    }
}

TEST(cavity, ideal_parity_rule) {
    const std::array<Complex, 2> plus{kH, kH};
    const std::array<Complex, 2> minus{kH, -kH};
    for (int x = 0; x < 2; x++) {
        for (int y = 0; y < 2; y++) {
            PureState photon = photon_after_two_atoms(x, y, FaradayPhases::ideal(), ScatterMode::kIdeal);
            bool odd = x != y;
            double p_plus = std::norm(std::conj(plus[0]) * photon.amplitude(0) + std::conj(plus[1]) * photon.amplitude(1));
            double p_minus =
                std::norm(std::conj(minus[0]) * photon.amplitude(0) + std::conj(minus[1]) * photon.amplitude(1));
            EXPECT_NEAR(p_plus, odd ? 1 : 0, 1e-15);
            EXPECT_NEAR(p_minus, odd ? 0 : 1, 1e-15);
        }
    }
}

TEST(cavity, scatter_errors) {
    PureState s = tensor(PureState::plus("p"), PureState::basis({"a"}, 0));
    EXPECT_THROW(scatter(s, "q", "a", FaradayPhases::ideal(), ScatterMode::kIdeal), std::invalid_argument);
    EXPECT_THROW(scatter(s, "p", "x", FaradayPhases::ideal(), ScatterMode::kIdeal), std::invalid_argument);
    EXPECT_THROW(
        scatter(s, "p", "a", FaradayPhases::from_angles(3.0, kPi / 2), ScatterMode::kIdeal), std::invalid_argument);
}

TEST(cavity, lossy_reflection_leaves_norm_deficit) {
    CavityParams p{0, 0, 1, 0.3, 0.5};
    FaradayPhases ph = faraday_phases(p, -0.5);
    ASSERT_LT(std::abs(ph.r_hot), 1);
    PureState s = tensor(PureState::plus("p"), PureState::basis({"a"}, 0));
    PureState out = scatter(s, "p", "a", ph, ScatterMode::kGeneral);
    EXPECT_TRUE(out.subnormalized());
    double expected = 0.5 * std::norm(ph.r_hot) + 0.5 * std::norm(ph.r_cold);
    EXPECT_NEAR(out.norm_squared(), expected, 1e-15);
}

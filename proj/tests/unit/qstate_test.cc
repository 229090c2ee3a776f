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

#include "entdetect/qstate.h"

#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

using namespace entdetect;

namespace {

const double kH = std::numbers::sqrt2 / 2;

std::vector<Complex> random_amplitudes(std::mt19937_64 &rng, size_t n) {
    std::normal_distribution<double> normal;
    std::vector<Complex> v(n);
    double n2 = 0;
    for (auto &c : v) {
        c = {normal(rng), normal(rng)};
        n2 += std::norm(c);
    }
    for (auto &c : v) {
        c /= std::sqrt(n2);
    }
    return v;
}

/// Independent route: eigenvalues of the non-Hermitian product rho * rho_tilde from Eigen's
/// general complex eigensolver.
double eigen_concurrence(const DensityMatrix &rho) {
    Eigen::Matrix4cd r;
    for (int i = 0; i < 4; i++) {
        for (int j = 0; j < 4; j++) {
            r(i, j) = rho(i, j);
        }
    }
    Eigen::Matrix2cd sy;
    sy << 0, Complex(0, -1), Complex(0, 1), 0;
    Eigen::Matrix4cd yy;
    for (int i = 0; i < 4; i++) {
        for (int j = 0; j < 4; j++) {
            yy(i, j) = sy(i >> 1, j >> 1) * sy(i & 1, j & 1);
        }
    }
    Eigen::Matrix4cd product = r * yy * r.conjugate() * yy;
    Eigen::ComplexEigenSolver<Eigen::Matrix4cd> solver(product);
    std::array<double, 4> lambda;
    for (int k = 0; k < 4; k++) {
        lambda[k] = std::sqrt(std::max(0.0, solver.eigenvalues()(k).real()));
    }
    std::sort(lambda.begin(), lambda.end(), std::greater<>());
    return std::max(0.0, lambda[0] - lambda[1] - lambda[2] - lambda[3]);
}

}  // namespace

TEST(qstate, basis_product) {
    PureState s = tensor(PureState::basis({"a"}, 0), PureState::basis({"b"}, 1));
    ASSERT_EQ(s.labels(), (std::vector<std::string>{"a", "b"}));
    EXPECT_EQ(s.amplitude(0), Complex(0));
    EXPECT_EQ(s.amplitude(1), Complex(1));
    EXPECT_EQ(s.amplitude(2), Complex(0));
    EXPECT_EQ(s.amplitude(3), Complex(0));
}

TEST(qstate, msb_first_convention) {
    // |1>_a |0>_b |0>_c is index 0b100.
    PureState s = PureState::basis({"a", "b", "c"}, 0b100);
    EXPECT_EQ(s.bit_of("a"), 2u);
    EXPECT_EQ(s.bit_of("c"), 0u);
    auto m = measure(s, "a", MeasureBasis::kComputational);
    EXPECT_DOUBLE_EQ(m[1].probability, 1.0);
}

TEST(qstate, bell_product_expansion) {
    PureState bell({"x", "y"}, {kH, 0, 0, kH});
    PureState s = tensor(
        PureState({"a1", "b1"}, {kH, 0, 0, kH}), PureState({"a2", "b2"}, {kH, 0, 0, kH}));
    PureState r = s.reordered({"a1", "a2", "b1", "b2"});
    for (uint64_t i = 0; i < 16; i++) {
        bool expected = i == 0b0000 || i == 0b0101 || i == 0b1010 || i == 0b1111;
        EXPECT_NEAR(std::abs(r.amplitude(i) - Complex(expected ? 0.5 : 0.0)), 0, 1e-15) << i;
    }
}

TEST(qstate, tensor_norm_is_multiplicative) {
    PureState a({"a"}, {0.6, 0.0}, true);
    PureState b({"b"}, {0.0, Complex(0, 0.5)}, true);
    PureState t = tensor(a, b);
    EXPECT_NEAR(t.norm_squared(), a.norm_squared() * b.norm_squared(), 1e-15);
    EXPECT_TRUE(t.subnormalized());
}

TEST(qstate, tensor_rejects_duplicate_label) {
    EXPECT_THROW(tensor(PureState::plus("a"), PureState::plus("a")), std::invalid_argument);
}

TEST(qstate, constructor_validation) {
    EXPECT_THROW(PureState({"a"}, {1.0, 1.0}), std::invalid_argument);
    EXPECT_THROW(PureState({"a", "a"}, {1.0, 0, 0, 0}), std::invalid_argument);
    EXPECT_THROW(PureState({"a"}, {1.0}), std::invalid_argument);
    EXPECT_NO_THROW(PureState({"a"}, {0.5, 0.0}, true));
}

TEST(qstate, hadamard_on_zero) {
    PureState s = apply_1q(PureState::basis({"a"}, 0), "a", hadamard());
    EXPECT_NEAR(std::abs(s.amplitude(0) - kH), 0, 1e-15);
    EXPECT_NEAR(std::abs(s.amplitude(1) - kH), 0, 1e-15);
    PureState t = apply_1q(PureState::basis({"a"}, 1), "a", hadamard());
    EXPECT_NEAR(std::abs(t.amplitude(1) + kH), 0, 1e-15);
}

TEST(qstate, hadamard_twice_is_identity) {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 20; trial++) {
        PureState s({"a", "b", "c"}, random_amplitudes(rng, 8));
        PureState t = apply_1q(apply_1q(s, "b", hadamard()), "b", hadamard());
        for (uint64_t i = 0; i < 8; i++) {
            EXPECT_NEAR(std::abs(s.amplitude(i) - t.amplitude(i)), 0, 1e-12);
        }
    }
}

TEST(qstate, hadamard_pair_maps_odd_triplet_to_even) {
    PureState s({"a", "b"}, {0, kH, kH, 0});
    PureState t = apply_1q(apply_1q(s, "a", hadamard()), "b", hadamard());
    PureState expected({"a", "b"}, {kH, 0, 0, -kH});
    for (uint64_t i = 0; i < 4; i++) {
        EXPECT_NEAR(std::abs(t.amplitude(i) - expected.amplitude(i)), 0, 1e-15);
    }
}

TEST(qstate, apply_1q_unknown_label) {
    EXPECT_THROW(apply_1q(PureState::plus("a"), "z", hadamard()), std::invalid_argument);
}

TEST(qstate, measure_plus_in_plus_minus_basis) {
    auto m = measure(PureState::plus("p"), "p", MeasureBasis::kPlusMinus);
    ASSERT_EQ(m.size(), 2u);
    EXPECT_EQ(m[0].outcome, "+");
    EXPECT_NEAR(m[0].probability, 1, 1e-15);
    EXPECT_NEAR(m[1].probability, 0, 1e-15);
    EXPECT_TRUE(m[1].state.subnormalized());
}

TEST(qstate, measure_plus_in_computational_basis) {
    auto m = measure(PureState::plus("p"), "p", MeasureBasis::kComputational);
    EXPECT_NEAR(m[0].probability, 0.5, 1e-15);
    EXPECT_NEAR(m[1].probability, 0.5, 1e-15);
    EXPECT_EQ(m[0].state.amplitude(0), Complex(1));
    EXPECT_EQ(m[0].state.num_qubits(), 1u);
}

TEST(qstate, measure_unknown_label_and_basis) {
    EXPECT_THROW(measure(PureState::plus("p"), "q", MeasureBasis::kPlusMinus), std::invalid_argument);
    EXPECT_THROW(measure(PureState::plus("p"), "p", static_cast<MeasureBasis>(7)), std::invalid_argument);
}

TEST(qstate, measure_probabilities_sum_to_norm) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> scale(0.1, 1.0);
    for (int trial = 0; trial < 200; trial++) {
        auto amps = random_amplitudes(rng, 16);
        double s = scale(rng);
        for (auto &a : amps) {
            a *= s;
        }
        PureState state({"a", "b", "c", "d"}, amps, true);
        for (auto basis : {MeasureBasis::kComputational, MeasureBasis::kPlusMinus}) {
            auto m = measure(state, state.labels()[trial % 4], basis);
            EXPECT_NEAR(m[0].probability + m[1].probability, state.norm_squared(), 1e-12);
        }
    }
}

TEST(qstate, condition_on_drops_subsystem) {
    PureState s = tensor(PureState::qubit("a", 0.6, 0.8), PureState::plus("p"));
    PureState c = condition_on(s, "p", {kH, kH});
    ASSERT_EQ(c.labels(), (std::vector<std::string>{"a"}));
    EXPECT_NEAR(c.norm_squared(), 1, 1e-15);
    EXPECT_NEAR(c.amplitude(0).real(), 0.6, 1e-15);
    PureState d = condition_on(s, "p", {kH, -kH});
    EXPECT_NEAR(d.norm_squared(), 0, 1e-15);
}

TEST(qstate, tensor_and_local_unitary_commute) {
    std::mt19937_64 rng(3);
    Mat2 u{{{Complex(0.6, 0), Complex(0, 0.8)}, {Complex(0, 0.8), Complex(0.6, 0)}}};
    for (int trial = 0; trial < 50; trial++) {
        PureState s1({"a", "b"}, random_amplitudes(rng, 4));
        PureState s2({"c"}, random_amplitudes(rng, 2));
        PureState left = apply_1q(tensor(s1, s2), "b", u);
        PureState right = tensor(apply_1q(s1, "b", u), s2);
        for (uint64_t i = 0; i < 8; i++) {
            EXPECT_NEAR(std::abs(left.amplitude(i) - right.amplitude(i)), 0, 1e-14);
        }
    }
}

TEST(qstate, unitaries_preserve_norm) {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> angle(0, 2 * std::numbers::pi);
    for (int trial = 0; trial < 200; trial++) {
        double t = angle(rng);
        double p = angle(rng);
        Mat2 u{{{std::cos(t), -std::polar(std::sin(t), p)}, {std::polar(std::sin(t), -p), std::cos(t)}}};
        PureState s({"a", "b", "c"}, random_amplitudes(rng, 8));
        PureState out = apply_1q(s, "c", u);
        EXPECT_NEAR(out.norm_squared(), 1, 1e-12);
    }
}

TEST(qstate, fidelity_basics) {
    std::mt19937_64 rng(13);
    PureState s({"a", "b"}, random_amplitudes(rng, 4));
    EXPECT_NEAR(fidelity(s, s), 1, 1e-15);
    EXPECT_NEAR(fidelity(PureState::basis({"a"}, 0), PureState::basis({"a"}, 1)), 0, 1e-15);
    for (double phi : {0.3, 1.7, 3.1, -2.2}) {
        std::vector<Complex> rotated(s.amplitudes().begin(), s.amplitudes().end());
        for (auto &a : rotated) {
            a *= std::polar(1.0, phi);
        }
        EXPECT_NEAR(fidelity(s, PureState(s.labels(), rotated)), 1, 1e-14);
    }
}

TEST(qstate, fidelity_reorders_labels) {
    PureState s({"a", "b"}, {0, 1, 0, 0});
    PureState t({"b", "a"}, {0, 0, 1, 0});
    EXPECT_NEAR(fidelity(s, t), 1, 1e-15);
    EXPECT_THROW(fidelity(s, PureState::basis({"a", "c"}, 1)), std::invalid_argument);
}

TEST(qstate, wootters_singlet_and_mixed) {
    EXPECT_NEAR(wootters_concurrence(DensityMatrix::werner(1.0)), 1, 1e-12);
    EXPECT_NEAR(wootters_concurrence(DensityMatrix::maximally_mixed()), 0, 1e-12);
}

TEST(qstate, wootters_werner_matches_dense_eigen_oracle) {
    // Frozen from tests/oracles/concurrence_eigen.py: 0.4 at p = 0.6, 0 at p = 0.2.
    DensityMatrix rho = DensityMatrix::werner(0.6);
    EXPECT_NEAR(eigen_concurrence(rho), 0.4, 1e-12);
    EXPECT_NEAR(wootters_concurrence(rho), 0.4, 1e-12);
    EXPECT_NEAR(wootters_concurrence(DensityMatrix::werner(0.2)), 0, 1e-12);
    for (double p : {0.0, 0.1, 1.0 / 3, 0.5, 0.75, 0.9}) {
        EXPECT_NEAR(wootters_concurrence(DensityMatrix::werner(p)), std::max(0.0, (3 * p - 1) / 2), 1e-12) << p;
    }
}

TEST(qstate, wootters_equals_pure_formula_for_random_states) {
    std::mt19937_64 rng(20260101);
    for (int trial = 0; trial < 1000; trial++) {
        auto v = random_amplitudes(rng, 4);
        DensityMatrix rho = DensityMatrix::from_pure(std::span<const Complex, 4>(v.data(), 4));
        double pure = pure_concurrence(v[0], v[1], v[2], v[3]);
        EXPECT_NEAR(wootters_concurrence(rho), pure, 1e-8);
        EXPECT_NEAR(eigen_concurrence(rho), pure, 1e-7);
    }
}

TEST(qstate, wootters_agrees_with_eigen_on_random_mixed_states) {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> u(0, 1);
    for (int trial = 0; trial < 200; trial++) {
        DensityMatrix::Entries e{};
        double weights = 0;
        std::array<double, 3> w{u(rng), u(rng), u(rng)};
        for (double x : w) {
            weights += x;
        }
        for (int k = 0; k < 3; k++) {
            auto v = random_amplitudes(rng, 4);
            for (int i = 0; i < 4; i++) {
                for (int j = 0; j < 4; j++) {
                    e[i][j] += w[k] / weights * v[i] * std::conj(v[j]);
                }
            }
        }
        DensityMatrix rho(e);
        EXPECT_NEAR(wootters_concurrence(rho), eigen_concurrence(rho), 1e-7);
    }
}

TEST(qstate, hermitian_eigen_reconstructs_matrix) {
    std::mt19937_64 rng(17);
    std::normal_distribution<double> normal;
    for (int trial = 0; trial < 100; trial++) {
        DensityMatrix::Entries m{};
        for (int i = 0; i < 4; i++) {
            m[i][i] = normal(rng);
            for (int j = i + 1; j < 4; j++) {
                m[i][j] = {normal(rng), normal(rng)};
                m[j][i] = std::conj(m[i][j]);
            }
        }
        HermitianEigen e = hermitian_eigen(m);
        EXPECT_TRUE(std::is_sorted(e.values.begin(), e.values.end()));
        for (int i = 0; i < 4; i++) {
            for (int j = 0; j < 4; j++) {
                Complex r = 0;
                for (int k = 0; k < 4; k++) {
                    r += e.vectors[i][k] * e.values[k] * std::conj(e.vectors[j][k]);
                }
                EXPECT_NEAR(std::abs(r - m[i][j]), 0, 1e-12);
            }
        }
    }
}

TEST(qstate, density_matrix_validation) {
    DensityMatrix::Entries e{};
    e[0][0] = 1;
    e[0][1] = 0.1;
    EXPECT_THROW(DensityMatrix{e}, std::invalid_argument);  // not Hermitian
    DensityMatrix::Entries t{};
    t[0][0] = 0.5;
    EXPECT_THROW(DensityMatrix{t}, std::invalid_argument);  // trace
    DensityMatrix::Entries n{};
    n[0][0] = 1.2;
    n[1][1] = -0.2;
    EXPECT_THROW(DensityMatrix{n}, std::invalid_argument);  // negative eigenvalue
}

TEST(qstate, pure_concurrence_examples) {
    EXPECT_NEAR(pure_concurrence(kH, 0, 0, kH), 1, 1e-15);
    EXPECT_NEAR(pure_concurrence(1, 0, 0, 0), 0, 1e-15);
    EXPECT_NEAR(pure_concurrence(0, kH, kH, 0), 1, 1e-15);
    EXPECT_THROW(pure_concurrence(0.9, 0, 0, 0), std::invalid_argument);
}

TEST(qstate, reduced_density_of_product_of_singlets) {
    PureState s({"a1", "a2", "b1", "b2"}, [] {
        std::vector<Complex> v(16);
        v[0b0101] = 0.5;
        v[0b0110] = -0.5;
        v[0b1001] = -0.5;
        v[0b1010] = 0.5;
        return v;
    }());
    EXPECT_NEAR(wootters_concurrence(reduced_density(s, "a1", "a2")), 1, 1e-12);
    // Across the parties each atom is maximally mixed with its partner: a1 and b1 are unentangled.
    EXPECT_NEAR(wootters_concurrence(reduced_density(s, "a1", "b1")), 0, 1e-12);
}

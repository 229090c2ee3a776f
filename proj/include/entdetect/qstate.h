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

#ifndef ENTDETECT_QSTATE_H
#define ENTDETECT_QSTATE_H

#include <array>
#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace entdetect {

using Complex = std::complex<double>;

/// Row-major 2x2 complex matrix acting on a single two-level subsystem.
using Mat2 = std::array<std::array<Complex, 2>, 2>;

/// |0> -> (|0>+|1>)/sqrt2, |1> -> (|0>-|1>)/sqrt2.
Mat2 hadamard();
Mat2 pauli_y();

/// Tolerance for the normalization check on states that are not flagged subnormalized.
inline constexpr double kNormTolerance = 1e-9;

/// A pure state over a labeled register of two-level subsystems.
///
/// The label at position 0 is the most significant bit of the amplitude index, so for labels
/// [a, b] the amplitudes are ordered |00>, |01>, |10>, |11>. For atoms |0> is |g_L> and for
/// photons |0> is |L>.
///
/// A state is either normalized (squared norm 1 within kNormTolerance) or explicitly flagged as
/// subnormalized. Subnormalized states represent unrenormalized post-selection branches; their
/// squared norm is the branch probability.
class PureState {
   public:
    PureState(std::vector<std::string> labels, std::vector<Complex> amplitudes, bool subnormalized = false);

    /// The computational basis state with the given index (MSB = first label).
    static PureState basis(std::vector<std::string> labels, uint64_t index);
    /// A single subsystem in state a0|0> + a1|1>.
    static PureState qubit(std::string label, Complex a0, Complex a1);
    /// A single photon in (|L> + |R>)/sqrt2.
    static PureState plus(std::string label);

    const std::vector<std::string> &labels() const {
        return labels_;
    }
    std::span<const Complex> amplitudes() const {
        return amplitudes_;
    }
    Complex amplitude(uint64_t index) const {
        return amplitudes_.at(index);
    }
    size_t num_qubits() const {
        return labels_.size();
    }
    bool subnormalized() const {
        return subnormalized_;
    }

    bool has_label(std::string_view label) const;
    /// Position of the label in the register; throws std::invalid_argument for unknown labels.
    size_t index_of(std::string_view label) const;
    /// Bit shift of the label inside an amplitude index.
    size_t bit_of(std::string_view label) const {
        return num_qubits() - 1 - index_of(label);
    }

    double norm_squared() const;
    /// Rescaled to unit norm. Throws std::domain_error for a zero vector.
    PureState normalized() const;
    /// Same state with the register permuted into the given label order.
    PureState reordered(const std::vector<std::string> &order) const;
    /// Marks the state subnormalized without touching the amplitudes.
    PureState as_subnormalized() const;

   private:
    std::vector<std::string> labels_;
    std::vector<Complex> amplitudes_;
    bool subnormalized_;
};

/// Kronecker product; labels are s1's followed by s2's. Duplicate labels are rejected.
PureState tensor(const PureState &s1, const PureState &s2);

/// Applies m to the named subsystem and identity elsewhere.
PureState apply_1q(const PureState &s, std::string_view label, const Mat2 &m);

/// Multiplies each amplitude by diag[(bit_first << 1) | bit_second] for the two named subsystems.
PureState apply_diagonal_2q(
    const PureState &s, std::string_view first, std::string_view second, const std::array<Complex, 4> &diag);

enum class MeasureBasis { kComputational, kPlusMinus };

struct MeasurementBranch {
    /// "0"/"1" in the computational basis, "+"/"-" in the plus/minus basis.
    std::string outcome;
    double probability;
    /// Projected and renormalized; the measured subsystem stays in the register. A branch with zero
    /// probability carries the (zero) projected vector flagged as subnormalized.
    PureState state;
};

/// Projective measurement of one subsystem. Branch probabilities sum to s.norm_squared().
std::vector<MeasurementBranch> measure(const PureState &s, std::string_view label, MeasureBasis basis);

/// Contracts the named subsystem against <bra| and removes it from the register. The result is
/// the unrenormalized conditional state of the rest; its squared norm is the branch probability.
PureState condition_on(const PureState &s, std::string_view label, const std::array<Complex, 2> &bra);

/// <s1|s2> after reordering s2 into s1's label order.
Complex inner_product(const PureState &s1, const PureState &s2);

/// |<s1|s2>|^2 between the normalized inputs; invariant under global phase.
double fidelity(const PureState &s1, const PureState &s2);

/// A two-qubit density matrix: Hermitian, unit trace, positive semidefinite.
class DensityMatrix {
   public:
    static constexpr size_t kDim = 4;
    using Entries = std::array<std::array<Complex, kDim>, kDim>;

    /// Validates the invariants (Hermitian and trace within 1e-10, eigenvalues >= -1e-10) and
    /// throws std::invalid_argument when they fail.
    explicit DensityMatrix(const Entries &entries);

    static DensityMatrix from_pure(std::span<const Complex, kDim> amplitudes);
    static DensityMatrix from_pure(const PureState &two_qubits);
    static DensityMatrix maximally_mixed();
    /// p|Psi-><Psi-| + (1-p) I/4.
    static DensityMatrix werner(double p);

    const Entries &entries() const {
        return entries_;
    }
    Complex operator()(size_t row, size_t col) const {
        return entries_[row][col];
    }

   private:
    Entries entries_;
};

/// Reduced density matrix of two subsystems of a (possibly subnormalized) state, renormalized
/// to unit trace. The first label becomes the more significant qubit.
DensityMatrix reduced_density(const PureState &s, std::string_view first, std::string_view second);

struct HermitianEigen {
    /// Ascending.
    std::array<double, DensityMatrix::kDim> values;
    /// Column k of the matrix is the eigenvector for values[k].
    DensityMatrix::Entries vectors;
};

/// Cyclic complex Jacobi diagonalization of a 4x4 Hermitian matrix.
HermitianEigen hermitian_eigen(const DensityMatrix::Entries &m);

/// Wootters concurrence max{0, l1 - l2 - l3 - l4}, where l_i are the decreasing square roots of
/// the eigenvalues of rho (sy x sy) rho* (sy x sy).
double wootters_concurrence(const DensityMatrix &rho);

/// 2|alpha delta - beta gamma| for a normalized two-qubit pure state.
double pure_concurrence(Complex alpha, Complex beta, Complex gamma, Complex delta);

}  // namespace entdetect

#endif

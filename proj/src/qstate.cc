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

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <set>
#include <stdexcept>

namespace entdetect {

namespace {

constexpr size_t kMaxQubits = 20;
constexpr double kMatrixTolerance = 1e-10;
constexpr double kEigenClip = 1e-12;
/// Eigenvalues of rho at or below this are roundoff and treated as zero.
constexpr double kRankCutoff = 1e-13;

using Entries = DensityMatrix::Entries;

Entries matmul(const Entries &a, const Entries &b) {
    Entries out{};
    for (size_t i = 0; i < 4; i++) {
        for (size_t k = 0; k < 4; k++) {
            for (size_t j = 0; j < 4; j++) {
                out[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    return out;
}

Entries adjoint(const Entries &a) {
    Entries out{};
    for (size_t i = 0; i < 4; i++) {
        for (size_t j = 0; j < 4; j++) {
            out[i][j] = std::conj(a[j][i]);
        }
    }
    return out;
}

Entries spin_flip_operator() {
    Mat2 y = pauli_y();
    Entries out{};
    for (size_t i = 0; i < 4; i++) {
        for (size_t j = 0; j < 4; j++) {
            out[i][j] = y[i >> 1][j >> 1] * y[i & 1][j & 1];
        }
    }
    return out;
}

}  // namespace

Mat2 hadamard() {
    const double h = std::numbers::sqrt2 / 2;
    return {{{h, h}, {h, -h}}};
}

Mat2 pauli_y() {
    return {{{0.0, Complex{0, -1}}, {Complex{0, 1}, 0.0}}};
}

PureState::PureState(std::vector<std::string> labels, std::vector<Complex> amplitudes, bool subnormalized)
    : labels_(std::move(labels)), amplitudes_(std::move(amplitudes)), subnormalized_(subnormalized) {
    if (labels_.empty() || labels_.size() > kMaxQubits) {
        throw std::invalid_argument("PureState needs between 1 and 20 subsystems.");
    }
    std::set<std::string> seen;
    for (const auto &label : labels_) {
        if (label.empty()) {
            throw std::invalid_argument("PureState labels must be non-empty.");
        }
        if (!seen.insert(label).second) {
            throw std::invalid_argument("Duplicate subsystem label '" + label + "'.");
        }
    }
    if (amplitudes_.size() != (uint64_t{1} << labels_.size())) {
        throw std::invalid_argument(
            "PureState over " + std::to_string(labels_.size()) + " subsystems needs " +
            std::to_string(uint64_t{1} << labels_.size()) + " amplitudes, got " + std::to_string(amplitudes_.size()) +
            ".");
    }
    for (const auto &a : amplitudes_) {
        if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
            throw std::invalid_argument("PureState amplitudes must be finite.");
        }
    }
    double n2 = norm_squared();
    if (subnormalized_) {
        if (n2 > 1 + kNormTolerance) {
            throw std::invalid_argument("Subnormalized state has squared norm " + std::to_string(n2) + " > 1.");
        }
    } else if (std::abs(n2 - 1) > kNormTolerance) {
        throw std::invalid_argument(
            "State is not normalized (squared norm " + std::to_string(n2) + "); flag it subnormalized if intended.");
    }
}

PureState PureState::basis(std::vector<std::string> labels, uint64_t index) {
    if (labels.size() > kMaxQubits || index >= (uint64_t{1} << labels.size())) {
        throw std::invalid_argument("Basis index out of range.");
    }
    std::vector<Complex> amps(uint64_t{1} << labels.size());
    amps[index] = 1;
    return PureState(std::move(labels), std::move(amps));
}

PureState PureState::qubit(std::string label, Complex a0, Complex a1) {
    return PureState({std::move(label)}, {a0, a1});
}

PureState PureState::plus(std::string label) {
    const double h = std::numbers::sqrt2 / 2;
    return qubit(std::move(label), h, h);
}

bool PureState::has_label(std::string_view label) const {
    return std::find(labels_.begin(), labels_.end(), label) != labels_.end();
}

size_t PureState::index_of(std::string_view label) const {
    auto it = std::find(labels_.begin(), labels_.end(), label);
    if (it == labels_.end()) {
        throw std::invalid_argument("Unknown subsystem label '" + std::string(label) + "'.");
    }
    return static_cast<size_t>(it - labels_.begin());
}

double PureState::norm_squared() const {
    double total = 0;
    for (const auto &a : amplitudes_) {
        total += std::norm(a);
    }
    return total;
}

PureState PureState::normalized() const {
    double n2 = norm_squared();
    if (n2 <= 0) {
        throw std::domain_error("Cannot normalize a zero state.");
    }
    double scale = 1 / std::sqrt(n2);
    std::vector<Complex> amps(amplitudes_);
    for (auto &a : amps) {
        a *= scale;
    }
    return PureState(labels_, std::move(amps));
}

PureState PureState::reordered(const std::vector<std::string> &order) const {
    if (order.size() != labels_.size()) {
        throw std::invalid_argument("Reordering must name every subsystem exactly once.");
    }
    std::vector<size_t> src_shift(order.size());
    for (size_t k = 0; k < order.size(); k++) {
        src_shift[k] = bit_of(order[k]);
    }
    size_t n = order.size();
    std::vector<Complex> amps(amplitudes_.size());
    for (uint64_t dst = 0; dst < amps.size(); dst++) {
        uint64_t src = 0;
        for (size_t k = 0; k < n; k++) {
            uint64_t bit = (dst >> (n - 1 - k)) & 1;
            src |= bit << src_shift[k];
        }
        amps[dst] = amplitudes_[src];
    }
    return PureState(order, std::move(amps), subnormalized_);
}

PureState PureState::as_subnormalized() const {
    return PureState(labels_, amplitudes_, true);
}

PureState tensor(const PureState &s1, const PureState &s2) {
    std::vector<std::string> labels = s1.labels();
    for (const auto &label : s2.labels()) {
        if (s1.has_label(label)) {
            throw std::invalid_argument("tensor: label '" + label + "' appears in both states.");
        }
        labels.push_back(label);
    }
    auto a = s1.amplitudes();
    auto b = s2.amplitudes();
    std::vector<Complex> amps;
    amps.reserve(a.size() * b.size());
    for (const auto &x : a) {
        for (const auto &y : b) {
            amps.push_back(x * y);
        }
    }
    return PureState(std::move(labels), std::move(amps), s1.subnormalized() || s2.subnormalized());
}

PureState apply_1q(const PureState &s, std::string_view label, const Mat2 &m) {
    uint64_t mask = uint64_t{1} << s.bit_of(label);
    auto in = s.amplitudes();
    std::vector<Complex> out(in.begin(), in.end());
    for (uint64_t i = 0; i < out.size(); i++) {
        if (i & mask) {
            continue;
        }
        Complex a0 = in[i];
        Complex a1 = in[i | mask];
        out[i] = m[0][0] * a0 + m[0][1] * a1;
        out[i | mask] = m[1][0] * a0 + m[1][1] * a1;
    }
    bool sub = s.subnormalized();
    if (!sub) {
        double n2 = 0;
        for (const auto &a : out) {
            n2 += std::norm(a);
        }
        sub = n2 < 1 - kNormTolerance;
    }
    return PureState(s.labels(), std::move(out), sub);
}

PureState apply_diagonal_2q(
    const PureState &s, std::string_view first, std::string_view second, const std::array<Complex, 4> &diag) {
    size_t b1 = s.bit_of(first);
    size_t b2 = s.bit_of(second);
    if (b1 == b2) {
        throw std::invalid_argument("apply_diagonal_2q needs two distinct subsystems.");
    }
    auto in = s.amplitudes();
    std::vector<Complex> out(in.size());
    double n2 = 0;
    for (uint64_t i = 0; i < in.size(); i++) {
        size_t k = (((i >> b1) & 1) << 1) | ((i >> b2) & 1);
        out[i] = in[i] * diag[k];
        n2 += std::norm(out[i]);
    }
    bool sub = s.subnormalized() || n2 < 1 - kNormTolerance;
    return PureState(s.labels(), std::move(out), sub);
}

std::vector<MeasurementBranch> measure(const PureState &s, std::string_view label, MeasureBasis basis) {
    const double h = std::numbers::sqrt2 / 2;
    std::array<std::array<Complex, 2>, 2> kets;
    std::array<std::string, 2> names;
    switch (basis) {
        case MeasureBasis::kComputational:
            kets = {{{1, 0}, {0, 1}}};
            names = {"0", "1"};
            break;
        case MeasureBasis::kPlusMinus:
            kets = {{{h, h}, {h, -h}}};
            names = {"+", "-"};
            break;
        default:
            throw std::invalid_argument("measure: unsupported basis.");
    }
    uint64_t mask = uint64_t{1} << s.bit_of(label);
    auto in = s.amplitudes();
    std::vector<MeasurementBranch> branches;
    for (size_t k = 0; k < 2; k++) {
        const auto &v = kets[k];
        // Projector |v><v| on the measured subsystem.
        std::vector<Complex> out(in.size());
        double p = 0;
        for (uint64_t i = 0; i < in.size(); i++) {
            if (i & mask) {
                continue;
            }
            Complex overlap = std::conj(v[0]) * in[i] + std::conj(v[1]) * in[i | mask];
            out[i] = v[0] * overlap;
            out[i | mask] = v[1] * overlap;
            p += std::norm(overlap);
        }
        if (p > 0) {
            double scale = 1 / std::sqrt(p);
            for (auto &a : out) {
                a *= scale;
            }
            branches.push_back({names[k], p, PureState(s.labels(), std::move(out))});
        } else {
            branches.push_back({names[k], 0.0, PureState(s.labels(), std::move(out), true)});
        }
    }
    return branches;
}

PureState condition_on(const PureState &s, std::string_view label, const std::array<Complex, 2> &bra) {
    if (s.num_qubits() < 2) {
        throw std::invalid_argument("condition_on needs a subsystem left over after contraction.");
    }
    size_t pos = s.index_of(label);
    size_t shift = s.bit_of(label);
    std::vector<std::string> labels = s.labels();
    labels.erase(labels.begin() + static_cast<std::ptrdiff_t>(pos));
    auto in = s.amplitudes();
    std::vector<Complex> out(in.size() / 2);
    uint64_t low_mask = (uint64_t{1} << shift) - 1;
    for (uint64_t j = 0; j < out.size(); j++) {
        uint64_t i0 = ((j & ~low_mask) << 1) | (j & low_mask);
        uint64_t i1 = i0 | (uint64_t{1} << shift);
        out[j] = std::conj(bra[0]) * in[i0] + std::conj(bra[1]) * in[i1];
    }
    return PureState(std::move(labels), std::move(out), true);
}

Complex inner_product(const PureState &s1, const PureState &s2) {
    if (s1.num_qubits() != s2.num_qubits()) {
        throw std::invalid_argument("inner_product: label sets differ.");
    }
    for (const auto &label : s1.labels()) {
        if (!s2.has_label(label)) {
            throw std::invalid_argument("inner_product: label '" + label + "' missing from second state.");
        }
    }
    PureState aligned = s2.reordered(s1.labels());
    auto a = s1.amplitudes();
    auto b = aligned.amplitudes();
    Complex total = 0;
    for (size_t i = 0; i < a.size(); i++) {
        total += std::conj(a[i]) * b[i];
    }
    return total;
}

double fidelity(const PureState &s1, const PureState &s2) {
    double n1 = s1.norm_squared();
    double n2 = s2.norm_squared();
    if (n1 <= 0 || n2 <= 0) {
        throw std::domain_error("fidelity is undefined for a zero state.");
    }
    double f = std::norm(inner_product(s1, s2)) / (n1 * n2);
    return std::min(1.0, f);
}

DensityMatrix::DensityMatrix(const Entries &entries) : entries_(entries) {
    Complex trace = 0;
    for (size_t i = 0; i < kDim; i++) {
        trace += entries_[i][i];
        for (size_t j = 0; j < kDim; j++) {
            const Complex &e = entries_[i][j];
            if (!std::isfinite(e.real()) || !std::isfinite(e.imag())) {
                throw std::invalid_argument("Density matrix entries must be finite.");
            }
            if (std::abs(e - std::conj(entries_[j][i])) > kMatrixTolerance) {
                throw std::invalid_argument("Density matrix is not Hermitian.");
            }
        }
    }
    if (std::abs(trace - 1.0) > kMatrixTolerance) {
        throw std::invalid_argument("Density matrix trace is not 1.");
    }
    auto eig = hermitian_eigen(entries_);
    if (eig.values[0] < -kMatrixTolerance) {
        throw std::invalid_argument(
            "Density matrix is not positive semidefinite (eigenvalue " + std::to_string(eig.values[0]) + ").");
    }
}

DensityMatrix DensityMatrix::from_pure(std::span<const Complex, kDim> amplitudes) {
    Entries e{};
    for (size_t i = 0; i < kDim; i++) {
        for (size_t j = 0; j < kDim; j++) {
            e[i][j] = amplitudes[i] * std::conj(amplitudes[j]);
        }
    }
    return DensityMatrix(e);
}

DensityMatrix DensityMatrix::from_pure(const PureState &two_qubits) {
    if (two_qubits.num_qubits() != 2) {
        throw std::invalid_argument("from_pure needs a two-qubit state.");
    }
    PureState n = two_qubits.normalized();
    return from_pure(std::span<const Complex, kDim>(n.amplitudes().data(), kDim));
}

DensityMatrix DensityMatrix::maximally_mixed() {
    Entries e{};
    for (size_t i = 0; i < kDim; i++) {
        e[i][i] = 0.25;
    }
    return DensityMatrix(e);
}

DensityMatrix DensityMatrix::werner(double p) {
    if (!(p >= 0 && p <= 1)) {
        throw std::invalid_argument("Werner weight must lie in [0, 1].");
    }
    Entries e{};
    for (size_t i = 0; i < kDim; i++) {
        e[i][i] = (1 - p) / 4;
    }
    // Singlet (|01> - |10>)/sqrt2.
    e[1][1] += p / 2;
    e[2][2] += p / 2;
    e[1][2] -= p / 2;
    e[2][1] -= p / 2;
    return DensityMatrix(e);
}

DensityMatrix reduced_density(const PureState &s, std::string_view first, std::string_view second) {
    std::vector<std::string> order{std::string(first), std::string(second)};
    if (order[0] == order[1]) {
        throw std::invalid_argument("reduced_density needs two distinct subsystems.");
    }
    for (const auto &label : s.labels()) {
        if (label != order[0] && label != order[1]) {
            order.push_back(label);
        }
    }
    PureState r = s.reordered(order);
    double n2 = r.norm_squared();
    if (n2 <= 0) {
        throw std::domain_error("reduced_density of a zero state.");
    }
    auto amps = r.amplitudes();
    size_t rest = amps.size() / 4;
    Entries e{};
    for (size_t i = 0; i < 4; i++) {
        for (size_t j = 0; j < 4; j++) {
            Complex total = 0;
            for (size_t k = 0; k < rest; k++) {
                total += amps[i * rest + k] * std::conj(amps[j * rest + k]);
            }
            e[i][j] = total / n2;
        }
    }
    for (size_t i = 0; i < 4; i++) {
        e[i][i] = e[i][i].real();
        for (size_t j = i + 1; j < 4; j++) {
            e[j][i] = std::conj(e[i][j]);
        }
    }
    return DensityMatrix(e);
}

HermitianEigen hermitian_eigen(const Entries &m) {
    constexpr size_t n = DensityMatrix::kDim;
    Entries a = m;
    Entries v{};
    for (size_t i = 0; i < n; i++) {
        v[i][i] = 1;
    }
    double scale = 0;
    for (size_t i = 0; i < n; i++) {
        for (size_t j = 0; j < n; j++) {
            scale = std::max(scale, std::abs(a[i][j]));
        }
    }
    for (int sweep = 0; sweep < 64; sweep++) {
        double off = 0;
        for (size_t p = 0; p < n; p++) {
            for (size_t q = p + 1; q < n; q++) {
                off += std::norm(a[p][q]);
            }
        }
        if (off <= 1e-32 * scale * scale || off == 0) {
            break;
        }
        for (size_t p = 0; p < n; p++) {
            for (size_t q = p + 1; q < n; q++) {
                double mag = std::abs(a[p][q]);
                if (mag == 0) {
                    continue;
                }
                // Phase out a[p][q], then a real symmetric Jacobi rotation.
                Complex phase = a[p][q] / mag;
                double app = a[p][p].real();
                double aqq = a[q][q].real();
                double tau = (aqq - app) / (2 * mag);
                double t = (tau >= 0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1 + tau * tau));
                double c = 1 / std::sqrt(1 + t * t);
                double s = t * c;
                // G restricted to (p, q).
                Complex gpp = c;
                Complex gpq = s;
                Complex gqp = -s * std::conj(phase);
                Complex gqq = c * std::conj(phase);
                for (size_t k = 0; k < n; k++) {
                    Complex akp = a[k][p];
                    Complex akq = a[k][q];
                    a[k][p] = akp * gpp + akq * gqp;
                    a[k][q] = akp * gpq + akq * gqq;
                    Complex vkp = v[k][p];
                    Complex vkq = v[k][q];
                    v[k][p] = vkp * gpp + vkq * gqp;
                    v[k][q] = vkp * gpq + vkq * gqq;
                }
                for (size_t k = 0; k < n; k++) {
                    Complex apk = a[p][k];
                    Complex aqk = a[q][k];
                    a[p][k] = std::conj(gpp) * apk + std::conj(gqp) * aqk;
                    a[q][k] = std::conj(gpq) * apk + std::conj(gqq) * aqk;
                }
                a[p][q] = 0;
                a[q][p] = 0;
            }
        }
    }
    std::array<size_t, n> order{0, 1, 2, 3};
    std::sort(order.begin(), order.end(), [&](size_t x, size_t y) { return a[x][x].real() < a[y][y].real(); });
    HermitianEigen out{};
    for (size_t k = 0; k < n; k++) {
        out.values[k] = a[order[k]][order[k]].real();
        for (size_t i = 0; i < n; i++) {
            out.vectors[i][k] = v[i][order[k]];
        }
    }
    return out;
}

double wootters_concurrence(const DensityMatrix &rho) {
    // rho = W W^dagger with W_k = sqrt(lambda_k) v_k. The lambdas of the spin-flip formula are
    // the singular values of tau = W^T (sigma_y x sigma_y) W.
    HermitianEigen er = hermitian_eigen(rho.entries());
    Entries w{};
    for (size_t k = 0; k < 4; k++) {
        if (er.values[k] <= kRankCutoff) {
            continue;
        }
        double s = std::sqrt(er.values[k]);
        for (size_t i = 0; i < 4; i++) {
            w[i][k] = s * er.vectors[i][k];
        }
    }
    Entries wt{};
    for (size_t i = 0; i < 4; i++) {
        for (size_t j = 0; j < 4; j++) {
            wt[i][j] = w[j][i];
        }
    }
    Entries tau = matmul(matmul(wt, spin_flip_operator()), w);

    Entries m = matmul(adjoint(tau), tau);
    Entries mh = adjoint(m);
    for (size_t i = 0; i < 4; i++) {
        for (size_t j = 0; j < 4; j++) {
            m[i][j] = (m[i][j] + mh[i][j]) * 0.5;
        }
    }
    HermitianEigen em = hermitian_eigen(m);

    std::array<double, 4> lambda{};
    for (size_t k = 0; k < 4; k++) {
        double mu = em.values[k];
        if (mu < 0) {
            if (mu < -kEigenClip) {
                throw std::domain_error("wootters_concurrence: spin-flipped product has a negative eigenvalue.");
            }
            mu = 0;
        }
        lambda[k] = std::sqrt(mu);
    }
    std::sort(lambda.begin(), lambda.end(), std::greater<>());
    double c = lambda[0] - lambda[1] - lambda[2] - lambda[3];
    return std::clamp(c, 0.0, 1.0);
}

double pure_concurrence(Complex alpha, Complex beta, Complex gamma, Complex delta) {
    double n2 = std::norm(alpha) + std::norm(beta) + std::norm(gamma) + std::norm(delta);
    if (std::abs(n2 - 1) > kNormTolerance) {
        throw std::invalid_argument("pure_concurrence: amplitudes are not normalized.");
    }
    return 2 * std::abs(alpha * delta - beta * gamma);
}

}  // namespace entdetect

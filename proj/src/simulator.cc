// Copyright 2026 The authq Authors
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

#include "authq/simulator.h"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <numbers>

#include "authq/errors.h"

namespace authq {

namespace {

void check_cap(std::size_t n, std::size_t cap, const char *what) {
    if (n > cap) {
        throw BudgetError(std::string(what) + ": " + std::to_string(n) + " qubits exceeds cap of " +
                          std::to_string(cap));
    }
}

std::size_t dim_of(std::size_t n) { return std::size_t{1} << n; }

}  // namespace

Mat2 gate_matrix(const Gate &g) {
    Mat2 m;
    const double half = g.angle / 2;
    const Complex i(0, 1);
    switch (g.kind) {
        case GateKind::H: {
            const double s = 1 / std::numbers::sqrt2;
            m << s, s, s, -s;
            break;
        }
        case GateKind::X:
            m << 0, 1, 1, 0;
            break;
        case GateKind::RZ:
            m << std::exp(-i * half), 0, 0, std::exp(i * half);
            break;
        case GateKind::RY:
            m << std::cos(half), -std::sin(half), std::sin(half), std::cos(half);
            break;
        case GateKind::GPHASE:
            m = std::exp(i * g.angle) * Mat2::Identity();
            break;
        case GateKind::CNOT:
            throw ArgumentError("gate_matrix: CNOT is not a single-qubit gate");
    }
    return m;
}

StateVector::StateVector(std::size_t num_qubits, Vector amplitudes)
    : num_qubits_(num_qubits), amplitudes_(std::move(amplitudes)) {
    check_cap(num_qubits, kMaxStateQubits, "state vector");
    if (static_cast<std::size_t>(amplitudes_.size()) != dim_of(num_qubits)) {
        throw WidthError("state vector: " + std::to_string(amplitudes_.size()) + " amplitudes for " +
                         std::to_string(num_qubits) + " qubits");
    }
    if (std::abs(amplitudes_.squaredNorm() - 1.0) > 1e-8) {
        throw ArgumentError("state vector is not normalized (norm^2 = " + std::to_string(amplitudes_.squaredNorm()) +
                            ")");
    }
}

StateVector StateVector::basis(std::size_t num_qubits, std::uint64_t index) {
    check_cap(num_qubits, kMaxStateQubits, "state vector");
    if (index >= dim_of(num_qubits)) {
        throw ArgumentError("basis index " + std::to_string(index) + " out of range for " +
                            std::to_string(num_qubits) + " qubits");
    }
    Vector v = Vector::Zero(static_cast<Eigen::Index>(dim_of(num_qubits)));
    v[static_cast<Eigen::Index>(index)] = 1.0;
    return StateVector(num_qubits, std::move(v));
}

StateVector StateVector::random(std::size_t num_qubits, Rng &rng) {
    check_cap(num_qubits, kMaxStateQubits, "state vector");
    std::normal_distribution<double> normal;
    Vector v(static_cast<Eigen::Index>(dim_of(num_qubits)));
    for (auto &a : v) {
        a = Complex(normal(rng), normal(rng));
    }
    return normalized(num_qubits, std::move(v));
}

StateVector StateVector::normalized(std::size_t num_qubits, Vector amplitudes) {
    double n = amplitudes.norm();
    if (n < 1e-300) {
        throw ArgumentError("cannot normalize a zero vector");
    }
    amplitudes /= n;
    return StateVector(num_qubits, std::move(amplitudes));
}

StateVector tensor(const StateVector &a, const StateVector &b) {
    const auto &va = a.amplitudes();
    const auto &vb = b.amplitudes();
    Vector out(va.size() * vb.size());
    for (Eigen::Index i = 0; i < va.size(); i++) {
        out.segment(i * vb.size(), vb.size()) = va[i] * vb;
    }
    return StateVector(a.num_qubits() + b.num_qubits(), std::move(out));
}

Complex inner(const StateVector &a, const StateVector &b) {
    if (a.num_qubits() != b.num_qubits()) {
        throw WidthError("inner product of states with different widths");
    }
    return a.amplitudes().dot(b.amplitudes());
}

double fidelity(const StateVector &a, const StateVector &b) { return std::norm(inner(a, b)); }

DensityMatrix::DensityMatrix(std::size_t num_qubits, Matrix rho) : num_qubits_(num_qubits), rho_(std::move(rho)) {
    check_cap(num_qubits, kMaxDensityQubits, "density matrix");
    auto d = static_cast<Eigen::Index>(dim_of(num_qubits));
    if (rho_.rows() != d || rho_.cols() != d) {
        throw WidthError("density matrix dimension does not match " + std::to_string(num_qubits) + " qubits");
    }
}

DensityMatrix DensityMatrix::pure(const StateVector &psi) {
    return DensityMatrix(psi.num_qubits(), psi.amplitudes() * psi.amplitudes().adjoint());
}

DensityMatrix DensityMatrix::maximally_mixed(std::size_t num_qubits) {
    auto d = static_cast<Eigen::Index>(dim_of(num_qubits));
    return DensityMatrix(num_qubits, Matrix::Identity(d, d) / static_cast<double>(d));
}

double DensityMatrix::purity() const { return (rho_ * rho_).trace().real(); }

void DensityMatrix::validate(double tol) const {
    if ((rho_ - rho_.adjoint()).cwiseAbs().maxCoeff() > tol) {
        throw ArgumentError("density matrix is not Hermitian");
    }
    if (std::abs(rho_.trace() - Complex(1.0)) > tol) {
        throw ArgumentError("density matrix trace is not 1");
    }
    Eigen::SelfAdjointEigenSolver<Matrix> es(rho_);
    if (es.eigenvalues().minCoeff() < -1e-8) {
        throw ArgumentError("density matrix has a negative eigenvalue");
    }
}

DensityMatrix tensor(const DensityMatrix &a, const DensityMatrix &b) {
    const auto &ma = a.matrix();
    const auto &mb = b.matrix();
    Matrix out(ma.rows() * mb.rows(), ma.cols() * mb.cols());
    for (Eigen::Index r = 0; r < ma.rows(); r++) {
        for (Eigen::Index c = 0; c < ma.cols(); c++) {
            out.block(r * mb.rows(), c * mb.cols(), mb.rows(), mb.cols()) = ma(r, c) * mb;
        }
    }
    return DensityMatrix(a.num_qubits() + b.num_qubits(), std::move(out));
}

double fidelity(const DensityMatrix &rho, const StateVector &psi) {
    if (rho.num_qubits() != psi.num_qubits()) {
        throw WidthError("fidelity: widths differ");
    }
    return psi.amplitudes().dot(rho.matrix() * psi.amplitudes()).real();
}

double trace_distance(const DensityMatrix &a, const DensityMatrix &b) {
    if (a.num_qubits() != b.num_qubits()) {
        throw WidthError("trace distance: widths differ");
    }
    Eigen::SelfAdjointEigenSolver<Matrix> es(a.matrix() - b.matrix());
    return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

namespace {

// Applies the row operation of a single-qubit gate to every column of `m`
// (a vector is the one-column case).
template <typename Mat>
void apply_single(const Mat2 &u, std::size_t q, std::size_t num_qubits, Mat &m) {
    const std::size_t stride = std::size_t{1} << (num_qubits - 1 - q);
    const std::size_t dim = std::size_t{1} << num_qubits;
    for (std::size_t base = 0; base < dim; base += 2 * stride) {
        for (std::size_t off = 0; off < stride; off++) {
            auto i0 = static_cast<Eigen::Index>(base + off);
            auto i1 = static_cast<Eigen::Index>(base + off + stride);
            for (Eigen::Index c = 0; c < m.cols(); c++) {
                Complex a0 = m(i0, c);
                Complex a1 = m(i1, c);
                m(i0, c) = u(0, 0) * a0 + u(0, 1) * a1;
                m(i1, c) = u(1, 0) * a0 + u(1, 1) * a1;
            }
        }
    }
}

template <typename Mat>
void apply_cnot(std::size_t control, std::size_t target, std::size_t num_qubits, Mat &m) {
    const std::size_t cbit = std::size_t{1} << (num_qubits - 1 - control);
    const std::size_t tbit = std::size_t{1} << (num_qubits - 1 - target);
    const std::size_t dim = std::size_t{1} << num_qubits;
    for (std::size_t i = 0; i < dim; i++) {
        if ((i & cbit) && !(i & tbit)) {
            m.row(static_cast<Eigen::Index>(i)).swap(m.row(static_cast<Eigen::Index>(i | tbit)));
        }
    }
}

template <typename Mat>
void apply_any(const Gate &g, std::size_t num_qubits, Mat &m) {
    switch (g.kind) {
        case GateKind::CNOT:
            apply_cnot(g.qubits[0], g.qubits[1], num_qubits, m);
            break;
        case GateKind::GPHASE:
            m *= std::exp(Complex(0, g.angle));
            break;
        case GateKind::X: {
                const std::size_t bit = std::size_t{1} << (num_qubits - 1 - g.qubits[0]);
                const std::size_t dim = std::size_t{1} << num_qubits;
                for (std::size_t i = 0; i < dim; i++) {
                    if (!(i & bit)) {
                        m.row(static_cast<Eigen::Index>(i)).swap(m.row(static_cast<Eigen::Index>(i | bit)));
                    }
                }
            break;
        }
        default:
            apply_single(gate_matrix(g), g.qubits[0], num_qubits, m);
    }
}

}  // namespace

void apply_gate(const Gate &g, std::size_t num_qubits, Vector &amps) {
    validate_gate(g, num_qubits);
    apply_any(g, num_qubits, amps);
}

StateVector apply(const GateSequence &seq, const StateVector &psi) {
    if (seq.num_qubits() != psi.num_qubits()) {
        throw WidthError("apply: sequence has " + std::to_string(seq.num_qubits()) + " qubits, state has " +
                         std::to_string(psi.num_qubits()));
    }
    Vector amps = psi.amplitudes();
    for (const auto &g : seq.gates()) {
        apply_any(g, seq.num_qubits(), amps);
    }
    return StateVector(seq.num_qubits(), std::move(amps));
}

Matrix to_matrix(const GateSequence &seq) {
    check_cap(seq.num_qubits(), kMaxMatrixQubits, "to_matrix");
    auto d = static_cast<Eigen::Index>(dim_of(seq.num_qubits()));
    Matrix m = Matrix::Identity(d, d);
    for (const auto &g : seq.gates()) {
        apply_any(g, seq.num_qubits(), m);
    }
    return m;
}

double unitarity_residual(const Matrix &u) {
    return (u.adjoint() * u - Matrix::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff();
}

PhaseMatch equal_up_to_phase(const Matrix &a, const Matrix &b, double tol) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw WidthError("equal_up_to_phase: dimensions differ");
    }
    Complex t = (a.adjoint() * b).trace();
    PhaseMatch out;
    out.overlap = std::abs(t) / static_cast<double>(a.rows());
    out.equal = out.overlap >= 1 - tol;
    if (out.equal) {
        out.theta = std::arg(t);
    }
    return out;
}

DensityMatrix partial_trace(const DensityMatrix &rho, std::span<const std::size_t> keep) {
    const std::size_t n = rho.num_qubits();
    std::vector<std::size_t> kept(keep.begin(), keep.end());
    std::sort(kept.begin(), kept.end());
    if (std::adjacent_find(kept.begin(), kept.end()) != kept.end() || (!kept.empty() && kept.back() >= n)) {
        throw ArgumentError("partial_trace: invalid qubit index set");
    }
    std::vector<std::size_t> traced;
    for (std::size_t q = 0; q < n; q++) {
        if (!std::binary_search(kept.begin(), kept.end(), q)) {
            traced.push_back(q);
        }
    }
    const std::size_t kd = dim_of(kept.size());
    const std::size_t td = dim_of(traced.size());
    // Compose a full index from (kept index, traced index).
    auto compose = [&](std::size_t ki, std::size_t ti) {
        std::size_t idx = 0;
        for (std::size_t j = 0; j < kept.size(); j++) {
            if (ki >> (kept.size() - 1 - j) & 1) {
                idx |= std::size_t{1} << (n - 1 - kept[j]);
            }
        }
        for (std::size_t j = 0; j < traced.size(); j++) {
            if (ti >> (traced.size() - 1 - j) & 1) {
                idx |= std::size_t{1} << (n - 1 - traced[j]);
            }
        }
        return static_cast<Eigen::Index>(idx);
    };
    Matrix out = Matrix::Zero(static_cast<Eigen::Index>(kd), static_cast<Eigen::Index>(kd));
    const auto &m = rho.matrix();
    for (std::size_t r = 0; r < kd; r++) {
        for (std::size_t c = 0; c < kd; c++) {
            Complex s = 0;
            for (std::size_t t = 0; t < td; t++) {
                s += m(compose(r, t), compose(c, t));
            }
            out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = s;
        }
    }
    return DensityMatrix(kept.size(), std::move(out));
}

DensityMatrix partial_trace(const StateVector &psi, std::span<const std::size_t> keep) {
    const std::size_t n = psi.num_qubits();
    std::vector<std::size_t> kept(keep.begin(), keep.end());
    std::sort(kept.begin(), kept.end());
    if (std::adjacent_find(kept.begin(), kept.end()) != kept.end() || (!kept.empty() && kept.back() >= n)) {
        throw ArgumentError("partial_trace: invalid qubit index set");
    }
    check_cap(kept.size(), kMaxDensityQubits, "partial_trace");
    std::vector<std::size_t> traced;
    for (std::size_t q = 0; q < n; q++) {
        if (!std::binary_search(kept.begin(), kept.end(), q)) {
            traced.push_back(q);
        }
    }
    // Reshape the amplitudes into a (kept x traced) matrix M; rho = M M^dagger.
    const std::size_t kd = dim_of(kept.size());
    const std::size_t td = dim_of(traced.size());
    Matrix m(static_cast<Eigen::Index>(kd), static_cast<Eigen::Index>(td));
    for (std::size_t idx = 0; idx < dim_of(n); idx++) {
        std::size_t ki = 0;
        std::size_t ti = 0;
        for (auto q : kept) {
            ki = (ki << 1) | ((idx >> (n - 1 - q)) & 1);
        }
        for (auto q : traced) {
            ti = (ti << 1) | ((idx >> (n - 1 - q)) & 1);
        }
        m(static_cast<Eigen::Index>(ki), static_cast<Eigen::Index>(ti)) = psi.amplitudes()[static_cast<Eigen::Index>(idx)];
    }
    return DensityMatrix(kept.size(), m * m.adjoint());
}

ProductSplit split_product(const StateVector &psi, std::size_t left_qubits) {
    const std::size_t n = psi.num_qubits();
    if (left_qubits == 0 || left_qubits >= n) {
        throw WidthError("split_product: cut must leave qubits on both sides");
    }
    const auto ld = static_cast<Eigen::Index>(dim_of(left_qubits));
    const auto rd = static_cast<Eigen::Index>(dim_of(n - left_qubits));
    // Row-major reshape: amplitude index = l * rd + r.
    Matrix m(ld, rd);
    for (Eigen::Index l = 0; l < ld; l++) {
        m.row(l) = psi.amplitudes().segment(l * rd, rd).transpose();
    }
    Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto &s = svd.singularValues();
    double purity = 0;
    for (Eigen::Index i = 0; i < s.size(); i++) {
        purity += std::pow(s[i], 4);
    }
    Vector left = svd.matrixU().col(0);
    Vector right = svd.matrixV().col(0).conjugate();
    return {purity, StateVector::normalized(left_qubits, std::move(left)),
            StateVector::normalized(n - left_qubits, std::move(right))};
}

}  // namespace authq

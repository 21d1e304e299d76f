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

#ifndef AUTHQ_SIMULATOR_H
#define AUTHQ_SIMULATOR_H

#include <Eigen/Dense>
#include <complex>
#include <cstddef>
#include <optional>
#include <span>

#include "authq/rng.h"
#include "authq/sequence.h"

namespace authq {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using Mat2 = Eigen::Matrix2cd;

inline constexpr std::size_t kMaxStateQubits = 24;
inline constexpr std::size_t kMaxMatrixQubits = 10;
inline constexpr std::size_t kMaxDensityQubits = 12;
inline constexpr double kDefaultTol = 1e-9;

/// 2x2 matrix of a single-qubit gate kind (H, X, RZ, RY). GPHASE yields exp(i theta) * I.
Mat2 gate_matrix(const Gate &g);

/// Normalized pure state on n qubits. Qubit 0 is the most significant bit of
/// the amplitude index.
class StateVector {
   public:
    StateVector(std::size_t num_qubits, Vector amplitudes);

    static StateVector basis(std::size_t num_qubits, std::uint64_t index);
    static StateVector random(std::size_t num_qubits, Rng &rng);
    /// Normalizes `amplitudes`; throws on a zero vector.
    static StateVector normalized(std::size_t num_qubits, Vector amplitudes);

    std::size_t num_qubits() const { return num_qubits_; }
    std::size_t dim() const { return static_cast<std::size_t>(amplitudes_.size()); }
    const Vector &amplitudes() const { return amplitudes_; }
    Vector &amplitudes() { return amplitudes_; }
    double norm() const { return amplitudes_.norm(); }

   private:
    std::size_t num_qubits_;
    Vector amplitudes_;
};

/// |a> (x) |b>, `a` occupying the lower-numbered qubits.
StateVector tensor(const StateVector &a, const StateVector &b);

/// <a|b>.
Complex inner(const StateVector &a, const StateVector &b);

/// |<a|b>|^2.
double fidelity(const StateVector &a, const StateVector &b);

class DensityMatrix {
   public:
    DensityMatrix(std::size_t num_qubits, Matrix rho);

    static DensityMatrix pure(const StateVector &psi);
    static DensityMatrix maximally_mixed(std::size_t num_qubits);

    std::size_t num_qubits() const { return num_qubits_; }
    const Matrix &matrix() const { return rho_; }
    Complex trace() const { return rho_.trace(); }
    double purity() const;
    /// Throws ArgumentError unless Hermitian, unit trace and PSD within tolerance.
    void validate(double tol = 1e-10) const;

   private:
    std::size_t num_qubits_;
    Matrix rho_;
};

DensityMatrix tensor(const DensityMatrix &a, const DensityMatrix &b);

/// <psi|rho|psi>.
double fidelity(const DensityMatrix &rho, const StateVector &psi);

/// Half the trace norm of (a - b).
double trace_distance(const DensityMatrix &a, const DensityMatrix &b);

/// In-place application of one gate to an amplitude vector over `num_qubits`.
void apply_gate(const Gate &g, std::size_t num_qubits, Vector &amps);

/// U|psi>, one gate at a time.
StateVector apply(const GateSequence &seq, const StateVector &psi);

/// Dense matrix of the sequence (product of gate matrices in execution order).
Matrix to_matrix(const GateSequence &seq);

/// max |U^dagger U - I| entry.
double unitarity_residual(const Matrix &u);

struct PhaseMatch {
    bool equal = false;
    /// Set when equal: b ~= exp(i theta) a.
    std::optional<double> theta;
    /// |tr(A^dagger B)| / dim.
    double overlap = 0.0;
};

/// True iff |tr(A^dagger B)| / dim >= 1 - tol.
PhaseMatch equal_up_to_phase(const Matrix &a, const Matrix &b, double tol = kDefaultTol);

/// Reduced state on the kept qubits, listed in ascending order.
DensityMatrix partial_trace(const DensityMatrix &rho, std::span<const std::size_t> keep);
DensityMatrix partial_trace(const StateVector &psi, std::span<const std::size_t> keep);

/// Schmidt split across the cut after the first `left_qubits` qubits.
struct ProductSplit {
    double purity = 0.0;  // purity of either reduced state
    StateVector left;
    StateVector right;
};
ProductSplit split_product(const StateVector &psi, std::size_t left_qubits);

}  // namespace authq

#endif

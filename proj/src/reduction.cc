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

#include "authq/reduction.h"

#include <cmath>
#include <numbers>

#include "authq/decompose.h"
#include "authq/errors.h"
#include "authq/keying.h"

namespace authq {

GateSequence controlize(const GateSequence &x) {
    const std::size_t control[] = {0};
    std::vector<Gate> out;
    out.reserve(x.size() * 8);
    for (Gate g : x.gates()) {
        for (std::size_t i = 0; i < g.arity(); i++) {
            g.qubits[i] += 1;
        }
        append_controlled(out, control, g);
    }
    return GateSequence(x.num_qubits() + 1, std::move(out));
}

namespace {

void require_single_qubit(const GateSequence &v, const char *what) {
    if (v.num_qubits() != 1) {
        throw WidthError(std::string(what) + " must act on exactly one qubit");
    }
}

}  // namespace

ModifiedInstance build_modified_instance(const GateSequence &x, const GateSequence &v_left,
                                         const GateSequence &v_right, const ShuffleConfig &cfg) {
    require_single_qubit(v_left, "V_L");
    require_single_qubit(v_right, "V_R");
    const std::size_t width = x.num_qubits() + 1;
    GateSequence built = embed_at(v_right, width, 0);
    built.append(controlize(x).gates());
    built.append(embed_at(v_left, width, 0).gates());
    GateSequence shuffled = shuffle(built, cfg);
    return {x, v_left, v_right, std::move(built), std::move(shuffled)};
}

StateVector instance_key(const GateSequence &v_right, int i) {
    require_single_qubit(v_right, "V_R");
    if (i != 0 && i != 1) {
        throw ArgumentError("single-qubit key index must be 0 or 1");
    }
    return apply(adjoint(v_right), StateVector::basis(1, static_cast<std::uint64_t>(i)));
}

StateVector instance_plus_key(const GateSequence &v_right) {
    require_single_qubit(v_right, "V_R");
    Vector plus(2);
    plus << 1 / std::numbers::sqrt2, 1 / std::numbers::sqrt2;
    return apply(adjoint(v_right), StateVector(1, plus));
}

IdentityVerdict exact_nonidentity_check(const GateSequence &x, double tol) {
    Matrix u = to_matrix(x);
    auto match = equal_up_to_phase(Matrix::Identity(u.rows(), u.cols()), u, tol);
    IdentityVerdict v;
    v.is_identity = match.equal;
    v.residual = 1 - match.overlap;
    if (match.theta) {
        double t = normalize_angle(GateKind::GPHASE, *match.theta);
        if (2 * std::numbers::pi - t < 1e-12) {
            t = 0;
        }
        v.theta = t;
    }
    return v;
}

namespace {

// Inputs spanning basis states plus relative phases against |0...0>.
std::vector<StateVector> input_battery(std::size_t n) {
    std::vector<StateVector> out;
    const std::size_t dim = std::size_t{1} << n;
    for (std::size_t b = 0; b < dim; b++) {
        out.push_back(StateVector::basis(n, b));
    }
    const double s = 1 / std::numbers::sqrt2;
    for (std::size_t b = 1; b < dim; b++) {
        Vector real = Vector::Zero(static_cast<Eigen::Index>(dim));
        real[0] = s;
        real[static_cast<Eigen::Index>(b)] = s;
        Vector imag = real;
        imag[static_cast<Eigen::Index>(b)] = Complex(0, s);
        out.emplace_back(n, real);
        out.emplace_back(n, imag);
    }
    return out;
}

}  // namespace

ForgeryCheck check_forged_key(const GateSequence &f, std::span<const StateVector> forged_keys,
                              std::span<const GateSequence> programs, double tol) {
    if (forged_keys.size() != programs.size() || programs.empty()) {
        throw ArgumentError("validate_forged_key: need one forged key per program");
    }
    const std::size_t l = forged_keys[0].num_qubits();
    const std::size_t n = programs[0].num_qubits();
    for (const auto &k : forged_keys) {
        if (k.num_qubits() != l) {
            throw WidthError("validate_forged_key: forged keys have different widths");
        }
    }
    for (const auto &p : programs) {
        if (p.num_qubits() != n) {
            throw WidthError("validate_forged_key: programs have different widths");
        }
    }
    if (f.num_qubits() != l + n) {
        throw WidthError("validate_forged_key: F acts on " + std::to_string(f.num_qubits()) +
                         " qubits, forged key + input need " + std::to_string(l + n));
    }
    ForgeryCheck c;
    for (std::size_t i = 0; i < forged_keys.size(); i++) {
        for (std::size_t j = 0; j < forged_keys.size(); j++) {
            double expected = i == j ? 1.0 : 0.0;
            double err = std::abs(inner(forged_keys[i], forged_keys[j]) - expected);
            c.worst_overlap_error = std::max(c.worst_overlap_error, err);
        }
    }
    c.orthonormal = c.worst_overlap_error <= tol;
    if (!c.orthonormal) {
        c.reason = "forged keys are not orthonormal";
        return c;
    }
    auto battery = input_battery(n);
    for (std::size_t i = 0; i < programs.size(); i++) {
        for (const auto &phi : battery) {
            auto r = run(f, forged_keys[i], phi, tol);
            if (r.entangled()) {
                c.worst_fidelity = 0;
                c.reason = "key " + std::to_string(i) + " leaves key and output entangled";
                return c;
            }
            double fid = fidelity(*r.output, apply(programs[i], phi));
            c.worst_fidelity = std::min(c.worst_fidelity, fid);
            if (fid < 1 - tol) {
                c.reason = "key " + std::to_string(i) + " does not perform program " + std::to_string(i);
                return c;
            }
        }
    }
    c.valid = true;
    return c;
}

bool validate_forged_key(const GateSequence &f, std::span<const StateVector> forged_keys,
                         std::span<const GateSequence> programs, double tol) {
    return check_forged_key(f, forged_keys, programs, tol).valid;
}

AttackerChannel keyed_attacker(const GateSequence &v_right_guess, std::size_t ancilla_qubits) {
    require_single_qubit(v_right_guess, "V_R guess");
    if (ancilla_qubits < 2) {
        throw WidthError("attacker needs at least two ancilla qubits (forged key, label)");
    }
    const std::size_t width = 1 + ancilla_qubits;
    GateSequence w = embed_at(v_right_guess, width, 0);
    w.push_back(Gate::cnot(0, 1));
    w.push_back(Gate::cnot(0, 2));
    GateSequence back = adjoint(v_right_guess);
    w.append(embed_at(back, width, 0).gates());
    w.append(embed_at(back, width, 1).gates());
    return {std::move(w), ancilla_qubits};
}

AttackerChannel plant_whitebox_attacker(const ModifiedInstance &inst, std::size_t ancilla_qubits) {
    return keyed_attacker(inst.v_right, ancilla_qubits);
}

namespace {

StateVector with_zero_ancilla(const StateVector &key, std::size_t ancilla) {
    return tensor(key, StateVector::basis(ancilla, 0));
}

}  // namespace

DensityMatrix apply_channel(const AttackerChannel &attacker, const DensityMatrix &key) {
    if (key.num_qubits() != 1) {
        throw WidthError("attacker channel takes a single-qubit key");
    }
    Matrix w = to_matrix(attacker.unitary);
    DensityMatrix in = tensor(key, DensityMatrix::pure(StateVector::basis(attacker.ancilla_qubits, 0)));
    DensityMatrix out(attacker.width(), w * in.matrix() * w.adjoint());
    const std::size_t keep[] = {0};
    return partial_trace(out, keep);
}

namespace {

// Splits W(|phi_i> |0>) into key and ancilla factors, with the joint phase on the ancilla side.
StateVector ancilla_factor(const AttackerChannel &attacker, const StateVector &key) {
    StateVector out = apply(attacker.unitary, with_zero_ancilla(key, attacker.ancilla_qubits));
    auto split = split_product(out, 1);
    if (split.purity < 1 - 1e-9) {
        throw ArgumentError("attacker output is entangled with the key; no forged key recorded");
    }
    // Fix the phase so that key (x) ancilla reproduces the output exactly, with the
    // key factor aligned to the honest input key.
    Complex key_phase = inner(split.left, key);
    StateVector aligned_key = StateVector::normalized(1, split.left.amplitudes() * (key_phase / std::abs(key_phase)));
    Complex ov = inner(tensor(aligned_key, split.right), out);
    return StateVector::normalized(attacker.ancilla_qubits, split.right.amplitudes() * (ov / std::abs(ov)));
}

}  // namespace

std::vector<StateVector> extracted_forged_keys(const ModifiedInstance &inst, const AttackerChannel &attacker) {
    std::vector<StateVector> keys;
    for (int i = 0; i < 2; i++) {
        StateVector anc = ancilla_factor(attacker, instance_key(inst.v_right, i));
        keys.push_back(split_product(anc, 1).left);
    }
    return keys;
}

double ancilla_overlap(const ModifiedInstance &inst, const AttackerChannel &attacker) {
    StateVector a0 = ancilla_factor(attacker, instance_key(inst.v_right, 0));
    StateVector a1 = ancilla_factor(attacker, instance_key(inst.v_right, 1));
    return std::abs(inner(a0, a1));
}

namespace {

InstanceClass classify(double p_basis, double p_plus, double threshold) {
    bool g1 = std::abs(p_basis - 1.0) < threshold && std::abs(p_plus - 0.5) < threshold;
    return g1 ? InstanceClass::g1 : InstanceClass::g0;
}

}  // namespace

DistinguishResult distinguish(const ModifiedInstance &inst, const AttackerChannel &attacker, double threshold) {
    if (attacker.unitary.num_qubits() != attacker.width()) {
        throw WidthError("attacker unitary width disagrees with its ancilla count");
    }
    StateVector phi0 = instance_key(inst.v_right, 0);
    StateVector plus = instance_plus_key(inst.v_right);
    DistinguishResult r;
    r.p_basis = fidelity(apply_channel(attacker, DensityMatrix::pure(phi0)), phi0);
    r.p_plus = fidelity(apply_channel(attacker, DensityMatrix::pure(plus)), plus);
    r.verdict = classify(r.p_basis, r.p_plus, threshold);
    return r;
}

DistinguishResult distinguish_with_stolen_keys(const ModifiedInstance &inst, const AttackerChannel &attacker,
                                               std::size_t stolen, StolenKeyModel model,
                                               std::uint64_t processing_seed, double threshold) {
    const std::size_t base = attacker.width();
    const std::size_t width = base + stolen;
    if (width > kMaxMatrixQubits) {
        throw BudgetError("distinguish_with_stolen_keys: too many stolen keys for dense simulation");
    }
    // Stolen-key register.
    DensityMatrix stolen_rho = DensityMatrix::maximally_mixed(std::max<std::size_t>(stolen, 1));
    if (stolen == 0) {
        stolen_rho = DensityMatrix::pure(StateVector::basis(1, 0));
    } else if (model == StolenKeyModel::honest_mixture) {
        const std::size_t dim = std::size_t{1} << stolen;
        Matrix sum = Matrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
        GateSequence rot(stolen);
        for (std::size_t q = 0; q < stolen; q++) {
            rot.append(embed_at(adjoint(inst.v_right), stolen, q).gates());
        }
        for (std::size_t idx = 0; idx < dim; idx++) {
            StateVector phi = apply(rot, StateVector::basis(stolen, idx));
            sum += phi.amplitudes() * phi.amplitudes().adjoint();
        }
        stolen_rho = DensityMatrix(stolen, sum / static_cast<double>(dim));
    }
    const std::size_t sim_width = stolen == 0 ? base + 1 : width;

    // W on key + ancillae, then arbitrary processing touching every register.
    GateSequence full = embed_at(attacker.unitary, sim_width, 0);
    std::vector<std::size_t> all(sim_width);
    for (std::size_t q = 0; q < sim_width; q++) {
        all[q] = q;
    }
    if (stolen > 0) {
        Rng rng(processing_seed);
        full.append(sample_random_sequence(all, sim_width, 6 * sim_width, rng).gates());
    }
    Matrix u = to_matrix(full);

    auto gamma_fidelity = [&](const StateVector &key) {
        DensityMatrix in = tensor(tensor(DensityMatrix::pure(key),
                                         DensityMatrix::pure(StateVector::basis(attacker.ancilla_qubits, 0))),
                                  stolen_rho);
        DensityMatrix out(sim_width, u * in.matrix() * u.adjoint());
        const std::size_t keep[] = {0};
        return fidelity(partial_trace(out, keep), key);
    };
    DistinguishResult r;
    r.p_basis = gamma_fidelity(instance_key(inst.v_right, 0));
    r.p_plus = gamma_fidelity(instance_plus_key(inst.v_right));
    r.verdict = classify(r.p_basis, r.p_plus, threshold);
    return r;
}

}  // namespace authq

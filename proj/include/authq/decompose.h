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

#ifndef AUTHQ_DECOMPOSE_H
#define AUTHQ_DECOMPOSE_H

#include <cstddef>
#include <span>
#include <vector>

#include "authq/simulator.h"

namespace authq {

/// u = exp(i phase) * RZ(beta) * RY(gamma) * RZ(delta).
struct ZyzAngles {
    double phase = 0;
    double beta = 0;
    double gamma = 0;
    double delta = 0;
};

ZyzAngles zyz_decompose(const Mat2 &u);

/// Principal square root of a 2x2 unitary.
Mat2 unitary_sqrt(const Mat2 &u);

/// Emits gates implementing `u` exactly (global phase included) on qubit q.
void append_single_qubit(std::vector<Gate> &out, const Mat2 &u, std::size_t q);

/// Six-CNOT Toffoli with RZ(+-pi/4), H and one GPHASE(pi/8) correction.
void append_toffoli(std::vector<Gate> &out, std::size_t a, std::size_t b, std::size_t target);

/// `u` on `target`, applied only when every control is |1>. Exact, ancilla-free:
/// one control uses the A.X.B.X.C construction, more controls recurse on sqrt(u).
void append_multi_controlled(std::vector<Gate> &out, std::span<const std::size_t> controls, std::size_t target,
                             const Mat2 &u);

/// Controlled version of one elementary gate. GPHASE turns into a phase on the controls.
void append_controlled(std::vector<Gate> &out, std::span<const std::size_t> controls, const Gate &g);

}  // namespace authq

#endif

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

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "authq/errors.h"
#include "authq/io.h"
#include "authq/keying.h"
#include "authq/pga.h"
#include "authq/protocol.h"
#include "authq/reduction.h"
#include "authq/shuffler.h"
#include "authq/simulator.h"

namespace py = pybind11;
using namespace authq;

namespace {

StateVector to_state(const Vector &amps) {
    auto dim = static_cast<std::size_t>(amps.size());
    std::size_t n = 0;
    while ((std::size_t{1} << n) < dim) {
        n++;
    }
    if (dim == 0 || (std::size_t{1} << n) != dim) {
        throw ArgumentError("state length must be a power of two");
    }
    return StateVector(n, amps);
}

ShuffleConfig shuffle_config(std::size_t steps, std::optional<std::size_t> q, std::uint64_t seed) {
    ShuffleConfig cfg;
    cfg.steps = steps;
    cfg.target_length = q;
    cfg.seed = seed;
    return cfg;
}

py::dict run_result(const RunResult &r) {
    py::dict d;
    d["purity"] = r.purity;
    d["entangled"] = r.entangled();
    d["output"] = r.output ? py::cast(r.output->amplitudes()) : py::none();
    d["used_key"] = r.used_key ? py::cast(r.used_key->amplitudes()) : py::none();
    return d;
}

ProgramSpec make_spec(const std::vector<GateSequence> &programs, std::size_t k, std::size_t m, std::uint64_t seed,
                      std::size_t scrambler_length) {
    if (programs.empty()) {
        throw ArgumentError("need at least one program");
    }
    if (m < k) {
        throw WidthError("key width m must be at least k");
    }
    ProgramSpec spec;
    spec.programs = programs;
    spec.k = k;
    spec.m = m;
    spec.n = programs.front().num_qubits();
    spec.seed = seed;
    sample_dummy_scramblers(spec, scrambler_length);
    spec.validate();
    return spec;
}

}  // namespace

PYBIND11_MODULE(_authq, m) {
    m.doc() = "Authorized quantum computation toy lab";

    auto error = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<ParseError>(m, "ParseError", error);
    py::register_exception<WidthError>(m, "WidthError", error);
    py::register_exception<AuthenticityError>(m, "AuthenticityError", error);
    py::register_exception<BudgetError>(m, "BudgetError", error);
    py::register_exception<ArgumentError>(m, "ArgumentError", error);

    py::class_<GateSequence>(m, "GateSequence")
        .def(py::init([](const std::string &text) { return parse(text); }), py::arg("text"))
        .def(py::init<std::size_t>(), py::arg("num_qubits"))
        .def_property_readonly("num_qubits", &GateSequence::num_qubits)
        .def("__len__", &GateSequence::size)
        .def("__str__", [](const GateSequence &s) { return serialize(s); })
        .def("__eq__", [](const GateSequence &a, const GateSequence &b) { return a == b; })
        .def("digest", [](const GateSequence &s) { return digest(s).hex(); })
        .def("matrix", [](const GateSequence &s) { return to_matrix(s); })
        .def("apply", [](const GateSequence &s, const Vector &psi) { return apply(s, to_state(psi)).amplitudes(); })
        .def("adjoint", [](const GateSequence &s) { return adjoint(s); })
        .def("then", [](const GateSequence &a, const GateSequence &b) { return concat(a, b); }, py::arg("other"));

    m.def("parse", [](const std::string &text) { return parse(text); }, py::arg("text"));
    m.def("controlize", &controlize, py::arg("seq"));

    m.def("check_identity", [](const GateSequence &s, double tol) {
        auto v = exact_nonidentity_check(s, tol);
        py::dict d;
        d["is_identity"] = v.is_identity;
        d["theta"] = v.theta ? py::cast(*v.theta) : py::none();
        d["residual"] = v.residual;
        return d;
    }, py::arg("seq"), py::arg("tol") = kDefaultTol);

    m.def("shuffle", [](const GateSequence &s, std::size_t steps, std::optional<std::size_t> q, std::uint64_t seed) {
        return shuffle(s, shuffle_config(steps, q, seed));
    }, py::arg("seq"), py::arg("steps") = 200, py::arg("q") = py::none(), py::arg("seed") = 0);

    m.def("estimate_overlap", [](const GateSequence &a, const GateSequence &b, std::size_t samples, std::size_t steps,
                                 std::optional<std::size_t> q, std::uint64_t seed) {
        auto r = estimate_overlap(a, b, samples, shuffle_config(steps, q, seed));
        py::dict d;
        d["ratio"] = r.ratio;
        d["support_a"] = r.support_a;
        d["support_b"] = r.support_b;
        d["intersection"] = r.intersection;
        d["samples"] = r.samples;
        d["q"] = r.q;
        d["steps"] = r.steps;
        return d;
    }, py::arg("a"), py::arg("b"), py::arg("samples") = 10000, py::arg("steps") = 200, py::arg("q") = py::none(),
          py::arg("seed") = 0);

    m.def("build_pga", [](const std::vector<GateSequence> &programs, std::size_t k, std::size_t m_, std::uint64_t seed,
                          std::size_t scrambler_length) {
        return build_pga(make_spec(programs, k, m_, seed, scrambler_length));
    }, py::arg("programs"), py::arg("k"), py::arg("m"), py::arg("seed") = 0, py::arg("scrambler_length") = 8);

    py::class_<KeySecrets>(m, "KeySecrets")
        .def(py::init([](std::size_t m_, std::uint64_t seed) { return make_key_secrets(m_, seed); }), py::arg("m"),
             py::arg("seed"))
        .def(py::init([](const std::string &text) { return parse_secrets(text); }), py::arg("text"))
        .def_property_readonly("m", &KeySecrets::m)
        .def("__str__", [](const KeySecrets &s) { return serialize_secrets(s); })
        .def("encode", [](const KeySecrets &s, const GateSequence &xg) { return encode(xg, s); }, py::arg("xg"))
        .def("issue_key", [](const KeySecrets &s, std::uint64_t index, std::size_t k) {
            return issue_key(index, s, s.m(), k).state.amplitudes();
        }, py::arg("index"), py::arg("k"));

    m.def("run", [](const GateSequence &xgp, const Vector &key, const Vector &input, double tol) {
        return run_result(run(xgp, to_state(key), to_state(input), tol));
    }, py::arg("program"), py::arg("key"), py::arg("input"), py::arg("tol") = kDefaultTol);

    m.def("recycle", [](const GateSequence &xgp, const Vector &used_key, const Vector &psi, double tol) {
        return run_result(recycle(xgp, to_state(used_key), to_state(psi), tol));
    }, py::arg("program"), py::arg("used_key"), py::arg("psi"), py::arg("tol") = kDefaultTol);

    m.def("publish", [](const std::vector<GateSequence> &programs, std::size_t k, std::size_t m_, std::uint64_t seed,
                        const std::string &auth_key, const std::string &program_id, std::size_t steps,
                        std::optional<std::size_t> q, std::uint64_t shuffle_seed) {
        auto r = programmer_publish(make_spec(programs, k, m_, seed, 4 * (m_ - k)),
                                    shuffle_config(steps, q, shuffle_seed), Authenticator(auth_key), program_id);
        return py::make_tuple(serialize(r.pub), r.secrets);
    }, py::arg("programs"), py::arg("k"), py::arg("m"), py::arg("seed"), py::arg("auth_key"),
          py::arg("program_id") = "program", py::arg("steps") = 200, py::arg("q") = py::none(),
          py::arg("shuffle_seed") = 0,
          "Returns (public program text, KeySecrets).");

    m.def("user_execute", [](const std::string &public_text, const Vector &key, const Vector &input,
                             const std::string &auth_key, double tol) {
        auto pub = parse_public_program(public_text);
        return run_result(user_execute(pub, KeyState{to_state(key), std::nullopt, pub.program_id}, to_state(input),
                                       Authenticator(auth_key), tol));
    }, py::arg("public_program"), py::arg("key"), py::arg("input"), py::arg("auth_key"),
          py::arg("tol") = kDefaultTol);
}

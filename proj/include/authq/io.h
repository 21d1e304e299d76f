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

#ifndef AUTHQ_IO_H
#define AUTHQ_IO_H

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include "authq/keying.h"
#include "authq/pga.h"
#include "authq/reduction.h"
#include "authq/simulator.h"

namespace authq {

/// Files carrying secret material start with this marker line.
inline constexpr std::string_view kSecretMarker = "# SECRET";

bool is_secret_text(std::string_view text);

std::string read_file(const std::filesystem::path &path);
void write_file(const std::filesystem::path &path, std::string_view text);

/// `qubits n` then one `re im` line per amplitude.
std::string serialize_state(const StateVector &psi);
StateVector parse_state(std::string_view text);

/// SECRET-marked key file: program id and amplitudes, never the index.
std::string serialize_key(const KeyState &key);
KeyState parse_key(std::string_view text);

/// SECRET-marked L/R bundle with [left] and [right] sequence blocks.
std::string serialize_secrets(const KeySecrets &secrets);
KeySecrets parse_secrets(std::string_view text);

/// Program manifest: `k`, `m`, `n`, `seed`, optional `budget` and
/// `scrambler_length`, `program <i> <file>` lines and optional `m1`/`m2`
/// files. Paths are relative to the manifest's directory. Missing dummy
/// scramblers are sampled from the seed.
ProgramSpec load_manifest(const std::filesystem::path &path);

/// SECRET-marked reduction instance bundle.
std::string serialize_instance(const ModifiedInstance &inst, std::uint64_t seed);

}  // namespace authq

#endif

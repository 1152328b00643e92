// Copyright 2026 The mpsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
/**
 * @file
 * Benchmark circuit generators. Output is deterministic for a fixed seed,
 * byte for byte.
 *
 * The brickwork generator alternates a layer of seeded-random u3
 * rotations with a staggered layer of entangling gates. The default
 * entangler is cx, which keeps the file plain OpenQASM 2.0. With the haar
 * entangler each pair gets a seeded Haar-random 4x4 unitary; since plain
 * QASM cannot express those, they are returned as sidecar entries (and
 * marked with comment lines in the text) for the runner to re-inject.
 */

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mpsim/tensor.hpp"

namespace mpsim {

/// h on qubit 0 followed by a cx chain; optionally measures every qubit.
std::string ghz_qasm(int n_qubits, bool measure = false);

enum class Entangler { Cx, Haar };

struct BrickworkOptions {
  int n_qubits = 0;
  int depth = 0;  // number of entangling layers
  std::uint64_t seed = 1;
  bool measure = false;
  Entangler entangler = Entangler::Cx;
};

/// An inline 4x4 unitary to insert at `op_index` of the parsed op list.
/// The matrix is in the (low, high) basis of the sorted qubit pair.
struct SidecarGate {
  std::size_t op_index = 0;
  int q0 = 0;
  int q1 = 0;
  CTensor matrix;
};

struct GeneratedCircuit {
  std::string qasm;
  std::vector<SidecarGate> sidecar;  // empty for plain-QASM entanglers
};

GeneratedCircuit brickwork_qasm(const BrickworkOptions& options);

/// Seeded Haar-random unitary via QR of a complex Gaussian matrix with
/// the R-diagonal phase fix.
CTensor haar_unitary(Index dim, std::uint64_t seed);

}  // namespace mpsim

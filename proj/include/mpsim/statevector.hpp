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
 * Brute-force dense statevector simulator. Gates are applied by direct
 * index arithmetic on the amplitude array, independent of the tensor
 * contraction machinery, so the two backends cross-check each other.
 * Bit convention matches the chain: qubit 0 is the most significant bit.
 */

#pragma once

#include <vector>

#include "mpsim/circuit.hpp"
#include "mpsim/tensor.hpp"

namespace mpsim {

class StateVector {
 public:
  /// |0...0> on n qubits; n is capped to bound memory.
  explicit StateVector(int n_qubits, int max_qubits = 20);

  int num_qubits() const { return n_; }
  const std::vector<Complex>& amplitudes() const { return amps_; }
  std::vector<Complex>& amplitudes() { return amps_; }

  void apply_1q(const CTensor& u, int q);
  /// u is 4x4 in the (low, high) basis; requires q0 < q1 (not necessarily
  /// adjacent).
  void apply_2q(const CTensor& u, int q0, int q1);

  double norm() const;

 private:
  int n_;
  std::vector<Complex> amps_;
};

StateVector sv_run(const Circuit& circuit, int max_qubits = 20);
StateVector sv_run(int n_qubits, const std::vector<FusedGate>& gates,
                   int max_qubits = 20);

}  // namespace mpsim

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

#include <cmath>
#include <stdexcept>

#include "mpsim/statevector.hpp"

namespace mpsim {

StateVector::StateVector(int n_qubits, int max_qubits) : n_(n_qubits) {
  if (n_qubits < 1) {
    throw std::invalid_argument("state needs at least one qubit");
  }
  if (n_qubits > max_qubits) {
    throw std::invalid_argument("statevector capped at " +
                                std::to_string(max_qubits) + " qubits, got " +
                                std::to_string(n_qubits));
  }
  amps_.assign(std::size_t{1} << n_, Complex{});
  amps_[0] = Complex{1.0, 0.0};
}

void StateVector::apply_1q(const CTensor& u, int q) {
  if (u.rank() != 2 || u.extent(0) != 2 || u.extent(1) != 2) {
    throw std::invalid_argument("one-qubit gate matrix must be 2x2");
  }
  if (q < 0 || q >= n_) {
    throw std::invalid_argument("qubit out of range");
  }
  const std::size_t stride = std::size_t{1} << (n_ - 1 - q);
  const std::size_t dim = amps_.size();
  for (std::size_t block = 0; block < dim; block += 2 * stride) {
    for (std::size_t i = block; i < block + stride; ++i) {
      const Complex a0 = amps_[i];
      const Complex a1 = amps_[i + stride];
      amps_[i] = u(0, 0) * a0 + u(0, 1) * a1;
      amps_[i + stride] = u(1, 0) * a0 + u(1, 1) * a1;
    }
  }
}

void StateVector::apply_2q(const CTensor& u, int q0, int q1) {
  if (u.rank() != 2 || u.extent(0) != 4 || u.extent(1) != 4) {
    throw std::invalid_argument("two-qubit gate matrix must be 4x4");
  }
  if (q0 < 0 || q1 >= n_ || q0 >= q1) {
    throw std::invalid_argument("invalid qubit pair (" + std::to_string(q0) +
                                "," + std::to_string(q1) + ")");
  }
  const std::size_t s0 = std::size_t{1} << (n_ - 1 - q0);
  const std::size_t s1 = std::size_t{1} << (n_ - 1 - q1);
  const std::size_t dim = amps_.size();
  for (std::size_t i = 0; i < dim; ++i) {
    if ((i & s0) != 0 || (i & s1) != 0) {
      continue;
    }
    const Complex x[4] = {amps_[i], amps_[i + s1], amps_[i + s0],
                          amps_[i + s0 + s1]};
    for (Index r = 0; r < 4; ++r) {
      Complex acc{};
      for (Index c = 0; c < 4; ++c) {
        acc += u(r, c) * x[c];
      }
      const std::size_t target =
          i + (r & 2 ? s0 : 0) + (r & 1 ? s1 : 0);
      amps_[target] = acc;
    }
  }
}

double StateVector::norm() const {
  double total = 0.0;
  for (const Complex& a : amps_) {
    total += std::norm(a);
  }
  return std::sqrt(total);
}

StateVector sv_run(const Circuit& circuit, int max_qubits) {
  StateVector sv(circuit.n_qubits, max_qubits);
  for (const PrimOp& op : circuit.ops) {
    if (op.two_qubit()) {
      sv.apply_2q(gate_matrix(op), std::min(op.q0, op.q1),
                  std::max(op.q0, op.q1));
    } else {
      sv.apply_1q(gate_matrix_1q(op.kind, op.params), op.q0);
    }
  }
  return sv;
}

StateVector sv_run(int n_qubits, const std::vector<FusedGate>& gates,
                   int max_qubits) {
  StateVector sv(n_qubits, max_qubits);
  for (const FusedGate& g : gates) {
    if (g.two_qubit()) {
      sv.apply_2q(g.matrix, g.q0, g.q1);
    } else {
      sv.apply_1q(g.matrix, g.q0);
    }
  }
  return sv;
}

}  // namespace mpsim

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
 * Circuit intermediate representation: the parsed gate stream, fusion into
 * 1-/2-qubit unitary blocks, SWAP-chain lowering of non-local gates, and
 * the layer plan of qubit-disjoint gates.
 *
 * Qubit ordering convention, fixed project-wide: qubit 0 is the leftmost
 * chain site, and inside a 4x4 two-qubit matrix the lower-indexed qubit is
 * the more significant bit of the row/column index.
 */

#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "mpsim/tensor.hpp"

namespace mpsim {

enum class GateKind {
  H, X, Y, Z, S, Sdg, T, Tdg,
  Rx, Ry, Rz, U1, U2, U3,
  Cx, Cz, Swap,
  U4,  // inline 4x4 unitary injected from a generator sidecar
};

bool is_two_qubit(GateKind kind);
int param_count(GateKind kind);
std::string_view gate_name(GateKind kind);
/// Maps a QASM gate name to its kind; returns false for unknown names.
bool gate_kind_from_name(std::string_view name, GateKind& kind);

/// A primitive circuit operation as parsed. Two-qubit ops use q0, q1 in
/// source order (control first for cx); one-qubit ops leave q1 = -1.
struct PrimOp {
  GateKind kind;
  int q0 = 0;
  int q1 = -1;
  std::vector<double> params;
  CTensor matrix;  // only for GateKind::U4

  bool two_qubit() const { return q1 >= 0; }
};

struct Circuit {
  int n_qubits = 0;
  int n_clbits = 0;
  std::vector<PrimOp> ops;
  bool has_measure_all = false;
};

/// A fused 1- or 2-qubit unitary block. Two-qubit blocks store qubits as
/// (low, high) and the matrix in the (low, high) index basis; `flipped`
/// records that the originating primitive listed (high, low), e.g. a cx
/// whose control index exceeds its target.
struct FusedGate {
  int q0 = 0;
  int q1 = -1;
  bool flipped = false;
  CTensor matrix;  // 2x2 or 4x4

  bool two_qubit() const { return q1 >= 0; }
  bool local() const { return !two_qubit() || q1 == q0 + 1; }
  int span_lo() const { return q0; }
  int span_hi() const { return two_qubit() ? q1 : q0; }
};

/// Gates grouped into layers with pairwise disjoint qubit sets; all
/// two-qubit gates in a plan act on adjacent qubits.
struct LayerPlan {
  std::vector<std::vector<FusedGate>> layers;

  std::size_t total_gates() const {
    std::size_t n = 0;
    for (const auto& layer : layers) {
      n += layer.size();
    }
    return n;
  }
};

/// Canonical matrix of a primitive op: 2x2, or 4x4 in the (low, high)
/// basis with any (high, low) orientation folded in by SWAP conjugation.
CTensor gate_matrix(const PrimOp& op);

/// 2x2 matrix of a one-qubit gate kind.
CTensor gate_matrix_1q(GateKind kind, const std::vector<double>& params);

/// Parses the supported OpenQASM 2.0 subset. Throws ParseError with the
/// offending line and column.
Circuit parse_qasm(std::string_view text);

/// Single left-to-right fusion pass. Consecutive same-support blocks are
/// multiplied and a 1-qubit gate is absorbed into an adjacent 2-qubit
/// block when no intervening op touches either of the block's qubits.
std::vector<FusedGate> fuse_circuit(const Circuit& circuit);

/// Lowers each non-local 2-qubit gate to a SWAP chain, the local gate on
/// (b-1, b), and the mirror SWAP chain.
std::vector<FusedGate> decompose_nonlocal(const std::vector<FusedGate>& gates,
                                          int n_qubits);

/// Greedy as-soon-as-possible layer assignment over local gates.
LayerPlan layerize(const std::vector<FusedGate>& gates);

}  // namespace mpsim

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

#include <algorithm>
#include <stdexcept>

#include "mpsim/circuit.hpp"

namespace mpsim {

namespace {

bool touches(const FusedGate& g, int q) {
  return g.q0 == q || (g.two_qubit() && g.q1 == q);
}

bool shares_qubit(const FusedGate& a, const FusedGate& b) {
  return touches(a, b.q0) || (b.two_qubit() && touches(a, b.q1));
}

CTensor matmul(const CTensor& a, const CTensor& b) {
  return from_matrix((matrix_view(a) * matrix_view(b)).eval());
}

// Embeds a 2x2 matrix into the 4x4 (low, high) basis; the low qubit is
// the more significant bit.
CTensor embed_1q(const CTensor& g, bool at_low) {
  CTensor out({4, 4});
  for (Index a = 0; a < 2; ++a) {
    for (Index b = 0; b < 2; ++b) {
      for (Index c = 0; c < 2; ++c) {
        for (Index d = 0; d < 2; ++d) {
          const Complex v = at_low ? g(a, c) * Complex(b == d ? 1.0 : 0.0)
                                   : g(b, d) * Complex(a == c ? 1.0 : 0.0);
          out((a << 1) | b, (c << 1) | d) = v;
        }
      }
    }
  }
  return out;
}

FusedGate make_block(const PrimOp& op) {
  FusedGate g;
  if (op.two_qubit()) {
    g.q0 = std::min(op.q0, op.q1);
    g.q1 = std::max(op.q0, op.q1);
    g.flipped = op.q0 > op.q1;
    g.matrix = gate_matrix(op);
  } else {
    g.q0 = op.q0;
    g.q1 = -1;
    g.matrix = gate_matrix_1q(op.kind, op.params);
  }
  return g;
}

FusedGate swap_block(int q) {
  PrimOp op;
  op.kind = GateKind::Swap;
  op.q0 = q;
  op.q1 = q + 1;
  return make_block(op);
}

}  // namespace

std::vector<FusedGate> fuse_circuit(const Circuit& circuit) {
  std::vector<FusedGate> blocks;
  blocks.reserve(circuit.ops.size());

  for (const PrimOp& op : circuit.ops) {
    FusedGate cur = make_block(op);
    for (;;) {
      int j = -1;
      for (int k = static_cast<int>(blocks.size()) - 1; k >= 0; --k) {
        if (shares_qubit(blocks[static_cast<std::size_t>(k)], cur)) {
          j = k;
          break;
        }
      }
      if (j < 0) {
        blocks.push_back(std::move(cur));
        break;
      }
      FusedGate& prev = blocks[static_cast<std::size_t>(j)];

      if (prev.q0 == cur.q0 && prev.q1 == cur.q1) {
        // Same support: multiply in time order (prev first).
        cur.matrix = matmul(cur.matrix, prev.matrix);
        blocks.erase(blocks.begin() + j);
        continue;
      }
      if (!prev.two_qubit() && cur.two_qubit()) {
        // Pending 1-qubit block feeding into the incoming 2-qubit gate.
        cur.matrix =
            matmul(cur.matrix, embed_1q(prev.matrix, prev.q0 == cur.q0));
        blocks.erase(blocks.begin() + j);
        continue;
      }
      if (!cur.two_qubit() && prev.two_qubit()) {
        // Absorb only if nothing after the block touches its other qubit;
        // otherwise the absorption would commute gates past each other.
        const int other = prev.q0 == cur.q0 ? prev.q1 : prev.q0;
        bool quiet = true;
        for (std::size_t k = static_cast<std::size_t>(j) + 1;
             k < blocks.size(); ++k) {
          quiet = quiet && !touches(blocks[k], other);
        }
        if (quiet) {
          prev.matrix =
              matmul(embed_1q(cur.matrix, cur.q0 == prev.q0), prev.matrix);
          break;
        }
        blocks.push_back(std::move(cur));
        break;
      }
      // Overlapping but distinct two-qubit supports.
      blocks.push_back(std::move(cur));
      break;
    }
  }
  return blocks;
}

std::vector<FusedGate> decompose_nonlocal(const std::vector<FusedGate>& gates,
                                          int n_qubits) {
  std::vector<FusedGate> out;
  out.reserve(gates.size());
  for (const FusedGate& g : gates) {
    if (g.two_qubit() && (g.q0 < 0 || g.q1 >= n_qubits)) {
      throw std::invalid_argument("gate qubits out of range");
    }
    if (g.local()) {
      out.push_back(g);
      continue;
    }
    // Walk the low qubit up to b-1, apply locally, then walk it back.
    for (int i = g.q0; i < g.q1 - 1; ++i) {
      out.push_back(swap_block(i));
    }
    FusedGate local = g;
    local.q0 = g.q1 - 1;
    out.push_back(std::move(local));
    for (int i = g.q1 - 2; i >= g.q0; --i) {
      out.push_back(swap_block(i));
    }
  }
  return out;
}

LayerPlan layerize(const std::vector<FusedGate>& gates) {
  int n = 0;
  for (const FusedGate& g : gates) {
    if (!g.local()) {
      throw std::invalid_argument(
          "layerize requires local gates; found a gate on (" +
          std::to_string(g.q0) + "," + std::to_string(g.q1) + ")");
    }
    n = std::max(n, g.span_hi() + 1);
  }

  LayerPlan plan;
  std::vector<int> last_layer(static_cast<std::size_t>(n), -1);
  for (const FusedGate& g : gates) {
    int layer = 0;
    for (int q = g.span_lo(); q <= g.span_hi(); ++q) {
      layer = std::max(layer, last_layer[static_cast<std::size_t>(q)] + 1);
    }
    if (static_cast<std::size_t>(layer) >= plan.layers.size()) {
      plan.layers.resize(static_cast<std::size_t>(layer) + 1);
    }
    plan.layers[static_cast<std::size_t>(layer)].push_back(g);
    for (int q = g.span_lo(); q <= g.span_hi(); ++q) {
      last_layer[static_cast<std::size_t>(q)] = layer;
    }
  }
  return plan;
}

}  // namespace mpsim

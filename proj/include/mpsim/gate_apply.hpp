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
 * Gate application to an MPS: one-qubit contraction, local two-qubit
 * contract-SVD-decompose with truncation, and the two non-local
 * strategies (SWAP chain and bond propagation).
 *
 * Each operation touches only the sites and interior bonds of the qubit
 * span it acts on; operations with disjoint spans may run concurrently on
 * the same state. After every truncating SVD the kept singular values are
 * rescaled so the state norm is preserved; reports carry the pre-rescale
 * discarded weight.
 */

#pragma once

#include "mpsim/circuit.hpp"
#include "mpsim/mps.hpp"
#include "mpsim/tensor.hpp"

namespace mpsim {

struct TruncationPolicy {
  Index max_bond = kUnbounded;
  double cutoff = 0.0;
};

struct ApplyReport {
  double discarded_weight = 0.0;  // summed over all SVDs of this gate
  Index new_bond = 1;             // largest bond written by this gate
  int svd_count = 0;              // SVDs of site tensors performed
};

/// Contracts a 2x2 unitary into the physical index of site q. Bond
/// dimensions are unchanged and no other site is touched.
ApplyReport apply_1q(MpsState& state, const CTensor& u, int q);

/// Applies a 4x4 unitary (in the (low, high) basis) to the adjacent pair
/// (q, q+1): merge the two sites into a rank-4 tensor, contract the gate
/// over both physical indices, then split by truncated SVD. The left
/// singular vectors become site q; the right singular vectors with the
/// singular values folded in become site q+1.
ApplyReport apply_2q_local(MpsState& state, const CTensor& u, int q,
                           const TruncationPolicy& policy);

/// Non-local application by SWAP chain: moves q0 next to q1 with local
/// SWAPs, applies the gate locally, and reverses the chain. Requires
/// q0 < q1; the matrix is in the (low, high) basis.
ApplyReport apply_2q_swap(MpsState& state, const CTensor& u, int q0, int q1,
                          const TruncationPolicy& policy);

/// Non-local application by bond propagation: the gate is split by SVD
/// across the control|target bipartition, the left factor is contracted
/// into site q0 opening a propagating bond, which is carried through the
/// intermediate sites by successive contract-and-SVD steps and closed by
/// contracting the right factor (singular values folded in) into site q1.
/// Performs exactly q1 - q0 site SVDs. Requires q0 < q1.
ApplyReport apply_2q_bondprop(MpsState& state, const CTensor& u, int q0,
                              int q1, const TruncationPolicy& policy);

enum class NonlocalMethod { Swap, BondProp };

/// Routes a fused gate to the right application routine.
ApplyReport apply_gate(MpsState& state, const FusedGate& gate,
                       const TruncationPolicy& policy,
                       NonlocalMethod method = NonlocalMethod::Swap);

}  // namespace mpsim

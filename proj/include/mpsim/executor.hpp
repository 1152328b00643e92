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
 * Circuit execution over an MPS. The serial path loops over the fused
 * gate list; the parallel path runs each layer of a LayerPlan with a pool
 * of workers that claim gate indices from a shared atomic counter, with a
 * barrier and bond-bookkeeping merge between layers. Gates within a layer
 * touch disjoint site spans, which is what makes the shared-state
 * mutation safe.
 */

#pragma once

#include <cstdint>
#include <vector>

#include "mpsim/circuit.hpp"
#include "mpsim/gate_apply.hpp"
#include "mpsim/mps.hpp"

namespace mpsim {

struct LayerStat {
  int layer_index = 0;
  int gates = 0;
  std::uint64_t compute_ns = 0;  // summed across workers
  std::uint64_t sync_ns = 0;     // barrier spread plus merge wall time
  std::vector<int> claimed;      // claimed gate indices, in claim order per worker
};

struct ExecStats {
  std::vector<LayerStat> per_layer;
  std::uint64_t total_wall_ns = 0;
  Index peak_bond = 1;
  int workers = 1;
  double total_discarded_weight = 0.0;

  std::size_t total_gates() const {
    std::size_t n = 0;
    for (const auto& l : per_layer) {
      n += static_cast<std::size_t>(l.gates);
    }
    return n;
  }
};

/// Applies the gates in order on the calling thread. Non-local gates are
/// routed to the chosen method. Stats are recorded as a single layer with
/// sync_ns = 0.
ExecStats execute_serial(MpsState& state, const std::vector<FusedGate>& gates,
                         const TruncationPolicy& policy,
                         NonlocalMethod method = NonlocalMethod::Swap);

/// Executes the plan with `workers` threads. Within a layer, workers
/// repeatedly claim the next gate index from an atomic counter and apply
/// the claimed gate to the shared state; a barrier ends the layer. The
/// plan must contain only local gates. A failure in any worker aborts the
/// run with the original diagnostic.
ExecStats execute_parallel(MpsState& state, const LayerPlan& plan,
                           const TruncationPolicy& policy, int workers);

}  // namespace mpsim

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
#include <atomic>
#include <barrier>
#include <chrono>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "mpsim/errors.hpp"
#include "mpsim/executor.hpp"

namespace mpsim {

namespace {

using Clock = std::chrono::steady_clock;

std::uint64_t elapsed_ns(Clock::time_point from, Clock::time_point to) {
  return static_cast<std::uint64_t>(
      std::chrono::duration_cast<std::chrono::nanoseconds>(to - from).count());
}

// Marks the sites a gate is about to touch and trips if any of them is
// already owned by another in-flight gate. This is the structural check
// behind the disjoint-span contract.
class SpanGuard {
 public:
  explicit SpanGuard(int n_sites)
      : busy_(static_cast<std::size_t>(n_sites)) {
    for (auto& b : busy_) {
      b.store(0, std::memory_order_relaxed);
    }
  }

  void claim(const FusedGate& g) {
    for (int q = g.span_lo(); q <= g.span_hi(); ++q) {
      if (busy_[static_cast<std::size_t>(q)].exchange(
              1, std::memory_order_acquire) != 0) {
        throw std::logic_error(
            "layer contract violated: two in-flight gates touch site " +
            std::to_string(q));
      }
    }
  }

  void release(const FusedGate& g) {
    for (int q = g.span_hi(); q >= g.span_lo(); --q) {
      busy_[static_cast<std::size_t>(q)].store(0, std::memory_order_release);
    }
  }

 private:
  std::vector<std::atomic<int>> busy_;
};

}  // namespace

ExecStats execute_serial(MpsState& state, const std::vector<FusedGate>& gates,
                         const TruncationPolicy& policy,
                         NonlocalMethod method) {
  const auto wall_start = Clock::now();
  ExecStats stats;
  stats.workers = 1;
  stats.peak_bond = state.max_bond_dim();

  LayerStat layer;
  layer.layer_index = 0;
  layer.gates = static_cast<int>(gates.size());
  layer.claimed.reserve(gates.size());
  for (std::size_t i = 0; i < gates.size(); ++i) {
    const auto gate_start = Clock::now();
    const ApplyReport report = apply_gate(state, gates[i], policy, method);
    layer.compute_ns += elapsed_ns(gate_start, Clock::now());
    layer.claimed.push_back(static_cast<int>(i));
    stats.total_discarded_weight += report.discarded_weight;
    stats.peak_bond = std::max(stats.peak_bond, state.max_bond_dim());
  }
  state.validate();
  stats.per_layer.push_back(std::move(layer));
  stats.total_wall_ns = elapsed_ns(wall_start, Clock::now());
  return stats;
}

ExecStats execute_parallel(MpsState& state, const LayerPlan& plan,
                           const TruncationPolicy& policy, int workers) {
  if (workers < 1) {
    throw std::invalid_argument("worker count must be >= 1");
  }
  for (const auto& layer : plan.layers) {
    for (const FusedGate& g : layer) {
      if (!g.local()) {
        throw std::invalid_argument(
            "parallel execution requires a local-gate plan");
      }
      if (g.span_hi() >= state.num_qubits()) {
        throw std::invalid_argument("gate qubits out of range");
      }
    }
  }

  const auto wall_start = Clock::now();
  ExecStats stats;
  stats.workers = workers;
  stats.peak_bond = state.max_bond_dim();
  stats.per_layer.resize(plan.layers.size());
  if (plan.layers.empty()) {
    stats.total_wall_ns = elapsed_ns(wall_start, Clock::now());
    return stats;
  }

  SpanGuard guard(state.num_qubits());
  std::atomic<std::size_t> counter{0};
  std::atomic<bool> failed{false};
  std::exception_ptr first_error;
  std::mutex error_mutex;

  struct WorkerSlot {
    std::uint64_t compute_ns = 0;
    double discarded = 0.0;
    std::vector<int> claims;
    Clock::time_point barrier_entry;
  };
  std::vector<WorkerSlot> slots(static_cast<std::size_t>(workers));
  std::size_t layer_cursor = 0;

  // The completion step runs on exactly one thread while the others wait:
  // it merges worker bookkeeping, revalidates the shared state, and arms
  // the counter for the next layer.
  auto on_layer_complete = [&]() noexcept {
    try {
      const auto merge_start = Clock::now();
      const std::size_t li = layer_cursor;
      LayerStat& ls = stats.per_layer[li];
      ls.layer_index = static_cast<int>(li);
      ls.gates = static_cast<int>(plan.layers[li].size());
      auto earliest = slots[0].barrier_entry;
      auto latest = slots[0].barrier_entry;
      for (WorkerSlot& slot : slots) {
        ls.compute_ns += slot.compute_ns;
        ls.claimed.insert(ls.claimed.end(), slot.claims.begin(),
                          slot.claims.end());
        stats.total_discarded_weight += slot.discarded;
        earliest = std::min(earliest, slot.barrier_entry);
        latest = std::max(latest, slot.barrier_entry);
        slot = WorkerSlot{};
      }
      if (!failed.load()) {
        state.validate();
      }
      stats.peak_bond = std::max(stats.peak_bond, state.max_bond_dim());
      counter.store(0, std::memory_order_relaxed);
      layer_cursor = li + 1;
      ls.sync_ns =
          elapsed_ns(earliest, latest) + elapsed_ns(merge_start, Clock::now());
    } catch (...) {
      std::lock_guard<std::mutex> lock(error_mutex);
      if (!first_error) {
        first_error = std::current_exception();
      }
      failed.store(true, std::memory_order_release);
    }
  };
  std::barrier sync(workers, on_layer_complete);

  auto worker_body = [&](int worker_id) {
    WorkerSlot& slot = slots[static_cast<std::size_t>(worker_id)];
    for (const auto& layer : plan.layers) {
      while (!failed.load(std::memory_order_acquire)) {
        const std::size_t idx =
            counter.fetch_add(1, std::memory_order_relaxed);
        if (idx >= layer.size()) {
          break;
        }
        const FusedGate& gate = layer[idx];
        try {
          guard.claim(gate);
          const auto gate_start = Clock::now();
          const ApplyReport report = apply_gate(state, gate, policy);
          slot.compute_ns += elapsed_ns(gate_start, Clock::now());
          slot.discarded += report.discarded_weight;
          slot.claims.push_back(static_cast<int>(idx));
          guard.release(gate);
        } catch (...) {
          {
            std::lock_guard<std::mutex> lock(error_mutex);
            if (!first_error) {
              first_error = std::current_exception();
            }
          }
          failed.store(true, std::memory_order_release);
        }
      }
      slot.barrier_entry = Clock::now();
      sync.arrive_and_wait();
    }
  };

  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back(worker_body, w);
  }
  for (std::thread& t : pool) {
    t.join();
  }

  if (failed.load()) {
    try {
      std::rethrow_exception(first_error);
    } catch (const std::exception& e) {
      throw NumericError(std::string("parallel execution aborted: ") +
                         e.what());
    }
  }
  stats.total_wall_ns = elapsed_ns(wall_start, Clock::now());
  return stats;
}

}  // namespace mpsim

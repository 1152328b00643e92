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
 * Matrix-product (tensor-train) state over qubits: a chain of rank-3 site
 * tensors with shape (left bond, 2, right bond). Boundary bonds have
 * dimension 1. Canonical forms, norms, amplitudes, and a full statevector
 * export for cross-checking against the dense oracle.
 */

#pragma once

#include <atomic>
#include <optional>
#include <string_view>
#include <vector>

#include "mpsim/tensor.hpp"

namespace mpsim {

class MpsState {
 public:
  /// The |0...0> product state on n qubits; every bond dimension is 1.
  explicit MpsState(int n_qubits);

  MpsState(const MpsState& other);
  MpsState& operator=(const MpsState& other);
  MpsState(MpsState&& other) noexcept;
  MpsState& operator=(MpsState&& other) noexcept;

  int num_qubits() const { return static_cast<int>(sites_.size()); }

  const CTensor& site(int i) const { return sites_[static_cast<std::size_t>(i)]; }
  CTensor& site(int i) { return sites_[static_cast<std::size_t>(i)]; }

  /// n+1 entries; bond_dims()[i] is the bond left of site i.
  const std::vector<Index>& bond_dims() const { return bond_dims_; }
  Index bond_dim(int i) const { return bond_dims_[static_cast<std::size_t>(i)]; }
  void set_bond_dim(int i, Index d) { bond_dims_[static_cast<std::size_t>(i)] = d; }
  Index max_bond_dim() const;

  // The gauge marker is atomic so concurrent gate applications on
  // disjoint spans may invalidate or keep it without racing.
  std::optional<int> ortho_center() const {
    const int c = ortho_center_.load(std::memory_order_relaxed);
    return c < 0 ? std::nullopt : std::optional<int>(c);
  }
  void set_ortho_center(std::optional<int> c) {
    ortho_center_.store(c.value_or(-1), std::memory_order_relaxed);
  }

  /// Total element count across all site tensors.
  Index total_elements() const;

  /// Checks the structural invariants (boundary bonds 1, adjacent shape
  /// consistency, physical extent 2); throws std::logic_error on violation.
  void validate() const;

 private:
  std::vector<CTensor> sites_;
  std::vector<Index> bond_dims_;
  std::atomic<int> ortho_center_{-1};  // -1 = unknown
};

/// Sweeps left-to-right QR decompositions; afterwards every site left of
/// the center is a left isometry and ortho_center is n-1.
void left_canonicalize(MpsState& state);

/// Mirror sweep; every site right of the center is a right isometry and
/// ortho_center is 0.
void right_canonicalize(MpsState& state);

/// Mixed canonical form with the orthogonality center at `center`.
void move_center(MpsState& state, int center);

/// 2-norm of the represented vector.
double norm(const MpsState& state);

/// <bits|psi> for an n-character string of '0'/'1' (bits[0] is qubit 0).
Complex amplitude(const MpsState& state, std::string_view bits);

/// <a|b>. States must have equal qubit counts.
Complex overlap(const MpsState& a, const MpsState& b);

/// Full contraction into 2^n amplitudes; entry b corresponds to the bit
/// pattern of b with qubit 0 as the most significant bit. Throws when
/// n exceeds `max_qubits`.
std::vector<Complex> to_statevector(const MpsState& state, int max_qubits = 20);

}  // namespace mpsim

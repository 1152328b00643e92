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
#include <cmath>
#include <stdexcept>
#include <utility>

#include <Eigen/Dense>

#include "mpsim/errors.hpp"
#include "mpsim/mps.hpp"

namespace mpsim {

namespace {

using RowMat =
    Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// Fixed-physical-index slice of a site tensor as a (left bond x right
// bond) matrix view.
Eigen::Map<const RowMat, 0, Eigen::OuterStride<>> phys_slice(const CTensor& t,
                                                             Index p) {
  const Index dl = t.extent(0);
  const Index dr = t.extent(2);
  return {t.data() + p * dr, dl, dr, Eigen::OuterStride<>(2 * dr)};
}

// Site tensor (dl, 2, dr) viewed as a (dl*2 x dr) matrix.
Eigen::Map<const RowMat> left_matricized(const CTensor& t) {
  return {t.data(), t.extent(0) * 2, t.extent(2)};
}

// Site tensor (dl, 2, dr) viewed as a (dl x 2*dr) matrix.
Eigen::Map<const RowMat> right_matricized(const CTensor& t) {
  return {t.data(), t.extent(0), 2 * t.extent(2)};
}

CTensor site_from_matrix(const RowMat& m, Index dl, Index dr) {
  CTensor t({dl, 2, dr});
  Eigen::Map<RowMat>(t.data(), m.rows(), m.cols()) = m;
  return t;
}

void thin_qr(const RowMat& m, RowMat& q, RowMat& r) {
  const Index rank = std::min(m.rows(), m.cols());
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(m);
  q = qr.householderQ() * Eigen::MatrixXcd::Identity(m.rows(), rank);
  r = qr.matrixQR()
          .topRows(rank)
          .triangularView<Eigen::Upper>()
          .toDenseMatrix();
}

// Turns sites [0, center) into left isometries, pushing the remainder
// rightward.
void sweep_left_of(MpsState& s, int center) {
  for (int i = 0; i < center; ++i) {
    RowMat q, r;
    thin_qr(left_matricized(s.site(i)), q, r);
    const Index dl = s.site(i).extent(0);
    const Index k = q.cols();
    s.site(i) = site_from_matrix(q, dl, k);
    RowMat next = r * right_matricized(s.site(i + 1));
    s.site(i + 1) = site_from_matrix(next, k, s.site(i + 1).extent(2));
    s.set_bond_dim(i + 1, k);
  }
}

// Turns sites (center, n-1] into right isometries, pushing the remainder
// leftward.
void sweep_right_of(MpsState& s, int center) {
  for (int i = s.num_qubits() - 1; i > center; --i) {
    RowMat q, r;
    thin_qr(right_matricized(s.site(i)).adjoint(), q, r);
    const Index dr = s.site(i).extent(2);
    const Index k = q.cols();
    s.site(i) = site_from_matrix(q.adjoint(), k, dr);
    RowMat prev = left_matricized(s.site(i - 1)) * r.adjoint();
    s.site(i - 1) = site_from_matrix(prev, s.site(i - 1).extent(0), k);
    s.set_bond_dim(i, k);
  }
}

}  // namespace

MpsState::MpsState(int n_qubits) {
  if (n_qubits < 1) {
    throw std::invalid_argument("state needs at least one qubit");
  }
  sites_.reserve(static_cast<std::size_t>(n_qubits));
  for (int i = 0; i < n_qubits; ++i) {
    CTensor site({1, 2, 1});
    site(0, 0, 0) = Complex{1.0, 0.0};
    sites_.push_back(std::move(site));
  }
  bond_dims_.assign(static_cast<std::size_t>(n_qubits) + 1, 1);
}

MpsState::MpsState(const MpsState& other)
    : sites_(other.sites_),
      bond_dims_(other.bond_dims_),
      ortho_center_(other.ortho_center_.load(std::memory_order_relaxed)) {}

MpsState& MpsState::operator=(const MpsState& other) {
  sites_ = other.sites_;
  bond_dims_ = other.bond_dims_;
  ortho_center_.store(other.ortho_center_.load(std::memory_order_relaxed),
                      std::memory_order_relaxed);
  return *this;
}

MpsState::MpsState(MpsState&& other) noexcept
    : sites_(std::move(other.sites_)),
      bond_dims_(std::move(other.bond_dims_)),
      ortho_center_(other.ortho_center_.load(std::memory_order_relaxed)) {}

MpsState& MpsState::operator=(MpsState&& other) noexcept {
  sites_ = std::move(other.sites_);
  bond_dims_ = std::move(other.bond_dims_);
  ortho_center_.store(other.ortho_center_.load(std::memory_order_relaxed),
                      std::memory_order_relaxed);
  return *this;
}

Index MpsState::max_bond_dim() const {
  return *std::max_element(bond_dims_.begin(), bond_dims_.end());
}

Index MpsState::total_elements() const {
  Index total = 0;
  for (const CTensor& t : sites_) {
    total += t.size();
  }
  return total;
}

void MpsState::validate() const {
  const int n = num_qubits();
  if (bond_dims_.size() != static_cast<std::size_t>(n) + 1) {
    throw std::logic_error("bond bookkeeping has wrong length");
  }
  if (bond_dims_.front() != 1 || bond_dims_.back() != 1) {
    throw std::logic_error("boundary bonds must have dimension 1");
  }
  for (int i = 0; i < n; ++i) {
    const CTensor& t = site(i);
    if (t.rank() != 3 || t.extent(1) != 2) {
      throw std::logic_error("site " + std::to_string(i) +
                             " is not a (left, 2, right) tensor");
    }
    if (t.extent(0) != bond_dim(i) || t.extent(2) != bond_dim(i + 1)) {
      throw std::logic_error("site " + std::to_string(i) +
                             " disagrees with recorded bond dimensions");
    }
  }
}

void left_canonicalize(MpsState& state) {
  move_center(state, state.num_qubits() - 1);
}

void right_canonicalize(MpsState& state) { move_center(state, 0); }

void move_center(MpsState& state, int center) {
  if (center < 0 || center >= state.num_qubits()) {
    throw std::invalid_argument("center out of range");
  }
  sweep_left_of(state, center);
  sweep_right_of(state, center);
  if (left_matricized(state.site(center)).norm() < 1e-14) {
    throw NumericError("cannot canonicalize a zero-norm state");
  }
  state.set_ortho_center(center);
}

double norm(const MpsState& state) {
  Eigen::MatrixXcd env = Eigen::MatrixXcd::Ones(1, 1);
  for (int i = 0; i < state.num_qubits(); ++i) {
    const CTensor& t = state.site(i);
    Eigen::MatrixXcd next =
        Eigen::MatrixXcd::Zero(t.extent(2), t.extent(2));
    for (Index p = 0; p < 2; ++p) {
      auto slice = phys_slice(t, p);
      next.noalias() += slice.adjoint() * env * slice;
    }
    env.swap(next);
  }
  return std::sqrt(std::max(0.0, env(0, 0).real()));
}

Complex amplitude(const MpsState& state, std::string_view bits) {
  const int n = state.num_qubits();
  if (static_cast<int>(bits.size()) != n) {
    throw std::invalid_argument("bit string length " +
                                std::to_string(bits.size()) +
                                " does not match qubit count " +
                                std::to_string(n));
  }
  Eigen::RowVectorXcd env = Eigen::RowVectorXcd::Ones(1);
  for (int i = 0; i < n; ++i) {
    const char c = bits[static_cast<std::size_t>(i)];
    if (c != '0' && c != '1') {
      throw std::invalid_argument("bit string must contain only 0 and 1");
    }
    env = env * phys_slice(state.site(i), c - '0');
  }
  return env(0);
}

Complex overlap(const MpsState& a, const MpsState& b) {
  if (a.num_qubits() != b.num_qubits()) {
    throw std::invalid_argument("overlap requires equal qubit counts");
  }
  Eigen::MatrixXcd env = Eigen::MatrixXcd::Ones(1, 1);
  for (int i = 0; i < a.num_qubits(); ++i) {
    const CTensor& ta = a.site(i);
    const CTensor& tb = b.site(i);
    Eigen::MatrixXcd next =
        Eigen::MatrixXcd::Zero(ta.extent(2), tb.extent(2));
    for (Index p = 0; p < 2; ++p) {
      next.noalias() += phys_slice(ta, p).adjoint() * env * phys_slice(tb, p);
    }
    env.swap(next);
  }
  return env(0, 0);
}

std::vector<Complex> to_statevector(const MpsState& state, int max_qubits) {
  const int n = state.num_qubits();
  if (n > max_qubits) {
    throw std::invalid_argument("statevector export capped at " +
                                std::to_string(max_qubits) + " qubits, got " +
                                std::to_string(n));
  }
  RowMat acc = RowMat::Ones(1, 1);
  for (int i = 0; i < n; ++i) {
    const CTensor& t = state.site(i);
    RowMat grown = acc * right_matricized(t);  // (2^i x 2*dr)
    acc = Eigen::Map<const RowMat>(grown.data(), grown.rows() * 2,
                                   t.extent(2));
  }
  return {acc.data(), acc.data() + acc.rows()};
}

}  // namespace mpsim

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
 * Dense tensor type and contraction primitives used by every simulator
 * backend. Storage is a flat row-major array (last index fastest);
 * contraction is permute + reshape + matrix product on Eigen maps.
 */

#pragma once

#include <cassert>
#include <complex>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace mpsim {

using Index = std::int64_t;
using Complex = std::complex<double>;

/// Sentinel for "no rank cap" in truncated decompositions.
inline constexpr Index kUnbounded = std::numeric_limits<Index>::max();

namespace detail {

inline Index shape_size(const std::vector<Index>& shape) {
  Index n = 1;
  for (Index e : shape) {
    n *= e;
  }
  return n;
}

inline std::string shape_to_string(const std::vector<Index>& shape) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < shape.size(); ++i) {
    os << shape[i] << (i + 1 < shape.size() ? "," : "");
  }
  os << ")";
  return os.str();
}

}  // namespace detail

/// Dense tensor of arbitrary rank. Rank 0 is a scalar holding one element.
template <typename Scalar>
class Tensor {
 public:
  /// Rank-0 scalar, value-initialized.
  Tensor() : data_(1, Scalar{}) {}

  /// Zero-filled tensor of the given shape. All extents must be positive.
  explicit Tensor(std::vector<Index> shape)
      : shape_(std::move(shape)) {
    check_shape(shape_);
    data_.assign(static_cast<std::size_t>(detail::shape_size(shape_)),
                 Scalar{});
  }

  /// Wraps existing row-major data. The data length must match the shape.
  Tensor(std::vector<Index> shape, std::vector<Scalar> data)
      : shape_(std::move(shape)), data_(std::move(data)) {
    check_shape(shape_);
    if (static_cast<Index>(data_.size()) != detail::shape_size(shape_)) {
      throw std::invalid_argument(
          "tensor data length " + std::to_string(data_.size()) +
          " does not match shape " + detail::shape_to_string(shape_));
    }
  }

  int rank() const { return static_cast<int>(shape_.size()); }
  const std::vector<Index>& shape() const { return shape_; }
  Index extent(int axis) const { return shape_.at(static_cast<std::size_t>(axis)); }
  Index size() const { return static_cast<Index>(data_.size()); }

  const Scalar* data() const { return data_.data(); }
  Scalar* data() { return data_.data(); }
  const std::vector<Scalar>& storage() const { return data_; }

  /// Unchecked element access; indices follow shape() order.
  template <typename... Ix>
  Scalar& operator()(Ix... ix) {
    return data_[flat_offset({static_cast<Index>(ix)...})];
  }
  template <typename... Ix>
  const Scalar& operator()(Ix... ix) const {
    return data_[flat_offset({static_cast<Index>(ix)...})];
  }

  Scalar& operator[](Index flat) { return data_[static_cast<std::size_t>(flat)]; }
  const Scalar& operator[](Index flat) const {
    return data_[static_cast<std::size_t>(flat)];
  }

  /// Row-major strides (last axis has stride 1).
  std::vector<Index> strides() const {
    std::vector<Index> s(shape_.size());
    Index acc = 1;
    for (int axis = rank() - 1; axis >= 0; --axis) {
      s[static_cast<std::size_t>(axis)] = acc;
      acc *= shape_[static_cast<std::size_t>(axis)];
    }
    return s;
  }

  bool same_shape(const Tensor& other) const { return shape_ == other.shape_; }

 private:
  static void check_shape(const std::vector<Index>& shape) {
    for (Index e : shape) {
      if (e <= 0) {
        throw std::invalid_argument("tensor extents must be positive, got " +
                                    detail::shape_to_string(shape));
      }
    }
  }

  std::size_t flat_offset(std::initializer_list<Index> ix) const {
    assert(static_cast<int>(ix.size()) == rank());
    Index off = 0;
    auto it = ix.begin();
    for (std::size_t axis = 0; axis < shape_.size(); ++axis, ++it) {
      assert(*it >= 0 && *it < shape_[axis]);
      off = off * shape_[axis] + *it;
    }
    return static_cast<std::size_t>(off);
  }

  std::vector<Index> shape_;
  std::vector<Scalar> data_;
};

using CTensor = Tensor<Complex>;

template <typename Scalar>
using EigenMatrix =
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Views a rank-2 tensor as an Eigen row-major matrix map (no copy).
template <typename Scalar>
Eigen::Map<const EigenMatrix<Scalar>> matrix_view(const Tensor<Scalar>& t) {
  if (t.rank() != 2) {
    throw std::invalid_argument("matrix_view requires a rank-2 tensor, got rank " +
                                std::to_string(t.rank()));
  }
  return {t.data(), t.extent(0), t.extent(1)};
}

/// Copies an Eigen matrix expression into a rank-2 tensor.
template <typename Derived>
Tensor<typename Derived::Scalar> from_matrix(
    const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  Tensor<Scalar> t({m.rows(), m.cols()});
  Eigen::Map<EigenMatrix<Scalar>>(t.data(), m.rows(), m.cols()) = m;
  return t;
}

/// Materializes the axis permutation `order`: result axis k is input axis
/// order[k].
template <typename Scalar>
Tensor<Scalar> permute(const Tensor<Scalar>& a, const std::vector<int>& order) {
  const int r = a.rank();
  if (static_cast<int>(order.size()) != r) {
    throw std::invalid_argument("permutation size " +
                                std::to_string(order.size()) +
                                " does not match tensor rank " +
                                std::to_string(r));
  }
  std::vector<bool> seen(static_cast<std::size_t>(r), false);
  for (int axis : order) {
    if (axis < 0 || axis >= r || seen[static_cast<std::size_t>(axis)]) {
      throw std::invalid_argument("invalid permutation: axis " +
                                  std::to_string(axis) +
                                  " repeated or out of range");
    }
    seen[static_cast<std::size_t>(axis)] = true;
  }

  bool identity = true;
  for (int k = 0; k < r; ++k) {
    identity = identity && order[static_cast<std::size_t>(k)] == k;
  }
  if (identity) {
    return a;
  }

  std::vector<Index> out_shape(static_cast<std::size_t>(r));
  for (int k = 0; k < r; ++k) {
    out_shape[static_cast<std::size_t>(k)] =
        a.extent(order[static_cast<std::size_t>(k)]);
  }
  Tensor<Scalar> out(out_shape);

  const std::vector<Index> in_strides = a.strides();
  // Stride of output axis k in the input layout.
  std::vector<Index> mapped(static_cast<std::size_t>(r));
  for (int k = 0; k < r; ++k) {
    mapped[static_cast<std::size_t>(k)] =
        in_strides[static_cast<std::size_t>(order[static_cast<std::size_t>(k)])];
  }

  std::vector<Index> idx(static_cast<std::size_t>(r), 0);
  const Index total = out.size();
  Index in_off = 0;
  Scalar* dst = out.data();
  const Scalar* src = a.data();
  for (Index pos = 0; pos < total; ++pos) {
    dst[pos] = src[in_off];
    for (int axis = r - 1; axis >= 0; --axis) {
      auto u = static_cast<std::size_t>(axis);
      ++idx[u];
      in_off += mapped[u];
      if (idx[u] < out_shape[u]) {
        break;
      }
      in_off -= mapped[u] * out_shape[u];
      idx[u] = 0;
    }
  }
  return out;
}

/// Reinterprets the flat data under a new shape with the same element count.
template <typename Scalar>
Tensor<Scalar> reshape(const Tensor<Scalar>& a, std::vector<Index> new_shape) {
  if (detail::shape_size(new_shape) != a.size()) {
    throw std::invalid_argument(
        "reshape element count mismatch: " + detail::shape_to_string(a.shape()) +
        " -> " + detail::shape_to_string(new_shape));
  }
  return Tensor<Scalar>(std::move(new_shape), a.storage());
}

template <typename Scalar>
Tensor<Scalar> reshape(Tensor<Scalar>&& a, std::vector<Index> new_shape) {
  if (detail::shape_size(new_shape) != a.size()) {
    throw std::invalid_argument(
        "reshape element count mismatch: " + detail::shape_to_string(a.shape()) +
        " -> " + detail::shape_to_string(new_shape));
  }
  std::vector<Scalar> data(a.data(), a.data() + a.size());
  return Tensor<Scalar>(std::move(new_shape), std::move(data));
}

/// Einstein contraction over the given (axis-of-a, axis-of-b) pairs.
/// Result axes are a's uncontracted axes in order, then b's.
template <typename Scalar>
Tensor<Scalar> contract(const Tensor<Scalar>& a, const Tensor<Scalar>& b,
                        const std::vector<std::pair<int, int>>& pairs) {
  const int ra = a.rank();
  const int rb = b.rank();
  std::vector<bool> a_used(static_cast<std::size_t>(ra), false);
  std::vector<bool> b_used(static_cast<std::size_t>(rb), false);
  for (const auto& [ax, bx] : pairs) {
    if (ax < 0 || ax >= ra || bx < 0 || bx >= rb) {
      throw std::invalid_argument("contract: axis pair (" + std::to_string(ax) +
                                  "," + std::to_string(bx) + ") out of range");
    }
    if (a_used[static_cast<std::size_t>(ax)] ||
        b_used[static_cast<std::size_t>(bx)]) {
      throw std::invalid_argument("contract: duplicate axis in pair (" +
                                  std::to_string(ax) + "," +
                                  std::to_string(bx) + ")");
    }
    if (a.extent(ax) != b.extent(bx)) {
      throw std::invalid_argument(
          "contract: extent mismatch on pair (" + std::to_string(ax) + "," +
          std::to_string(bx) + "): " + std::to_string(a.extent(ax)) +
          " vs " + std::to_string(b.extent(bx)));
    }
    a_used[static_cast<std::size_t>(ax)] = true;
    b_used[static_cast<std::size_t>(bx)] = true;
  }

  std::vector<int> a_order;
  std::vector<int> b_order;
  a_order.reserve(static_cast<std::size_t>(ra));
  b_order.reserve(static_cast<std::size_t>(rb));
  std::vector<Index> out_shape;
  Index m = 1, k = 1, n = 1;
  for (int axis = 0; axis < ra; ++axis) {
    if (!a_used[static_cast<std::size_t>(axis)]) {
      a_order.push_back(axis);
      out_shape.push_back(a.extent(axis));
      m *= a.extent(axis);
    }
  }
  for (const auto& [ax, bx] : pairs) {
    a_order.push_back(ax);
    b_order.push_back(bx);
    k *= a.extent(ax);
  }
  for (int axis = 0; axis < rb; ++axis) {
    if (!b_used[static_cast<std::size_t>(axis)]) {
      b_order.push_back(axis);
      out_shape.push_back(b.extent(axis));
      n *= b.extent(axis);
    }
  }

  Tensor<Scalar> ap = permute(a, a_order);
  Tensor<Scalar> bp = permute(b, b_order);
  Tensor<Scalar> out(out_shape);
  Eigen::Map<EigenMatrix<Scalar>> c(out.data(), m, n);
  Eigen::Map<const EigenMatrix<Scalar>> lhs(ap.data(), m, k);
  Eigen::Map<const EigenMatrix<Scalar>> rhs(bp.data(), k, n);
  c.noalias() = lhs * rhs;
  return out;
}

}  // namespace mpsim

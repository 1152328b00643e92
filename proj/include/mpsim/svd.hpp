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
 * Truncated singular value decomposition of rank-2 tensors.
 *
 * Truncation drops the largest trailing set of singular values whose
 * cumulative squared weight, relative to the total, stays within `cutoff`,
 * then caps the kept rank at `max_rank`. At least one value is always kept.
 */

#pragma once

#include <algorithm>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SVD>

#include "mpsim/errors.hpp"
#include "mpsim/tensor.hpp"

namespace mpsim {

template <typename Scalar>
struct SvdResult {
  Tensor<Scalar> u;                      // m x k, isometric columns
  std::vector<double> singular_values;   // length k, descending, >= 0
  Tensor<Scalar> vdag;                   // k x n, isometric rows
  double discarded_weight = 0.0;         // relative squared weight dropped
};

namespace detail {

/// Kept rank under the truncation rule; singular values must be descending.
inline Index truncation_rank(const Eigen::VectorXd& s, Index max_rank,
                             double cutoff, double* discarded_weight) {
  const Index full = s.size();
  double total = 0.0;
  for (Index i = 0; i < full; ++i) {
    total += s[i] * s[i];
  }
  Index keep = full;
  if (total > 0.0) {
    double tail = 0.0;
    while (keep > 1 && tail + s[keep - 1] * s[keep - 1] <= cutoff * total) {
      tail += s[keep - 1] * s[keep - 1];
      --keep;
    }
  } else {
    keep = 1;  // a zero matrix carries no weight beyond the minimum rank
  }
  keep = std::min(keep, std::max<Index>(Index{1}, max_rank));
  if (discarded_weight != nullptr) {
    double dropped = 0.0;
    for (Index i = keep; i < full; ++i) {
      dropped += s[i] * s[i];
    }
    *discarded_weight = total > 0.0 ? dropped / total : 0.0;
  }
  return keep;
}

}  // namespace detail

/// Truncated SVD of a rank-2 tensor: m ~= u * diag(s) * vdag.
template <typename Scalar>
SvdResult<Scalar> svd(const Tensor<Scalar>& m, Index max_rank = kUnbounded,
                      double cutoff = 0.0) {
  if (m.rank() != 2) {
    throw std::invalid_argument("svd requires a rank-2 tensor, got rank " +
                                std::to_string(m.rank()));
  }
  if (max_rank < 1) {
    throw std::invalid_argument("svd max_rank must be >= 1");
  }
  if (cutoff < 0.0 || cutoff >= 1.0) {
    throw std::invalid_argument("svd cutoff must lie in [0, 1)");
  }

  using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  Mat a = matrix_view(m);
  Eigen::BDCSVD<Mat> dec(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (dec.info() != Eigen::Success) {
    throw NumericError("singular value decomposition did not converge for " +
                       detail::shape_to_string(m.shape()) + " matrix");
  }

  const Eigen::VectorXd& s = dec.singularValues();
  SvdResult<Scalar> result;
  Index keep = detail::truncation_rank(s, max_rank, cutoff,
                                       &result.discarded_weight);

  result.u = from_matrix(dec.matrixU().leftCols(keep));
  result.vdag = from_matrix(dec.matrixV().leftCols(keep).adjoint().eval());
  result.singular_values.assign(s.data(), s.data() + keep);
  return result;
}

}  // namespace mpsim

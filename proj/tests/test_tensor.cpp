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

#include <catch2/catch_amalgamated.hpp>

#include <random>

#include <Eigen/Eigenvalues>

#include "mpsim/errors.hpp"
#include "mpsim/svd.hpp"
#include "mpsim/tensor.hpp"
#include "support/test_util.hpp"

using namespace mpsim;

namespace {

CTensor random_tensor(std::vector<Index> shape, std::mt19937_64& engine) {
  CTensor t(std::move(shape));
  for (Index i = 0; i < t.size(); ++i) {
    t[i] = Complex(testing::uniform_unit(engine) - 0.5,
                   testing::uniform_unit(engine) - 0.5);
  }
  return t;
}

// Independent contraction oracle: explicit nested index loops, no shared
// code with contract().
CTensor loop_contract(const CTensor& a, const CTensor& b,
                      const std::vector<std::pair<int, int>>& pairs) {
  std::vector<bool> a_used(static_cast<std::size_t>(a.rank()), false);
  std::vector<bool> b_used(static_cast<std::size_t>(b.rank()), false);
  for (auto [ax, bx] : pairs) {
    a_used[static_cast<std::size_t>(ax)] = true;
    b_used[static_cast<std::size_t>(bx)] = true;
  }
  std::vector<int> a_free, b_free;
  std::vector<Index> out_shape;
  for (int i = 0; i < a.rank(); ++i) {
    if (!a_used[static_cast<std::size_t>(i)]) {
      a_free.push_back(i);
      out_shape.push_back(a.extent(i));
    }
  }
  for (int i = 0; i < b.rank(); ++i) {
    if (!b_used[static_cast<std::size_t>(i)]) {
      b_free.push_back(i);
      out_shape.push_back(b.extent(i));
    }
  }
  Index contracted_volume = 1;
  for (auto [ax, bx] : pairs) {
    contracted_volume *= a.extent(ax);
  }

  CTensor out(out_shape);
  const auto a_strides = a.strides();
  const auto b_strides = b.strides();
  for (Index flat = 0; flat < out.size(); ++flat) {
    // Decode the output multi-index.
    std::vector<Index> idx(out_shape.size());
    Index rem = flat;
    for (int i = static_cast<int>(out_shape.size()) - 1; i >= 0; --i) {
      idx[static_cast<std::size_t>(i)] = rem % out_shape[static_cast<std::size_t>(i)];
      rem /= out_shape[static_cast<std::size_t>(i)];
    }
    Complex acc{};
    for (Index k = 0; k < contracted_volume; ++k) {
      Index a_off = 0, b_off = 0;
      for (std::size_t i = 0; i < a_free.size(); ++i) {
        a_off += idx[i] * a_strides[static_cast<std::size_t>(a_free[i])];
      }
      for (std::size_t i = 0; i < b_free.size(); ++i) {
        b_off += idx[a_free.size() + i] *
                 b_strides[static_cast<std::size_t>(b_free[i])];
      }
      Index krem = k;
      for (int p = static_cast<int>(pairs.size()) - 1; p >= 0; --p) {
        const Index extent = a.extent(pairs[static_cast<std::size_t>(p)].first);
        const Index kp = krem % extent;
        krem /= extent;
        a_off += kp * a_strides[static_cast<std::size_t>(
                          pairs[static_cast<std::size_t>(p)].first)];
        b_off += kp * b_strides[static_cast<std::size_t>(
                          pairs[static_cast<std::size_t>(p)].second)];
      }
      acc += a[a_off] * b[b_off];
    }
    out[flat] = acc;
  }
  return out;
}

double max_abs_diff(const CTensor& a, const CTensor& b) {
  REQUIRE(a.shape() == b.shape());
  double m = 0.0;
  for (Index i = 0; i < a.size(); ++i) {
    m = std::max(m, std::abs(a[i] - b[i]));
  }
  return m;
}

}  // namespace

TEST_CASE("contract: identity matrix acts trivially") {
  CTensor eye({2, 2}, {1, 0, 0, 1});
  CTensor v({2}, {1, 0});
  CTensor r = contract(eye, v, {{1, 0}});
  REQUIRE(r.shape() == std::vector<Index>{2});
  CHECK(std::abs(r[0] - Complex(1, 0)) < 1e-15);
  CHECK(std::abs(r[1]) < 1e-15);
}

TEST_CASE("contract: hadamard on |0>") {
  const double s = 1.0 / std::sqrt(2.0);
  CTensor h({2, 2}, {s, s, s, -s});
  CTensor v({2}, {1, 0});
  CTensor r = contract(h, v, {{1, 0}});
  CHECK(std::abs(r[0] - Complex(s, 0)) < 1e-15);
  CHECK(std::abs(r[1] - Complex(s, 0)) < 1e-15);
}

TEST_CASE("contract agrees with the loop oracle on random tensors") {
  std::mt19937_64 engine(7);
  for (int trial = 0; trial < 20; ++trial) {
    CTensor a = random_tensor({3, 4, 2}, engine);
    CTensor b = random_tensor({4, 2, 5}, engine);

    // Single shared axis.
    CTensor got = contract(a, b, {{1, 0}});
    CTensor want = loop_contract(a, b, {{1, 0}});
    CHECK(max_abs_diff(got, want) <= 1e-13);

    // Two shared axes.
    got = contract(a, b, {{1, 0}, {2, 1}});
    want = loop_contract(a, b, {{1, 0}, {2, 1}});
    CHECK(max_abs_diff(got, want) <= 1e-13);
  }
}

TEST_CASE("contract is bilinear") {
  std::mt19937_64 engine(11);
  CTensor a = random_tensor({3, 4}, engine);
  CTensor b = random_tensor({4, 3}, engine);
  const Complex alpha{0.75, -1.25};
  CTensor scaled = a;
  for (Index i = 0; i < scaled.size(); ++i) {
    scaled[i] *= alpha;
  }
  CTensor left = contract(scaled, b, {{1, 0}});
  CTensor right = contract(a, b, {{1, 0}});
  for (Index i = 0; i < right.size(); ++i) {
    right[i] *= alpha;
  }
  CHECK(max_abs_diff(left, right) <= 1e-13);
}

TEST_CASE("contract with identity over one axis is the identity map") {
  std::mt19937_64 engine(13);
  CTensor t = random_tensor({3, 2, 4}, engine);
  CTensor eye({2, 2}, {1, 0, 0, 1});
  CTensor moved = contract(t, eye, {{1, 0}});   // [a, c, p]
  CTensor back = permute(moved, {0, 2, 1});
  CHECK(max_abs_diff(back, t) <= 1e-13);
}

TEST_CASE("contract rejects malformed axis pairs") {
  CTensor a({2, 3});
  CTensor b({3, 2});
  CHECK_THROWS_AS(contract(a, b, {{0, 0}}), std::invalid_argument);  // extent
  CHECK_THROWS_AS(contract(a, b, {{2, 0}}), std::invalid_argument);  // range
  CHECK_THROWS_AS(contract(a, b, {{1, 0}, {1, 1}}),
                  std::invalid_argument);  // duplicate
}

TEST_CASE("permute transposes and round-trips") {
  CTensor m({2, 3}, {1, 2, 3, 4, 5, 6});
  CTensor t = permute(m, {1, 0});
  REQUIRE(t.shape() == std::vector<Index>{3, 2});
  CHECK(t(0, 0) == Complex(1, 0));
  CHECK(t(0, 1) == Complex(4, 0));
  CHECK(t(2, 1) == Complex(6, 0));

  CHECK(max_abs_diff(permute(m, {0, 1}), m) == 0.0);

  std::mt19937_64 engine(17);
  CTensor r = random_tensor({2, 3, 4, 2}, engine);
  const std::vector<int> order = {2, 0, 3, 1};
  std::vector<int> inverse(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    inverse[static_cast<std::size_t>(order[i])] = static_cast<int>(i);
  }
  CTensor round = permute(permute(r, order), inverse);
  REQUIRE(round.shape() == r.shape());
  for (Index i = 0; i < r.size(); ++i) {
    // Bitwise equality: permutation only moves values.
    CHECK(round[i] == r[i]);
  }
}

TEST_CASE("permute rejects invalid orders") {
  CTensor t({2, 2});
  CHECK_THROWS_AS(permute(t, {0}), std::invalid_argument);
  CHECK_THROWS_AS(permute(t, {0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(permute(t, {0, 2}), std::invalid_argument);
}

TEST_CASE("reshape keeps data order") {
  std::mt19937_64 engine(19);
  CTensor m = random_tensor({4, 4}, engine);
  CTensor t = reshape(m, {2, 2, 2, 2});
  for (Index i = 0; i < m.size(); ++i) {
    CHECK(t[i] == m[i]);
  }
  CTensor back = reshape(t, {4, 4});
  CHECK(max_abs_diff(back, m) == 0.0);
  CHECK_THROWS_AS(reshape(m, {3, 5}), std::invalid_argument);
}

TEST_CASE("svd: identity and diagonal singular values") {
  CTensor eye({2, 2}, {1, 0, 0, 1});
  auto r = svd(eye);
  REQUIRE(r.singular_values.size() == 2);
  CHECK(r.singular_values[0] == Catch::Approx(1.0).margin(1e-14));
  CHECK(r.singular_values[1] == Catch::Approx(1.0).margin(1e-14));
  CHECK(r.discarded_weight == 0.0);

  CTensor diag({2, 2}, {3, 0, 0, 4});
  auto d = svd(diag);
  REQUIRE(d.singular_values.size() == 2);
  CHECK(d.singular_values[0] == Catch::Approx(4.0).margin(1e-13));
  CHECK(d.singular_values[1] == Catch::Approx(3.0).margin(1e-13));
}

TEST_CASE("svd reconstructs and is isometric") {
  std::mt19937_64 engine(23);
  for (int trial = 0; trial < 10; ++trial) {
    CTensor m = random_tensor({6, 5}, engine);
    auto r = svd(m);
    const Index k = static_cast<Index>(r.singular_values.size());

    Eigen::MatrixXcd u = matrix_view(r.u);
    Eigen::MatrixXcd vdag = matrix_view(r.vdag);
    Eigen::VectorXd s(k);
    for (Index i = 0; i < k; ++i) {
      s[i] = r.singular_values[static_cast<std::size_t>(i)];
    }
    Eigen::MatrixXcd rec = u * s.asDiagonal() * vdag;
    Eigen::MatrixXcd orig = matrix_view(m);
    CHECK((rec - orig).norm() / orig.norm() <= 1e-12);
    CHECK((u.adjoint() * u - Eigen::MatrixXcd::Identity(k, k))
              .cwiseAbs()
              .maxCoeff() <= 1e-12);
    CHECK((vdag * vdag.adjoint() - Eigen::MatrixXcd::Identity(k, k))
              .cwiseAbs()
              .maxCoeff() <= 1e-12);

    // Sorted descending, non-negative.
    for (Index i = 0; i + 1 < k; ++i) {
      CHECK(r.singular_values[static_cast<std::size_t>(i)] >=
            r.singular_values[static_cast<std::size_t>(i + 1)]);
    }
    CHECK(r.singular_values.back() >= 0.0);
  }
}

TEST_CASE("svd truncation reports the discarded weight it dropped") {
  std::mt19937_64 engine(29);
  CTensor m = random_tensor({8, 6}, engine);

  // Independent oracle: squared singular values are the eigenvalues of
  // the Gram matrix, computed by a different algorithm.
  Eigen::MatrixXcd a = matrix_view(m);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(a.adjoint() * a);
  Eigen::VectorXd evals = eig.eigenvalues();  // ascending
  const double total = evals.sum();

  auto r = svd(m, 3, 0.0);
  REQUIRE(r.singular_values.size() == 3);
  double dropped = 0.0;
  for (Index i = 0; i < 3; ++i) {
    dropped += evals[i];  // the three smallest of six
  }
  CHECK(r.discarded_weight == Catch::Approx(dropped / total).margin(1e-12));

  // Eckart-Young: the reconstruction error equals the discarded weight.
  Eigen::MatrixXcd u = matrix_view(r.u);
  Eigen::MatrixXcd vdag = matrix_view(r.vdag);
  Eigen::VectorXd s(3);
  for (Index i = 0; i < 3; ++i) {
    s[i] = r.singular_values[static_cast<std::size_t>(i)];
  }
  const double err2 = (u * s.asDiagonal() * vdag - a).squaredNorm();
  CHECK(err2 / a.squaredNorm() ==
        Catch::Approx(r.discarded_weight).margin(1e-12));
}

TEST_CASE("svd truncation is optimal among random low-rank approximations") {
  std::mt19937_64 engine(31);
  CTensor m = random_tensor({6, 5}, engine);
  Eigen::MatrixXcd a = matrix_view(m);

  const Index k = 2;
  auto r = svd(m, k, 0.0);
  Eigen::MatrixXcd u = matrix_view(r.u);
  Eigen::MatrixXcd vdag = matrix_view(r.vdag);
  Eigen::VectorXd s(k);
  for (Index i = 0; i < k; ++i) {
    s[i] = r.singular_values[static_cast<std::size_t>(i)];
  }
  const double best = (u * s.asDiagonal() * vdag - a).norm();

  for (int trial = 0; trial < 120; ++trial) {
    CTensor left = random_tensor({6, k}, engine);
    CTensor right = random_tensor({k, 5}, engine);
    Eigen::MatrixXcd candidate = matrix_view(left) * matrix_view(right);
    // Give the candidate its best scalar multiple before comparing.
    const Complex scale =
        (candidate.conjugate().cwiseProduct(a)).sum() / candidate.squaredNorm();
    CHECK((scale * candidate - a).norm() >= best - 1e-12);
  }
}

TEST_CASE("svd cutoff drops trailing weight and keeps at least rank 1") {
  CTensor m({2, 2}, {1, 0, 0, 0});
  auto r = svd(m, kUnbounded, 0.0);
  // The exact zero singular value is dropped even at cutoff 0.
  REQUIRE(r.singular_values.size() == 1);
  CHECK(r.discarded_weight == 0.0);

  CTensor diag({2, 2}, {1, 0, 0, 0.1});
  auto d = svd(diag, kUnbounded, 0.5);
  REQUIRE(d.singular_values.size() == 1);
  CHECK(d.discarded_weight == Catch::Approx(0.01 / 1.01).margin(1e-14));

  // Keeping everything requires cutoff below the relative tail weight.
  auto full = svd(diag, kUnbounded, 0.001);
  REQUIRE(full.singular_values.size() == 2);

  // All-zero matrix still keeps one singular value.
  CTensor zero({3, 2});
  auto z = svd(zero);
  REQUIRE(z.singular_values.size() == 1);
  CHECK(z.singular_values[0] == 0.0);
  CHECK(z.discarded_weight == 0.0);
}

TEST_CASE("svd rejects non-matrices and bad options") {
  CHECK_THROWS_AS(svd(CTensor({2, 2, 2})), std::invalid_argument);
  CHECK_THROWS_AS(svd(CTensor({2, 2}), 0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(svd(CTensor({2, 2}), 1, 1.0), std::invalid_argument);
}

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

#include "mpsim/errors.hpp"
#include "mpsim/gate_apply.hpp"
#include "mpsim/mps.hpp"
#include "support/test_util.hpp"

using namespace mpsim;

namespace {

// Left-isometry defect of site i matricized as (left*2) x right.
double left_isometry_defect(const MpsState& s, int i) {
  const CTensor& t = s.site(i);
  Eigen::Map<const Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic,
                                 Eigen::RowMajor>>
      m(t.data(), t.extent(0) * 2, t.extent(2));
  return (m.adjoint() * m -
          Eigen::MatrixXcd::Identity(t.extent(2), t.extent(2)))
      .cwiseAbs()
      .maxCoeff();
}

double right_isometry_defect(const MpsState& s, int i) {
  const CTensor& t = s.site(i);
  Eigen::Map<const Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic,
                                 Eigen::RowMajor>>
      m(t.data(), t.extent(0), 2 * t.extent(2));
  return (m * m.adjoint() -
          Eigen::MatrixXcd::Identity(t.extent(0), t.extent(0)))
      .cwiseAbs()
      .maxCoeff();
}

double max_dev(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  REQUIRE(a.size() == b.size());
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    m = std::max(m, std::abs(a[i] - b[i]));
  }
  return m;
}

MpsState ghz_state(int n) {
  MpsState s(n);
  const double hs = 1.0 / std::sqrt(2.0);
  apply_1q(s, CTensor({2, 2}, {hs, hs, hs, -hs}), 0);
  const CTensor cx({4, 4}, {1, 0, 0, 0,
                            0, 1, 0, 0,
                            0, 0, 0, 1,
                            0, 0, 1, 0});
  for (int i = 0; i + 1 < n; ++i) {
    apply_2q_local(s, cx, i, TruncationPolicy{});
  }
  return s;
}

}  // namespace

TEST_CASE("zero state: amplitudes, bonds, statevector") {
  MpsState one(1);
  CHECK(std::abs(amplitude(one, "0") - Complex(1, 0)) < 1e-15);
  CHECK(std::abs(amplitude(one, "1")) < 1e-15);

  MpsState four(4);
  for (Index b : four.bond_dims()) {
    CHECK(b == 1);
  }

  MpsState three(3);
  auto sv = to_statevector(three);
  REQUIRE(sv.size() == 8);
  CHECK(std::abs(sv[0] - Complex(1, 0)) < 1e-15);
  for (std::size_t i = 1; i < 8; ++i) {
    CHECK(std::abs(sv[i]) < 1e-15);
  }

  CHECK_THROWS_AS(MpsState(0), std::invalid_argument);
}

TEST_CASE("norm: zero state, unitary evolution, site scaling") {
  CHECK(norm(MpsState(5)) == Catch::Approx(1.0).margin(1e-14));

  MpsState s = testing::random_mps(6, 8, 21);
  CHECK(norm(s) == Catch::Approx(1.0).margin(1e-11));

  CTensor& first = s.site(0);
  for (Index i = 0; i < first.size(); ++i) {
    first[i] *= 2.0;
  }
  CHECK(norm(s) == Catch::Approx(2.0).margin(1e-11));
}

TEST_CASE("amplitude agrees with the statevector export") {
  MpsState s = testing::random_mps(6, 6, 33);
  auto sv = to_statevector(s);
  for (std::size_t b = 0; b < sv.size(); ++b) {
    std::string bits(6, '0');
    for (int q = 0; q < 6; ++q) {
      if ((b >> (5 - q)) & 1U) {
        bits[static_cast<std::size_t>(q)] = '1';
      }
    }
    CHECK(std::abs(sv[b] - amplitude(s, bits)) <= 1e-13);
  }
  CHECK_THROWS_AS(amplitude(s, "000"), std::invalid_argument);
  CHECK_THROWS_AS(amplitude(s, "00200x"), std::invalid_argument);
}

TEST_CASE("GHZ amplitudes") {
  MpsState s = ghz_state(4);
  const double hs = 1.0 / std::sqrt(2.0);
  CHECK(std::abs(amplitude(s, "0000") - Complex(hs, 0)) <= 1e-12);
  CHECK(std::abs(amplitude(s, "1111") - Complex(hs, 0)) <= 1e-12);
  CHECK(std::abs(amplitude(s, "0101")) <= 1e-12);

  auto sv = to_statevector(ghz_state(2));
  CHECK(std::abs(sv[0] - Complex(hs, 0)) <= 1e-12);
  CHECK(std::abs(sv[3] - Complex(hs, 0)) <= 1e-12);
  CHECK(std::abs(sv[1]) <= 1e-12);
  CHECK(std::abs(sv[2]) <= 1e-12);
}

TEST_CASE("canonicalization: isometries, preserved state, centers") {
  MpsState zero = MpsState(4);
  auto before = to_statevector(zero);
  left_canonicalize(zero);
  CHECK(max_dev(before, to_statevector(zero)) <= 1e-12);
  CHECK(zero.ortho_center() == std::optional<int>(3));

  for (std::uint64_t seed = 40; seed < 46; ++seed) {
    MpsState s = testing::random_mps(6, 8, seed);
    auto reference = to_statevector(s);

    left_canonicalize(s);
    s.validate();
    CHECK(s.ortho_center() == std::optional<int>(5));
    for (int i = 0; i < 5; ++i) {
      CHECK(left_isometry_defect(s, i) <= 1e-11);
    }
    CHECK(max_dev(reference, to_statevector(s)) <= 1e-11);
    CHECK(norm(s) == Catch::Approx(1.0).margin(1e-12));

    right_canonicalize(s);
    s.validate();
    CHECK(s.ortho_center() == std::optional<int>(0));
    for (int i = 1; i < 6; ++i) {
      CHECK(right_isometry_defect(s, i) <= 1e-11);
    }
    CHECK(max_dev(reference, to_statevector(s)) <= 1e-11);
  }
}

TEST_CASE("canonicalization is idempotent on the represented state") {
  MpsState s = testing::random_mps(5, 6, 55);
  left_canonicalize(s);
  auto once = to_statevector(s);
  left_canonicalize(s);
  CHECK(max_dev(once, to_statevector(s)) <= 1e-11);
}

TEST_CASE("move_center gives a mixed canonical form") {
  MpsState s = testing::random_mps(6, 8, 60);
  auto reference = to_statevector(s);
  move_center(s, 3);
  s.validate();
  CHECK(s.ortho_center() == std::optional<int>(3));
  for (int i = 0; i < 3; ++i) {
    CHECK(left_isometry_defect(s, i) <= 1e-11);
  }
  for (int i = 4; i < 6; ++i) {
    CHECK(right_isometry_defect(s, i) <= 1e-11);
  }
  CHECK(max_dev(reference, to_statevector(s)) <= 1e-11);
}

TEST_CASE("canonicalizing a zero-norm state fails loudly") {
  MpsState s(3);
  CTensor& first = s.site(0);
  for (Index i = 0; i < first.size(); ++i) {
    first[i] = Complex{};
  }
  CHECK_THROWS_AS(left_canonicalize(s), NumericError);
}

TEST_CASE("element count obeys the polynomial bound") {
  MpsState s = ghz_state(16);
  // chi = 2 throughout: n sites of at most 2*2*2 elements.
  CHECK(s.max_bond_dim() == 2);
  CHECK(s.total_elements() <= 16 * 2 * 2 * 2);

  MpsState r = testing::random_mps(7, 4, 70);
  CHECK(r.total_elements() <= 7 * 2 * 4 * 4);
}

TEST_CASE("statevector export is capped") {
  MpsState s(3);
  CHECK_THROWS_AS(to_statevector(s, 2), std::invalid_argument);
}

TEST_CASE("overlap matches the dense inner product") {
  MpsState a = testing::random_mps(5, 5, 81);
  MpsState b = testing::random_mps(5, 5, 82);
  auto va = to_statevector(a);
  auto vb = to_statevector(b);
  Complex dense{};
  for (std::size_t i = 0; i < va.size(); ++i) {
    dense += std::conj(va[i]) * vb[i];
  }
  CHECK(std::abs(overlap(a, b) - dense) <= 1e-12);
  CHECK(std::abs(overlap(a, a) - Complex(1, 0)) <= 1e-11);
}

TEST_CASE("validate trips on corrupted bookkeeping") {
  MpsState s(3);
  s.set_bond_dim(1, 4);
  CHECK_THROWS_AS(s.validate(), std::logic_error);
}

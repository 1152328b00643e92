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

#include <cmath>
#include <stdexcept>
#include <unordered_map>

#include "mpsim/circuit.hpp"

namespace mpsim {

namespace {

constexpr Complex kI{0.0, 1.0};

CTensor mat2(Complex a, Complex b, Complex c, Complex d) {
  return CTensor({2, 2}, {a, b, c, d});
}

CTensor mat4(std::vector<Complex> entries) {
  return CTensor({4, 4}, std::move(entries));
}

// Conjugates a 4x4 matrix by SWAP: reindexes both axes with bit-reversed
// two-bit indices.
CTensor swap_conjugate(const CTensor& m) {
  auto rev = [](Index x) { return ((x & 1) << 1) | (x >> 1); };
  CTensor out({4, 4});
  for (Index r = 0; r < 4; ++r) {
    for (Index c = 0; c < 4; ++c) {
      out(r, c) = m(rev(r), rev(c));
    }
  }
  return out;
}

}  // namespace

bool is_two_qubit(GateKind kind) {
  switch (kind) {
    case GateKind::Cx:
    case GateKind::Cz:
    case GateKind::Swap:
    case GateKind::U4:
      return true;
    default:
      return false;
  }
}

int param_count(GateKind kind) {
  switch (kind) {
    case GateKind::Rx:
    case GateKind::Ry:
    case GateKind::Rz:
    case GateKind::U1:
      return 1;
    case GateKind::U2:
      return 2;
    case GateKind::U3:
      return 3;
    default:
      return 0;
  }
}

std::string_view gate_name(GateKind kind) {
  switch (kind) {
    case GateKind::H: return "h";
    case GateKind::X: return "x";
    case GateKind::Y: return "y";
    case GateKind::Z: return "z";
    case GateKind::S: return "s";
    case GateKind::Sdg: return "sdg";
    case GateKind::T: return "t";
    case GateKind::Tdg: return "tdg";
    case GateKind::Rx: return "rx";
    case GateKind::Ry: return "ry";
    case GateKind::Rz: return "rz";
    case GateKind::U1: return "u1";
    case GateKind::U2: return "u2";
    case GateKind::U3: return "u3";
    case GateKind::Cx: return "cx";
    case GateKind::Cz: return "cz";
    case GateKind::Swap: return "swap";
    case GateKind::U4: return "u4";
  }
  return "?";
}

bool gate_kind_from_name(std::string_view name, GateKind& kind) {
  static const std::unordered_map<std::string_view, GateKind> table = {
      {"h", GateKind::H},     {"x", GateKind::X},     {"y", GateKind::Y},
      {"z", GateKind::Z},     {"s", GateKind::S},     {"sdg", GateKind::Sdg},
      {"t", GateKind::T},     {"tdg", GateKind::Tdg}, {"rx", GateKind::Rx},
      {"ry", GateKind::Ry},   {"rz", GateKind::Rz},   {"u1", GateKind::U1},
      {"u2", GateKind::U2},   {"u3", GateKind::U3},   {"cx", GateKind::Cx},
      {"cz", GateKind::Cz},   {"swap", GateKind::Swap},
  };
  auto it = table.find(name);
  if (it == table.end()) {
    return false;
  }
  kind = it->second;
  return true;
}

CTensor gate_matrix_1q(GateKind kind, const std::vector<double>& params) {
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  switch (kind) {
    case GateKind::H:
      return mat2(inv_sqrt2, inv_sqrt2, inv_sqrt2, -inv_sqrt2);
    case GateKind::X:
      return mat2(0, 1, 1, 0);
    case GateKind::Y:
      return mat2(0, -kI, kI, 0);
    case GateKind::Z:
      return mat2(1, 0, 0, -1);
    case GateKind::S:
      return mat2(1, 0, 0, kI);
    case GateKind::Sdg:
      return mat2(1, 0, 0, -kI);
    case GateKind::T:
      return mat2(1, 0, 0, std::exp(kI * (M_PI / 4.0)));
    case GateKind::Tdg:
      return mat2(1, 0, 0, std::exp(-kI * (M_PI / 4.0)));
    case GateKind::Rx: {
      const double h = params.at(0) / 2.0;
      return mat2(std::cos(h), -kI * std::sin(h), -kI * std::sin(h),
                  std::cos(h));
    }
    case GateKind::Ry: {
      const double h = params.at(0) / 2.0;
      return mat2(std::cos(h), -std::sin(h), std::sin(h), std::cos(h));
    }
    case GateKind::Rz: {
      const double h = params.at(0) / 2.0;
      return mat2(std::exp(-kI * h), 0, 0, std::exp(kI * h));
    }
    case GateKind::U1:
      return mat2(1, 0, 0, std::exp(kI * params.at(0)));
    case GateKind::U2: {
      const double phi = params.at(0);
      const double lam = params.at(1);
      return mat2(inv_sqrt2, -std::exp(kI * lam) * inv_sqrt2,
                  std::exp(kI * phi) * inv_sqrt2,
                  std::exp(kI * (phi + lam)) * inv_sqrt2);
    }
    case GateKind::U3: {
      const double half = params.at(0) / 2.0;
      const double phi = params.at(1);
      const double lam = params.at(2);
      return mat2(std::cos(half), -std::exp(kI * lam) * std::sin(half),
                  std::exp(kI * phi) * std::sin(half),
                  std::exp(kI * (phi + lam)) * std::cos(half));
    }
    default:
      throw std::invalid_argument("not a one-qubit gate: " +
                                  std::string(gate_name(kind)));
  }
}

CTensor gate_matrix(const PrimOp& op) {
  if (!op.two_qubit()) {
    return gate_matrix_1q(op.kind, op.params);
  }
  // Row/column index is (bit of first listed qubit << 1) | bit of second.
  CTensor m;
  switch (op.kind) {
    case GateKind::Cx:
      m = mat4({1, 0, 0, 0,
                0, 1, 0, 0,
                0, 0, 0, 1,
                0, 0, 1, 0});
      break;
    case GateKind::Cz:
      m = mat4({1, 0, 0, 0,
                0, 1, 0, 0,
                0, 0, 1, 0,
                0, 0, 0, -1});
      break;
    case GateKind::Swap:
      m = mat4({1, 0, 0, 0,
                0, 0, 1, 0,
                0, 1, 0, 0,
                0, 0, 0, 1});
      break;
    case GateKind::U4:
      m = op.matrix;
      break;
    default:
      throw std::invalid_argument("not a two-qubit gate: " +
                                  std::string(gate_name(op.kind)));
  }
  // Canonicalize to the (low, high) basis.
  return op.q0 < op.q1 ? m : swap_conjugate(m);
}

}  // namespace mpsim

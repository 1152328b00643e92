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
#include <cstdio>
#include <random>
#include <sstream>

#include <Eigen/Dense>

#include "mpsim/errors.hpp"
#include "mpsim/generators.hpp"

namespace mpsim {

namespace {

// Hand-rolled variates so generated files do not depend on the standard
// library's distribution implementations.
double uniform_unit(std::mt19937_64& engine) {
  return static_cast<double>(engine() >> 11) * 0x1.0p-53;
}

double normal_unit(std::mt19937_64& engine) {
  double u1 = uniform_unit(engine);
  while (u1 <= 0.0) {
    u1 = uniform_unit(engine);
  }
  const double u2 = uniform_unit(engine);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

std::string format_angle(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

}  // namespace

std::string ghz_qasm(int n_qubits, bool measure) {
  if (n_qubits < 2) {
    throw ConfigError("ghz generator needs at least 2 qubits");
  }
  std::ostringstream os;
  os << "OPENQASM 2.0;\n";
  os << "include \"qelib1.inc\";\n";
  os << "qreg q[" << n_qubits << "];\n";
  if (measure) {
    os << "creg c[" << n_qubits << "];\n";
  }
  os << "h q[0];\n";
  for (int i = 0; i + 1 < n_qubits; ++i) {
    os << "cx q[" << i << "],q[" << i + 1 << "];\n";
  }
  if (measure) {
    os << "measure q -> c;\n";
  }
  return os.str();
}

CTensor haar_unitary(Index dim, std::uint64_t seed) {
  std::mt19937_64 engine(seed);
  Eigen::MatrixXcd g(dim, dim);
  for (Index r = 0; r < dim; ++r) {
    for (Index c = 0; c < dim; ++c) {
      g(r, c) = Complex(normal_unit(engine), normal_unit(engine));
    }
  }
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
  Eigen::MatrixXcd q =
      qr.householderQ() * Eigen::MatrixXcd::Identity(dim, dim);
  const Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index j = 0; j < dim; ++j) {
    const Complex d = r(j, j);
    const double mag = std::abs(d);
    if (mag > 0.0) {
      q.col(j) *= d / mag;
    }
  }
  return from_matrix(q);
}

GeneratedCircuit brickwork_qasm(const BrickworkOptions& options) {
  if (options.n_qubits < 2) {
    throw ConfigError("brickwork generator needs at least 2 qubits");
  }
  if (options.depth < 1) {
    throw ConfigError("brickwork generator needs depth >= 1");
  }

  std::mt19937_64 engine(options.seed);
  GeneratedCircuit out;
  std::ostringstream os;
  os << "OPENQASM 2.0;\n";
  os << "include \"qelib1.inc\";\n";
  os << "qreg q[" << options.n_qubits << "];\n";
  if (options.measure) {
    os << "creg c[" << options.n_qubits << "];\n";
  }

  std::size_t op_index = 0;
  for (int unit = 0; unit < options.depth; ++unit) {
    for (int q = 0; q < options.n_qubits; ++q) {
      const double theta = uniform_unit(engine) * 2.0 * M_PI;
      const double phi = uniform_unit(engine) * 2.0 * M_PI;
      const double lam = uniform_unit(engine) * 2.0 * M_PI;
      os << "u3(" << format_angle(theta) << "," << format_angle(phi) << ","
         << format_angle(lam) << ") q[" << q << "];\n";
      ++op_index;
    }
    const int start = unit % 2;
    for (int p = start; p + 1 < options.n_qubits; p += 2) {
      if (options.entangler == Entangler::Cx) {
        os << "cx q[" << p << "],q[" << p + 1 << "];\n";
      } else {
        SidecarGate gate;
        gate.op_index = op_index;
        gate.q0 = p;
        gate.q1 = p + 1;
        gate.matrix = haar_unitary(4, engine());
        os << "// u4 " << out.sidecar.size() << " q[" << p << "],q[" << p + 1
           << "];\n";
        out.sidecar.push_back(std::move(gate));
      }
      ++op_index;
    }
  }
  if (options.measure) {
    os << "measure q -> c;\n";
  }
  out.qasm = os.str();
  return out;
}

}  // namespace mpsim

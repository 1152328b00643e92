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

#include "support/test_util.hpp"

#include <sys/wait.h>
#include <unistd.h>

#include "mpsim/gate_apply.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace mpsim::testing {

double uniform_unit(std::mt19937_64& engine) {
  return static_cast<double>(engine() >> 11) * 0x1.0p-53;
}

Circuit random_circuit(int n_qubits, int n_gates, std::uint64_t seed,
                       bool allow_nonlocal) {
  std::mt19937_64 engine(seed);
  auto pick = [&engine](int bound) {
    return static_cast<int>(engine() % static_cast<std::uint64_t>(bound));
  };

  static const GateKind one_qubit_kinds[] = {
      GateKind::H,  GateKind::X,  GateKind::Y,  GateKind::Z,
      GateKind::S,  GateKind::Sdg, GateKind::T, GateKind::Tdg,
      GateKind::Rx, GateKind::Ry, GateKind::Rz, GateKind::U1,
      GateKind::U2, GateKind::U3};
  static const GateKind two_qubit_kinds[] = {GateKind::Cx, GateKind::Cz,
                                             GateKind::Swap};

  Circuit c;
  c.n_qubits = n_qubits;
  for (int i = 0; i < n_gates; ++i) {
    PrimOp op;
    const bool two = n_qubits > 1 && pick(100) < 40;
    if (two) {
      op.kind = two_qubit_kinds[pick(3)];
      op.q0 = pick(n_qubits);
      do {
        op.q1 = allow_nonlocal
                    ? pick(n_qubits)
                    : std::min(n_qubits - 1,
                               std::max(0, op.q0 + (pick(2) ? 1 : -1)));
      } while (op.q1 == op.q0);
    } else {
      op.kind = one_qubit_kinds[pick(14)];
      op.q0 = pick(n_qubits);
    }
    for (int p = 0; p < param_count(op.kind); ++p) {
      op.params.push_back(uniform_unit(engine) * 2.0 * M_PI);
    }
    c.ops.push_back(std::move(op));
  }
  return c;
}

MpsState random_mps(int n_qubits, Index chi, std::uint64_t seed) {
  std::mt19937_64 engine(seed);
  auto gaussian = [&engine]() {
    double u1 = uniform_unit(engine);
    while (u1 <= 0.0) {
      u1 = uniform_unit(engine);
    }
    const double u2 = uniform_unit(engine);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
  };

  MpsState state(n_qubits);
  std::vector<Index> bonds(static_cast<std::size_t>(n_qubits) + 1, 1);
  for (int i = 1; i < n_qubits; ++i) {
    const Index left_cap = Index{1} << std::min(i, 30);
    const Index right_cap = Index{1} << std::min(n_qubits - i, 30);
    bonds[static_cast<std::size_t>(i)] =
        std::min({chi, left_cap, right_cap});
  }
  for (int i = 0; i < n_qubits; ++i) {
    const Index dl = bonds[static_cast<std::size_t>(i)];
    const Index dr = bonds[static_cast<std::size_t>(i) + 1];
    CTensor site({dl, 2, dr});
    for (Index e = 0; e < site.size(); ++e) {
      site[e] = Complex(gaussian(), gaussian());
    }
    state.site(i) = std::move(site);
    state.set_bond_dim(i, dl);
    state.set_bond_dim(i + 1, dr);
  }
  state.set_ortho_center(std::nullopt);

  const double nrm = norm(state);
  if (nrm <= 0.0) {
    throw std::runtime_error("random state degenerated");
  }
  // Fold the normalization into the first site.
  CTensor& first = state.site(0);
  for (Index e = 0; e < first.size(); ++e) {
    first[e] /= nrm;
  }
  return state;
}

MpsState ghz_mps(int n_qubits) {
  MpsState s(n_qubits);
  const double hs = 1.0 / std::sqrt(2.0);
  apply_1q(s, CTensor({2, 2}, {hs, hs, hs, -hs}), 0);
  const CTensor cx({4, 4}, {1, 0, 0, 0,
                            0, 1, 0, 0,
                            0, 0, 0, 1,
                            0, 0, 1, 0});
  for (int i = 0; i + 1 < n_qubits; ++i) {
    apply_2q_local(s, cx, i, TruncationPolicy{});
  }
  return s;
}

double phase_aligned_max_deviation(const std::vector<Complex>& a,
                                   const std::vector<Complex>& b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("vectors differ in length");
  }
  std::size_t pivot = 0;
  for (std::size_t i = 1; i < a.size(); ++i) {
    if (std::abs(a[i]) > std::abs(a[pivot])) {
      pivot = i;
    }
  }
  Complex phase{1.0, 0.0};
  if (std::abs(a[pivot]) > 0.0 && std::abs(b[pivot]) > 0.0) {
    phase = (a[pivot] / b[pivot]);
    phase /= std::abs(phase);
  }
  double max_dev = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    max_dev = std::max(max_dev, std::abs(a[i] - phase * b[i]));
  }
  return max_dev;
}

namespace {

// Regularized incomplete gamma functions, series + continued fraction.
double gamma_p_series(double a, double x) {
  double term = 1.0 / a;
  double sum = term;
  double ap = a;
  for (int i = 0; i < 500; ++i) {
    ap += 1.0;
    term *= x / ap;
    sum += term;
    if (std::abs(term) < std::abs(sum) * 1e-15) {
      break;
    }
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

double gamma_q_cf(double a, double x) {
  const double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 500; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) {
      d = tiny;
    }
    c = b + an / c;
    if (std::abs(c) < tiny) {
      c = tiny;
    }
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < 1e-15) {
      break;
    }
  }
  return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

}  // namespace

double chi2_pvalue(double chi2, int dof) {
  if (chi2 <= 0.0) {
    return 1.0;
  }
  const double a = dof / 2.0;
  const double x = chi2 / 2.0;
  return x < a + 1.0 ? 1.0 - gamma_p_series(a, x) : gamma_q_cf(a, x);
}

namespace {

bool type_matches(const nlohmann::json& value, const std::string& type) {
  if (type == "object") return value.is_object();
  if (type == "array") return value.is_array();
  if (type == "string") return value.is_string();
  if (type == "integer") return value.is_number_integer() || value.is_number_unsigned();
  if (type == "number") return value.is_number();
  if (type == "boolean") return value.is_boolean();
  if (type == "null") return value.is_null();
  return false;
}

void check_schema(const nlohmann::json& value, const nlohmann::json& schema,
                  const std::string& path, std::vector<std::string>& errors) {
  if (schema.contains("type")) {
    const auto& t = schema["type"];
    bool ok = false;
    if (t.is_string()) {
      ok = type_matches(value, t.get<std::string>());
    } else {
      for (const auto& alt : t) {
        ok = ok || type_matches(value, alt.get<std::string>());
      }
    }
    if (!ok) {
      errors.push_back(path + ": type mismatch, expected " + t.dump());
      return;
    }
  }
  if (schema.contains("enum")) {
    bool ok = false;
    for (const auto& alt : schema["enum"]) {
      ok = ok || alt == value;
    }
    if (!ok) {
      errors.push_back(path + ": not in enum " + schema["enum"].dump());
    }
  }
  if (schema.contains("minimum") && value.is_number()) {
    if (value.get<double>() < schema["minimum"].get<double>()) {
      errors.push_back(path + ": below minimum " + schema["minimum"].dump());
    }
  }
  if (value.is_object()) {
    if (schema.contains("required")) {
      for (const auto& key : schema["required"]) {
        if (!value.contains(key.get<std::string>())) {
          errors.push_back(path + ": missing required key '" +
                           key.get<std::string>() + "'");
        }
      }
    }
    const auto props = schema.contains("properties")
                           ? schema["properties"]
                           : nlohmann::json::object();
    for (const auto& [key, sub] : value.items()) {
      if (props.contains(key)) {
        check_schema(sub, props[key], path + "/" + key, errors);
      } else if (schema.contains("additionalProperties")) {
        const auto& ap = schema["additionalProperties"];
        if (ap.is_boolean()) {
          if (!ap.get<bool>()) {
            errors.push_back(path + ": unexpected key '" + key + "'");
          }
        } else {
          check_schema(sub, ap, path + "/" + key, errors);
        }
      }
    }
  }
  if (value.is_array() && schema.contains("items")) {
    for (std::size_t i = 0; i < value.size(); ++i) {
      check_schema(value[i], schema["items"],
                   path + "/" + std::to_string(i), errors);
    }
  }
}

}  // namespace

std::vector<std::string> schema_violations(const nlohmann::json& value,
                                           const nlohmann::json& schema) {
  std::vector<std::string> errors;
  check_schema(value, schema, "", errors);
  return errors;
}

ProcessResult run_process(const std::string& command) {
  static int counter = 0;
  const auto dir = std::filesystem::temp_directory_path();
  const std::string tag = std::to_string(::getpid()) + "_" +
                          std::to_string(counter++);
  const auto out_path = dir / ("mpsim_test_out_" + tag);
  const auto err_path = dir / ("mpsim_test_err_" + tag);

  const std::string full = command + " >'" + out_path.string() + "' 2>'" +
                           err_path.string() + "'";
  const int status = std::system(full.c_str());

  ProcessResult result;
  if (WIFEXITED(status)) {
    result.exit_code = WEXITSTATUS(status);
  }
  auto slurp = [](const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
  };
  result.out = slurp(out_path);
  result.err = slurp(err_path);
  std::filesystem::remove(out_path);
  std::filesystem::remove(err_path);
  return result;
}

}  // namespace mpsim::testing

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
#include <chrono>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "mpsim/errors.hpp"
#include "mpsim/runner.hpp"
#include "mpsim/sampler.hpp"
#include "mpsim/statevector.hpp"

namespace mpsim {

namespace {

using Clock = std::chrono::steady_clock;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ConfigError("cannot read input file '" + path + "'");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void validate_config(const RunConfig& config) {
  if (config.workers < 1) {
    throw ConfigError("workers must be >= 1");
  }
  if (config.max_bond < 0) {
    throw ConfigError("max-bond must be >= 0 (0 means unbounded)");
  }
  if (config.cutoff < 0.0 || config.cutoff >= 1.0) {
    throw ConfigError("cutoff must lie in [0, 1)");
  }
  if (config.backend == Backend::MpsParallel &&
      config.nonlocal == NonlocalMethod::BondProp) {
    throw ConfigError(
        "bond propagation is only available on the serial backend; the "
        "parallel plan lowers non-local gates to SWAP chains");
  }
  if (config.qasm_path.empty() && config.qasm_text.empty()) {
    throw ConfigError("no circuit given");
  }
}

TruncationPolicy policy_of(const RunConfig& config) {
  TruncationPolicy policy;
  policy.max_bond = config.max_bond == 0 ? kUnbounded : config.max_bond;
  policy.cutoff = config.cutoff;
  return policy;
}

double uniform_unit(std::mt19937_64& engine) {
  return static_cast<double>(engine() >> 11) * 0x1.0p-53;
}

std::string bits_of(std::size_t value, int n_qubits) {
  std::string s(static_cast<std::size_t>(n_qubits), '0');
  for (int q = 0; q < n_qubits; ++q) {
    if ((value >> (n_qubits - 1 - q)) & 1U) {
      s[static_cast<std::size_t>(q)] = '1';
    }
  }
  return s;
}

// Samples shots from |amplitude|^2 by inverse-CDF lookup.
std::map<std::string, std::uint64_t> sample_statevector(
    const StateVector& sv, std::uint64_t shots, std::uint64_t seed) {
  const auto& amps = sv.amplitudes();
  std::vector<double> cdf(amps.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < amps.size(); ++i) {
    acc += std::norm(amps[i]);
    cdf[i] = acc;
  }
  std::mt19937_64 engine(seed);
  std::map<std::string, std::uint64_t> counts;
  for (std::uint64_t s = 0; s < shots; ++s) {
    const double u = uniform_unit(engine) * acc;
    const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    const std::size_t idx = std::min(
        static_cast<std::size_t>(it - cdf.begin()), amps.size() - 1);
    ++counts[bits_of(idx, sv.num_qubits())];
  }
  return counts;
}

}  // namespace

std::string backend_name(Backend backend) {
  switch (backend) {
    case Backend::MpsSerial: return "mps-serial";
    case Backend::MpsParallel: return "mps-parallel";
    case Backend::Statevector: return "statevector";
  }
  return "?";
}

bool backend_from_name(const std::string& name, Backend& backend) {
  if (name == "mps-serial") {
    backend = Backend::MpsSerial;
  } else if (name == "mps-parallel") {
    backend = Backend::MpsParallel;
  } else if (name == "statevector") {
    backend = Backend::Statevector;
  } else {
    return false;
  }
  return true;
}

std::string nonlocal_name(NonlocalMethod method) {
  return method == NonlocalMethod::Swap ? "swap" : "bondprop";
}

bool nonlocal_from_name(const std::string& name, NonlocalMethod& method) {
  if (name == "swap") {
    method = NonlocalMethod::Swap;
  } else if (name == "bondprop") {
    method = NonlocalMethod::BondProp;
  } else {
    return false;
  }
  return true;
}

nlohmann::json sidecar_to_json(const std::vector<SidecarGate>& gates) {
  nlohmann::json entries = nlohmann::json::array();
  for (const SidecarGate& g : gates) {
    nlohmann::json m = nlohmann::json::array();
    for (Index i = 0; i < 16; ++i) {
      m.push_back({g.matrix[i].real(), g.matrix[i].imag()});
    }
    entries.push_back({{"op_index", g.op_index},
                       {"qubits", {g.q0, g.q1}},
                       {"matrix", std::move(m)}});
  }
  return {{"format", "u4-sidecar-v1"}, {"entanglers", std::move(entries)}};
}

std::vector<SidecarGate> sidecar_from_json(const nlohmann::json& j) {
  if (!j.is_object() || j.value("format", "") != "u4-sidecar-v1") {
    throw ConfigError("sidecar file is not in u4-sidecar-v1 format");
  }
  std::vector<SidecarGate> gates;
  for (const auto& entry : j.at("entanglers")) {
    SidecarGate g;
    g.op_index = entry.at("op_index").get<std::size_t>();
    g.q0 = entry.at("qubits").at(0).get<int>();
    g.q1 = entry.at("qubits").at(1).get<int>();
    const auto& m = entry.at("matrix");
    if (m.size() != 16) {
      throw ConfigError("sidecar matrix must have 16 entries");
    }
    std::vector<Complex> data(16);
    for (std::size_t i = 0; i < 16; ++i) {
      data[i] = Complex(m.at(i).at(0).get<double>(),
                        m.at(i).at(1).get<double>());
    }
    g.matrix = CTensor({4, 4}, std::move(data));
    // Reject anything that is not numerically unitary.
    auto mv = matrix_view(g.matrix);
    if ((mv.adjoint() * mv - Eigen::MatrixXcd::Identity(4, 4))
            .cwiseAbs()
            .maxCoeff() > 1e-10) {
      throw ConfigError("sidecar matrix " + std::to_string(gates.size()) +
                        " is not unitary");
    }
    gates.push_back(std::move(g));
  }
  return gates;
}

void inject_sidecar(Circuit& circuit, const std::vector<SidecarGate>& gates) {
  std::vector<SidecarGate> ordered = gates;
  std::sort(ordered.begin(), ordered.end(),
            [](const SidecarGate& a, const SidecarGate& b) {
              return a.op_index < b.op_index;
            });
  for (const SidecarGate& g : ordered) {
    if (g.op_index > circuit.ops.size()) {
      throw ConfigError("sidecar op_index " + std::to_string(g.op_index) +
                        " beyond end of circuit");
    }
    if (g.q0 < 0 || g.q1 < 0 || g.q0 >= circuit.n_qubits ||
        g.q1 >= circuit.n_qubits || g.q0 == g.q1) {
      throw ConfigError("sidecar qubit pair out of range");
    }
    PrimOp op;
    op.kind = GateKind::U4;
    op.q0 = g.q0;
    op.q1 = g.q1;
    op.matrix = g.matrix;
    circuit.ops.insert(circuit.ops.begin() + static_cast<std::ptrdiff_t>(
                                                 g.op_index),
                       std::move(op));
  }
}

RunOutput run_circuit(const RunConfig& config) {
  validate_config(config);

  const std::string text = config.qasm_path.empty()
                               ? config.qasm_text
                               : read_file(config.qasm_path);
  Circuit circuit = parse_qasm(text);

  std::string sidecar = config.sidecar_path;
  if (sidecar.empty() && !config.qasm_path.empty()) {
    const std::string candidate = config.qasm_path + ".u4.json";
    if (std::filesystem::exists(candidate)) {
      sidecar = candidate;
    }
  }
  if (!sidecar.empty()) {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(read_file(sidecar));
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError("malformed sidecar '" + sidecar + "': " + e.what());
    }
    inject_sidecar(circuit, sidecar_from_json(j));
  }

  RunOutput out;
  out.config = config;
  out.n_qubits = circuit.n_qubits;

  const auto start = Clock::now();
  if (config.backend == Backend::Statevector) {
    StateVector sv = sv_run(circuit, config.statevector_cap);
    LayerStat layer;
    layer.layer_index = 0;
    layer.gates = static_cast<int>(circuit.ops.size());
    layer.compute_ns = static_cast<std::uint64_t>(
        std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() -
                                                             start)
            .count());
    out.layers.push_back(std::move(layer));
    out.peak_bond = 0;
    if (config.shots > 0) {
      out.counts = sample_statevector(sv, config.shots, config.seed);
      out.has_counts = true;
    }
  } else {
    std::vector<FusedGate> fused = fuse_circuit(circuit);
    MpsState state(circuit.n_qubits);
    ExecStats stats;
    if (config.backend == Backend::MpsParallel) {
      const LayerPlan plan =
          layerize(decompose_nonlocal(fused, circuit.n_qubits));
      stats = execute_parallel(state, plan, policy_of(config), config.workers);
    } else {
      stats = execute_serial(state, fused, policy_of(config), config.nonlocal);
    }
    out.peak_bond = stats.peak_bond;
    out.layers = std::move(stats.per_layer);
    out.total_discarded_weight = stats.total_discarded_weight;
    if (config.shots > 0) {
      Sampler::Options opts;
      opts.memoize = config.memoize;
      opts.max_cache_entries = config.cache_cap;
      out.counts = sample(state, config.shots, config.seed, opts).counts;
      out.has_counts = true;
    }
  }
  out.total_wall_ns = static_cast<std::uint64_t>(
      std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() -
                                                           start)
          .count());
  return out;
}

nlohmann::json run_output_to_json(const RunOutput& output) {
  const RunConfig& c = output.config;
  nlohmann::json j;
  j["config"] = {
      {"input", c.input_label.empty()
                    ? (c.qasm_path.empty() ? "<inline>" : c.qasm_path)
                    : c.input_label},
      {"backend", backend_name(c.backend)},
      {"nonlocal", nonlocal_name(c.nonlocal)},
      {"max_bond", c.max_bond},
      {"cutoff", c.cutoff},
      {"shots", c.shots},
      {"seed", c.seed},
      {"workers", c.workers},
      {"memoize", c.memoize},
  };
  j["n_qubits"] = output.n_qubits;
  j["peak_bond"] = output.peak_bond;
  j["total_wall_ns"] = output.total_wall_ns;
  j["total_discarded_weight"] = output.total_discarded_weight;
  nlohmann::json layers = nlohmann::json::array();
  for (const LayerStat& l : output.layers) {
    layers.push_back({{"gates", l.gates},
                      {"compute_ns", l.compute_ns},
                      {"sync_ns", l.sync_ns}});
  }
  j["layers"] = std::move(layers);
  if (output.has_counts) {
    nlohmann::json counts = nlohmann::json::object();
    for (const auto& [bits, count] : output.counts) {
      counts[bits] = count;
    }
    j["counts"] = std::move(counts);
  }
  return j;
}

int exit_code_for_error(const std::exception& error) {
  if (dynamic_cast<const ParseError*>(&error) != nullptr) {
    return 2;
  }
  if (dynamic_cast<const ConfigError*>(&error) != nullptr) {
    return 1;
  }
  if (dynamic_cast<const NumericError*>(&error) != nullptr) {
    return 3;
  }
  return 1;
}

}  // namespace mpsim

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
 * End-to-end pipeline shared by the CLI and the benchmark harness:
 * parse -> fuse -> (decompose + layerize when parallel) -> execute ->
 * sample, with a machine-readable result record.
 */

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "mpsim/executor.hpp"
#include "mpsim/generators.hpp"

namespace mpsim {

enum class Backend { MpsSerial, MpsParallel, Statevector };

std::string backend_name(Backend backend);
bool backend_from_name(const std::string& name, Backend& backend);
std::string nonlocal_name(NonlocalMethod method);
bool nonlocal_from_name(const std::string& name, NonlocalMethod& method);

struct RunConfig {
  std::string qasm_path;     // read from file when non-empty
  std::string qasm_text;     // used when qasm_path is empty
  std::string sidecar_path;  // explicit sidecar; otherwise <qasm_path>.u4.json
                             // is picked up when present
  std::string input_label;   // echoed in the output ("<generated>" etc.)
  Backend backend = Backend::MpsSerial;
  NonlocalMethod nonlocal = NonlocalMethod::Swap;
  Index max_bond = 0;  // 0 = unbounded
  double cutoff = 0.0;
  std::uint64_t shots = 0;
  std::uint64_t seed = 1;
  int workers = 1;
  bool memoize = true;
  std::size_t cache_cap = 0;
  int statevector_cap = 20;
};

struct RunOutput {
  RunConfig config;
  int n_qubits = 0;
  bool has_counts = false;
  std::map<std::string, std::uint64_t> counts;
  Index peak_bond = 0;  // 0 on the statevector backend
  std::vector<LayerStat> layers;
  std::uint64_t total_wall_ns = 0;  // fuse + plan + execute + sample
  double total_discarded_weight = 0.0;
};

/// Runs the full pipeline. Throws ParseError for malformed input,
/// ConfigError for invalid configuration, NumericError for numeric
/// failures.
RunOutput run_circuit(const RunConfig& config);

nlohmann::json run_output_to_json(const RunOutput& output);

/// Sidecar (de)serialization for inline 4x4 entanglers.
nlohmann::json sidecar_to_json(const std::vector<SidecarGate>& gates);
std::vector<SidecarGate> sidecar_from_json(const nlohmann::json& j);

/// Inserts sidecar gates at their recorded op positions.
void inject_sidecar(Circuit& circuit, const std::vector<SidecarGate>& gates);

/// Process exit code for a pipeline failure: 1 config, 2 parse, 3 numeric.
int exit_code_for_error(const std::exception& error);

}  // namespace mpsim

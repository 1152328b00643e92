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
//
// Command-line front end: run QASM circuits on a chosen backend, generate
// benchmark circuits, and sweep benchmark grids. JSON goes to stdout (or
// --out); diagnostics go to stderr. Exit codes: 1 config error, 2 parse
// error, 3 numeric error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mpsim/errors.hpp"
#include "mpsim/generators.hpp"
#include "mpsim/runner.hpp"

namespace {

using mpsim::Backend;
using mpsim::RunConfig;

int resolve_workers(std::optional<int> flag_value, bool deterministic) {
  if (deterministic) {
    return 1;
  }
  if (flag_value.has_value()) {
    return *flag_value;
  }
  if (const char* env = std::getenv("MPSIM_WORKERS")) {
    try {
      return std::max(1, std::stoi(env));
    } catch (const std::exception&) {
      throw mpsim::ConfigError("MPSIM_WORKERS is not a number: " +
                               std::string(env));
    }
  }
  return std::max(1U, std::thread::hardware_concurrency());
}

void emit(const nlohmann::json& j, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << j.dump(2) << "\n";
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
      throw mpsim::ConfigError("cannot write output file '" + out_path + "'");
    }
    out << j.dump(2) << "\n";
    std::cout << out_path << "\n";
  }
}

void write_text(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
      throw mpsim::ConfigError("cannot write output file '" + out_path + "'");
    }
    out << text;
    std::cout << out_path << "\n";
  }
}

std::string bench_csv(const std::vector<nlohmann::json>& records) {
  std::ostringstream os;
  os << "input,backend,n_qubits,workers,max_bond,shots,total_wall_ns,"
        "peak_bond,total_discarded_weight\n";
  for (const auto& r : records) {
    os << r["config"]["input"].get<std::string>() << ","
       << r["config"]["backend"].get<std::string>() << ","
       << r["n_qubits"].get<int>() << ","
       << r["config"]["workers"].get<int>() << ","
       << r["config"]["max_bond"].get<mpsim::Index>() << ","
       << r["config"]["shots"].get<std::uint64_t>() << ","
       << r["total_wall_ns"].get<std::uint64_t>() << ","
       << r["peak_bond"].get<mpsim::Index>() << ","
       << r["total_discarded_weight"].get<double>() << "\n";
  }
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Matrix-product-state quantum circuit simulator"};
  app.require_subcommand(1);

  // ---- run ----------------------------------------------------------
  auto* run = app.add_subcommand("run", "Simulate a QASM file");
  std::string qasm_path;
  std::string sidecar_path;
  std::string backend_str = "mps-serial";
  std::string nonlocal_str = "swap";
  mpsim::Index max_bond = 0;
  double cutoff = 0.0;
  std::uint64_t shots = 0;
  std::uint64_t seed = 1;
  std::optional<int> workers_flag;
  bool deterministic = false;
  bool no_memoize = false;
  std::size_t cache_cap = 0;
  std::string out_path;
  run->add_option("--qasm", qasm_path, "input OpenQASM 2.0 file")->required();
  run->add_option("--sidecar", sidecar_path,
                  "inline-unitary sidecar JSON (default: <qasm>.u4.json if "
                  "present)");
  run->add_option("--backend", backend_str,
                  "mps-serial | mps-parallel | statevector");
  run->add_option("--nonlocal", nonlocal_str,
                  "swap | bondprop (serial backend only)");
  run->add_option("--max-bond", max_bond, "bond dimension cap, 0 = unbounded");
  run->add_option("--cutoff", cutoff,
                  "relative discarded squared weight per SVD, in [0,1)");
  run->add_option("--shots", shots, "measurement shots; 0 skips sampling");
  run->add_option("--seed", seed, "sampling seed");
  run->add_option("--workers", [&workers_flag](const CLI::results_t& r) {
       workers_flag = std::stoi(r.at(0));
       return true;
     },
     "worker threads for mps-parallel (default: MPSIM_WORKERS or hardware)");
  run->add_flag("--deterministic", deterministic, "force workers = 1");
  run->add_flag("--no-memoize", no_memoize, "disable sampling memoization");
  run->add_option("--cache-cap", cache_cap,
                  "max sampling cache entries, 0 = unlimited");
  run->add_option("--out", out_path, "write JSON here instead of stdout");

  // ---- gen-ghz ------------------------------------------------------
  auto* gen_ghz = app.add_subcommand("gen-ghz", "Generate a GHZ circuit");
  int ghz_n = 0;
  bool gen_measure = false;
  std::string gen_out;
  gen_ghz->add_option("--n", ghz_n, "qubit count (>= 2)")->required();
  gen_ghz->add_flag("--measure", gen_measure, "append measure-all");
  gen_ghz->add_option("--out", gen_out, "output file (default stdout)");

  // ---- gen-brickwork -------------------------------------------------
  auto* gen_brick =
      app.add_subcommand("gen-brickwork", "Generate a brickwork circuit");
  mpsim::BrickworkOptions brick;
  std::string entangler_str = "cx";
  std::string brick_out;
  gen_brick->add_option("--n", brick.n_qubits, "qubit count (>= 2)")
      ->required();
  gen_brick->add_option("--depth", brick.depth, "entangling layers (>= 1)")
      ->required();
  gen_brick->add_option("--seed", brick.seed, "generator seed");
  gen_brick->add_flag("--measure", brick.measure, "append measure-all");
  gen_brick->add_option("--entangler", entangler_str,
                        "cx (plain QASM) | haar (sidecar unitaries)");
  gen_brick->add_option("--out", brick_out,
                        "output file; haar writes <out>.u4.json too");

  // ---- bench ---------------------------------------------------------
  auto* bench = app.add_subcommand("bench", "Sweep benchmark runs");
  std::string bench_circuit = "ghz";
  std::vector<int> sweep_n;
  std::vector<int> sweep_workers{1};
  std::vector<mpsim::Index> sweep_max_bond{0};
  std::vector<std::string> bench_backends{"mps-serial"};
  int bench_depth = 8;
  std::uint64_t bench_seed = 1;
  int repeat = 1;
  std::string bench_out;
  std::string bench_csv_path;
  bench->add_option("--circuit", bench_circuit, "ghz | brickwork");
  bench->add_option("--sweep-n", sweep_n, "qubit counts")
      ->required()
      ->delimiter(',');
  bench->add_option("--sweep-workers", sweep_workers, "worker counts")
      ->delimiter(',');
  bench->add_option("--sweep-max-bond", sweep_max_bond,
                    "bond caps (0 = unbounded)")
      ->delimiter(',');
  bench->add_option("--backends", bench_backends, "backends to compare")
      ->delimiter(',');
  bench->add_option("--depth", bench_depth, "brickwork entangling layers");
  bench->add_option("--seed", bench_seed, "brickwork generator seed");
  bench->add_option("--repeat", repeat,
                    "repetitions per point; wall time is the minimum");
  bench->add_option("--out", bench_out, "write JSON array here");
  bench->add_option("--csv", bench_csv_path, "also write a CSV flattening");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      RunConfig config;
      config.qasm_path = qasm_path;
      config.sidecar_path = sidecar_path;
      if (!backend_from_name(backend_str, config.backend)) {
        throw mpsim::ConfigError("unknown backend '" + backend_str + "'");
      }
      if (!nonlocal_from_name(nonlocal_str, config.nonlocal)) {
        throw mpsim::ConfigError("unknown nonlocal method '" + nonlocal_str +
                                 "'");
      }
      config.max_bond = max_bond;
      config.cutoff = cutoff;
      config.shots = shots;
      config.seed = seed;
      config.workers = config.backend == Backend::MpsParallel
                           ? resolve_workers(workers_flag, deterministic)
                           : 1;
      config.memoize = !no_memoize;
      config.cache_cap = cache_cap;
      emit(run_output_to_json(mpsim::run_circuit(config)), out_path);
      return 0;
    }

    if (gen_ghz->parsed()) {
      write_text(mpsim::ghz_qasm(ghz_n, gen_measure), gen_out);
      return 0;
    }

    if (gen_brick->parsed()) {
      if (entangler_str == "cx") {
        brick.entangler = mpsim::Entangler::Cx;
      } else if (entangler_str == "haar") {
        brick.entangler = mpsim::Entangler::Haar;
      } else {
        throw mpsim::ConfigError("unknown entangler '" + entangler_str + "'");
      }
      if (brick.entangler == mpsim::Entangler::Haar && brick_out.empty()) {
        throw mpsim::ConfigError(
            "--entangler haar needs --out to place the sidecar file");
      }
      const mpsim::GeneratedCircuit gen = mpsim::brickwork_qasm(brick);
      write_text(gen.qasm, brick_out);
      if (!gen.sidecar.empty()) {
        std::ofstream side(brick_out + ".u4.json", std::ios::binary);
        if (!side) {
          throw mpsim::ConfigError("cannot write sidecar file");
        }
        side << mpsim::sidecar_to_json(gen.sidecar).dump(2) << "\n";
        std::cout << brick_out + ".u4.json" << "\n";
      }
      return 0;
    }

    // bench
    if (bench_circuit != "ghz" && bench_circuit != "brickwork") {
      throw mpsim::ConfigError("unknown bench circuit '" + bench_circuit +
                               "'");
    }
    std::vector<nlohmann::json> records;
    for (int n : sweep_n) {
      std::string text;
      std::string label;
      if (bench_circuit == "ghz") {
        text = mpsim::ghz_qasm(n, false);
        label = "ghz-" + std::to_string(n);
      } else {
        mpsim::BrickworkOptions opts;
        opts.n_qubits = n;
        opts.depth = bench_depth;
        opts.seed = bench_seed;
        text = mpsim::brickwork_qasm(opts).qasm;
        label = "brickwork-" + std::to_string(n) + "x" +
                std::to_string(bench_depth);
      }
      for (const std::string& backend : bench_backends) {
        for (int workers : sweep_workers) {
          for (mpsim::Index bond : sweep_max_bond) {
            RunConfig config;
            config.qasm_text = text;
            config.input_label = label;
            if (!backend_from_name(backend, config.backend)) {
              throw mpsim::ConfigError("unknown backend '" + backend + "'");
            }
            config.max_bond = bond;
            config.workers =
                config.backend == Backend::MpsParallel ? workers : 1;
            mpsim::RunOutput best;
            for (int rep = 0; rep < std::max(1, repeat); ++rep) {
              mpsim::RunOutput out = mpsim::run_circuit(config);
              if (rep == 0 || out.total_wall_ns < best.total_wall_ns) {
                best = std::move(out);
              }
            }
            records.push_back(run_output_to_json(best));
          }
        }
      }
    }
    nlohmann::json array = nlohmann::json::array();
    for (auto& r : records) {
      array.push_back(r);
    }
    emit(array, bench_out);
    if (!bench_csv_path.empty()) {
      std::ofstream csv(bench_csv_path, std::ios::binary);
      if (!csv) {
        throw mpsim::ConfigError("cannot write CSV file");
      }
      csv << bench_csv(records);
    }
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return mpsim::exit_code_for_error(e);
  }
}

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
 * Perfect sampling of measurement outcomes from an MPS. The state is
 * canonicalized once (left then right sweep), then each shot walks the
 * chain left to right, drawing each bit from its conditional probability
 * and projecting the boundary environment. Environments of previously
 * seen bit-string prefixes are memoized so repeated prefixes cost no
 * tensor work.
 */

#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include <Eigen/Dense>

#include "mpsim/mps.hpp"

namespace mpsim {

struct ShotResult {
  std::map<std::string, std::uint64_t> counts;
  std::uint64_t shots = 0;
  std::uint64_t seed = 0;
};

struct SamplerOptions {
  bool memoize = true;
  std::size_t max_cache_entries = 0;  // 0 = unlimited; no eviction, inserts stop at the cap
};

class Sampler {
 public:
  using Options = SamplerOptions;

  /// Copies and canonicalizes the state. The input must be normalized to
  /// within 1e-8; throws NumericError otherwise.
  explicit Sampler(const MpsState& state, Options options = Options{});

  /// Draws `shots` samples. Deterministic for a fixed seed: one uniform
  /// variate is consumed per qubit per shot, in sweep order.
  ShotResult sample(std::uint64_t shots, std::uint64_t seed);

  void clear_cache();
  std::size_t cache_size() const { return cache_.size(); }
  std::uint64_t cache_hits() const { return cache_hits_; }

 private:
  struct PrefixEntry {
    Eigen::RowVectorXcd env;  // boundary environment after the prefix
    double prob0 = -1.0;      // memoized P(next bit = 0 | prefix); < 0 if unknown
  };

  double site_prob0(const Eigen::RowVectorXcd& env, int site) const;

  int n_;
  // Per site, the two (left bond x right bond) slices of the site tensor
  // at fixed physical index.
  std::vector<std::array<Eigen::MatrixXcd, 2>> slices_;
  Options options_;
  std::unordered_map<std::string, PrefixEntry> cache_;
  double root_prob0_ = -1.0;
  std::uint64_t cache_hits_ = 0;
};

/// One-off convenience wrapper around the class above.
ShotResult sample(const MpsState& state, std::uint64_t shots,
                  std::uint64_t seed, SamplerOptions options = {});

}  // namespace mpsim

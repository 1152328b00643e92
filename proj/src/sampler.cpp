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
#include <random>

#include "mpsim/errors.hpp"
#include "mpsim/sampler.hpp"

namespace mpsim {

namespace {

// Uniform variate in [0, 1) spending exactly one engine draw, independent
// of the standard library's distribution implementation.
double uniform_unit(std::mt19937_64& engine) {
  return static_cast<double>(engine() >> 11) * 0x1.0p-53;
}

constexpr double kDegenerateProbability = 1e-12;

}  // namespace

Sampler::Sampler(const MpsState& state, Options options) : options_(options) {
  const double nrm = norm(state);
  if (std::abs(nrm - 1.0) > 1e-8) {
    throw NumericError("sampling requires a normalized state, norm is " +
                       std::to_string(nrm));
  }

  // Stabilize with a full left sweep followed by the right sweep the walk
  // relies on: afterwards every site right of qubit 0 is a right isometry,
  // so conditional probabilities come from the left environment alone.
  MpsState prepared = state;
  left_canonicalize(prepared);
  right_canonicalize(prepared);

  n_ = prepared.num_qubits();
  slices_.reserve(static_cast<std::size_t>(n_));
  for (int i = 0; i < n_; ++i) {
    const CTensor& t = prepared.site(i);
    const Index dl = t.extent(0);
    const Index dr = t.extent(2);
    std::array<Eigen::MatrixXcd, 2> pair;
    for (Index p = 0; p < 2; ++p) {
      pair[static_cast<std::size_t>(p)].resize(dl, dr);
      for (Index l = 0; l < dl; ++l) {
        for (Index r = 0; r < dr; ++r) {
          pair[static_cast<std::size_t>(p)](l, r) = t(l, p, r);
        }
      }
    }
    slices_.push_back(std::move(pair));
  }
}

double Sampler::site_prob0(const Eigen::RowVectorXcd& env, int site) const {
  const auto& s = slices_[static_cast<std::size_t>(site)];
  const double raw0 = (env * s[0]).squaredNorm();
  const double raw1 = (env * s[1]).squaredNorm();
  const double total = raw0 + raw1;
  if (total < kDegenerateProbability) {
    throw NumericError("degenerate state: total probability vanished at site " +
                       std::to_string(site));
  }
  return raw0 / total;
}

ShotResult Sampler::sample(std::uint64_t shots, std::uint64_t seed) {
  if (shots == 0) {
    throw std::invalid_argument("shots must be positive");
  }
  std::mt19937_64 engine(seed);
  ShotResult result;
  result.shots = shots;
  result.seed = seed;

  std::string prefix;
  prefix.reserve(static_cast<std::size_t>(n_));
  for (std::uint64_t shot = 0; shot < shots; ++shot) {
    prefix.clear();
    Eigen::RowVectorXcd env = Eigen::RowVectorXcd::Ones(1);
    for (int site = 0; site < n_; ++site) {
      double* memo = nullptr;
      if (options_.memoize) {
        if (site == 0) {
          memo = &root_prob0_;
        } else if (auto it = cache_.find(prefix); it != cache_.end()) {
          memo = &it->second.prob0;
        }
      }

      double prob0;
      if (memo != nullptr && *memo >= 0.0) {
        prob0 = *memo;
        ++cache_hits_;
      } else {
        prob0 = site_prob0(env, site);
        if (memo != nullptr) {
          *memo = prob0;
        }
      }

      const double u = uniform_unit(engine);
      const int bit = u < prob0 ? 0 : 1;
      prefix.push_back(static_cast<char>('0' + bit));

      if (options_.memoize) {
        if (auto it = cache_.find(prefix); it != cache_.end()) {
          env = it->second.env;
          continue;
        }
      }
      // Project the chosen bit and renormalize by sqrt of its probability.
      Eigen::RowVectorXcd next =
          env * slices_[static_cast<std::size_t>(site)]
                       [static_cast<std::size_t>(bit)];
      const double raw = next.squaredNorm();
      if (raw < kDegenerateProbability * kDegenerateProbability) {
        throw NumericError("degenerate state: chosen branch has no weight");
      }
      env = next / std::sqrt(raw);
      if (options_.memoize &&
          (options_.max_cache_entries == 0 ||
           cache_.size() < options_.max_cache_entries)) {
        cache_.emplace(prefix, PrefixEntry{env, -1.0});
      }
    }
    ++result.counts[prefix];
  }
  return result;
}

void Sampler::clear_cache() {
  cache_.clear();
  root_prob0_ = -1.0;
}

ShotResult sample(const MpsState& state, std::uint64_t shots,
                  std::uint64_t seed, SamplerOptions options) {
  Sampler sampler(state, options);
  return sampler.sample(shots, seed);
}

}  // namespace mpsim

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
#include <cmath>
#include <stdexcept>

#include "mpsim/gate_apply.hpp"
#include "mpsim/svd.hpp"

namespace mpsim {

namespace {

void check_policy(const TruncationPolicy& policy) {
  if (policy.max_bond < 1) {
    throw std::invalid_argument("truncation policy needs max_bond >= 1");
  }
  if (policy.cutoff < 0.0 || policy.cutoff >= 1.0) {
    throw std::invalid_argument("truncation cutoff must lie in [0, 1)");
  }
}

void check_matrix(const CTensor& u, Index dim) {
  if (u.rank() != 2 || u.extent(0) != dim || u.extent(1) != dim) {
    throw std::invalid_argument("gate matrix must be " + std::to_string(dim) +
                                "x" + std::to_string(dim));
  }
}

// Rescales the kept singular values so a truncating split preserves the
// state norm. Reports keep the pre-rescale discarded weight.
void renormalize_kept(SvdResult<Complex>& dec) {
  if (dec.discarded_weight > 0.0) {
    const double scale = 1.0 / std::sqrt(1.0 - dec.discarded_weight);
    for (double& s : dec.singular_values) {
      s *= scale;
    }
  }
}

// Builds diag(s) * vdag as a tensor of shape rows (k) x cols.
CTensor scale_rows(const std::vector<double>& s, const CTensor& vdag) {
  const Index k = vdag.extent(0);
  const Index cols = vdag.extent(1);
  CTensor out({k, cols});
  for (Index i = 0; i < k; ++i) {
    for (Index j = 0; j < cols; ++j) {
      out(i, j) = s[static_cast<std::size_t>(i)] * vdag(i, j);
    }
  }
  return out;
}

// Gauge tracking after a two-site split on [lo, hi]: the norm carrier
// lands at hi when the center sat inside the span; otherwise the gauge is
// no longer known. One-qubit unitaries preserve isometries and never move
// the center, so apply_1q leaves the marker alone.
void update_center(MpsState& s, int lo, int hi) {
  const auto c = s.ortho_center();
  if (!c.has_value()) {
    return;
  }
  s.set_ortho_center(*c >= lo && *c <= hi ? std::optional<int>(hi)
                                          : std::nullopt);
}

CTensor swap_matrix() {
  return CTensor({4, 4}, {1, 0, 0, 0,
                          0, 0, 1, 0,
                          0, 1, 0, 0,
                          0, 0, 0, 1});
}

CTensor swap_conjugate4(const CTensor& m) {
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

ApplyReport apply_1q(MpsState& state, const CTensor& u, int q) {
  check_matrix(u, 2);
  if (q < 0 || q >= state.num_qubits()) {
    throw std::invalid_argument("qubit " + std::to_string(q) +
                                " out of range");
  }
  CTensor t = contract(u, state.site(q), {{1, 1}});  // [p', l, r]
  state.site(q) = permute(t, {1, 0, 2});
  ApplyReport report;
  report.new_bond = std::max(state.bond_dim(q), state.bond_dim(q + 1));
  return report;
}

ApplyReport apply_2q_local(MpsState& state, const CTensor& u, int q,
                           const TruncationPolicy& policy) {
  check_matrix(u, 4);
  check_policy(policy);
  if (q < 0 || q + 1 >= state.num_qubits()) {
    throw std::invalid_argument("adjacent pair (" + std::to_string(q) + "," +
                                std::to_string(q + 1) + ") out of range");
  }

  const Index dl = state.site(q).extent(0);
  const Index dr = state.site(q + 1).extent(2);

  // Merge the two sites, contract the gate over both physical indices,
  // and split again across the (left bond, low) | (high, right bond) cut.
  CTensor merged = contract(state.site(q), state.site(q + 1), {{2, 0}});
  CTensor gate = reshape(u, {2, 2, 2, 2});  // [p0', p1', p0, p1]
  CTensor applied = contract(merged, gate, {{1, 2}, {2, 3}});  // [l, r, p0', p1']
  CTensor ordered = permute(applied, {0, 2, 3, 1});
  SvdResult<Complex> dec =
      svd(reshape(std::move(ordered), {dl * 2, 2 * dr}), policy.max_bond,
          policy.cutoff);
  renormalize_kept(dec);

  const Index k = static_cast<Index>(dec.singular_values.size());
  state.site(q) = reshape(std::move(dec.u), {dl, 2, k});
  state.site(q + 1) =
      reshape(scale_rows(dec.singular_values, dec.vdag), {k, 2, dr});
  state.set_bond_dim(q + 1, k);
  update_center(state, q, q + 1);

  ApplyReport report;
  report.discarded_weight = dec.discarded_weight;
  report.new_bond = k;
  report.svd_count = 1;
  return report;
}

ApplyReport apply_2q_swap(MpsState& state, const CTensor& u, int q0, int q1,
                          const TruncationPolicy& policy) {
  if (q0 == q1) {
    throw std::invalid_argument("two-qubit gate needs two distinct qubits");
  }
  CTensor m = u;
  if (q0 > q1) {
    std::swap(q0, q1);
    m = swap_conjugate4(m);
  }
  if (q1 == q0 + 1) {
    return apply_2q_local(state, m, q0, policy);
  }

  const CTensor sw = swap_matrix();
  ApplyReport total;
  auto absorb = [&total](const ApplyReport& r) {
    total.discarded_weight += r.discarded_weight;
    total.new_bond = std::max(total.new_bond, r.new_bond);
    total.svd_count += r.svd_count;
  };

  for (int i = q0; i < q1 - 1; ++i) {
    absorb(apply_2q_local(state, sw, i, policy));
  }
  absorb(apply_2q_local(state, m, q1 - 1, policy));
  for (int i = q1 - 2; i >= q0; --i) {
    absorb(apply_2q_local(state, sw, i, policy));
  }
  return total;
}

ApplyReport apply_2q_bondprop(MpsState& state, const CTensor& u, int q0,
                              int q1, const TruncationPolicy& policy) {
  check_matrix(u, 4);
  check_policy(policy);
  if (q0 == q1) {
    throw std::invalid_argument("two-qubit gate needs two distinct qubits");
  }
  CTensor m = u;
  if (q0 > q1) {
    std::swap(q0, q1);
    m = swap_conjugate4(m);
  }
  if (q0 < 0 || q1 >= state.num_qubits()) {
    throw std::invalid_argument("qubit pair (" + std::to_string(q0) + "," +
                                std::to_string(q1) + ") out of range");
  }

  // Split the gate across the control | target bipartition, folding the
  // singular values into the right factor.
  CTensor gate = reshape(m, {2, 2, 2, 2});               // [p0', p1', p0, p1]
  CTensor split = permute(gate, {0, 2, 1, 3});           // [p0', p0, p1', p1]
  SvdResult<Complex> gdec = svd(reshape(std::move(split), {4, 4}));
  const Index prop = static_cast<Index>(gdec.singular_values.size());
  CTensor left = reshape(std::move(gdec.u), {2, 2, prop});  // [p0', p0, kappa]
  CTensor right = reshape(scale_rows(gdec.singular_values, gdec.vdag),
                          {prop, 2, 2});                    // [kappa, p1', p1]

  ApplyReport report;

  // Open the propagating bond at the control site and split it off.
  const Index dl0 = state.site(q0).extent(0);
  const Index b0 = state.site(q0).extent(2);
  CTensor opened = contract(state.site(q0), left, {{1, 1}});  // [l, b, p0', kappa]
  CTensor ordered = permute(opened, {0, 2, 3, 1});            // [l, p0', kappa, b]
  SvdResult<Complex> dec =
      svd(reshape(std::move(ordered), {dl0 * 2, prop * b0}), policy.max_bond,
          policy.cutoff);
  renormalize_kept(dec);
  Index k = static_cast<Index>(dec.singular_values.size());
  state.site(q0) = reshape(std::move(dec.u), {dl0, 2, k});
  state.set_bond_dim(q0 + 1, k);
  report.discarded_weight += dec.discarded_weight;
  report.new_bond = std::max(report.new_bond, k);
  ++report.svd_count;
  // Carrier over (new bond, kappa, old bond).
  CTensor carrier =
      reshape(scale_rows(dec.singular_values, dec.vdag), {k, prop, b0});

  // Push the propagating bond through the intermediate sites.
  for (int site = q0 + 1; site < q1; ++site) {
    const Index br = state.site(site).extent(2);
    CTensor pulled = contract(carrier, state.site(site), {{2, 0}});  // [k, kappa, p, r]
    CTensor arranged = permute(pulled, {0, 2, 1, 3});                // [k, p, kappa, r]
    SvdResult<Complex> step =
        svd(reshape(std::move(arranged), {k * 2, prop * br}), policy.max_bond,
            policy.cutoff);
    renormalize_kept(step);
    const Index k2 = static_cast<Index>(step.singular_values.size());
    state.site(site) = reshape(std::move(step.u), {k, 2, k2});
    state.set_bond_dim(site + 1, k2);
    report.discarded_weight += step.discarded_weight;
    report.new_bond = std::max(report.new_bond, k2);
    ++report.svd_count;
    carrier =
        reshape(scale_rows(step.singular_values, step.vdag), {k2, prop, br});
    k = k2;
  }

  // Close the propagating bond at the target site.
  CTensor target = contract(carrier, state.site(q1), {{2, 0}});  // [k, kappa, p1, r]
  CTensor closed = contract(target, right, {{1, 0}, {2, 2}});    // [k, r, p1']
  state.site(q1) = permute(closed, {0, 2, 1});
  update_center(state, q0, q1);
  return report;
}

ApplyReport apply_gate(MpsState& state, const FusedGate& gate,
                       const TruncationPolicy& policy, NonlocalMethod method) {
  if (!gate.two_qubit()) {
    return apply_1q(state, gate.matrix, gate.q0);
  }
  if (gate.local()) {
    return apply_2q_local(state, gate.matrix, gate.q0, policy);
  }
  return method == NonlocalMethod::Swap
             ? apply_2q_swap(state, gate.matrix, gate.q0, gate.q1, policy)
             : apply_2q_bondprop(state, gate.matrix, gate.q0, gate.q1, policy);
}

}  // namespace mpsim

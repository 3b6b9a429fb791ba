/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 The hcran-sim authors
 * SPDX-License-Identifier: Apache-2.0
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "hcran/channel.hpp"

#include <cmath>
#include <limits>

#include "hcran/error.hpp"
#include "hcran/rng.hpp"

namespace hcran {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Power received at RRH k on pilot p, optionally excluding one RUE.
double rrh_pilot_power(const Topology& topo, const ReuseSets& reuse, int p, int k, int exclude,
                       const TrainingConfig& tr) {
  double s = tr.noise_power;
  for (int i : reuse.rues[p]) {
    if (i != exclude) s += tr.pilot_power_rue * topo.alpha_rrh(k, i);
  }
  for (int j : reuse.bues[p]) s += tr.pilot_power_bue * topo.alpha_rrh(k, j);
  return s;
}

double mbs_rue_pilot_power(const Topology& topo, const ReuseSets& reuse, int p, const TrainingConfig& tr) {
  double s = tr.noise_power;
  for (int i : reuse.rues[p]) s += tr.pilot_power_rue * topo.alpha_mbs(i);
  return s;
}

}  // namespace

void TrainingConfig::validate() const {
  if (!(pilot_power_rue > 0.0) || !(pilot_power_bue > 0.0) || !(noise_power > 0.0)) {
    throw DomainError("training: powers must be positive");
  }
  if (tau < 1) throw DomainError("training: tau must be >= 1");
  if (tau >= coherence) throw DomainError("training: tau must be smaller than the coherence length");
}

double rrh_error_variance(const Topology& topo, const ReuseSets& reuse, int pilot, int rrh, int rue,
                          const TrainingConfig& tr) {
  const double others = rrh_pilot_power(topo, reuse, pilot, rrh, rue, tr);
  const double total = others + tr.pilot_power_rue * topo.alpha_rrh(rrh, rue);
  return topo.alpha_rrh(rrh, rue) * others / total;
}

double mbs_error_variance(const Topology& topo, const ReuseSets& reuse, int pilot, int bue,
                          const TrainingConfig& tr) {
  const double others = mbs_rue_pilot_power(topo, reuse, pilot, tr);
  const double total = others + tr.pilot_power_bue * topo.alpha_mbs(bue);
  return topo.alpha_mbs(bue) * others / total;
}

ErrorVariances error_variances(const Topology& topo, const PilotAssignment& a, const TrainingConfig& tr) {
  validate_assignment(topo, a);
  const ReuseSets reuse(topo, a);
  ErrorVariances ev;
  ev.rrh = RMat::Constant(topo.num_rrh, topo.num_ue, kNaN);
  ev.mbs = RVec::Constant(topo.num_ue, kNaN);
  for (int i : topo.rue_set) {
    for (int k : topo.serving_rrhs[i]) ev.rrh(k, i) = rrh_error_variance(topo, reuse, a.pilot[i], k, i, tr);
  }
  for (int j : topo.bue_set) ev.mbs(j) = mbs_error_variance(topo, reuse, a.pilot[j], j, tr);
  return ev;
}

TrueChannels draw_small_scale(const Topology& topo, std::uint64_t seed) {
  Rng rng(seed);
  TrueChannels h;
  h.num_rrh = topo.num_rrh;
  h.num_ue = topo.num_ue;
  h.rrh.reserve(static_cast<std::size_t>(topo.num_rrh) * topo.num_ue);
  for (int k = 0; k < topo.num_rrh; ++k) {
    for (int m = 0; m < topo.num_ue; ++m) {
      h.rrh.push_back(draw_cn_vector(rng, topo.rrh_antennas, topo.alpha_rrh(k, m)));
    }
  }
  h.mbs.reserve(topo.num_ue);
  for (int m = 0; m < topo.num_ue; ++m) h.mbs.push_back(draw_cn_vector(rng, topo.mbs_antennas, topo.alpha_mbs(m)));
  return h;
}

ChannelState estimate_channels(const Topology& topo, const PilotAssignment& a, const TrainingConfig& tr,
                               const TrueChannels& truth, std::uint64_t seed) {
  tr.validate();
  validate_assignment(topo, a);
  if (a.tau != tr.tau) throw ContractViolation("estimate_channels: assignment tau differs from training tau");
  const ReuseSets reuse(topo, a);
  const int num_ue = topo.num_ue;
  const double sqrt_pr = std::sqrt(tr.pilot_power_rue);
  const double sqrt_pb = std::sqrt(tr.pilot_power_bue);

  ChannelState cs;
  cs.truth = truth;
  cs.est_rrh.assign(static_cast<std::size_t>(topo.num_rrh) * num_ue, CVec());
  cs.est_mbs.assign(num_ue, CVec());
  cs.errvar_rrh = RMat::Constant(topo.num_rrh, num_ue, kNaN);
  cs.errvar_mbs = RVec::Constant(num_ue, kNaN);

  Rng rng(seed);
  // Y_k q_p = sum_{i in U_p} sqrt(pR) h_{k,i} + sum_{j in V_p} sqrt(pB) h_{k,j} + n_{k,p}
  for (int k = 0; k < topo.num_rrh; ++k) {
    for (int p = 0; p < a.tau; ++p) {
      CVec y = draw_cn_vector(rng, topo.rrh_antennas, tr.noise_power);
      for (int i : reuse.rues[p]) y += sqrt_pr * truth.rrh_link(k, i);
      for (int j : reuse.bues[p]) y += sqrt_pb * truth.rrh_link(k, j);
      const double total = rrh_pilot_power(topo, reuse, p, k, -1, tr);
      for (int i : topo.served_rues[k]) {
        if (a.pilot[i] != p) continue;
        const std::size_t idx = static_cast<std::size_t>(k) * num_ue + i;
        cs.est_rrh[idx] = (sqrt_pr * topo.alpha_rrh(k, i) / total) * y;
        cs.errvar_rrh(k, i) = rrh_error_variance(topo, reuse, p, k, i, tr);
      }
    }
  }
  for (int p = 0; p < a.tau; ++p) {
    CVec y = draw_cn_vector(rng, topo.mbs_antennas, tr.noise_power);
    for (int i : reuse.rues[p]) y += sqrt_pr * truth.mbs[i];
    for (int j : reuse.bues[p]) y += sqrt_pb * truth.mbs[j];
    for (int j : reuse.bues[p]) {
      const double total = mbs_rue_pilot_power(topo, reuse, p, tr) + tr.pilot_power_bue * topo.alpha_mbs(j);
      cs.est_mbs[j] = (sqrt_pb * topo.alpha_mbs(j) / total) * y;
      cs.errvar_mbs(j) = mbs_error_variance(topo, reuse, p, j, tr);
    }
  }
  return cs;
}

ChannelState perfect_csi_state(const Topology& topo, const TrueChannels& truth, double residual) {
  const int num_ue = topo.num_ue;
  ChannelState cs;
  cs.truth = truth;
  cs.est_rrh.assign(static_cast<std::size_t>(topo.num_rrh) * num_ue, CVec());
  cs.est_mbs.assign(num_ue, CVec());
  cs.errvar_rrh = RMat::Constant(topo.num_rrh, num_ue, kNaN);
  cs.errvar_mbs = RVec::Constant(num_ue, kNaN);
  for (int i : topo.rue_set) {
    for (int k : topo.serving_rrhs[i]) {
      cs.est_rrh[static_cast<std::size_t>(k) * num_ue + i] = truth.rrh_link(k, i);
      cs.errvar_rrh(k, i) = residual * topo.alpha_rrh(k, i);
    }
  }
  for (int j : topo.bue_set) {
    cs.est_mbs[j] = truth.mbs[j];
    cs.errvar_mbs(j) = residual * topo.alpha_mbs(j);
  }
  return cs;
}

}  // namespace hcran

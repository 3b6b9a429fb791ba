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

#pragma once

#include <cstdint>
#include <vector>

#include "hcran/assignment.hpp"
#include "hcran/linalg.hpp"
#include "hcran/scenario.hpp"

namespace hcran {

/// Uplink training parameters. Powers in watts, lengths in symbols.
struct TrainingConfig {
  double pilot_power_rue = 0.05;  // p_R (17 dBm)
  double pilot_power_bue = 0.1;   // p_B (20 dBm)
  double noise_power = 1e-13;     // N0 (-100 dBm)
  int tau = 5;
  int coherence = 50;  // T

  void validate() const;
  /// Fraction of the coherence block left for data, (T - tau) / T.
  double prelog() const { return static_cast<double>(coherence - tau) / coherence; }
  double prelog(int effective_tau) const {
    return static_cast<double>(coherence - effective_tau) / coherence;
  }
};

/// Closed-form MMSE error variance of the RRH k -> RUE i link under `reuse`.
double rrh_error_variance(const Topology& topo, const ReuseSets& reuse, int pilot, int rrh, int rue,
                          const TrainingConfig& tr);
/// Closed-form MMSE error variance of the MBS -> BUE j link.
double mbs_error_variance(const Topology& topo, const ReuseSets& reuse, int pilot, int bue,
                          const TrainingConfig& tr);

struct ErrorVariances {
  RMat rrh;  // K x M; NaN where no estimate exists (k not in K_i)
  RVec mbs;  // M; NaN for RUEs
};

/// Error variances of every estimated link. Validates the assignment.
ErrorVariances error_variances(const Topology& topo, const PilotAssignment& a, const TrainingConfig& tr);

/// Small-scale fading realization: h_{k,m} ~ CN(0, alpha_{k,m} I_N), h_{b,m} ~ CN(0, alpha_{b,m} I_B).
struct TrueChannels {
  int num_rrh = 0;
  int num_ue = 0;
  std::vector<CVec> rrh;  // index k * M + m
  std::vector<CVec> mbs;  // index m

  const CVec& rrh_link(int k, int m) const { return rrh[static_cast<std::size_t>(k) * num_ue + m]; }
};

TrueChannels draw_small_scale(const Topology& topo, std::uint64_t seed);

/// True channels, MMSE estimates of intra-cluster / MBS-BUE links, and error variances.
struct ChannelState {
  TrueChannels truth;
  std::vector<CVec> est_rrh;  // index k * M + i; empty vector if not estimated
  std::vector<CVec> est_mbs;  // index j; empty for RUEs
  RMat errvar_rrh;            // K x M, NaN if not estimated
  RVec errvar_mbs;            // M, NaN for RUEs

  bool has_rrh_estimate(int k, int m) const {
    return est_rrh[static_cast<std::size_t>(k) * truth.num_ue + m].size() > 0;
  }
  const CVec& rrh_estimate(int k, int m) const {
    return est_rrh[static_cast<std::size_t>(k) * truth.num_ue + m];
  }
};

/// Simulates the training phase on the pilot-projected statistic Y q_p and applies
/// the MMSE coefficient per link. Throws ContractViolation on infeasible assignment.
ChannelState estimate_channels(const Topology& topo, const PilotAssignment& a, const TrainingConfig& tr,
                               const TrueChannels& truth, std::uint64_t seed);

/// Reference state with (near-)perfect intra-cluster and MBS-BUE CSI: estimates equal
/// the true channels and the error variance is `residual * alpha` (residual > 0 keeps
/// every covariance positive definite).
ChannelState perfect_csi_state(const Topology& topo, const TrueChannels& truth, double residual = 1e-9);

}  // namespace hcran

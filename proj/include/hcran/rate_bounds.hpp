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
#include <iosfwd>
#include <vector>

#include "hcran/assignment.hpp"
#include "hcran/beams.hpp"
#include "hcran/channel.hpp"
#include "hcran/linalg.hpp"
#include "hcran/scenario.hpp"

namespace hcran {

/// Estimated aggregated channels and the second-moment matrices that enter the
/// rate lower bounds. RUEs are indexed by position in topo.rue_set (a, a'), BUEs by
/// position in topo.bue_set (j, j').
///
///   g_hat[a]           stacked estimates of RUE a over its serving RRHs
///   E_R[a]             blkdiag(delta_{k,a} I_N)
///   G_R[a' * nR + a]   E{g_{a',a} g_{a',a}^H}: channels from RUE a''s cluster to RUE a;
///                      diagonal blocks h h^H + delta I (estimated) or alpha I (unknown)
///   H_R[a]             alpha_{b,a} I_B
///   h_hat_bue[j]       MBS estimate of BUE j
///   E_B[j]             delta_{b,j} I_B
///   G_B[a * nB + j]    blkdiag(alpha_{k,j} I_N) over RUE a's cluster
///   H_B[j]             h_hat h_hat^H + delta_{b,j} I_B
struct AggregatedLinks {
  int num_rue = 0;
  int num_bue = 0;
  std::vector<CVec> g_hat;
  std::vector<CMat> E_R;
  std::vector<CMat> G_R;
  std::vector<CMat> H_R;
  std::vector<CVec> h_hat_bue;
  std::vector<CMat> E_B;
  std::vector<CMat> G_B;
  std::vector<CMat> H_B;

  const CMat& g_r(int from, int to) const { return G_R[static_cast<std::size_t>(from) * num_rue + to]; }
  const CMat& g_b(int from, int bue) const { return G_B[static_cast<std::size_t>(from) * num_bue + bue]; }
};

/// How G_R treats pairs of estimated blocks of the same receiver. The conditional
/// second moment E{h_k h_k'^H | estimates} = h_hat_k h_hat_k'^H is non-zero when both
/// k and k' serve the receiver; block_diagonal drops those cross blocks.
enum class CrossCovariance { conditional, block_diagonal };

AggregatedLinks build_covariances(const Topology& topo, const ChannelState& cs,
                                  CrossCovariance model = CrossCovariance::conditional);

/// Per-UE terms of the Jensen lower bound.
struct LowerBounds {
  RVec rue_signal;  // |g_hat^H w|^2
  RVec rue_J;       // interference-plus-noise J^(R)
  RVec rue_rate;    // prelog * log2(1 + signal / J)
  RVec bue_signal;
  RVec bue_J;
  RVec bue_rate;

  double sum_rate() const { return rue_rate.sum() + bue_rate.sum(); }
};

/// J^(R)_a = w_a^H E_a w_a + sum_{a' != a} w_{a'}^H G_{a',a} w_{a'} + sum_j w_j^H H_a w_j + N0
/// J^(B)_j = w_j^H E_j w_j + sum_a w_a^H G_{a,j} w_a + sum_{j' != j} w_{j'}^H H_j w_{j'} + N0
LowerBounds lower_bound_rates(const AggregatedLinks& links, const BeamformerSet& w, double noise_power,
                              double prelog);

struct MonteCarloRates {
  RVec rue_mean;  // prelog * E{log2(1 + eta)}
  RVec rue_stderr;
  RVec bue_mean;
  RVec bue_stderr;
  int trials = 0;
};

/// Averages prelog * log2(1 + eta) over redraws of the unknowns: estimation errors
/// h_tilde ~ CN(0, delta I) around the fixed estimates and every inter-cluster link
/// from its CN(0, alpha I) prior. UE m uses the stream split_seed(seed, m), so the
/// result does not depend on `jobs`.
MonteCarloRates monte_carlo_rates(const Topology& topo, const ChannelState& cs, const BeamformerSet& w,
                                  double noise_power, double prelog, int trials, std::uint64_t seed,
                                  int jobs = 1);

struct RateReport {
  LowerBounds lb;
  MonteCarloRates mc;
  double prelog = 0.0;
};

/// Rows `ue_id,type,lower_bound,mc_rate,mc_stderr`, RUEs then BUEs.
void write_rate_report_csv(std::ostream& os, const Topology& topo, const RateReport& report);

}  // namespace hcran

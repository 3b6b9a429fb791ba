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

#include <vector>

#include "hcran/beams.hpp"
#include "hcran/linalg.hpp"
#include "hcran/rate_bounds.hpp"
#include "hcran/scenario.hpp"

namespace hcran {

/// Output of the single-tap MMSE receive equalizer for effective gain s = g^H w.
struct MseEqualizer {
  double mse = 1.0;
  cplx f{0.0, 0.0};
};

/// f = s / (|s|^2 + J), MSE = |conj(f) s - 1|^2 + |f|^2 J. Requires J > 0.
MseEqualizer mse_and_equalizer(cplx s, double J);
MseEqualizer mse_and_equalizer(const CVec& g_hat, const CVec& w, double J);

/// MSE of an arbitrary equalizer f (not necessarily the MMSE one).
double mse_with_equalizer(cplx s, double J, cplx f);

/// u = 1 - ln(MSE). Throws DomainError unless MSE is in (0, 1].
double update_u(double mse);

/// S(u) = exp(u - 1) * MSE - u; its minimum over u is ln(MSE).
double auxiliary_s(double u, double mse);

/// Equalizers and auxiliary variables for every UE, RUEs in rue_set order and BUEs
/// in bue_set order.
struct UeWeights {
  CVec f_rue;
  RVec u_rue;
  CVec f_bue;
  RVec u_bue;

  /// Algorithm start: f = 1, u = 1.
  static UeWeights initial(int num_rue, int num_bue);
  /// exp(u - 1), evaluated as given (no overflow guard needed for u from MSE <= 1).
  double beta_rue(int a) const;
  double beta_bue(int j) const;
};

/// Power budgets in watts.
struct PowerBudgets {
  RVec rrh;  // per RRH
  double mbs = 0.0;

  static PowerBudgets uniform(int num_rrh, double rrh_watt, double mbs_watt);
};

/// RRH-side part of the beamformer QCQP:
///   min sum_a w_a^H F_a w_a - 2 Re(b_a^H w_a)
///   s.t. sum_{a : k in K_a} ||w_{k,a}||^2 <= P_k  for every RRH k.
struct RrhQcqp {
  int block_size = 0;                  // N
  std::vector<CMat> F;                 // per RUE
  std::vector<CVec> b;                 // per RUE
  std::vector<std::vector<int>> rrhs;  // per RUE: RRH of each block, ascending
  RVec budget;                         // per RRH
};

/// MBS-side part: min sum_j w_j^H F_j w_j - 2 Re(b_j^H w_j) s.t. sum_j ||w_j||^2 <= P_B.
struct MbsQcqp {
  std::vector<CMat> F;
  std::vector<CVec> b;
  double budget = 0.0;
};

struct QcqpProblem {
  RrhQcqp rrh;
  MbsQcqp mbs;
};

/// F_a = beta_a|f_a|^2 (g g^H + E_a) + sum_{a' != a} beta_{a'}|f_{a'}|^2 G_{a,a'}
///       + sum_j beta_j|f_j|^2 G^B_{a,j};  b_a = beta_a f_a g_hat_a.
RrhQcqp assemble_rrh_qcqp(const Topology& topo, const AggregatedLinks& links, const UeWeights& wt,
                          const RVec& rrh_budget);
/// F_j = beta_j|f_j|^2 (h h^H + E_j) + sum_a beta_a|f_a|^2 H^R_a + sum_{j' != j} beta_{j'}|f_{j'}|^2 H^B_{j'};
/// b_j = beta_j f_j h_hat_j.
MbsQcqp assemble_mbs_qcqp(const AggregatedLinks& links, const UeWeights& wt, double mbs_budget);
QcqpProblem assemble_qcqp(const Topology& topo, const AggregatedLinks& links, const UeWeights& wt,
                          const PowerBudgets& budgets);

double qcqp_objective(const RrhQcqp& p, const std::vector<CVec>& w_rue);
double qcqp_objective(const MbsQcqp& p, const std::vector<CVec>& w_bue);
double qcqp_objective(const QcqpProblem& p, const BeamformerSet& w);

/// The w-independent part dropped from the QCQP objective:
/// sum_m beta_m (1 + |f_m|^2 N0), so that
/// qcqp_objective(w) + qcqp_constant = sum_m beta_m MSE_m(w, f_m).
double qcqp_constant(const UeWeights& wt, double noise_power);

/// sum_m beta_m MSE_m(w, f_m) evaluated from the rate-bound J terms.
double weighted_mse_sum(const AggregatedLinks& links, const UeWeights& wt, const BeamformerSet& w,
                        double noise_power);

/// Objective of the auxiliary-variable problem: sum_m [exp(u_m - 1) MSE_m(w, f_m) - u_m].
double auxiliary_objective(const AggregatedLinks& links, const UeWeights& wt, const BeamformerSet& w,
                           double noise_power);

/// Effective gains s = g_hat^H w for every UE, RUEs then BUEs as two vectors.
void effective_gains(const AggregatedLinks& links, const BeamformerSet& w, CVec& s_rue, CVec& s_bue);

}  // namespace hcran

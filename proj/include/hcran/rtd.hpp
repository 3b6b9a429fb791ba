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

#include <iosfwd>
#include <vector>

#include "hcran/beamforming.hpp"
#include "hcran/channel.hpp"
#include "hcran/qcqp_solver.hpp"
#include "hcran/rate_bounds.hpp"
#include "hcran/scenario.hpp"

namespace hcran {

enum class RtdMode { centralized, distributed };

struct RtdOptions {
  double rho = 1e-3;  // stop when sum ||w(d) - w(d-1)||^2 <= rho
  int max_iters = 100;
  RtdMode mode = RtdMode::centralized;
  SolverOptions solver;
  bool keep_history = false;  // store w after every iteration
};

struct RtdState {
  UeWeights weights;  // f, u after the last iteration
  RVec mse_rue;
  RVec mse_bue;
  BeamformerSet w;
  /// Auxiliary objective after each iteration; entry 0 is the starting point
  /// (w = 0, f = 1, u = 1).
  std::vector<double> objective_trace;
  /// Sum-SE lower bound after each iteration; entry 0 is 0.
  std::vector<double> sum_se_trace;
  std::vector<BeamformerSet> history;
  int iterations = 0;
  bool converged = false;
};

/// Alternating w / f / u updates starting from w = 0, f = 1, u = 1, w-update first.
/// `training.prelog()` sets the rate scale, so training.tau should be the effective
/// pilot length. Solver failures are rethrown as ConvergenceError / MatrixError with
/// the iteration index in the message.
RtdState rtd_solve(const Topology& topo, const AggregatedLinks& links, const TrainingConfig& training,
                   const PowerBudgets& budgets, const RtdOptions& options = {});

/// Equalizer / auxiliary update for every UE at fixed w (exact minimizers).
void update_rue_weights(const AggregatedLinks& links, const BeamformerSet& w, double noise_power, UeWeights& wt,
                        RVec& mse);
void update_bue_weights(const AggregatedLinks& links, const BeamformerSet& w, double noise_power, UeWeights& wt,
                        RVec& mse);

/// Rows `iteration,objective,sum_se_lb`.
void write_rtd_trace_csv(std::ostream& os, const RtdState& state);

}  // namespace hcran

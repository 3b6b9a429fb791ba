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

#include "hcran/beamforming.hpp"
#include "hcran/beams.hpp"
#include "hcran/linalg.hpp"

namespace hcran {

struct SolverOptions {
  /// Stop once (primal - dual) <= gap_tol * max(|primal|, |dual|).
  double gap_tol = 1e-10;
  int max_dual_iters = 5000;
  /// Relative power slack accepted without rescaling.
  double feas_tol = 1e-6;
  int verbosity = 0;
};

struct SolverDiagnostics {
  int dual_iterations = 0;
  double primal = 0.0;   // objective at the returned RRH-side point
  double dual = 0.0;     // best dual value found
  double gap = 0.0;      // primal - dual
  double max_violation = 0.0;  // max_k (power_k - P_k) / P_k before the final rescale
  RVec mu;               // RRH multipliers
  double mbs_multiplier = 0.0;
};

/// RRH subproblem by dual decomposition: w_a(mu) = (F_a + D_a(mu))^{-1} b_a with
/// projected Newton ascent on the concave dual over mu >= 0 (exact dual Hessian,
/// Armijo backtracking), warm-started from `mu0` when its size matches.
/// RRHs with zero budget have their blocks pinned to zero. The returned point is
/// rescaled per RRH onto the feasible set.
/// Throws MatrixError if some F_a is not positive definite and ConvergenceError if
/// the duality gap does not close within max_dual_iters.
std::vector<CVec> solve_rrh_qcqp(const RrhQcqp& p, const SolverOptions& opt, SolverDiagnostics* diag = nullptr,
                                 const RVec* mu0 = nullptr);

/// MBS subproblem: eigendecomposition of every F_j and bisection on the single
/// multiplier of the sum-power constraint.
std::vector<CVec> solve_mbs_qcqp(const MbsQcqp& p, const SolverOptions& opt, SolverDiagnostics* diag = nullptr);

BeamformerSet solve_qcqp(const QcqpProblem& p, const SolverOptions& opt = {}, SolverDiagnostics* diag = nullptr);

/// Block power sum_{a : k in K_a} ||w_{k,a}||^2 for every RRH of `p`.
RVec rrh_block_powers(const RrhQcqp& p, const std::vector<CVec>& w);

}  // namespace hcran

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
#include <span>
#include <vector>

#include "hcran/assignment.hpp"
#include "hcran/channel.hpp"
#include "hcran/rng.hpp"
#include "hcran/scenario.hpp"

namespace hcran {

/// Pilot-reuse conflict graph over RUEs. Vertex v is UE `rues[v]`; two vertices are
/// adjacent iff their serving RRH sets intersect.
class ConflictGraph {
 public:
  ConflictGraph() = default;
  explicit ConflictGraph(std::vector<int> rues);

  int size() const { return static_cast<int>(rues_.size()); }
  int ue(int v) const { return rues_[v]; }
  const std::vector<int>& rues() const { return rues_; }

  bool adjacent(int u, int v) const { return adj_[static_cast<std::size_t>(u) * rues_.size() + v] != 0; }
  void connect(int u, int v);
  int degree(int v) const;
  const std::vector<int>& neighbors(int v) const { return neighbors_[v]; }

 private:
  std::vector<int> rues_;
  std::vector<unsigned char> adj_;
  std::vector<std::vector<int>> neighbors_;
};

ConflictGraph build_conflict_graph(const Topology& topo);

struct Coloring {
  int num_colors = 0;        // t
  std::vector<int> color;    // per vertex, 0..t-1
};

/// Dsatur: repeatedly colors the uncolored vertex of highest saturation degree
/// (ties: higher degree, then lower vertex index) with the smallest free color.
Coloring dsatur_color(const ConflictGraph& graph);

/// Pilot contamination metric beta, |M_R| x M. Row v is RUE graph.ue(v); columns are UE ids.
struct ContaminationMetrics {
  RMat beta;
};

ContaminationMetrics compute_beta(const Topology& topo, const ConflictGraph& graph);
inline ContaminationMetrics compute_beta(const Topology& topo) {
  return compute_beta(topo, build_conflict_graph(topo));
}

/// Sum of expected squared estimation errors: sum_i sum_{k in K_i} N delta_{k,i} + sum_j B delta_{b,j}.
/// Throws ContractViolation for an infeasible assignment.
double sum_mse(const Topology& topo, const PilotAssignment& a, const TrainingConfig& tr);

/// Smallest pilot count the scheduler will use: max(|M_B|, t, requested).
int effective_tau(const Topology& topo, const Coloring& coloring, int requested_tau);

/// Dsatur baseline: BUE j on pilot j, color class c on pilot color_to_pilot[c].
/// `color_to_pilot` must be a permutation of 0..t-1 (identity when empty).
PilotAssignment dsatur_schedule(const Topology& topo, const ConflictGraph& graph, const Coloring& coloring,
                                int tau, std::span<const int> color_to_pilot = {});

/// Dsatur with a uniformly random permutation of the t pilots over color classes.
PilotAssignment dsatur_random_schedule(const Topology& topo, const ConflictGraph& graph,
                                       const Coloring& coloring, int tau, Rng& rng);

/// Pilot scheduling refinement: starts from the Dsatur assignment (optionally permuted
/// by `color_to_pilot`) on max(|M_B|, t, tau) pilots, then moves each RUE once, in
/// order of largest current contamination, to the admissible pilot of least
/// contamination.
PilotAssignment psa_schedule(const Topology& topo, const ContaminationMetrics& metrics,
                             const ConflictGraph& graph, int tau, std::span<const int> color_to_pilot = {});

struct SearchLimits {
  double max_assignments = 1e7;
};

/// Exhaustive minimizer of sum_mse over feasible assignments with BUE j fixed to
/// pilot j. tau is raised to max(|M_B|, t) like the scheduler. Ties resolve to the
/// lexicographically smallest pilot vector. Throws SizeError if tau^|M_R| exceeds the limit.
PilotAssignment es_schedule(const Topology& topo, int tau, const TrainingConfig& tr,
                            const SearchLimits& limits = {});

}  // namespace hcran

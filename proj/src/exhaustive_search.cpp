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

#include <cmath>
#include <limits>

#include "hcran/error.hpp"
#include "hcran/pilot_scheduler.hpp"

namespace hcran {

namespace {

// Depth-first search over RUE pilots in UE-id order, pilots ascending, so leaves are
// visited in lexicographic order of the pilot vector. The objective is a sum of
// per-pilot group costs, each non-decreasing as members join, which gives the bound
//   cost(partial groups) + sum over unassigned RUEs of their noise-only cost.
class PilotSearch {
 public:
  PilotSearch(const Topology& topo, const ConflictGraph& graph, int tau, const TrainingConfig& tr)
      : topo_(topo), graph_(graph), tr_(tr), tau_(tau) {
    a_.tau = tau;
    a_.pilot.assign(topo.num_ue, -1);
    for (std::size_t j = 0; j < topo.bue_set.size(); ++j) a_.pilot[topo.bue_set[j]] = static_cast<int>(j);
    reuse_.rues.assign(tau, {});
    reuse_.bues.assign(tau, {});
    for (int j : topo.bue_set) reuse_.bues[a_.pilot[j]].push_back(j);

    group_cost_.assign(tau, 0.0);
    for (int p = 0; p < tau; ++p) group_cost_[p] = group_cost(p);

    const int n = graph.size();
    alone_suffix_.assign(n + 1, 0.0);
    for (int v = n - 1; v >= 0; --v) {
      const int i = graph.ue(v);
      double c = 0.0;
      for (int k : topo.serving_rrhs[i]) {
        const double al = topo.alpha_rrh(k, i);
        c += topo.rrh_antennas * al * tr.noise_power / (tr.pilot_power_rue * al + tr.noise_power);
      }
      alone_suffix_[v] = alone_suffix_[v + 1] + c;
    }
  }

  PilotAssignment run() {
    search(0);
    if (best_.pilot.empty()) throw ContractViolation("es_schedule: no feasible assignment");
    return best_;
  }

 private:
  double group_cost(int p) const {
    double c = 0.0;
    for (int i : reuse_.rues[p]) {
      for (int k : topo_.serving_rrhs[i]) c += topo_.rrh_antennas * rrh_error_variance(topo_, reuse_, p, k, i, tr_);
    }
    for (int j : reuse_.bues[p]) c += topo_.mbs_antennas * mbs_error_variance(topo_, reuse_, p, j, tr_);
    return c;
  }

  double partial_cost() const {
    double s = 0.0;
    for (double c : group_cost_) s += c;
    return s;
  }

  bool improves(double cost) const { return cost < best_cost_ * (1.0 - 1e-12); }

  void search(int v) {
    const double bound = partial_cost() + alone_suffix_[v];
    if (!improves(bound)) return;
    if (v == graph_.size()) {
      best_cost_ = bound;
      best_ = a_;
      return;
    }
    const int i = graph_.ue(v);
    for (int p = 0; p < tau_; ++p) {
      bool clash = false;
      for (int u : graph_.neighbors(v)) {
        if (u < v && a_.pilot[graph_.ue(u)] == p) {
          clash = true;
          break;
        }
      }
      if (clash) continue;
      const double saved = group_cost_[p];
      a_.pilot[i] = p;
      reuse_.rues[p].push_back(i);  // UE ids visited ascending: stays sorted
      group_cost_[p] = group_cost(p);
      search(v + 1);
      reuse_.rues[p].pop_back();
      group_cost_[p] = saved;
      a_.pilot[i] = -1;
    }
  }

  const Topology& topo_;
  const ConflictGraph& graph_;
  const TrainingConfig& tr_;
  int tau_;
  PilotAssignment a_;
  ReuseSets reuse_;
  std::vector<double> group_cost_;
  std::vector<double> alone_suffix_;
  PilotAssignment best_;
  double best_cost_ = std::numeric_limits<double>::infinity();
};

}  // namespace

PilotAssignment es_schedule(const Topology& topo, int tau, const TrainingConfig& tr, const SearchLimits& limits) {
  const ConflictGraph graph = build_conflict_graph(topo);
  const Coloring coloring = dsatur_color(graph);
  const int eff_tau = effective_tau(topo, coloring, tau);
  const double space = std::pow(static_cast<double>(eff_tau), static_cast<double>(graph.size()));
  if (space > limits.max_assignments) {
    throw SizeError("es_schedule: search space " + std::to_string(eff_tau) + "^" + std::to_string(graph.size()) +
                    " exceeds limit");
  }
  PilotSearch search(topo, graph, eff_tau, tr);
  return search.run();
}

}  // namespace hcran

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

#include "hcran/pilot_scheduler.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "hcran/error.hpp"

namespace hcran {

ConflictGraph::ConflictGraph(std::vector<int> rues)
    : rues_(std::move(rues)), adj_(rues_.size() * rues_.size(), 0), neighbors_(rues_.size()) {}

void ConflictGraph::connect(int u, int v) {
  if (u == v || adjacent(u, v)) return;
  const std::size_t n = rues_.size();
  adj_[static_cast<std::size_t>(u) * n + v] = 1;
  adj_[static_cast<std::size_t>(v) * n + u] = 1;
  neighbors_[u].insert(std::lower_bound(neighbors_[u].begin(), neighbors_[u].end(), v), v);
  neighbors_[v].insert(std::lower_bound(neighbors_[v].begin(), neighbors_[v].end(), u), u);
}

int ConflictGraph::degree(int v) const { return static_cast<int>(neighbors_[v].size()); }

ConflictGraph build_conflict_graph(const Topology& topo) {
  ConflictGraph g(topo.rue_set);
  // RUEs sharing RRH k form a clique.
  for (int k = 0; k < topo.num_rrh; ++k) {
    const auto& us = topo.served_rues[k];
    for (std::size_t x = 0; x < us.size(); ++x) {
      for (std::size_t y = x + 1; y < us.size(); ++y) g.connect(topo.rue_index(us[x]), topo.rue_index(us[y]));
    }
  }
  return g;
}

Coloring dsatur_color(const ConflictGraph& graph) {
  const int n = graph.size();
  Coloring c;
  c.color.assign(n, -1);
  // neighbor_colors[v][col] counts colored neighbors of v with color col.
  std::vector<std::vector<int>> neighbor_colors(n);
  std::vector<int> saturation(n, 0);

  for (int step = 0; step < n; ++step) {
    int best = -1;
    for (int v = 0; v < n; ++v) {
      if (c.color[v] >= 0) continue;
      if (best < 0 || saturation[v] > saturation[best] ||
          (saturation[v] == saturation[best] && graph.degree(v) > graph.degree(best))) {
        best = v;
      }
    }
    int col = 0;
    const auto& used = neighbor_colors[best];
    while (col < static_cast<int>(used.size()) && used[col] > 0) ++col;
    c.color[best] = col;
    c.num_colors = std::max(c.num_colors, col + 1);
    for (int u : graph.neighbors(best)) {
      auto& nc = neighbor_colors[u];
      if (static_cast<int>(nc.size()) <= col) nc.resize(col + 1, 0);
      if (nc[col]++ == 0) ++saturation[u];
    }
  }
  return c;
}

ContaminationMetrics compute_beta(const Topology& topo, const ConflictGraph& graph) {
  const int n = graph.size();
  ContaminationMetrics cm;
  cm.beta = RMat::Zero(n, topo.num_ue);

  // Serving-cluster gain sums: cluster_gain(v, m) = sum_{k in K_{ue(v)}} alpha_{k,m}.
  RMat cluster_gain = RMat::Zero(n, topo.num_ue);
  for (int v = 0; v < n; ++v) {
    for (int k : topo.serving_rrhs[graph.ue(v)]) cluster_gain.row(v) += topo.alpha_rrh.row(k);
  }
  for (int v = 0; v < n; ++v) {
    const int i = graph.ue(v);
    for (int w = 0; w < n; ++w) {
      if (w == v || graph.adjacent(v, w)) continue;
      const int ip = graph.ue(w);
      cm.beta(v, ip) = std::log(1.0 + cluster_gain(v, ip) / cluster_gain(v, i) +
                                cluster_gain(w, i) / cluster_gain(w, ip));
    }
    for (int j : topo.bue_set) {
      cm.beta(v, j) = std::log(1.0 + cluster_gain(v, j) / cluster_gain(v, i) + topo.alpha_mbs(i) / topo.alpha_mbs(j));
    }
  }
  return cm;
}

double sum_mse(const Topology& topo, const PilotAssignment& a, const TrainingConfig& tr) {
  validate_assignment(topo, a);
  const ReuseSets reuse(topo, a);
  double total = 0.0;
  for (int i : topo.rue_set) {
    for (int k : topo.serving_rrhs[i]) {
      total += topo.rrh_antennas * rrh_error_variance(topo, reuse, a.pilot[i], k, i, tr);
    }
  }
  for (int j : topo.bue_set) total += topo.mbs_antennas * mbs_error_variance(topo, reuse, a.pilot[j], j, tr);
  return total;
}

int effective_tau(const Topology& topo, const Coloring& coloring, int requested_tau) {
  return std::max({requested_tau, static_cast<int>(topo.bue_set.size()), coloring.num_colors, 1});
}

PilotAssignment dsatur_schedule(const Topology& topo, const ConflictGraph& graph, const Coloring& coloring,
                                int tau, std::span<const int> color_to_pilot) {
  if (!color_to_pilot.empty() && static_cast<int>(color_to_pilot.size()) != coloring.num_colors) {
    throw ContractViolation("dsatur_schedule: color_to_pilot must have one entry per color");
  }
  PilotAssignment a;
  a.tau = effective_tau(topo, coloring, tau);
  a.pilot.assign(topo.num_ue, 0);
  for (std::size_t j = 0; j < topo.bue_set.size(); ++j) a.pilot[topo.bue_set[j]] = static_cast<int>(j);
  for (int v = 0; v < graph.size(); ++v) {
    const int c = coloring.color[v];
    a.pilot[graph.ue(v)] = color_to_pilot.empty() ? c : color_to_pilot[c];
  }
  return a;
}

PilotAssignment dsatur_random_schedule(const Topology& topo, const ConflictGraph& graph,
                                       const Coloring& coloring, int tau, Rng& rng) {
  std::vector<int> perm(coloring.num_colors);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  return dsatur_schedule(topo, graph, coloring, tau, perm);
}

PilotAssignment psa_schedule(const Topology& topo, const ContaminationMetrics& metrics,
                             const ConflictGraph& graph, int tau, std::span<const int> color_to_pilot) {
  const Coloring coloring = dsatur_color(graph);
  PilotAssignment a = dsatur_schedule(topo, graph, coloring, tau, color_to_pilot);
  const int n = graph.size();
  const RMat& beta = metrics.beta;

  // Contamination seen by vertex v if it sits on pilot p (excluding itself; beta(v, ue(v)) = 0).
  auto load = [&](int v, int p) {
    double s = 0.0;
    for (int w = 0; w < n; ++w) {
      if (a.pilot[graph.ue(w)] == p) s += beta(v, graph.ue(w));
    }
    for (int j : topo.bue_set) {
      if (a.pilot[j] == p) s += beta(v, j);
    }
    return s;
  };

  std::vector<char> adjusted(n, 0);
  std::vector<char> blocked(a.tau);
  for (int round = 0; round < n; ++round) {
    int pick = -1;
    double worst = -1.0;
    for (int v = 0; v < n; ++v) {
      if (adjusted[v]) continue;
      const double l = load(v, a.pilot[graph.ue(v)]);
      if (l > worst) {
        worst = l;
        pick = v;
      }
    }
    // Pilots held by conflicting RUEs are not admissible.
    std::fill(blocked.begin(), blocked.end(), 0);
    for (int u : graph.neighbors(pick)) blocked[a.pilot[graph.ue(u)]] = 1;
    int best_pilot = -1;
    double best_load = 0.0;
    for (int p = 0; p < a.tau; ++p) {
      if (blocked[p]) continue;
      const double l = load(pick, p);
      if (best_pilot < 0 || l < best_load) {
        best_load = l;
        best_pilot = p;
      }
    }
    a.pilot[graph.ue(pick)] = best_pilot;
    adjusted[pick] = 1;
  }
  return a;
}

}  // namespace hcran

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
#include <string>
#include <vector>

#include "hcran/linalg.hpp"
#include "hcran/rng.hpp"

namespace hcran {

/// Static H-CRAN deployment parameters. Distances in meters, shadowing in dB.
struct ScenarioConfig {
  double cell_radius = 500.0;
  double inner_ring_radius = 200.0;
  int num_rrh = 25;
  int num_ue = 8;
  int mbs_antennas = 10;
  int rrh_antennas = 4;
  double coverage_radius = 100.0;
  int max_ue_per_rrh = 3;
  double pathloss_exponent = 3.7;
  double shadowing_std = 8.0;
  std::uint64_t rng_seed = 1;

  // Path-loss intercept: PL(d0) in dB at reference distance d0 (meters).
  double pathloss_intercept_db = 128.1;
  double reference_distance = 1000.0;
  // Distances are clamped below at this value before evaluating path loss.
  double min_distance = 1.0;

  /// Throws DomainError naming the first violated invariant.
  void validate() const;
};

/// One realization of the deployment plus its user-centric clustering.
///
/// UE ids run 0..M-1 and RRH ids 0..K-1. All per-UE/per-RRH sets are sorted.
struct Topology {
  int num_rrh = 0;
  int num_ue = 0;
  int rrh_antennas = 0;
  int mbs_antennas = 0;
  double coverage_radius = 0.0;
  int max_ue_per_rrh = 0;

  Point2 mbs_position{};
  std::vector<Point2> rrh_positions;
  std::vector<Point2> ue_positions;

  std::vector<std::vector<int>> serving_rrhs;  // K_i, indexed by UE
  std::vector<std::vector<int>> served_rues;   // M_k, indexed by RRH
  std::vector<int> rue_set;                    // M_R
  std::vector<int> bue_set;                    // M_B

  RMat alpha_rrh;  // K x M linear large-scale gains
  RVec alpha_mbs;  // M

  bool is_rue(int ue) const { return !serving_rrhs[ue].empty(); }
  bool serves(int rrh, int ue) const;

  /// Position of `ue` in rue_set / bue_set, or -1.
  int rue_index(int ue) const;
  int bue_index(int ue) const;

  /// Checks every structural invariant; throws ContractViolation on failure.
  void validate() const;
};

struct Clustering {
  std::vector<std::vector<int>> serving_rrhs;
  std::vector<std::vector<int>> served_rues;
  std::vector<int> rue_set;
  std::vector<int> bue_set;
};

/// Candidate links are all RRH-UE pairs within `coverage_radius`; each RRH then keeps
/// its `max_ue_per_rrh` closest candidates (ties to the lower UE id). RRHs prune
/// independently, so a UE dropped by one RRH may still be served by another.
Clustering cluster_ues(const std::vector<Point2>& rrh_positions,
                       const std::vector<Point2>& ue_positions, double coverage_radius,
                       int max_ue_per_rrh);

/// Deterministic part of the path loss in dB (no shadowing).
double pathloss_db(double distance, const ScenarioConfig& cfg);

/// Linear large-scale gain 10^(-PL/10) with a log-normal shadowing draw from `rng`.
/// Throws DomainError for distance <= 0.
double pathloss_gain(double distance, const ScenarioConfig& cfg, Rng& rng);

/// Draws RRH/UE positions, clusters UEs and computes all large-scale gains from
/// cfg.rng_seed. Same config, same Topology.
Topology generate_topology(const ScenarioConfig& cfg);

// Versioned plain-text dump ("hcran-topology v1"), full double precision.
void write_topology(std::ostream& os, const Topology& topo);
Topology read_topology(std::istream& is);
void save_topology(const std::string& path, const Topology& topo);
Topology load_topology(const std::string& path);

}  // namespace hcran

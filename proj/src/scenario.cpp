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

#include "hcran/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <utility>

#include "hcran/error.hpp"

namespace hcran {

void ScenarioConfig::validate() const {
  if (!(inner_ring_radius > 0.0)) throw DomainError("inner_ring_radius must be > 0");
  if (!(cell_radius > inner_ring_radius)) throw DomainError("cell_radius must exceed inner_ring_radius");
  if (num_rrh < 1) throw DomainError("num_rrh must be >= 1");
  if (num_ue < 1) throw DomainError("num_ue must be >= 1");
  if (mbs_antennas < 1) throw DomainError("mbs_antennas must be >= 1");
  if (rrh_antennas < 1) throw DomainError("rrh_antennas must be >= 1");
  if (max_ue_per_rrh < 1) throw DomainError("max_ue_per_rrh must be >= 1");
  if (!(coverage_radius > 0.0)) throw DomainError("coverage_radius must be > 0");
  if (!(shadowing_std >= 0.0)) throw DomainError("shadowing_std must be >= 0");
  if (!(reference_distance > 0.0)) throw DomainError("reference_distance must be > 0");
  if (!(min_distance > 0.0)) throw DomainError("min_distance must be > 0");
}

bool Topology::serves(int rrh, int ue) const {
  const auto& ks = serving_rrhs[ue];
  return std::binary_search(ks.begin(), ks.end(), rrh);
}

int Topology::rue_index(int ue) const {
  auto it = std::lower_bound(rue_set.begin(), rue_set.end(), ue);
  return (it != rue_set.end() && *it == ue) ? static_cast<int>(it - rue_set.begin()) : -1;
}

int Topology::bue_index(int ue) const {
  auto it = std::lower_bound(bue_set.begin(), bue_set.end(), ue);
  return (it != bue_set.end() && *it == ue) ? static_cast<int>(it - bue_set.begin()) : -1;
}

void Topology::validate() const {
  auto fail = [](const std::string& what) { throw ContractViolation("topology: " + what); };
  if (num_rrh < 0 || num_ue < 1) fail("bad dimensions");
  if (static_cast<int>(rrh_positions.size()) != num_rrh) fail("rrh_positions size");
  if (static_cast<int>(ue_positions.size()) != num_ue) fail("ue_positions size");
  if (static_cast<int>(serving_rrhs.size()) != num_ue) fail("serving_rrhs size");
  if (static_cast<int>(served_rues.size()) != num_rrh) fail("served_rues size");
  if (alpha_rrh.rows() != num_rrh || alpha_rrh.cols() != num_ue) fail("alpha_rrh shape");
  if (alpha_mbs.size() != num_ue) fail("alpha_mbs shape");
  if ((alpha_rrh.array() <= 0.0).any() || (alpha_mbs.array() <= 0.0).any()) fail("non-positive gain");

  std::vector<char> seen(num_ue, 0);
  for (int m : rue_set) {
    if (m < 0 || m >= num_ue || seen[m]) fail("rue_set entry");
    if (serving_rrhs[m].empty()) fail("RUE without serving RRH");
    seen[m] = 1;
  }
  for (int m : bue_set) {
    if (m < 0 || m >= num_ue || seen[m]) fail("bue_set entry");
    if (!serving_rrhs[m].empty()) fail("BUE with serving RRH");
    seen[m] = 1;
  }
  if (std::find(seen.begin(), seen.end(), 0) != seen.end()) fail("UE in neither M_R nor M_B");
  if (!std::is_sorted(rue_set.begin(), rue_set.end()) || !std::is_sorted(bue_set.begin(), bue_set.end())) {
    fail("UE sets not sorted");
  }

  for (int k = 0; k < num_rrh; ++k) {
    if (static_cast<int>(served_rues[k].size()) > max_ue_per_rrh) fail("RRH over capacity");
    for (int m : served_rues[k]) {
      if (m < 0 || m >= num_ue || !serves(k, m)) fail("cluster asymmetry");
    }
  }
  for (int m = 0; m < num_ue; ++m) {
    for (int k : serving_rrhs[m]) {
      if (k < 0 || k >= num_rrh) fail("serving RRH id");
      const auto& us = served_rues[k];
      if (!std::binary_search(us.begin(), us.end(), m)) fail("cluster asymmetry");
      if (distance(rrh_positions[k], ue_positions[m]) > coverage_radius) fail("serving RRH beyond coverage");
    }
  }
}

Clustering cluster_ues(const std::vector<Point2>& rrh_positions,
                       const std::vector<Point2>& ue_positions, double coverage_radius,
                       int max_ue_per_rrh) {
  const int num_rrh = static_cast<int>(rrh_positions.size());
  const int num_ue = static_cast<int>(ue_positions.size());
  Clustering c;
  c.serving_rrhs.assign(num_ue, {});
  c.served_rues.assign(num_rrh, {});

  for (int k = 0; k < num_rrh; ++k) {
    std::vector<std::pair<double, int>> candidates;
    for (int m = 0; m < num_ue; ++m) {
      const double d = distance(rrh_positions[k], ue_positions[m]);
      if (d <= coverage_radius) candidates.emplace_back(d, m);
    }
    std::sort(candidates.begin(), candidates.end());
    if (static_cast<int>(candidates.size()) > max_ue_per_rrh) candidates.resize(max_ue_per_rrh);
    for (const auto& [d, m] : candidates) {
      c.served_rues[k].push_back(m);
      c.serving_rrhs[m].push_back(k);
    }
    std::sort(c.served_rues[k].begin(), c.served_rues[k].end());
  }
  // serving_rrhs already ascending: RRHs are visited in index order.
  for (int m = 0; m < num_ue; ++m) {
    (c.serving_rrhs[m].empty() ? c.bue_set : c.rue_set).push_back(m);
  }
  return c;
}

double pathloss_db(double distance, const ScenarioConfig& cfg) {
  if (!(distance > 0.0)) throw DomainError("pathloss: distance must be > 0");
  const double d = std::max(distance, cfg.min_distance);
  return cfg.pathloss_intercept_db +
         10.0 * cfg.pathloss_exponent * std::log10(d / cfg.reference_distance);
}

double pathloss_gain(double distance, const ScenarioConfig& cfg, Rng& rng) {
  double pl = pathloss_db(distance, cfg);
  if (cfg.shadowing_std > 0.0) {
    std::normal_distribution<double> shadow(0.0, cfg.shadowing_std);
    pl += shadow(rng);
  }
  return std::pow(10.0, -pl / 10.0);
}

namespace {

Point2 uniform_in_annulus(Rng& rng, double r_in, double r_out) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double r = std::sqrt(u(rng) * (r_out * r_out - r_in * r_in) + r_in * r_in);
  const double theta = 2.0 * std::numbers::pi * u(rng);
  return {r * std::cos(theta), r * std::sin(theta)};
}

}  // namespace

Topology generate_topology(const ScenarioConfig& cfg) {
  cfg.validate();
  Rng rng(cfg.rng_seed);

  Topology t;
  t.num_rrh = cfg.num_rrh;
  t.num_ue = cfg.num_ue;
  t.rrh_antennas = cfg.rrh_antennas;
  t.mbs_antennas = cfg.mbs_antennas;
  t.coverage_radius = cfg.coverage_radius;
  t.max_ue_per_rrh = cfg.max_ue_per_rrh;
  t.mbs_position = {0.0, 0.0};

  t.rrh_positions.reserve(cfg.num_rrh);
  for (int k = 0; k < cfg.num_rrh; ++k) {
    t.rrh_positions.push_back(uniform_in_annulus(rng, cfg.inner_ring_radius, cfg.cell_radius));
  }
  t.ue_positions.reserve(cfg.num_ue);
  for (int m = 0; m < cfg.num_ue; ++m) {
    t.ue_positions.push_back(uniform_in_annulus(rng, 0.0, cfg.cell_radius));
  }

  Clustering c = cluster_ues(t.rrh_positions, t.ue_positions, cfg.coverage_radius, cfg.max_ue_per_rrh);
  t.serving_rrhs = std::move(c.serving_rrhs);
  t.served_rues = std::move(c.served_rues);
  t.rue_set = std::move(c.rue_set);
  t.bue_set = std::move(c.bue_set);

  t.alpha_rrh.resize(cfg.num_rrh, cfg.num_ue);
  for (int k = 0; k < cfg.num_rrh; ++k) {
    for (int m = 0; m < cfg.num_ue; ++m) {
      const double d = std::max(distance(t.rrh_positions[k], t.ue_positions[m]), cfg.min_distance);
      t.alpha_rrh(k, m) = pathloss_gain(d, cfg, rng);
    }
  }
  t.alpha_mbs.resize(cfg.num_ue);
  for (int m = 0; m < cfg.num_ue; ++m) {
    const double d = std::max(distance(t.mbs_position, t.ue_positions[m]), cfg.min_distance);
    t.alpha_mbs(m) = pathloss_gain(d, cfg, rng);
  }
  return t;
}

}  // namespace hcran

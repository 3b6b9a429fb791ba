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
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "hcran/error.hpp"
#include "hcran/experiments.hpp"
#include "hcran/units.hpp"

namespace hcran {

namespace {

using nlohmann::json;

void reject_unknown(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
  if (!obj.is_object()) throw ParseError(where + ": expected an object");
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.contains(key)) throw ParseError(where + ": unknown key '" + key + "'");
  }
}

template <typename T>
void read_if(const json& obj, const char* key, T& out, const std::string& where) {
  if (!obj.contains(key)) return;
  try {
    out = obj.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ParseError(where + "." + key + ": " + e.what());
  }
}

void read_scenario(const json& j, ScenarioConfig& s) {
  const std::string w = "scenario";
  reject_unknown(j, {"cell_radius", "inner_ring_radius", "num_rrh", "num_ue", "mbs_antennas", "rrh_antennas",
                     "coverage_radius", "max_ue_per_rrh", "pathloss_exponent", "shadowing_std", "rng_seed",
                     "pathloss_intercept_db", "reference_distance", "min_distance"},
                 w);
  read_if(j, "cell_radius", s.cell_radius, w);
  read_if(j, "inner_ring_radius", s.inner_ring_radius, w);
  read_if(j, "num_rrh", s.num_rrh, w);
  read_if(j, "num_ue", s.num_ue, w);
  read_if(j, "mbs_antennas", s.mbs_antennas, w);
  read_if(j, "rrh_antennas", s.rrh_antennas, w);
  read_if(j, "coverage_radius", s.coverage_radius, w);
  read_if(j, "max_ue_per_rrh", s.max_ue_per_rrh, w);
  read_if(j, "pathloss_exponent", s.pathloss_exponent, w);
  read_if(j, "shadowing_std", s.shadowing_std, w);
  read_if(j, "rng_seed", s.rng_seed, w);
  read_if(j, "pathloss_intercept_db", s.pathloss_intercept_db, w);
  read_if(j, "reference_distance", s.reference_distance, w);
  read_if(j, "min_distance", s.min_distance, w);
}

void read_training(const json& j, TrainingConfig& t) {
  const std::string w = "training";
  reject_unknown(j, {"p_R_dbm", "p_B_dbm", "N0_dbm", "tau", "T"}, w);
  double dbm = 0.0;
  if (j.contains("p_R_dbm")) {
    read_if(j, "p_R_dbm", dbm, w);
    t.pilot_power_rue = dbm_to_watt(dbm);
  }
  if (j.contains("p_B_dbm")) {
    read_if(j, "p_B_dbm", dbm, w);
    t.pilot_power_bue = dbm_to_watt(dbm);
  }
  if (j.contains("N0_dbm")) {
    read_if(j, "N0_dbm", dbm, w);
    t.noise_power = dbm_to_watt(dbm);
  }
  read_if(j, "tau", t.tau, w);
  read_if(j, "T", t.coherence, w);
}

}  // namespace

ExperimentConfig parse_config(std::string_view json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("config: ") + e.what());
  }
  reject_unknown(root, {"scenario", "training", "power", "sweep", "num_realizations", "schedulers", "beamformers",
                        "output_path", "master_seed", "mc_trials", "jobs", "es_limit", "rtd"},
                 "config");
  ExperimentConfig cfg;
  if (root.contains("scenario")) read_scenario(root["scenario"], cfg.scenario);
  if (root.contains("training")) read_training(root["training"], cfg.training);
  if (root.contains("power")) {
    const json& p = root["power"];
    reject_unknown(p, {"P_R_dbm", "P_B_dbm"}, "power");
    double dbm = 0.0;
    if (p.contains("P_R_dbm")) {
      read_if(p, "P_R_dbm", dbm, "power");
      cfg.rrh_power = dbm_to_watt(dbm);
    }
    if (p.contains("P_B_dbm")) {
      read_if(p, "P_B_dbm", dbm, "power");
      cfg.mbs_power = dbm_to_watt(dbm);
    }
  }
  if (root.contains("sweep")) {
    const json& s = root["sweep"];
    reject_unknown(s, {"parameter", "values"}, "sweep");
    read_if(s, "parameter", cfg.sweep.parameter, "sweep");
    read_if(s, "values", cfg.sweep.values, "sweep");
  }
  read_if(root, "num_realizations", cfg.num_realizations, "config");
  read_if(root, "output_path", cfg.output_path, "config");
  read_if(root, "master_seed", cfg.master_seed, "config");
  read_if(root, "mc_trials", cfg.mc_trials, "config");
  read_if(root, "jobs", cfg.jobs, "config");
  read_if(root, "es_limit", cfg.es_limit, "config");
  if (root.contains("schedulers")) {
    std::vector<std::string> names;
    read_if(root, "schedulers", names, "config");
    cfg.schedulers.clear();
    for (const auto& n : names) cfg.schedulers.push_back(parse_scheduler(n));
  }
  if (root.contains("beamformers")) {
    std::vector<std::string> names;
    read_if(root, "beamformers", names, "config");
    cfg.beamformers.clear();
    for (const auto& n : names) cfg.beamformers.push_back(parse_beamformer(n));
  }
  if (root.contains("rtd")) {
    const json& r = root["rtd"];
    reject_unknown(r, {"rho", "max_iters", "mode", "gap_tol", "max_dual_iters"}, "rtd");
    read_if(r, "rho", cfg.rtd.rho, "rtd");
    read_if(r, "max_iters", cfg.rtd.max_iters, "rtd");
    read_if(r, "gap_tol", cfg.rtd.solver.gap_tol, "rtd");
    read_if(r, "max_dual_iters", cfg.rtd.solver.max_dual_iters, "rtd");
    if (r.contains("mode")) {
      std::string mode;
      read_if(r, "mode", mode, "rtd");
      if (mode == "centralized") cfg.rtd.mode = RtdMode::centralized;
      else if (mode == "distributed") cfg.rtd.mode = RtdMode::distributed;
      else throw ParseError("rtd.mode: expected centralized or distributed");
    }
  }
  cfg.validate();
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open config file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

}  // namespace hcran

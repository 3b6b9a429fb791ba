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

#include <doctest.h>

#include <cmath>
#include <map>
#include <sstream>

#include "hcran/error.hpp"
#include "hcran/experiments.hpp"

using namespace hcran;

namespace {

ExperimentConfig small_config() {
  ExperimentConfig cfg = parse_config(R"({
    "scenario": {"num_ue": 6, "num_rrh": 8, "rrh_antennas": 2, "mbs_antennas": 4, "coverage_radius": 150},
    "sweep": {"parameter": "tau", "values": [3, 6]},
    "num_realizations": 6,
    "schedulers": ["psa", "dsatur_random"],
    "beamformers": ["rtd", "none"],
    "mc_trials": 100,
    "master_seed": 3
  })");
  return cfg;
}

std::string csv(const ExperimentResult& r) {
  std::ostringstream os;
  write_results_csv(os, r);
  return os.str();
}

std::map<std::pair<double, std::string>, ResultRow> by_key(const ExperimentResult& r) {
  std::map<std::pair<double, std::string>, ResultRow> m;
  for (const ResultRow& row : r.rows) m[{row.sweep_value, row.metric}] = row;
  return m;
}

}  // namespace

TEST_CASE("config parsing") {
  const ExperimentConfig cfg = parse_config(R"({
    "training": {"p_R_dbm": 17, "N0_dbm": -100, "tau": 4, "T": 40},
    "power": {"P_R_dbm": 27},
    "sweep": {"parameter": "K", "values": [20, 25]},
    "rtd": {"rho": 0.01, "mode": "distributed"}
  })");
  CHECK(cfg.training.pilot_power_rue == doctest::Approx(0.0501187).epsilon(1e-5));
  CHECK(cfg.training.noise_power == doctest::Approx(1e-13));
  CHECK(cfg.training.tau == 4);
  CHECK(cfg.training.coherence == 40);
  CHECK(cfg.rrh_power == doctest::Approx(0.501187).epsilon(1e-5));
  CHECK(cfg.mbs_power == 1.0);
  CHECK(cfg.rtd.rho == 0.01);
  CHECK(cfg.rtd.mode == RtdMode::distributed);
  CHECK(cfg.sweep.values.size() == 2);

  CHECK_THROWS_AS(parse_config("{"), ParseError);
  CHECK_THROWS_AS(parse_config(R"({"sweep": {"values": [1]}, "extra": 1})"), ParseError);
  CHECK_THROWS_AS(parse_config(R"({"sweep": {"values": [1]}, "scenario": {"num_rrhs": 3}})"), ParseError);
  CHECK_THROWS_AS(parse_config(R"({"sweep": {"values": [1]}, "num_realizations": "ten"})"), ParseError);
  CHECK_THROWS_AS(parse_config(R"({"sweep": {"values": [1]}, "rtd": {"mode": "async"}})"), ParseError);
  CHECK_THROWS_AS(parse_config(R"({"sweep": {"values": [1]}, "schedulers": ["greedy"]})"), ParseError);
  CHECK_THROWS_AS(parse_config(R"({"sweep": {"values": [1]}, "num_realizations": 0})"), DomainError);
  CHECK_THROWS_AS(parse_config(R"({"sweep": {"values": []}})"), DomainError);
  CHECK_THROWS_AS(parse_config(R"({"sweep": {"parameter": "alpha", "values": [1]}})"), DomainError);
  CHECK_THROWS_AS(parse_config(R"({"sweep": {"values": [60]}})"), DomainError);
  CHECK_THROWS_AS(load_config("/nonexistent/config.json"), ParseError);
}

TEST_CASE("sweep parameters and aliases") {
  ScenarioConfig s;
  TrainingConfig t;
  apply_sweep_value("tau", 7, s, t);
  CHECK(t.tau == 7);
  apply_sweep_value("K", 30, s, t);
  CHECK(s.num_rrh == 30);
  apply_sweep_value("num_ue", 12, s, t);
  CHECK(s.num_ue == 12);
  apply_sweep_value("N", 2, s, t);
  CHECK(s.rrh_antennas == 2);
  apply_sweep_value("B", 16, s, t);
  CHECK(s.mbs_antennas == 16);
  apply_sweep_value("D_max", 120.5, s, t);
  CHECK(s.coverage_radius == 120.5);
  apply_sweep_value("T", 80, s, t);
  CHECK(t.coherence == 80);
  CHECK_THROWS_AS(apply_sweep_value("tau", 2.5, s, t), DomainError);
  CHECK_THROWS_AS(apply_sweep_value("P_R", 1, s, t), DomainError);

  CHECK(parse_scheduler(to_string(Scheduler::dsatur_random)) == Scheduler::dsatur_random);
  CHECK(parse_beamformer(to_string(Beamformer::perfect_csi)) == Beamformer::perfect_csi);
}

TEST_CASE("realization seeds") {
  CHECK(realization_seed(1, 0, SeedPurpose::fading) == realization_seed(1, 0, SeedPurpose::fading));
  CHECK(realization_seed(1, 0, SeedPurpose::fading) != realization_seed(1, 0, SeedPurpose::estimation));
  CHECK(realization_seed(1, 0, SeedPurpose::fading) != realization_seed(1, 1, SeedPurpose::fading));
  CHECK(realization_seed(1, 0, SeedPurpose::fading) != realization_seed(2, 0, SeedPurpose::fading));
}

TEST_CASE("results CSV layout") {
  ExperimentResult r;
  r.rows.push_back({2.0, "sum_mse.psa", 0.125, 0.5, 10});
  CHECK(csv(r) == "sweep_value,metric,mean,stderr,n\n2,sum_mse.psa,0.125,0.5,10\n");
}

TEST_CASE("sweeps are reproducible and independent of the worker count") {
  ExperimentConfig cfg = small_config();
  const std::string first = csv(run_se_sweep(cfg));
  CHECK(first == csv(run_se_sweep(cfg)));
  cfg.jobs = 3;
  CHECK(first == csv(run_se_sweep(cfg)));

  cfg.jobs = 1;
  const std::string mse = csv(run_mse_sweep(cfg));
  cfg.jobs = 4;
  CHECK(mse == csv(run_mse_sweep(cfg)));
}

TEST_CASE("se sweep rows") {
  const ExperimentConfig cfg = small_config();
  const auto rows = by_key(run_se_sweep(cfg));
  for (double tau : {3.0, 6.0}) {
    for (const char* s : {"psa", "dsatur_random"}) {
      const std::string suffix = std::string(s) + ".rtd";
      REQUIRE(rows.count({tau, "sum_se_lb." + suffix}));
      const ResultRow& lb = rows.at({tau, "sum_se_lb." + suffix});
      CHECK(lb.n == cfg.num_realizations);
      CHECK(lb.mean > 0.0);
      CHECK(rows.at({tau, "sum_se_mc." + suffix}).mean >= lb.mean - 3.0 * lb.stderr_);
      CHECK(rows.at({tau, "rtd_failures." + suffix}).mean == 0.0);
      CHECK(rows.at({tau, "sum_se_lb." + std::string(s) + ".none"}).mean == 0.0);
    }
  }
}

TEST_CASE("orthogonal pilots make the optimizing schedulers coincide") {
  ExperimentConfig cfg = small_config();
  cfg.schedulers = {Scheduler::psa, Scheduler::dsatur_random, Scheduler::es};
  cfg.sweep.values = {6};  // = number of UEs
  const auto rows = by_key(run_mse_sweep(cfg));
  const double psa = rows.at({6.0, "sum_mse.psa"}).mean;
  // The coloring baseline keeps its t-pilot reuse pattern even when more pilots exist.
  CHECK(rows.at({6.0, "sum_mse.dsatur_random"}).mean >= psa * (1.0 - 1e-12));
  CHECK(rows.at({6.0, "sum_mse.es"}).mean == doctest::Approx(psa).epsilon(1e-12));
  CHECK(rows.at({6.0, "effective_tau"}).mean == 6.0);
}

TEST_CASE("exhaustive search over the guard is skipped with a warning") {
  ExperimentConfig cfg = small_config();
  cfg.schedulers = {Scheduler::psa, Scheduler::es};
  cfg.es_limit = 1.0;
  const ExperimentResult r = run_mse_sweep(cfg);
  CHECK(!r.warnings.empty());
  const auto rows = by_key(r);
  CHECK(rows.count({3.0, "sum_mse.psa"}));
  if (rows.count({3.0, "sum_mse.es"})) CHECK(rows.at({3.0, "sum_mse.es"}).n == 0);
}

TEST_CASE("tightness rows") {
  ExperimentConfig cfg = small_config();
  cfg.beamformers = {Beamformer::rtd};
  cfg.schedulers = {Scheduler::psa};
  cfg.sweep = {"N", {2}};
  const auto rows = by_key(run_tightness(cfg));
  const double lb = rows.at({2.0, "lb_rue.psa.rtd"}).mean, mc = rows.at({2.0, "mc_rue.psa.rtd"}).mean;
  CHECK(lb > 0.0);
  CHECK(mc >= lb * 0.99);
  CHECK(rows.at({2.0, "gap_rue.psa.rtd"}).mean == doctest::Approx(rows.at({2.0, "gap_rue.psa.rtd"}).mean));
  CHECK(rows.at({2.0, "jensen_violations.psa.rtd"}).mean == 0.0);

  cfg.mc_trials = 0;
  CHECK_THROWS_AS(run_tightness(cfg), DomainError);
}

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
#include <string_view>
#include <vector>

#include "hcran/channel.hpp"
#include "hcran/rtd.hpp"
#include "hcran/scenario.hpp"

namespace hcran {

enum class Scheduler { psa, dsatur_random, es };
/// rtd: robust design on estimated CSI. none: all-zero beamformers. perfect_csi:
/// RTD run on a reference state whose estimates equal the true channels.
enum class Beamformer { rtd, none, perfect_csi };

std::string_view to_string(Scheduler s);
std::string_view to_string(Beamformer b);
Scheduler parse_scheduler(std::string_view s);
Beamformer parse_beamformer(std::string_view s);

struct SweepSpec {
  /// One of tau, num_ue, num_rrh, rrh_antennas, mbs_antennas, coverage_radius,
  /// coherence (aliases: M, K, N, B, D_max, T).
  std::string parameter = "tau";
  std::vector<double> values;
};

struct ExperimentConfig {
  ScenarioConfig scenario;
  TrainingConfig training;
  double rrh_power = 0.5;  // P_R, watts (27 dBm)
  double mbs_power = 1.0;  // P_B, watts (30 dBm)
  SweepSpec sweep;
  int num_realizations = 100;
  std::vector<Scheduler> schedulers{Scheduler::psa};
  std::vector<Beamformer> beamformers{Beamformer::rtd};
  std::string output_path;
  std::uint64_t master_seed = 1;
  int mc_trials = 2000;  // 0 disables the Monte-Carlo columns
  int jobs = 1;
  double es_limit = 1e7;
  RtdOptions rtd;

  /// Throws DomainError on an invalid combination (checks every sweep point).
  void validate() const;
};

/// Parses the JSON config format documented in README.md. Unknown keys are errors.
ExperimentConfig parse_config(std::string_view json_text);
ExperimentConfig load_config(const std::string& path);

/// Copies of the scenario and training configs with the sweep parameter set.
void apply_sweep_value(const std::string& parameter, double value, ScenarioConfig& scenario,
                       TrainingConfig& training);

struct ResultRow {
  double sweep_value = 0.0;
  std::string metric;
  double mean = 0.0;
  double stderr_ = 0.0;
  int n = 0;
  /// Per-realization values in realization order, NaN where missing. Rows of the
  /// same metric at different sweep points share realization seeds, so their
  /// samples can be paired. Not written to CSV.
  std::vector<double> samples;
};

struct ExperimentResult {
  std::vector<ResultRow> rows;
  std::vector<std::string> warnings;
};

/// Header `sweep_value,metric,mean,stderr,n`, one row per entry, full precision.
void write_results_csv(std::ostream& os, const ExperimentResult& result);

/// Per sweep point: sum-MSE mean/stderr per scheduler, plus the effective pilot length.
ExperimentResult run_mse_sweep(const ExperimentConfig& cfg);
/// Per sweep point: sum-SE lower bound (and MC estimate when mc_trials > 0) per
/// scheduler/beamformer pair, RTD iteration counts and failures; RTD objective
/// traces when sweeping num_rrh.
ExperimentResult run_se_sweep(const ExperimentConfig& cfg);
/// Per sweep point: summed lower bounds vs. MC rates for RUEs and BUEs, relative
/// gaps and the count of UEs whose bound exceeds MC + 3 stderr.
ExperimentResult run_tightness(const ExperimentConfig& cfg);

/// Seed of realization r for a given purpose; independent of the sweep value.
enum class SeedPurpose : std::uint64_t { topology = 0, fading = 1, estimation = 2, scheduling = 3, monte_carlo = 4 };
std::uint64_t realization_seed(std::uint64_t master, int realization, SeedPurpose purpose);

}  // namespace hcran

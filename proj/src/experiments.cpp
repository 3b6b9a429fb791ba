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

#include "hcran/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>

#include "hcran/error.hpp"
#include "hcran/parallel.hpp"
#include "hcran/pilot_scheduler.hpp"
#include "hcran/rate_bounds.hpp"

namespace hcran {

std::string_view to_string(Scheduler s) {
  switch (s) {
    case Scheduler::psa: return "psa";
    case Scheduler::dsatur_random: return "dsatur_random";
    case Scheduler::es: return "es";
  }
  return "?";
}

std::string_view to_string(Beamformer b) {
  switch (b) {
    case Beamformer::rtd: return "rtd";
    case Beamformer::none: return "none";
    case Beamformer::perfect_csi: return "perfect_csi";
  }
  return "?";
}

Scheduler parse_scheduler(std::string_view s) {
  if (s == "psa") return Scheduler::psa;
  if (s == "dsatur_random" || s == "dsatur") return Scheduler::dsatur_random;
  if (s == "es") return Scheduler::es;
  throw ParseError("unknown scheduler '" + std::string(s) + "'");
}

Beamformer parse_beamformer(std::string_view s) {
  if (s == "rtd") return Beamformer::rtd;
  if (s == "none") return Beamformer::none;
  if (s == "perfect_csi") return Beamformer::perfect_csi;
  throw ParseError("unknown beamformer '" + std::string(s) + "'");
}

std::uint64_t realization_seed(std::uint64_t master, int realization, SeedPurpose purpose) {
  return split_seed(master, static_cast<std::uint64_t>(realization), static_cast<std::uint64_t>(purpose));
}

namespace {

int as_int(const std::string& parameter, double value) {
  if (value != std::floor(value) || std::abs(value) > 1e9) {
    throw DomainError("sweep " + parameter + ": value must be an integer");
  }
  return static_cast<int>(value);
}

}  // namespace

void apply_sweep_value(const std::string& parameter, double value, ScenarioConfig& scenario,
                       TrainingConfig& training) {
  const std::string& p = parameter;
  if (p == "tau") training.tau = as_int(p, value);
  else if (p == "num_ue" || p == "M") scenario.num_ue = as_int(p, value);
  else if (p == "num_rrh" || p == "K") scenario.num_rrh = as_int(p, value);
  else if (p == "rrh_antennas" || p == "N") scenario.rrh_antennas = as_int(p, value);
  else if (p == "mbs_antennas" || p == "B") scenario.mbs_antennas = as_int(p, value);
  else if (p == "coverage_radius" || p == "D_max") scenario.coverage_radius = value;
  else if (p == "coherence" || p == "T") training.coherence = as_int(p, value);
  else throw DomainError("unknown sweep parameter '" + parameter + "'");
}

void ExperimentConfig::validate() const {
  if (num_realizations < 1) throw DomainError("num_realizations must be >= 1");
  if (mc_trials < 0) throw DomainError("mc_trials must be >= 0");
  if (jobs < 1) throw DomainError("jobs must be >= 1");
  if (!(rrh_power >= 0.0) || !(mbs_power >= 0.0)) throw DomainError("power budgets must be non-negative");
  if (schedulers.empty()) throw DomainError("at least one scheduler is required");
  if (beamformers.empty()) throw DomainError("at least one beamformer is required");
  if (sweep.values.empty()) throw DomainError("sweep needs at least one value");
  for (double v : sweep.values) {
    ScenarioConfig s = scenario;
    TrainingConfig t = training;
    apply_sweep_value(sweep.parameter, v, s, t);
    s.validate();
    t.validate();
  }
}

void write_results_csv(std::ostream& os, const ExperimentResult& result) {
  const auto old_precision = os.precision(17);
  os << "sweep_value,metric,mean,stderr,n\n";
  for (const ResultRow& r : result.rows) {
    os << r.sweep_value << ',' << r.metric << ',' << r.mean << ',' << r.stderr_ << ',' << r.n << '\n';
  }
  os.precision(old_precision);
}

namespace {

constexpr double kMissing = std::numeric_limits<double>::quiet_NaN();

// Per-realization metric table: values[r][m], NaN where a metric was not produced.
class MetricTable {
 public:
  MetricTable(std::vector<std::string> names, int realizations)
      : names_(std::move(names)), values_(realizations, std::vector<double>(names_.size(), kMissing)) {}

  int index(const std::string& name) const {
    const auto it = std::find(names_.begin(), names_.end(), name);
    if (it == names_.end()) throw ContractViolation("unregistered metric " + name);
    return static_cast<int>(it - names_.begin());
  }
  void set(int r, const std::string& name, double v) { values_[r][index(name)] = v; }

  // Rows in registration order, over realizations in index order.
  void reduce(double sweep_value, std::vector<ResultRow>& out) const {
    for (std::size_t m = 0; m < names_.size(); ++m) {
      std::vector<double> xs, column;
      for (const auto& row : values_) {
        column.push_back(row[m]);
        if (!std::isnan(row[m])) xs.push_back(row[m]);
      }
      if (xs.empty()) continue;
      const double n = static_cast<double>(xs.size());
      const double mean = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
      double var = 0.0;
      for (double x : xs) var += (x - mean) * (x - mean);
      const double se = xs.size() > 1 ? std::sqrt(var / (n - 1.0) / n) : 0.0;
      out.push_back({sweep_value, names_[m], mean, se, static_cast<int>(xs.size()), std::move(column)});
    }
  }

 private:
  std::vector<std::string> names_;
  std::vector<std::vector<double>> values_;
};

struct PointConfig {
  ScenarioConfig scenario;
  TrainingConfig training;
};

PointConfig point_config(const ExperimentConfig& cfg, double value) {
  PointConfig pc{cfg.scenario, cfg.training};
  apply_sweep_value(cfg.sweep.parameter, value, pc.scenario, pc.training);
  return pc;
}

// Topology and scheduling inputs of one realization.
struct Instance {
  Topology topo;
  ConflictGraph graph;
  Coloring coloring;
  std::vector<int> color_to_pilot;
};

Instance make_instance(const ExperimentConfig& cfg, const PointConfig& pc, int r) {
  ScenarioConfig sc = pc.scenario;
  sc.rng_seed = realization_seed(cfg.master_seed, r, SeedPurpose::topology);
  Instance in;
  in.topo = generate_topology(sc);
  in.graph = build_conflict_graph(in.topo);
  in.coloring = dsatur_color(in.graph);
  in.color_to_pilot.resize(in.coloring.num_colors);
  std::iota(in.color_to_pilot.begin(), in.color_to_pilot.end(), 0);
  Rng rng(realization_seed(cfg.master_seed, r, SeedPurpose::scheduling));
  std::shuffle(in.color_to_pilot.begin(), in.color_to_pilot.end(), rng);
  return in;
}

// Returns false when ES exceeds its guard.
bool schedule(const ExperimentConfig& cfg, const PointConfig& pc, const Instance& in, Scheduler s,
              PilotAssignment& out) {
  switch (s) {
    case Scheduler::psa:
      out = psa_schedule(in.topo, compute_beta(in.topo, in.graph), in.graph, pc.training.tau, in.color_to_pilot);
      return true;
    case Scheduler::dsatur_random:
      out = dsatur_schedule(in.topo, in.graph, in.coloring, pc.training.tau, in.color_to_pilot);
      return true;
    case Scheduler::es:
      try {
        out = es_schedule(in.topo, pc.training.tau, pc.training, SearchLimits{cfg.es_limit});
      } catch (const SizeError&) {
        return false;
      }
      return true;
  }
  return false;
}

TrainingConfig training_for(const PointConfig& pc, const PilotAssignment& a) {
  TrainingConfig tr = pc.training;
  tr.tau = a.tau;
  if (tr.tau >= tr.coherence) {
    throw DomainError("effective pilot length " + std::to_string(tr.tau) + " leaves no data symbols (T=" +
                      std::to_string(tr.coherence) + ")");
  }
  return tr;
}

std::string metric(std::string_view base, Scheduler s) { return std::string(base) + "." + std::string(to_string(s)); }
std::string metric(std::string_view base, Scheduler s, Beamformer b) {
  return metric(base, s) + "." + std::string(to_string(b));
}

struct DesignOutcome {
  bool ok = true;
  BeamformerSet w;
  RtdState state;
  ChannelState cs;
  AggregatedLinks links;
  TrainingConfig tr;
};

// Runs the beamformer design `b` on a scheduled realization. RTD failures are
// reported through ok = false.
DesignOutcome design(const ExperimentConfig& cfg, const Instance& in, const TrainingConfig& tr,
                     const PilotAssignment& a, Beamformer b, int r) {
  DesignOutcome out;
  out.tr = tr;
  const TrueChannels truth = draw_small_scale(in.topo, realization_seed(cfg.master_seed, r, SeedPurpose::fading));
  if (b == Beamformer::perfect_csi) {
    out.cs = perfect_csi_state(in.topo, truth);
  } else {
    out.cs = estimate_channels(in.topo, a, tr, truth, realization_seed(cfg.master_seed, r, SeedPurpose::estimation));
  }
  out.links = build_covariances(in.topo, out.cs);
  if (b == Beamformer::none) {
    out.w = BeamformerSet::zeros(in.topo);
    return out;
  }
  const PowerBudgets budgets = PowerBudgets::uniform(in.topo.num_rrh, cfg.rrh_power, cfg.mbs_power);
  try {
    out.state = rtd_solve(in.topo, out.links, tr, budgets, cfg.rtd);
    out.w = out.state.w;
  } catch (const ConvergenceError&) {
    out.ok = false;
  } catch (const MatrixError&) {
    out.ok = false;
  }
  return out;
}

}  // namespace

ExperimentResult run_mse_sweep(const ExperimentConfig& cfg) {
  cfg.validate();
  ExperimentResult result;
  std::vector<std::string> names{"effective_tau"};
  for (Scheduler s : cfg.schedulers) names.push_back(metric("sum_mse", s));

  for (double value : cfg.sweep.values) {
    const PointConfig pc = point_config(cfg, value);
    MetricTable table(names, cfg.num_realizations);
    std::vector<char> es_skipped(cfg.num_realizations, 0);
    parallel_for(cfg.num_realizations, cfg.jobs, [&](int r) {
      const Instance in = make_instance(cfg, pc, r);
      for (Scheduler s : cfg.schedulers) {
        PilotAssignment a;
        if (!schedule(cfg, pc, in, s, a)) {
          es_skipped[r] = 1;
          continue;
        }
        table.set(r, metric("sum_mse", s), sum_mse(in.topo, a, pc.training));
        if (s == cfg.schedulers.front()) table.set(r, "effective_tau", a.tau);
      }
    });
    std::vector<ResultRow> rows;
    table.reduce(value, rows);
    if (std::any_of(es_skipped.begin(), es_skipped.end(), [](char c) { return c != 0; })) {
      std::erase_if(rows, [](const ResultRow& row) { return row.metric == "sum_mse.es"; });
      result.warnings.push_back("exhaustive search skipped at " + cfg.sweep.parameter + "=" +
                                std::to_string(value) + ": search space exceeds es_limit");
    }
    result.rows.insert(result.rows.end(), rows.begin(), rows.end());
  }
  return result;
}

ExperimentResult run_se_sweep(const ExperimentConfig& cfg) {
  cfg.validate();
  ExperimentResult result;
  const bool traces = cfg.sweep.parameter == "num_rrh" || cfg.sweep.parameter == "K";
  std::vector<std::string> names;
  for (Scheduler s : cfg.schedulers) {
    names.push_back(metric("sum_mse", s));
    for (Beamformer b : cfg.beamformers) {
      names.push_back(metric("sum_se_lb", s, b));
      if (cfg.mc_trials > 0) names.push_back(metric("sum_se_mc", s, b));
      if (b != Beamformer::none) names.push_back(metric("rtd_iterations", s, b));
    }
  }

  for (double value : cfg.sweep.values) {
    const PointConfig pc = point_config(cfg, value);
    MetricTable table(names, cfg.num_realizations);
    const std::size_t pairs = cfg.schedulers.size() * cfg.beamformers.size();
    std::vector<std::vector<char>> failed(cfg.num_realizations, std::vector<char>(pairs, 0));
    std::vector<std::vector<char>> skipped(cfg.num_realizations, std::vector<char>(cfg.schedulers.size(), 0));
    std::vector<std::vector<std::vector<double>>> trace(cfg.num_realizations, std::vector<std::vector<double>>(pairs));

    parallel_for(cfg.num_realizations, cfg.jobs, [&](int r) {
      const Instance in = make_instance(cfg, pc, r);
      for (std::size_t si = 0; si < cfg.schedulers.size(); ++si) {
        const Scheduler s = cfg.schedulers[si];
        PilotAssignment a;
        if (!schedule(cfg, pc, in, s, a)) {
          skipped[r][si] = 1;
          continue;
        }
        const TrainingConfig tr = training_for(pc, a);
        table.set(r, metric("sum_mse", s), sum_mse(in.topo, a, tr));
        for (std::size_t bi = 0; bi < cfg.beamformers.size(); ++bi) {
          const Beamformer b = cfg.beamformers[bi];
          const std::size_t pair = si * cfg.beamformers.size() + bi;
          const DesignOutcome d = design(cfg, in, tr, a, b, r);
          if (!d.ok) {
            failed[r][pair] = 1;
            continue;
          }
          const LowerBounds lb = lower_bound_rates(d.links, d.w, tr.noise_power, tr.prelog());
          table.set(r, metric("sum_se_lb", s, b), lb.sum_rate());
          if (cfg.mc_trials > 0) {
            const MonteCarloRates mc =
                monte_carlo_rates(in.topo, d.cs, d.w, tr.noise_power, tr.prelog(), cfg.mc_trials,
                                  realization_seed(cfg.master_seed, r, SeedPurpose::monte_carlo), 1);
            table.set(r, metric("sum_se_mc", s, b), mc.rue_mean.sum() + mc.bue_mean.sum());
          }
          if (b != Beamformer::none) {
            table.set(r, metric("rtd_iterations", s, b), d.state.iterations);
            trace[r][pair] = d.state.objective_trace;
          }
        }
      }
    });

    table.reduce(value, result.rows);
    for (std::size_t si = 0; si < cfg.schedulers.size(); ++si) {
      int skips = 0;
      for (const auto& row : skipped) skips += row[si];
      if (skips > 0) {
        result.warnings.push_back("exhaustive search skipped for " + std::to_string(skips) + " realizations at " +
                                  cfg.sweep.parameter + "=" + std::to_string(value));
      }
      for (std::size_t bi = 0; bi < cfg.beamformers.size(); ++bi) {
        const Beamformer b = cfg.beamformers[bi];
        if (b == Beamformer::none) continue;
        const std::size_t pair = si * cfg.beamformers.size() + bi;
        int failures = 0;
        for (const auto& row : failed) failures += row[pair];
        result.rows.push_back({value, metric("rtd_failures", cfg.schedulers[si], b), static_cast<double>(failures),
                               0.0, cfg.num_realizations, {}});
        if (!traces) continue;
        std::size_t longest = 0;
        for (const auto& t : trace) longest = std::max(longest, t[pair].size());
        for (std::size_t d = 0; d < longest; ++d) {
          std::vector<double> xs;
          for (const auto& t : trace) {
            if (d < t[pair].size()) xs.push_back(t[pair][d]);
          }
          const double n = static_cast<double>(xs.size());
          const double mean = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
          double var = 0.0;
          for (double x : xs) var += (x - mean) * (x - mean);
          const double se = xs.size() > 1 ? std::sqrt(var / (n - 1.0) / n) : 0.0;
          result.rows.push_back({value, metric("rtd_objective", cfg.schedulers[si], b) + ".iter_" + std::to_string(d),
                                 mean, se, static_cast<int>(xs.size()), {}});
        }
      }
    }
  }
  return result;
}

ExperimentResult run_tightness(const ExperimentConfig& cfg) {
  cfg.validate();
  if (cfg.mc_trials < 1) throw DomainError("tightness needs mc_trials >= 1");
  ExperimentResult result;
  static constexpr std::string_view kMetrics[] = {"lb_rue",  "mc_rue",  "lb_bue",           "mc_bue",
                                                  "gap_rue", "gap_bue", "jensen_violations"};
  std::vector<std::string> names;
  for (Scheduler s : cfg.schedulers) {
    for (Beamformer b : cfg.beamformers) {
      for (std::string_view m : kMetrics) names.push_back(metric(m, s, b));
    }
  }

  for (double value : cfg.sweep.values) {
    const PointConfig pc = point_config(cfg, value);
    MetricTable table(names, cfg.num_realizations);
    std::vector<char> incomplete(cfg.num_realizations, 0);
    parallel_for(cfg.num_realizations, cfg.jobs, [&](int r) {
      const Instance in = make_instance(cfg, pc, r);
      for (Scheduler s : cfg.schedulers) {
        PilotAssignment a;
        if (!schedule(cfg, pc, in, s, a)) {
          incomplete[r] = 1;
          continue;
        }
        const TrainingConfig tr = training_for(pc, a);
        for (Beamformer b : cfg.beamformers) {
          const DesignOutcome d = design(cfg, in, tr, a, b, r);
          if (!d.ok) {
            incomplete[r] = 1;
            continue;
          }
          const LowerBounds lb = lower_bound_rates(d.links, d.w, tr.noise_power, tr.prelog());
          const MonteCarloRates mc =
              monte_carlo_rates(in.topo, d.cs, d.w, tr.noise_power, tr.prelog(), cfg.mc_trials,
                                realization_seed(cfg.master_seed, r, SeedPurpose::monte_carlo), 1);
          const double lr = lb.rue_rate.sum(), mr = mc.rue_mean.sum();
          const double lbb = lb.bue_rate.sum(), mb = mc.bue_mean.sum();
          int violations = 0;
          for (int v = 0; v < lb.rue_rate.size(); ++v) {
            violations += lb.rue_rate(v) > mc.rue_mean(v) + 3.0 * mc.rue_stderr(v);
          }
          for (int v = 0; v < lb.bue_rate.size(); ++v) {
            violations += lb.bue_rate(v) > mc.bue_mean(v) + 3.0 * mc.bue_stderr(v);
          }
          table.set(r, metric("lb_rue", s, b), lr);
          table.set(r, metric("mc_rue", s, b), mr);
          table.set(r, metric("lb_bue", s, b), lbb);
          table.set(r, metric("mc_bue", s, b), mb);
          if (mr > 0.0) table.set(r, metric("gap_rue", s, b), (mr - lr) / mr);
          if (mb > 0.0) table.set(r, metric("gap_bue", s, b), (mb - lbb) / mb);
          table.set(r, metric("jensen_violations", s, b), violations);
        }
      }
    });
    table.reduce(value, result.rows);
    const int missing = static_cast<int>(std::count(incomplete.begin(), incomplete.end(), 1));
    if (missing > 0) {
      result.warnings.push_back(std::to_string(missing) + " realizations incomplete at " + cfg.sweep.parameter + "=" +
                                std::to_string(value));
    }
  }
  return result;
}

}  // namespace hcran

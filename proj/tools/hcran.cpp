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

// Command-line front end: experiment sweeps and single-instance tools.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "hcran/error.hpp"
#include "hcran/experiments.hpp"
#include "hcran/pilot_scheduler.hpp"
#include "hcran/rate_bounds.hpp"
#include "hcran/rtd.hpp"
#include "hcran/simd/kernels.hpp"

namespace {

using namespace hcran;

struct CommonFlags {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::optional<int> realizations;
  std::optional<int> jobs;
};

void add_common(CLI::App* sub, CommonFlags& f, bool config_required) {
  auto* opt = sub->add_option("--config", f.config_path, "JSON experiment config");
  if (config_required) opt->required();
  sub->add_option("--seed", f.seed, "Master seed (overrides the config)");
  sub->add_option("--out", f.out, "Output CSV path (default: config output_path, else stdout)");
  sub->add_option("--realizations", f.realizations, "Number of realizations (overrides the config)");
  sub->add_option("--jobs", f.jobs, "Worker threads");
}

ExperimentConfig resolve(const CommonFlags& f) {
  ExperimentConfig cfg;
  if (!f.config_path.empty()) {
    cfg = load_config(f.config_path);
  } else {
    cfg.sweep.values = {static_cast<double>(cfg.training.tau)};
  }
  if (f.seed) {
    cfg.master_seed = *f.seed;
    cfg.scenario.rng_seed = *f.seed;
  }
  if (f.realizations) cfg.num_realizations = *f.realizations;
  if (f.jobs) cfg.jobs = *f.jobs;
  if (!f.out.empty()) cfg.output_path = f.out;
  cfg.validate();
  return cfg;
}

template <typename Writer>
void emit(const std::string& path, Writer&& write) {
  if (path.empty() || path == "-") {
    write(std::cout);
    return;
  }
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error("cannot open output file " + path);
  write(os);
  if (!os) throw Error("failed writing " + path);
}

void report(const ExperimentResult& r, const std::string& path) {
  for (const auto& w : r.warnings) std::cerr << "warning: " << w << '\n';
  emit(path, [&](std::ostream& os) { write_results_csv(os, r); });
}

Topology topology_for(const ExperimentConfig& cfg, const std::string& topology_path) {
  return topology_path.empty() ? generate_topology(cfg.scenario) : load_topology(topology_path);
}

PilotAssignment run_scheduler(const Topology& topo, const TrainingConfig& tr, Scheduler s, std::uint64_t seed,
                              double es_limit) {
  const ConflictGraph graph = build_conflict_graph(topo);
  switch (s) {
    case Scheduler::psa:
      return psa_schedule(topo, compute_beta(topo, graph), graph, tr.tau);
    case Scheduler::dsatur_random: {
      Rng rng(seed);
      return dsatur_random_schedule(topo, graph, dsatur_color(graph), tr.tau, rng);
    }
    case Scheduler::es:
      return es_schedule(topo, tr.tau, tr, SearchLimits{es_limit});
  }
  throw ContractViolation("unknown scheduler");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"H-CRAN pilot scheduling and robust beamforming simulator"};
  app.require_subcommand(1);

  CommonFlags mse_f, se_f, tight_f, sched_f, solve_f, topo_f;
  auto* mse = app.add_subcommand("mse-sweep", "Sum channel-estimation MSE per scheduler over a sweep");
  add_common(mse, mse_f, true);
  auto* se = app.add_subcommand("se-sweep", "Sum spectral efficiency after beamforming over a sweep");
  add_common(se, se_f, true);
  auto* tight = app.add_subcommand("tightness", "Lower bound vs. Monte-Carlo rates over a sweep");
  add_common(tight, tight_f, true);

  auto* sched = app.add_subcommand("schedule", "Pilot assignment for one topology");
  add_common(sched, sched_f, false);
  std::string sched_topology, sched_name = "psa";
  std::optional<int> sched_tau;
  sched->add_option("--topology", sched_topology, "Saved topology file (default: generate from config)");
  sched->add_option("--scheduler", sched_name, "psa | dsatur_random | es");
  sched->add_option("--tau", sched_tau, "Requested pilot length");

  auto* solve = app.add_subcommand("solve-one", "Schedule, estimate and run RTD on one instance");
  add_common(solve, solve_f, false);
  std::string solve_topology, solve_trace, solve_mode = "centralized";
  int solve_trials = 2000;
  bool verbose = false;
  solve->add_option("--topology", solve_topology, "Saved topology file (default: generate from config)");
  solve->add_option("--trace", solve_trace, "Write the RTD objective trace CSV here");
  solve->add_option("--mode", solve_mode, "centralized | distributed");
  solve->add_option("--trials", solve_trials, "Monte-Carlo trials per UE (0 skips)");
  solve->add_flag("-v,--verbose", verbose, "Solver diagnostics on stderr");

  auto* gen = app.add_subcommand("gen-topology", "Generate and save a topology");
  add_common(gen, topo_f, false);

  CLI11_PARSE(app, argc, argv);

  try {
    if (mse->parsed()) {
      const ExperimentConfig cfg = resolve(mse_f);
      report(run_mse_sweep(cfg), cfg.output_path);
    } else if (se->parsed()) {
      const ExperimentConfig cfg = resolve(se_f);
      const ExperimentResult r = run_se_sweep(cfg);
      report(r, cfg.output_path);
      for (const auto& row : r.rows) {
        if (row.metric.starts_with("rtd_failures") && row.mean > 0) {
          std::cerr << "error: " << row.metric << " = " << row.mean << " at sweep value " << row.sweep_value << '\n';
          return 3;
        }
      }
    } else if (tight->parsed()) {
      const ExperimentConfig cfg = resolve(tight_f);
      report(run_tightness(cfg), cfg.output_path);
    } else if (sched->parsed()) {
      ExperimentConfig cfg = resolve(sched_f);
      if (sched_tau) cfg.training.tau = *sched_tau;
      const Topology topo = topology_for(cfg, sched_topology);
      const PilotAssignment a =
          run_scheduler(topo, cfg.training, parse_scheduler(sched_name), cfg.master_seed, cfg.es_limit);
      std::cerr << "tau=" << a.tau << " sum_mse=" << sum_mse(topo, a, cfg.training) << '\n';
      emit(cfg.output_path, [&](std::ostream& os) { write_assignment_csv(os, a); });
    } else if (solve->parsed()) {
      ExperimentConfig cfg = resolve(solve_f);
      if (solve_mode == "distributed") cfg.rtd.mode = RtdMode::distributed;
      else if (solve_mode != "centralized") throw DomainError("--mode must be centralized or distributed");
      cfg.rtd.solver.verbosity = verbose ? 1 : 0;
      const Topology topo = topology_for(cfg, solve_topology);
      const PilotAssignment a = run_scheduler(topo, cfg.training, cfg.schedulers.front(), cfg.master_seed,
                                              cfg.es_limit);
      TrainingConfig tr = cfg.training;
      tr.tau = a.tau;
      tr.validate();
      const TrueChannels truth = draw_small_scale(topo, split_seed(cfg.master_seed, 1));
      const ChannelState cs = estimate_channels(topo, a, tr, truth, split_seed(cfg.master_seed, 2));
      const AggregatedLinks links = build_covariances(topo, cs);
      const RtdState st =
          rtd_solve(topo, links, tr, PowerBudgets::uniform(topo.num_rrh, cfg.rrh_power, cfg.mbs_power), cfg.rtd);
      if (verbose) {
        std::cerr << "kernels=" << simd::isa_name(simd::active_kernels().isa) << " iterations=" << st.iterations
                  << " converged=" << st.converged << '\n';
      }
      RateReport rep;
      rep.prelog = tr.prelog();
      rep.lb = lower_bound_rates(links, st.w, tr.noise_power, rep.prelog);
      if (solve_trials > 0) {
        rep.mc = monte_carlo_rates(topo, cs, st.w, tr.noise_power, rep.prelog, solve_trials,
                                   split_seed(cfg.master_seed, 3), cfg.jobs);
      } else {
        rep.mc.rue_mean = rep.mc.rue_stderr = RVec::Constant(rep.lb.rue_rate.size(), std::nan(""));
        rep.mc.bue_mean = rep.mc.bue_stderr = RVec::Constant(rep.lb.bue_rate.size(), std::nan(""));
      }
      emit(cfg.output_path, [&](std::ostream& os) { write_rate_report_csv(os, topo, rep); });
      if (!solve_trace.empty()) emit(solve_trace, [&](std::ostream& os) { write_rtd_trace_csv(os, st); });
      if (!st.converged) {
        std::cerr << "error: RTD did not reach rho within " << st.iterations << " iterations\n";
        return 3;
      }
    } else if (gen->parsed()) {
      const ExperimentConfig cfg = resolve(topo_f);
      const Topology topo = generate_topology(cfg.scenario);
      emit(cfg.output_path, [&](std::ostream& os) { write_topology(os, topo); });
    }
  } catch (const hcran::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}

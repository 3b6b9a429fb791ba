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

#include "hcran/rtd.hpp"

#include <cmath>
#include <ostream>
#include <string>

#include "hcran/error.hpp"

namespace hcran {

void update_rue_weights(const AggregatedLinks& links, const BeamformerSet& w, double noise_power, UeWeights& wt,
                        RVec& mse) {
  const LowerBounds lb = lower_bound_rates(links, w, noise_power, 1.0);
  mse.resize(links.num_rue);
  for (int a = 0; a < links.num_rue; ++a) {
    const MseEqualizer e = mse_and_equalizer(links.g_hat[a], w.rue[a], lb.rue_J(a));
    wt.f_rue(a) = e.f;
    wt.u_rue(a) = update_u(e.mse);
    mse(a) = e.mse;
  }
}

void update_bue_weights(const AggregatedLinks& links, const BeamformerSet& w, double noise_power, UeWeights& wt,
                        RVec& mse) {
  const LowerBounds lb = lower_bound_rates(links, w, noise_power, 1.0);
  mse.resize(links.num_bue);
  for (int j = 0; j < links.num_bue; ++j) {
    const MseEqualizer e = mse_and_equalizer(links.h_hat_bue[j], w.bue[j], lb.bue_J(j));
    wt.f_bue(j) = e.f;
    wt.u_bue(j) = update_u(e.mse);
    mse(j) = e.mse;
  }
}

namespace {

double objective_from_mse(const UeWeights& wt, const RVec& mse_rue, const RVec& mse_bue) {
  double v = 0.0;
  for (int a = 0; a < mse_rue.size(); ++a) v += auxiliary_s(wt.u_rue(a), mse_rue(a));
  for (int j = 0; j < mse_bue.size(); ++j) v += auxiliary_s(wt.u_bue(j), mse_bue(j));
  return v;
}

double sum_se_from_mse(const RVec& mse_rue, const RVec& mse_bue, double prelog) {
  double v = 0.0;
  for (int a = 0; a < mse_rue.size(); ++a) v -= std::log2(mse_rue(a));
  for (int j = 0; j < mse_bue.size(); ++j) v -= std::log2(mse_bue(j));
  return prelog * v;
}

double squared_change(const std::vector<CVec>& a, const std::vector<CVec>& b) {
  double d = 0.0;
  for (std::size_t m = 0; m < a.size(); ++m) d += (a[m] - b[m]).squaredNorm();
  return d;
}

// Keeps the previous point when the solver's answer is not at least as good on the
// current subproblem; the previous point is always feasible, so this only guards
// against solver round-off.
template <typename Problem>
void accept_if_not_worse(const Problem& p, std::vector<CVec>& current, std::vector<CVec> candidate) {
  if (qcqp_objective(p, candidate) <= qcqp_objective(p, current)) current = std::move(candidate);
}

[[noreturn]] void rethrow_at(int iteration) {
  const std::string where = "rtd iteration " + std::to_string(iteration) + ": ";
  try {
    throw;
  } catch (const ConvergenceError& e) {
    throw ConvergenceError(where + e.what(), e.iterations(), e.residual());
  } catch (const MatrixError& e) {
    throw MatrixError(where + e.what());
  }
}

// Messages carry value copies only.
struct BeamMsg {
  std::vector<CVec> w;
  double change = 0.0;
};

struct WeightsMsg {
  CVec f;
  RVec u;
  RVec mse;
};

// Baseband pool: owns the RUE beamformers and equalizers, solves the RRH subproblem.
class BbuActor {
 public:
  BbuActor(const Topology& topo, const AggregatedLinks& links, const RVec& budget, const TrainingConfig& tr,
           const SolverOptions& opt)
      : topo_(topo), links_(links), budget_(budget), noise_(tr.noise_power), opt_(opt) {
    const BeamformerSet z = BeamformerSet::zeros(topo);
    wt_ = UeWeights::initial(links.num_rue, links.num_bue);
    view_.rue = z.rue;
    view_.bue = z.bue;
  }

  BeamMsg solve_beams() {
    const RrhQcqp p = assemble_rrh_qcqp(topo_, links_, wt_, budget_);
    std::vector<CVec> previous = view_.rue;
    accept_if_not_worse(p, view_.rue, solve_rrh_qcqp(p, opt_, nullptr));
    return {view_.rue, squared_change(view_.rue, previous)};
  }

  void receive(const BeamMsg& m) { view_.bue = m.w; }

  WeightsMsg update_weights() {
    update_rue_weights(links_, view_, noise_, wt_, mse_);
    return {wt_.f_rue, wt_.u_rue, mse_};
  }

  void receive(const WeightsMsg& m) {
    wt_.f_bue = m.f;
    wt_.u_bue = m.u;
  }

  const UeWeights& weights() const { return wt_; }
  const BeamformerSet& view() const { return view_; }
  const RVec& mse() const { return mse_; }

 private:
  const Topology& topo_;
  const AggregatedLinks& links_;
  RVec budget_;
  double noise_;
  SolverOptions opt_;
  UeWeights wt_;
  BeamformerSet view_;  // own RUE beams plus the last BUE beams received
  RVec mse_;
};

// Macro base station: owns the BUE beamformers and equalizers.
class MbsActor {
 public:
  MbsActor(const Topology& topo, const AggregatedLinks& links, double budget, const TrainingConfig& tr,
           const SolverOptions& opt)
      : links_(links), budget_(budget), noise_(tr.noise_power), opt_(opt) {
    const BeamformerSet z = BeamformerSet::zeros(topo);
    wt_ = UeWeights::initial(links.num_rue, links.num_bue);
    view_.rue = z.rue;
    view_.bue = z.bue;
  }

  BeamMsg solve_beams() {
    const MbsQcqp p = assemble_mbs_qcqp(links_, wt_, budget_);
    std::vector<CVec> previous = view_.bue;
    accept_if_not_worse(p, view_.bue, solve_mbs_qcqp(p, opt_, nullptr));
    return {view_.bue, squared_change(view_.bue, previous)};
  }

  void receive(const BeamMsg& m) { view_.rue = m.w; }

  WeightsMsg update_weights() {
    update_bue_weights(links_, view_, noise_, wt_, mse_);
    return {wt_.f_bue, wt_.u_bue, mse_};
  }

  void receive(const WeightsMsg& m) {
    wt_.f_rue = m.f;
    wt_.u_rue = m.u;
  }

 private:
  const AggregatedLinks& links_;
  double budget_;
  double noise_;
  SolverOptions opt_;
  UeWeights wt_;
  BeamformerSet view_;
  RVec mse_;
};

RtdState start_state(const AggregatedLinks& links, const Topology& topo, double noise_power) {
  RtdState st;
  st.weights = UeWeights::initial(links.num_rue, links.num_bue);
  st.w = BeamformerSet::zeros(topo);
  st.objective_trace.push_back(auxiliary_objective(links, st.weights, st.w, noise_power));
  st.sum_se_trace.push_back(0.0);
  return st;
}

RtdState run_centralized(const Topology& topo, const AggregatedLinks& links, const TrainingConfig& tr,
                         const PowerBudgets& budgets, const RtdOptions& opt) {
  RtdState st = start_state(links, topo, tr.noise_power);
  const double prelog = tr.prelog();
  for (int d = 1; d <= opt.max_iters; ++d) {
    double change = 0.0;
    try {
      const QcqpProblem p = assemble_qcqp(topo, links, st.weights, budgets);
      const BeamformerSet previous = st.w;
      accept_if_not_worse(p.rrh, st.w.rue, solve_rrh_qcqp(p.rrh, opt.solver, nullptr));
      accept_if_not_worse(p.mbs, st.w.bue, solve_mbs_qcqp(p.mbs, opt.solver, nullptr));
      change = squared_change(st.w.rue, previous.rue) + squared_change(st.w.bue, previous.bue);
    } catch (const Error&) {
      rethrow_at(d);
    }
    update_rue_weights(links, st.w, tr.noise_power, st.weights, st.mse_rue);
    update_bue_weights(links, st.w, tr.noise_power, st.weights, st.mse_bue);
    st.objective_trace.push_back(objective_from_mse(st.weights, st.mse_rue, st.mse_bue));
    st.sum_se_trace.push_back(sum_se_from_mse(st.mse_rue, st.mse_bue, prelog));
    if (opt.keep_history) st.history.push_back(st.w);
    st.iterations = d;
    if (change <= opt.rho) {
      st.converged = true;
      break;
    }
  }
  return st;
}

RtdState run_distributed(const Topology& topo, const AggregatedLinks& links, const TrainingConfig& tr,
                         const PowerBudgets& budgets, const RtdOptions& opt) {
  RtdState st = start_state(links, topo, tr.noise_power);
  const double prelog = tr.prelog();
  BbuActor bbu(topo, links, budgets.rrh, tr, opt.solver);
  MbsActor mbs(topo, links, budgets.mbs, tr, opt.solver);
  for (int d = 1; d <= opt.max_iters; ++d) {
    BeamMsg from_bbu, from_mbs;
    try {
      from_bbu = bbu.solve_beams();
      from_mbs = mbs.solve_beams();
    } catch (const Error&) {
      rethrow_at(d);
    }
    bbu.receive(from_mbs);
    mbs.receive(from_bbu);
    const WeightsMsg wb = bbu.update_weights();
    const WeightsMsg wm = mbs.update_weights();
    bbu.receive(wm);
    mbs.receive(wb);

    st.w = bbu.view();
    st.weights = bbu.weights();
    st.mse_rue = wb.mse;
    st.mse_bue = wm.mse;
    st.objective_trace.push_back(objective_from_mse(st.weights, st.mse_rue, st.mse_bue));
    st.sum_se_trace.push_back(sum_se_from_mse(st.mse_rue, st.mse_bue, prelog));
    if (opt.keep_history) st.history.push_back(st.w);
    st.iterations = d;
    if (from_bbu.change + from_mbs.change <= opt.rho) {
      st.converged = true;
      break;
    }
  }
  return st;
}

}  // namespace

RtdState rtd_solve(const Topology& topo, const AggregatedLinks& links, const TrainingConfig& training,
                   const PowerBudgets& budgets, const RtdOptions& options) {
  if (options.max_iters < 1) throw DomainError("rtd_solve: max_iters must be >= 1");
  if (!(options.rho >= 0.0)) throw DomainError("rtd_solve: rho must be non-negative");
  return options.mode == RtdMode::centralized ? run_centralized(topo, links, training, budgets, options)
                                              : run_distributed(topo, links, training, budgets, options);
}

void write_rtd_trace_csv(std::ostream& os, const RtdState& state) {
  const auto old_precision = os.precision(17);
  os << "iteration,objective,sum_se_lb\n";
  for (std::size_t d = 0; d < state.objective_trace.size(); ++d) {
    os << d << ',' << state.objective_trace[d] << ',' << state.sum_se_trace[d] << '\n';
  }
  os.precision(old_precision);
}

}  // namespace hcran

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

#include "hcran/beamforming.hpp"

#include <cmath>

#include "hcran/error.hpp"
#include "hcran/simd/kernels.hpp"

namespace hcran {

namespace {

double quad(const CMat& a, const CVec& x) {
  return simd::active_kernels().quad_form(a.data(), static_cast<std::size_t>(a.rows()), x.data(),
                                           static_cast<std::size_t>(x.size()));
}

cplx inner(const CVec& a, const CVec& b) {
  return simd::dot({a.data(), static_cast<std::size_t>(a.size())}, {b.data(), static_cast<std::size_t>(b.size())});
}

// m += s * a, using the vectorized axpy over the column-major storage.
void add_scaled(CMat& m, double s, const CMat& a) {
  simd::axpy(s, {a.data(), static_cast<std::size_t>(a.size())}, {m.data(), static_cast<std::size_t>(m.size())});
}

}  // namespace

MseEqualizer mse_and_equalizer(cplx s, double J) {
  if (!(J > 0.0)) throw DomainError("mse_and_equalizer: J must be positive");
  const double p = std::norm(s) + J;
  MseEqualizer out;
  out.f = s / p;
  out.mse = J / p;
  return out;
}

MseEqualizer mse_and_equalizer(const CVec& g_hat, const CVec& w, double J) {
  return mse_and_equalizer(inner(g_hat, w), J);
}

double mse_with_equalizer(cplx s, double J, cplx f) {
  return std::norm(std::conj(f) * s - 1.0) + std::norm(f) * J;
}

double update_u(double mse) {
  if (!(mse > 0.0) || mse > 1.0 + 1e-12) throw DomainError("update_u: MSE must lie in (0, 1]");
  return 1.0 - std::log(mse);
}

double auxiliary_s(double u, double mse) { return std::exp(u - 1.0) * mse - u; }

UeWeights UeWeights::initial(int num_rue, int num_bue) {
  UeWeights w;
  w.f_rue = CVec::Ones(num_rue);
  w.u_rue = RVec::Ones(num_rue);
  w.f_bue = CVec::Ones(num_bue);
  w.u_bue = RVec::Ones(num_bue);
  return w;
}

double UeWeights::beta_rue(int a) const { return std::exp(u_rue(a) - 1.0); }
double UeWeights::beta_bue(int j) const { return std::exp(u_bue(j) - 1.0); }

PowerBudgets PowerBudgets::uniform(int num_rrh, double rrh_watt, double mbs_watt) {
  PowerBudgets p;
  p.rrh = RVec::Constant(num_rrh, rrh_watt);
  p.mbs = mbs_watt;
  return p;
}

RrhQcqp assemble_rrh_qcqp(const Topology& topo, const AggregatedLinks& links, const UeWeights& wt,
                          const RVec& rrh_budget) {
  const int nR = links.num_rue;
  const int nB = links.num_bue;
  if (rrh_budget.size() != topo.num_rrh) throw SizeError("assemble_rrh_qcqp: budget per RRH expected");
  RrhQcqp p;
  p.block_size = topo.rrh_antennas;
  p.budget = rrh_budget;
  p.F.reserve(nR);
  p.b.reserve(nR);
  for (int a = 0; a < nR; ++a) {
    const double wa = wt.beta_rue(a) * std::norm(wt.f_rue(a));
    const CVec& g = links.g_hat[a];
    CMat F = links.E_R[a];
    F *= wa;
    simd::active_kernels().her_rank1(wa, g.data(), F.data(), static_cast<std::size_t>(F.rows()),
                                     static_cast<std::size_t>(g.size()));
    for (int o = 0; o < nR; ++o) {
      if (o != a) add_scaled(F, wt.beta_rue(o) * std::norm(wt.f_rue(o)), links.g_r(a, o));
    }
    for (int j = 0; j < nB; ++j) add_scaled(F, wt.beta_bue(j) * std::norm(wt.f_bue(j)), links.g_b(a, j));
    p.F.push_back(std::move(F));
    p.b.push_back(wt.beta_rue(a) * wt.f_rue(a) * g);
    p.rrhs.push_back(topo.serving_rrhs[topo.rue_set[a]]);
  }
  return p;
}

MbsQcqp assemble_mbs_qcqp(const AggregatedLinks& links, const UeWeights& wt, double mbs_budget) {
  const int nR = links.num_rue;
  const int nB = links.num_bue;
  MbsQcqp p;
  p.budget = mbs_budget;
  if (nB == 0) return p;
  const int B = static_cast<int>(links.h_hat_bue[0].size());
  // RUE terms are scaled identities, identical for every j.
  double rue_part = 0.0;
  for (int a = 0; a < nR; ++a) rue_part += wt.beta_rue(a) * std::norm(wt.f_rue(a)) * links.H_R[a](0, 0).real();
  for (int j = 0; j < nB; ++j) {
    const double wj = wt.beta_bue(j) * std::norm(wt.f_bue(j));
    const CVec& h = links.h_hat_bue[j];
    CMat F = links.E_B[j];
    F *= wj;
    simd::active_kernels().her_rank1(wj, h.data(), F.data(), static_cast<std::size_t>(B),
                                     static_cast<std::size_t>(B));
    F.diagonal().array() += rue_part;
    for (int o = 0; o < nB; ++o) {
      if (o != j) add_scaled(F, wt.beta_bue(o) * std::norm(wt.f_bue(o)), links.H_B[o]);
    }
    p.F.push_back(std::move(F));
    p.b.push_back(wt.beta_bue(j) * wt.f_bue(j) * h);
  }
  return p;
}

QcqpProblem assemble_qcqp(const Topology& topo, const AggregatedLinks& links, const UeWeights& wt,
                          const PowerBudgets& budgets) {
  return {assemble_rrh_qcqp(topo, links, wt, budgets.rrh), assemble_mbs_qcqp(links, wt, budgets.mbs)};
}

namespace {

double objective_terms(const std::vector<CMat>& F, const std::vector<CVec>& b, const std::vector<CVec>& w) {
  if (w.size() != F.size()) throw SizeError("qcqp_objective: beamformer count mismatch");
  double v = 0.0;
  for (std::size_t m = 0; m < F.size(); ++m) {
    if (w[m].size() != F[m].rows()) throw SizeError("qcqp_objective: beamformer dimension mismatch");
    v += quad(F[m], w[m]) - 2.0 * inner(b[m], w[m]).real();
  }
  return v;
}

}  // namespace

double qcqp_objective(const RrhQcqp& p, const std::vector<CVec>& w_rue) { return objective_terms(p.F, p.b, w_rue); }
double qcqp_objective(const MbsQcqp& p, const std::vector<CVec>& w_bue) { return objective_terms(p.F, p.b, w_bue); }
double qcqp_objective(const QcqpProblem& p, const BeamformerSet& w) {
  return qcqp_objective(p.rrh, w.rue) + qcqp_objective(p.mbs, w.bue);
}

double qcqp_constant(const UeWeights& wt, double noise_power) {
  double c = 0.0;
  for (int a = 0; a < wt.f_rue.size(); ++a) c += wt.beta_rue(a) * (1.0 + std::norm(wt.f_rue(a)) * noise_power);
  for (int j = 0; j < wt.f_bue.size(); ++j) c += wt.beta_bue(j) * (1.0 + std::norm(wt.f_bue(j)) * noise_power);
  return c;
}

void effective_gains(const AggregatedLinks& links, const BeamformerSet& w, CVec& s_rue, CVec& s_bue) {
  s_rue.resize(links.num_rue);
  s_bue.resize(links.num_bue);
  for (int a = 0; a < links.num_rue; ++a) s_rue(a) = inner(links.g_hat[a], w.rue[a]);
  for (int j = 0; j < links.num_bue; ++j) s_bue(j) = inner(links.h_hat_bue[j], w.bue[j]);
}

double weighted_mse_sum(const AggregatedLinks& links, const UeWeights& wt, const BeamformerSet& w,
                        double noise_power) {
  const LowerBounds lb = lower_bound_rates(links, w, noise_power, 1.0);
  CVec s_rue, s_bue;
  effective_gains(links, w, s_rue, s_bue);
  double v = 0.0;
  for (int a = 0; a < links.num_rue; ++a) v += wt.beta_rue(a) * mse_with_equalizer(s_rue(a), lb.rue_J(a), wt.f_rue(a));
  for (int j = 0; j < links.num_bue; ++j) v += wt.beta_bue(j) * mse_with_equalizer(s_bue(j), lb.bue_J(j), wt.f_bue(j));
  return v;
}

double auxiliary_objective(const AggregatedLinks& links, const UeWeights& wt, const BeamformerSet& w,
                           double noise_power) {
  return weighted_mse_sum(links, wt, w, noise_power) - wt.u_rue.sum() - wt.u_bue.sum();
}

}  // namespace hcran

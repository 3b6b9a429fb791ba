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

#include "hcran/rate_bounds.hpp"

#include <cmath>
#include <numbers>
#include <ostream>

#include "hcran/error.hpp"
#include "hcran/parallel.hpp"
#include "hcran/rng.hpp"
#include "hcran/simd/kernels.hpp"

namespace hcran {

namespace {

double quad(const CMat& a, const CVec& x) {
  return simd::active_kernels().quad_form(a.data(), static_cast<std::size_t>(a.rows()), x.data(),
                                           static_cast<std::size_t>(x.size()));
}

double abs2_dot(const CVec& a, const CVec& b) {
  return std::norm(simd::dot({a.data(), static_cast<std::size_t>(a.size())}, {b.data(), static_cast<std::size_t>(b.size())}));
}

void require_estimates(const Topology& topo, const ChannelState& cs) {
  if (cs.truth.num_ue != topo.num_ue || cs.truth.num_rrh != topo.num_rrh) {
    throw ContractViolation("channel state does not match topology dimensions");
  }
  for (int i : topo.rue_set) {
    for (int k : topo.serving_rrhs[i]) {
      if (!cs.has_rrh_estimate(k, i)) throw ContractViolation("missing estimate for a serving link");
    }
  }
  for (int j : topo.bue_set) {
    if (cs.est_mbs[j].size() != topo.mbs_antennas) throw ContractViolation("missing MBS estimate for a BUE");
  }
}

// E{g_{from,to} g_{from,to}^H}: blocks over K_from.
CMat cross_covariance(const Topology& topo, const ChannelState& cs, int from, int to, CrossCovariance model) {
  const int n = topo.rrh_antennas;
  const auto& ks = topo.serving_rrhs[from];
  const int dim = n * static_cast<int>(ks.size());
  CMat g = CMat::Zero(dim, dim);
  CVec mean = CVec::Zero(dim);
  for (std::size_t o = 0; o < ks.size(); ++o) {
    const int k = ks[o];
    const int off = static_cast<int>(o) * n;
    if (topo.serves(k, to)) {
      const CVec& h = cs.rrh_estimate(k, to);
      mean.segment(off, n) = h;
      g.diagonal().segment(off, n).setConstant(cs.errvar_rrh(k, to));
      if (model == CrossCovariance::block_diagonal) g.block(off, off, n, n) += h * h.adjoint();
    } else {
      g.diagonal().segment(off, n).setConstant(topo.alpha_rrh(k, to));
    }
  }
  if (model == CrossCovariance::conditional) g += mean * mean.adjoint();
  return g;
}

}  // namespace

AggregatedLinks build_covariances(const Topology& topo, const ChannelState& cs, CrossCovariance model) {
  require_estimates(topo, cs);
  const int n = topo.rrh_antennas;
  const int b = topo.mbs_antennas;
  AggregatedLinks l;
  l.num_rue = static_cast<int>(topo.rue_set.size());
  l.num_bue = static_cast<int>(topo.bue_set.size());

  for (int i : topo.rue_set) {
    const auto& ks = topo.serving_rrhs[i];
    CVec g(n * static_cast<int>(ks.size()));
    std::vector<double> delta;
    for (std::size_t o = 0; o < ks.size(); ++o) {
      g.segment(static_cast<int>(o) * n, n) = cs.rrh_estimate(ks[o], i);
      delta.push_back(cs.errvar_rrh(ks[o], i));
    }
    l.g_hat.push_back(std::move(g));
    l.E_R.push_back(scaled_identity_blocks(delta, n));
    l.H_R.push_back(scaled_identity_blocks({topo.alpha_mbs(i)}, b));
  }
  l.G_R.reserve(static_cast<std::size_t>(l.num_rue) * l.num_rue);
  for (int from : topo.rue_set) {
    for (int to : topo.rue_set) l.G_R.push_back(cross_covariance(topo, cs, from, to, model));
  }

  for (int j : topo.bue_set) {
    const CVec& h = cs.est_mbs[j];
    l.h_hat_bue.push_back(h);
    l.E_B.push_back(scaled_identity_blocks({cs.errvar_mbs(j)}, b));
    CMat hb = h * h.adjoint();
    hb.diagonal().array() += cs.errvar_mbs(j);
    l.H_B.push_back(std::move(hb));
  }
  l.G_B.reserve(static_cast<std::size_t>(l.num_rue) * l.num_bue);
  for (int i : topo.rue_set) {
    for (int j : topo.bue_set) {
      std::vector<double> diag;
      for (int k : topo.serving_rrhs[i]) diag.push_back(topo.alpha_rrh(k, j));
      l.G_B.push_back(scaled_identity_blocks(diag, n));
    }
  }
  return l;
}

LowerBounds lower_bound_rates(const AggregatedLinks& links, const BeamformerSet& w, double noise_power,
                              double prelog) {
  const int nR = links.num_rue;
  const int nB = links.num_bue;
  if (static_cast<int>(w.rue.size()) != nR || static_cast<int>(w.bue.size()) != nB) {
    throw SizeError("lower_bound_rates: beamformer count mismatch");
  }
  LowerBounds lb;
  lb.rue_signal.resize(nR);
  lb.rue_J.resize(nR);
  lb.rue_rate.resize(nR);
  lb.bue_signal.resize(nB);
  lb.bue_J.resize(nB);
  lb.bue_rate.resize(nB);

  for (int a = 0; a < nR; ++a) {
    if (w.rue[a].size() != links.g_hat[a].size()) throw SizeError("lower_bound_rates: RUE beam dimension");
    double j_term = quad(links.E_R[a], w.rue[a]) + noise_power;
    for (int o = 0; o < nR; ++o) {
      if (o != a) j_term += quad(links.g_r(o, a), w.rue[o]);
    }
    const double hr = links.H_R[a](0, 0).real();
    for (int j = 0; j < nB; ++j) j_term += hr * w.bue[j].squaredNorm();
    const double s = abs2_dot(links.g_hat[a], w.rue[a]);
    lb.rue_signal(a) = s;
    lb.rue_J(a) = j_term;
    lb.rue_rate(a) = prelog * std::log1p(s / j_term) / std::numbers::ln2;
  }
  for (int j = 0; j < nB; ++j) {
    if (w.bue[j].size() != links.h_hat_bue[j].size()) throw SizeError("lower_bound_rates: BUE beam dimension");
    double j_term = quad(links.E_B[j], w.bue[j]) + noise_power;
    for (int a = 0; a < nR; ++a) j_term += quad(links.g_b(a, j), w.rue[a]);
    for (int o = 0; o < nB; ++o) {
      if (o != j) j_term += quad(links.H_B[j], w.bue[o]);
    }
    const double s = abs2_dot(links.h_hat_bue[j], w.bue[j]);
    lb.bue_signal(j) = s;
    lb.bue_J(j) = j_term;
    lb.bue_rate(j) = prelog * std::log1p(s / j_term) / std::numbers::ln2;
  }
  return lb;
}

namespace {

struct Moments {
  double mean = 0.0;
  double stderr_ = 0.0;
};

Moments summarize(const std::vector<double>& xs) {
  const double n = static_cast<double>(xs.size());
  double mean = 0.0;
  for (double x : xs) mean += x;
  mean /= n;
  double var = 0.0;
  for (double x : xs) var += (x - mean) * (x - mean);
  var = xs.size() > 1 ? var / (n - 1.0) : 0.0;
  return {mean, std::sqrt(var / n)};
}

// g^H w over the cluster of RUE `from`, where links[k] is the channel from RRH k to
// the receiver being evaluated.
cplx stacked_response(const Topology& topo, const std::vector<CVec>& links, int from, const CVec& w) {
  const int n = topo.rrh_antennas;
  cplx s{0.0, 0.0};
  const auto& ks = topo.serving_rrhs[from];
  for (std::size_t o = 0; o < ks.size(); ++o) {
    s += simd::dot({links[ks[o]].data(), static_cast<std::size_t>(n)},
                   {w.data() + o * n, static_cast<std::size_t>(n)});
  }
  return s;
}

std::vector<double> rue_trials(const Topology& topo, const ChannelState& cs, const BeamformerSet& w,
                               double noise_power, int ue, int trials, Rng& rng) {
  const int n = topo.rrh_antennas;
  const int b = topo.mbs_antennas;
  const int a = topo.rue_index(ue);
  const CVec& wi = w.rue[a];
  std::vector<CVec> est(topo.num_rrh);
  for (int k : topo.serving_rrhs[ue]) est[k] = cs.rrh_estimate(k, ue);
  const double signal = std::norm(stacked_response(topo, est, ue, wi));

  std::vector<CVec> h(topo.num_rrh, CVec(n));
  std::vector<CVec> err(topo.num_rrh, CVec::Zero(n));
  std::vector<double> out(trials);
  for (int t = 0; t < trials; ++t) {
    for (int k = 0; k < topo.num_rrh; ++k) {
      if (topo.serves(k, ue)) {
        err[k] = draw_cn_vector(rng, n, cs.errvar_rrh(k, ue));
        h[k] = est[k] + err[k];
      } else {
        h[k] = draw_cn_vector(rng, n, topo.alpha_rrh(k, ue));
      }
    }
    const CVec hb = draw_cn_vector(rng, b, topo.alpha_mbs(ue));
    double denom = std::norm(stacked_response(topo, err, ue, wi)) + noise_power;
    for (std::size_t o = 0; o < topo.rue_set.size(); ++o) {
      const int other = topo.rue_set[o];
      if (other != ue) denom += std::norm(stacked_response(topo, h, other, w.rue[o]));
    }
    for (const CVec& wj : w.bue) denom += abs2_dot(hb, wj);
    out[t] = std::log1p(signal / denom) / std::numbers::ln2;
  }
  return out;
}

std::vector<double> bue_trials(const Topology& topo, const ChannelState& cs, const BeamformerSet& w,
                               double noise_power, int ue, int trials, Rng& rng) {
  const int n = topo.rrh_antennas;
  const int b = topo.mbs_antennas;
  const int j = topo.bue_index(ue);
  const CVec& est = cs.est_mbs[ue];
  const double signal = abs2_dot(est, w.bue[j]);
  std::vector<CVec> h(topo.num_rrh, CVec(n));
  std::vector<double> out(trials);
  for (int t = 0; t < trials; ++t) {
    for (int k = 0; k < topo.num_rrh; ++k) h[k] = draw_cn_vector(rng, n, topo.alpha_rrh(k, ue));
    const CVec err = draw_cn_vector(rng, b, cs.errvar_mbs(ue));
    const CVec hb = est + err;
    double denom = abs2_dot(err, w.bue[j]) + noise_power;
    for (std::size_t o = 0; o < topo.rue_set.size(); ++o) {
      denom += std::norm(stacked_response(topo, h, topo.rue_set[o], w.rue[o]));
    }
    for (std::size_t o = 0; o < w.bue.size(); ++o) {
      if (static_cast<int>(o) != j) denom += abs2_dot(hb, w.bue[o]);
    }
    out[t] = std::log1p(signal / denom) / std::numbers::ln2;
  }
  return out;
}

}  // namespace

MonteCarloRates monte_carlo_rates(const Topology& topo, const ChannelState& cs, const BeamformerSet& w,
                                  double noise_power, double prelog, int trials, std::uint64_t seed, int jobs) {
  if (trials < 1) throw DomainError("monte_carlo_rates: trials must be >= 1");
  require_estimates(topo, cs);
  const int nR = static_cast<int>(topo.rue_set.size());
  const int nB = static_cast<int>(topo.bue_set.size());
  MonteCarloRates mc;
  mc.trials = trials;
  mc.rue_mean.resize(nR);
  mc.rue_stderr.resize(nR);
  mc.bue_mean.resize(nB);
  mc.bue_stderr.resize(nB);

  parallel_for(topo.num_ue, jobs, [&](int ue) {
    Rng rng(split_seed(seed, static_cast<std::uint64_t>(ue)));
    if (topo.is_rue(ue)) {
      const Moments m = summarize(rue_trials(topo, cs, w, noise_power, ue, trials, rng));
      const int a = topo.rue_index(ue);
      mc.rue_mean(a) = prelog * m.mean;
      mc.rue_stderr(a) = prelog * m.stderr_;
    } else {
      const Moments m = summarize(bue_trials(topo, cs, w, noise_power, ue, trials, rng));
      const int j = topo.bue_index(ue);
      mc.bue_mean(j) = prelog * m.mean;
      mc.bue_stderr(j) = prelog * m.stderr_;
    }
  });
  return mc;
}

void write_rate_report_csv(std::ostream& os, const Topology& topo, const RateReport& report) {
  const auto old_precision = os.precision(17);
  os << "ue_id,type,lower_bound,mc_rate,mc_stderr\n";
  for (std::size_t a = 0; a < topo.rue_set.size(); ++a) {
    os << topo.rue_set[a] << ",rue," << report.lb.rue_rate(a) << ',' << report.mc.rue_mean(a) << ','
       << report.mc.rue_stderr(a) << '\n';
  }
  for (std::size_t j = 0; j < topo.bue_set.size(); ++j) {
    os << topo.bue_set[j] << ",bue," << report.lb.bue_rate(j) << ',' << report.mc.bue_mean(j) << ','
       << report.mc.bue_stderr(j) << '\n';
  }
  os.precision(old_precision);
}

}  // namespace hcran

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

#include "hcran/beamforming.hpp"
#include "hcran/error.hpp"
#include "hcran/rate_bounds.hpp"
#include "oracles/fixtures.hpp"

using namespace hcran;

namespace {

UeWeights random_weights(Rng& rng, int nr, int nb) {
  UeWeights wt = UeWeights::initial(nr, nb);
  ComplexGaussian cn(1.0);
  std::uniform_real_distribution<double> u(1.0, 4.0);
  for (int a = 0; a < nr; ++a) {
    wt.f_rue(a) = cn(rng);
    wt.u_rue(a) = u(rng);
  }
  for (int j = 0; j < nb; ++j) {
    wt.f_bue(j) = cn(rng);
    wt.u_bue(j) = u(rng);
  }
  return wt;
}

// sum beta MSE from the term-by-term J and the closed-form MSE of a given equalizer.
double reference_weighted_mse(const fixture::Instance& in, const AggregatedLinks& L, const UeWeights& wt,
                              const BeamformerSet& w, double* aux = nullptr) {
  std::vector<double> jr, jb;
  oracle::interference_terms(in.topo, in.cs, w, in.tr.noise_power, jr, jb);
  double total = 0.0, s_aux = 0.0;
  auto term = [&](cplx s, double J, cplx f, double u) {
    const double mse = std::norm(std::conj(f) * s - 1.0) + std::norm(f) * J;
    total += std::exp(u - 1.0) * mse;
    s_aux += std::exp(u - 1.0) * mse - u;
  };
  for (int a = 0; a < L.num_rue; ++a) term(L.g_hat[a].dot(w.rue[a]), jr[a], wt.f_rue(a), wt.u_rue(a));
  for (int j = 0; j < L.num_bue; ++j) term(L.h_hat_bue[j].dot(w.bue[j]), jb[j], wt.f_bue(j), wt.u_bue(j));
  if (aux) *aux = s_aux;
  return total;
}

}  // namespace

TEST_CASE("MMSE equalizer on hand values") {
  const MseEqualizer e = mse_and_equalizer(cplx(3.0, 4.0), 25.0);
  CHECK(e.mse == doctest::Approx(0.5));
  CHECK(e.f.real() == doctest::Approx(0.06));
  CHECK(e.f.imag() == doctest::Approx(0.08));
  CHECK(mse_with_equalizer(cplx(3.0, 4.0), 25.0, e.f) == doctest::Approx(0.5));
  CHECK(mse_and_equalizer(cplx(0.0, 0.0), 1.0).mse == 1.0);
  CHECK(mse_with_equalizer(cplx(2.0, 0.0), 1.0, cplx(0.0, 0.0)) == 1.0);
  CHECK_THROWS_AS(mse_and_equalizer(cplx(1.0, 0.0), 0.0), DomainError);

  CVec g(2), w(2);
  g << cplx(1.0, 0.0), cplx(0.0, 1.0);
  w << cplx(0.5, 0.0), cplx(0.0, 0.5);
  // g^H w = 0.5 + 0.5 = 1.
  CHECK(mse_and_equalizer(g, w, 1.0).mse == doctest::Approx(0.5));
}

TEST_CASE("MMSE equalizer minimizes the MSE") {
  Rng rng(5);
  ComplexGaussian cn(1.0);
  std::uniform_real_distribution<double> ju(1e-3, 10.0);
  for (int trial = 0; trial < 500; ++trial) {
    const cplx s = cn(rng);
    const double J = ju(rng);
    const MseEqualizer e = mse_and_equalizer(s, J);
    CHECK(e.mse == doctest::Approx(J / (std::norm(s) + J)).epsilon(1e-12));
    CHECK(e.mse > 0.0);
    CHECK(e.mse <= 1.0);
    const cplx f = e.f + 0.1 * cn(rng);
    CHECK(mse_with_equalizer(s, J, f) >= e.mse - 1e-15);
  }
}

TEST_CASE("auxiliary update is the grid minimizer") {
  for (double mse : {1e-6, 1e-3, 0.05, 0.3, 0.77, 1.0}) {
    double best_u = 0.0, best = INFINITY;
    for (int g = 0; g <= 400000; ++g) {
      const double u = 0.5 + g * 1e-4;
      const double v = std::exp(u - 1.0) * mse - u;
      if (v < best) {
        best = v;
        best_u = u;
      }
    }
    CHECK(update_u(mse) == doctest::Approx(best_u).epsilon(1e-4));
    CHECK(auxiliary_s(update_u(mse), mse) == doctest::Approx(std::log(mse)).epsilon(1e-10));
    CHECK(auxiliary_s(update_u(mse), mse) <= best + 1e-12);
  }
  CHECK_THROWS_AS(update_u(0.0), DomainError);
  CHECK_THROWS_AS(update_u(1.5), DomainError);
  CHECK_THROWS_AS(update_u(std::nan("")), DomainError);
}

TEST_CASE("weights at the algorithm start") {
  const UeWeights wt = UeWeights::initial(3, 2);
  CHECK(wt.f_rue == CVec::Ones(3));
  CHECK(wt.u_bue == RVec::Ones(2));
  CHECK(wt.beta_rue(1) == 1.0);
  const PowerBudgets pb = PowerBudgets::uniform(4, 0.5, 1.0);
  CHECK(pb.rrh == RVec::Constant(4, 0.5));
  CHECK(pb.mbs == 1.0);
}

TEST_CASE("QCQP objective plus its constant is the weighted MSE") {
  Rng rng(17);
  for (int trial = 0; trial < 60; ++trial) {
    const fixture::Instance in = fixture::random_instance(rng);
    const AggregatedLinks L = build_covariances(in.topo, in.cs);
    const UeWeights wt = random_weights(rng, L.num_rue, L.num_bue);
    const BeamformerSet w = fixture::random_beams(in.topo, rng, 0.3);
    const QcqpProblem p = assemble_qcqp(in.topo, L, wt, PowerBudgets::uniform(in.topo.num_rrh, 0.5, 1.0));
    double ref_aux = 0.0;
    const double ref = reference_weighted_mse(in, L, wt, w, &ref_aux);
    const double N0 = in.tr.noise_power;
    CHECK(weighted_mse_sum(L, wt, w, N0) == doctest::Approx(ref).epsilon(1e-10));
    CHECK(qcqp_objective(p, w) + qcqp_constant(wt, N0) == doctest::Approx(ref).epsilon(1e-10));
    CHECK(auxiliary_objective(L, wt, w, N0) == doctest::Approx(ref_aux).epsilon(1e-10));
    CHECK(qcqp_objective(p, w) == doctest::Approx(qcqp_objective(p.rrh, w.rue) + qcqp_objective(p.mbs, w.bue)));

    for (const CMat& F : p.rrh.F) {
      CHECK(F.isApprox(F.adjoint(), 1e-12));
      CHECK(Eigen::SelfAdjointEigenSolver<CMat>(F).eigenvalues().minCoeff() > 0.0);
    }
    for (const CMat& F : p.mbs.F) CHECK(Eigen::SelfAdjointEigenSolver<CMat>(F).eigenvalues().minCoeff() > 0.0);
    CHECK(p.rrh.budget == RVec::Constant(in.topo.num_rrh, 0.5));
    CHECK(p.mbs.budget == 1.0);
  }
}

TEST_CASE("QCQP coefficients for one RUE and one BUE") {
  RMat alpha(1, 2);
  alpha << 1.0, 0.25;
  RVec mbs(2);
  mbs << 0.5, 2.0;
  const Topology t = oracle::hand_topology(1, 1, 2, {{0}, {}}, alpha, mbs);
  TrueChannels h = draw_small_scale(t, 1);
  h.rrh[0] = CVec::Constant(1, cplx(0.6, 0.8));
  const ChannelState cs = perfect_csi_state(t, h, 0.1);
  const AggregatedLinks L = build_covariances(t, cs);
  UeWeights wt = UeWeights::initial(1, 1);
  wt.f_rue(0) = cplx(0.0, 2.0);
  wt.u_rue(0) = 1.0 + std::log(3.0);
  wt.f_bue(0) = cplx(1.0, 0.0);
  wt.u_bue(0) = 1.0;
  const QcqpProblem p = assemble_qcqp(t, L, wt, PowerBudgets::uniform(1, 0.5, 1.0));
  // RUE: beta 3, |f|^2 4: F = 12 (|g|^2 + delta) + beta_B |f_B|^2 alpha_{k,B} = 12 * 1.1 + 0.25.
  CHECK(p.rrh.F[0](0, 0).real() == doctest::Approx(12.0 * 1.1 + 0.25));
  CHECK(std::abs(p.rrh.b[0](0) - 3.0 * cplx(0.0, 2.0) * cplx(0.6, 0.8)) < 1e-12);
  // BUE: F = (h h^H + 0.2 I) + 12 * alpha_{b,RUE} I.
  const CMat expect = h.mbs[1] * h.mbs[1].adjoint() + (0.2 + 12.0 * 0.5) * CMat::Identity(2, 2);
  CHECK((p.mbs.F[0] - expect).norm() <= 1e-12 * expect.norm());
  CHECK(qcqp_constant(wt, 0.5) == doctest::Approx(3.0 * (1.0 + 4.0 * 0.5) + 1.0 * (1.0 + 0.5)));
}

TEST_CASE("effective gains") {
  Rng rng(23);
  const fixture::Instance in = fixture::random_instance(rng);
  const AggregatedLinks L = build_covariances(in.topo, in.cs);
  const BeamformerSet w = fixture::random_beams(in.topo, rng, 1.0);
  CVec sr, sb;
  effective_gains(L, w, sr, sb);
  REQUIRE(sr.size() == L.num_rue);
  for (int a = 0; a < L.num_rue; ++a) CHECK(std::abs(sr(a) - L.g_hat[a].dot(w.rue[a])) <= 1e-12 * std::abs(sr(a)));
  for (int j = 0; j < L.num_bue; ++j) CHECK(std::abs(sb(j) - L.h_hat_bue[j].dot(w.bue[j])) <= 1e-12 * std::abs(sb(j)));
}

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

#include "hcran/error.hpp"
#include "hcran/qcqp_solver.hpp"
#include "oracles/oracles.hpp"

using namespace hcran;

namespace {

double primal_value(const QcqpProblem& p, const BeamformerSet& w) { return qcqp_objective(p, w); }

RrhQcqp single_block(const CVec& b, double budget) {
  RrhQcqp p;
  p.block_size = static_cast<int>(b.size());
  p.F = {CMat::Identity(b.size(), b.size())};
  p.b = {b};
  p.rrhs = {{0}};
  p.budget = RVec::Constant(1, budget);
  return p;
}

}  // namespace

TEST_CASE("identity quadratic: scaled projection of b") {
  CVec b(2);
  b << cplx(3.0, 0.0), cplx(0.0, 4.0);  // ||b||^2 = 25
  SolverDiagnostics d;
  const std::vector<CVec> loose = solve_rrh_qcqp(single_block(b, 30.0), {}, &d);
  CHECK((loose[0] - b).norm() <= 1e-8);
  CHECK(d.mu(0) == doctest::Approx(0.0).epsilon(1e-8));

  const std::vector<CVec> tight = solve_rrh_qcqp(single_block(b, 4.0), {}, &d);
  CHECK((tight[0] - b * (2.0 / 5.0)).norm() <= 1e-8);
  // Stationarity: (1 + mu) w = b with ||w|| = 2 gives mu = 1.5.
  CHECK(d.mu(0) == doctest::Approx(1.5).epsilon(1e-6));
  CHECK(d.gap <= 1e-10 * std::abs(d.primal) + 1e-15);

  MbsQcqp m;
  m.F = {CMat::Identity(2, 2), CMat::Identity(2, 2)};
  CVec b2(2);
  b2 << cplx(0.0, 0.0), cplx(4.0, 3.0);
  m.b = {b, b2};
  m.budget = 12.5;  // total ||b||^2 = 50 -> scale 1/2
  const std::vector<CVec> w = solve_mbs_qcqp(m, {}, &d);
  CHECK((w[0] - 0.5 * b).norm() <= 1e-8);
  CHECK((w[1] - 0.5 * b2).norm() <= 1e-8);
  CHECK(d.mbs_multiplier == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("solver agrees with accelerated projected gradient") {
  Rng rng(61);
  for (int trial = 0; trial < 60; ++trial) {
    const QcqpProblem p = oracle::random_qcqp(rng, 16);
    SolverDiagnostics d;
    const BeamformerSet w = solve_qcqp(p, {}, &d);
    const BeamformerSet ref = oracle::projected_gradient(p, 40000, 1e-12);
    const double fw = primal_value(p, w), fr = primal_value(p, ref);
    CHECK(fw <= fr + 1e-7 * std::abs(fr));
    CHECK(fw == doctest::Approx(fr).epsilon(1e-6));

    const RVec pw = rrh_block_powers(p.rrh, w.rue);
    for (int k = 0; k < pw.size(); ++k) CHECK(pw(k) <= p.rrh.budget(k) * (1.0 + 1e-9));
    double mbs = 0.0;
    for (const CVec& v : w.bue) mbs += v.squaredNorm();
    CHECK(mbs <= p.mbs.budget * (1.0 + 1e-9));

    // Weak duality and complementary slackness on the RRH side.
    CHECK(d.dual <= d.primal + 1e-12 * std::abs(d.primal));
    CHECK(d.gap <= 1e-8 * std::abs(d.primal));
    for (int k = 0; k < pw.size(); ++k) {
      CHECK(d.mu(k) >= 0.0);
      CHECK(d.mu(k) * (p.rrh.budget(k) - pw(k)) <= 1e-6 * std::max(1.0, std::abs(d.primal)));
    }
  }
}

TEST_CASE("block powers") {
  RrhQcqp p;
  p.block_size = 1;
  p.rrhs = {{0, 2}, {2}};
  p.budget = RVec::Ones(3);
  std::vector<CVec> w(2);
  w[0] = CVec(2);
  w[0] << cplx(1.0, 1.0), cplx(0.0, 2.0);
  w[1] = CVec::Constant(1, cplx(3.0, 0.0));
  const RVec pw = rrh_block_powers(p, w);
  CHECK(pw(0) == doctest::Approx(2.0));
  CHECK(pw(1) == 0.0);
  CHECK(pw(2) == doctest::Approx(13.0));
}

TEST_CASE("zero budgets give zero beams") {
  Rng rng(71);
  QcqpProblem p = oracle::random_qcqp(rng, 12);
  p.rrh.budget.setZero();
  p.mbs.budget = 0.0;
  const BeamformerSet w = solve_qcqp(p);
  for (const CVec& v : w.rue) CHECK(v.norm() == 0.0);
  for (const CVec& v : w.bue) CHECK(v.norm() == 0.0);

  // One silent RRH: its blocks vanish, the rest is still optimized.
  QcqpProblem q = oracle::random_qcqp(rng, 12);
  q.rrh.budget(0) = 0.0;
  const BeamformerSet wq = solve_qcqp(q);
  CHECK(rrh_block_powers(q.rrh, wq.rue)(0) == 0.0);
  const BeamformerSet ref = oracle::projected_gradient(q, 40000, 1e-12);
  CHECK(primal_value(q, wq) == doctest::Approx(primal_value(q, ref)).epsilon(1e-6));
}

TEST_CASE("solver failure modes") {
  CVec b = CVec::Ones(2);
  RrhQcqp p = single_block(b, 1.0);
  p.F[0](1, 1) = -1.0;
  CHECK_THROWS_AS(solve_rrh_qcqp(p, {}), MatrixError);

  MbsQcqp m;
  m.F = {-CMat::Identity(2, 2)};
  m.b = {b};
  m.budget = 1.0;
  CHECK_THROWS_AS(solve_mbs_qcqp(m, {}), MatrixError);

  Rng rng(81);
  int thrown = 0;
  for (int trial = 0; trial < 20; ++trial) {
    QcqpProblem q = oracle::random_qcqp(rng, 16);
    q.rrh.budget *= 1e-3;  // every RRH binding
    SolverOptions opt;
    opt.max_dual_iters = 1;
    opt.gap_tol = 1e-15;
    try {
      solve_rrh_qcqp(q.rrh, opt);
    } catch (const ConvergenceError& e) {
      ++thrown;
      CHECK(e.iterations() == 1);
    }
  }
  CHECK(thrown > 0);
}

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
#include <sstream>

#include "hcran/error.hpp"
#include "hcran/rate_bounds.hpp"
#include "hcran/rtd.hpp"
#include "oracles/fixtures.hpp"

using namespace hcran;

namespace {

PowerBudgets budgets_for(const Topology& t) { return PowerBudgets::uniform(t.num_rrh, 0.5, 1.0); }

}  // namespace

TEST_CASE("objective never increases and the rate bound never decreases") {
  Rng rng(91);
  int total_iters = 0;
  for (int trial = 0; trial < 25; ++trial) {
    const fixture::Instance in = fixture::random_instance(rng);
    const AggregatedLinks L = build_covariances(in.topo, in.cs);
    RtdOptions opt;
    opt.keep_history = true;
    const RtdState st = rtd_solve(in.topo, L, in.tr, budgets_for(in.topo), opt);
    REQUIRE(st.objective_trace.size() == static_cast<std::size_t>(st.iterations) + 1);
    REQUIRE(st.sum_se_trace.size() == st.objective_trace.size());
    CHECK(st.history.size() == static_cast<std::size_t>(st.iterations));
    CHECK(st.objective_trace[0] == doctest::Approx(in.topo.num_ue * in.tr.noise_power));
    CHECK(st.sum_se_trace[0] == 0.0);
    for (std::size_t d = 1; d < st.objective_trace.size(); ++d) {
      const double tol = 1e-9 * std::abs(st.objective_trace[d - 1]) + 1e-12;
      CHECK(st.objective_trace[d] <= st.objective_trace[d - 1] + tol);
      CHECK(st.sum_se_trace[d] >= st.sum_se_trace[d - 1] - 1e-9 * std::abs(st.sum_se_trace[d - 1]));
    }
    CHECK(st.iterations <= opt.max_iters);
    if (st.converged && st.iterations >= 2) {
      CHECK(st.history.back().squared_distance(st.history[st.history.size() - 2]) <= opt.rho);
    }
    total_iters += st.iterations;

    // Feasible beams.
    for (int k = 0; k < in.topo.num_rrh; ++k) CHECK(st.w.rrh_power(in.topo, k) <= 0.5 * (1.0 + 1e-9));
    CHECK(st.w.mbs_power() <= 1.0 + 1e-9);
  }
  CHECK(total_iters > 25);
}

TEST_CASE("final weights are consistent with the lower-bound rates") {
  Rng rng(92);
  for (int trial = 0; trial < 10; ++trial) {
    const fixture::Instance in = fixture::random_instance(rng);
    const AggregatedLinks L = build_covariances(in.topo, in.cs);
    const RtdState st = rtd_solve(in.topo, L, in.tr, budgets_for(in.topo));
    const double prelog = in.tr.prelog();
    const LowerBounds lb = lower_bound_rates(L, st.w, in.tr.noise_power, prelog);
    for (int a = 0; a < L.num_rue; ++a) {
      CHECK(-prelog * std::log2(st.mse_rue(a)) == doctest::Approx(lb.rue_rate(a)).epsilon(1e-9));
      CHECK(st.weights.u_rue(a) == doctest::Approx(1.0 - std::log(st.mse_rue(a))).epsilon(1e-12));
    }
    for (int j = 0; j < L.num_bue; ++j) {
      CHECK(-prelog * std::log2(st.mse_bue(j)) == doctest::Approx(lb.bue_rate(j)).epsilon(1e-9));
    }
    CHECK(st.sum_se_trace.back() == doctest::Approx(lb.sum_rate()).epsilon(1e-9));
    // At the u-optimal point the auxiliary objective is sum ln MSE.
    CHECK(st.objective_trace.back() ==
          doctest::Approx(-std::log(2.0) * lb.sum_rate() / prelog).epsilon(1e-9));
  }
}

TEST_CASE("zero power stops after one iteration") {
  Rng rng(93);
  const fixture::Instance in = fixture::random_instance(rng);
  const AggregatedLinks L = build_covariances(in.topo, in.cs);
  const RtdState st = rtd_solve(in.topo, L, in.tr, PowerBudgets::uniform(in.topo.num_rrh, 0.0, 0.0));
  CHECK(st.iterations == 1);
  CHECK(st.converged);
  for (const CVec& v : st.w.rue) CHECK(v.norm() == 0.0);
  CHECK(st.sum_se_trace.back() == 0.0);
}

TEST_CASE("message-passing mode reproduces the centralized iterates") {
  Rng rng(94);
  for (int trial = 0; trial < 8; ++trial) {
    const fixture::Instance in = fixture::random_instance(rng);
    const AggregatedLinks L = build_covariances(in.topo, in.cs);
    RtdOptions c, d;
    c.keep_history = d.keep_history = true;
    d.mode = RtdMode::distributed;
    const RtdState a = rtd_solve(in.topo, L, in.tr, budgets_for(in.topo), c);
    const RtdState b = rtd_solve(in.topo, L, in.tr, budgets_for(in.topo), d);
    REQUIRE(a.iterations == b.iterations);
    CHECK(a.objective_trace == b.objective_trace);
    for (std::size_t k = 0; k < a.history.size(); ++k) CHECK(a.history[k].squared_distance(b.history[k]) == 0.0);
  }
}

TEST_CASE("option guards and iteration cap") {
  Rng rng(95);
  const fixture::Instance in = fixture::random_instance(rng);
  const AggregatedLinks L = build_covariances(in.topo, in.cs);
  RtdOptions opt;
  opt.max_iters = 0;
  CHECK_THROWS_AS(rtd_solve(in.topo, L, in.tr, budgets_for(in.topo), opt), DomainError);
  opt.max_iters = 2;
  opt.rho = 0.0;
  const RtdState st = rtd_solve(in.topo, L, in.tr, budgets_for(in.topo), opt);
  CHECK(st.iterations == 2);
  CHECK(!st.converged);
}

TEST_CASE("trace CSV") {
  RtdState st;
  st.objective_trace = {0.5, -1.25};
  st.sum_se_trace = {0.0, 3.5};
  std::ostringstream os;
  write_rtd_trace_csv(os, st);
  CHECK(os.str() == "iteration,objective,sum_se_lb\n0,0.5,0\n1,-1.25,3.5\n");
}

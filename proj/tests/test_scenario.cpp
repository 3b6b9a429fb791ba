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
#include "hcran/scenario.hpp"
#include "oracles/oracles.hpp"

using namespace hcran;

TEST_CASE("path loss follows the log-distance model") {
  ScenarioConfig cfg;
  // At the reference distance only the intercept remains.
  CHECK(pathloss_db(cfg.reference_distance, cfg) == doctest::Approx(cfg.pathloss_intercept_db));
  // Tenfold distance adds 10 * exponent dB.
  CHECK(pathloss_db(100.0, cfg) - pathloss_db(10.0, cfg) == doctest::Approx(37.0));
  // Below min_distance the loss is clamped.
  CHECK(pathloss_db(0.25, cfg) == doctest::Approx(pathloss_db(cfg.min_distance, cfg)));
  CHECK_THROWS_AS(pathloss_db(0.0, cfg), DomainError);
  CHECK_THROWS_AS(pathloss_db(-3.0, cfg), DomainError);

  ScenarioConfig flat = cfg;
  flat.shadowing_std = 0.0;
  Rng rng(1);
  CHECK(pathloss_gain(200.0, flat, rng) == doctest::Approx(std::pow(10.0, -pathloss_db(200.0, flat) / 10.0)));
}

TEST_CASE("shadowing has the configured spread in dB") {
  ScenarioConfig cfg;
  Rng rng(5);
  const double deterministic = pathloss_db(150.0, cfg);
  double sum = 0.0, sum2 = 0.0;
  const int n = 20000;
  for (int i = 0; i < n; ++i) {
    const double db = -10.0 * std::log10(pathloss_gain(150.0, cfg, rng)) - deterministic;
    sum += db;
    sum2 += db * db;
  }
  const double mean = sum / n;
  const double sd = std::sqrt(sum2 / n - mean * mean);
  CHECK(std::abs(mean) < 4.0 * cfg.shadowing_std / std::sqrt(n));
  CHECK(sd == doctest::Approx(cfg.shadowing_std).epsilon(0.03));
}

TEST_CASE("config validation names the violated field") {
  ScenarioConfig cfg;
  cfg.validate();
  auto expect = [](ScenarioConfig c, const char* needle) {
    try {
      c.validate();
      FAIL("expected DomainError");
    } catch (const DomainError& e) {
      CHECK(std::string(e.what()).find(needle) != std::string::npos);
    }
  };
  ScenarioConfig c = cfg;
  c.num_rrh = 0;
  expect(c, "num_rrh");
  c = cfg;
  c.cell_radius = 100.0;
  expect(c, "cell_radius");
  c = cfg;
  c.coverage_radius = 0.0;
  expect(c, "coverage_radius");
  c = cfg;
  c.shadowing_std = -1.0;
  expect(c, "shadowing_std");
}

TEST_CASE("clustering keeps the closest UEs per RRH") {
  // One RRH at the origin, four UEs at 10, 20, 20, 150 m.
  const std::vector<Point2> rrh{{0, 0}};
  const std::vector<Point2> ue{{10, 0}, {0, 20}, {20, 0}, {150, 0}};
  const Clustering c = cluster_ues(rrh, ue, 100.0, 2);
  // Tie at 20 m resolves to the lower UE id; UE 3 is out of range.
  CHECK(c.served_rues[0] == std::vector<int>{0, 1});
  CHECK(c.rue_set == std::vector<int>{0, 1});
  CHECK(c.bue_set == std::vector<int>{2, 3});
}

TEST_CASE("a UE dropped by one RRH can still be served by another") {
  const std::vector<Point2> rrh{{0, 0}, {60, 0}};
  const std::vector<Point2> ue{{5, 0}, {30, 0}};
  const Clustering c = cluster_ues(rrh, ue, 100.0, 1);
  CHECK(c.serving_rrhs[0] == std::vector<int>{0});
  CHECK(c.serving_rrhs[1] == std::vector<int>{1});
}

TEST_CASE("generated topologies satisfy every structural invariant") {
  Rng rng(2718);
  for (int trial = 0; trial < 200; ++trial) {
    const ScenarioConfig cfg = oracle::random_scenario(rng);
    const Topology t = generate_topology(cfg);
    t.validate();
    for (const Point2& p : t.rrh_positions) {
      const double r = std::hypot(p.x, p.y);
      CHECK(r >= cfg.inner_ring_radius - 1e-9);
      CHECK(r <= cfg.cell_radius + 1e-9);
    }
    for (const Point2& p : t.ue_positions) CHECK(std::hypot(p.x, p.y) <= cfg.cell_radius + 1e-9);
    // Every candidate link the RRH kept is within coverage, and a full RRH kept
    // only UEs at least as close as any it dropped.
    for (int k = 0; k < t.num_rrh; ++k) {
      double farthest_kept = 0.0;
      for (int m : t.served_rues[k]) {
        farthest_kept = std::max(farthest_kept, distance(t.rrh_positions[k], t.ue_positions[m]));
      }
      for (int m = 0; m < t.num_ue; ++m) {
        const double d = distance(t.rrh_positions[k], t.ue_positions[m]);
        if (!t.serves(k, m) && d <= cfg.coverage_radius) {
          CHECK(static_cast<int>(t.served_rues[k].size()) == cfg.max_ue_per_rrh);
          CHECK(d >= farthest_kept);
        }
      }
    }
  }
}

TEST_CASE("same config gives the same topology; the seed matters") {
  ScenarioConfig cfg;
  cfg.rng_seed = 77;
  const Topology a = generate_topology(cfg);
  const Topology b = generate_topology(cfg);
  CHECK(a.alpha_rrh == b.alpha_rrh);
  CHECK(a.alpha_mbs == b.alpha_mbs);
  CHECK(a.serving_rrhs == b.serving_rrhs);
  cfg.rng_seed = 78;
  CHECK(generate_topology(cfg).alpha_mbs != a.alpha_mbs);
}

TEST_CASE("topology text round trip is exact") {
  ScenarioConfig cfg;
  cfg.num_ue = 12;
  const Topology t = generate_topology(cfg);
  std::stringstream ss;
  write_topology(ss, t);
  const Topology back = read_topology(ss);
  CHECK(back.alpha_rrh == t.alpha_rrh);
  CHECK(back.alpha_mbs == t.alpha_mbs);
  CHECK(back.serving_rrhs == t.serving_rrhs);
  CHECK(back.rue_set == t.rue_set);
  CHECK(back.coverage_radius == t.coverage_radius);
  for (int m = 0; m < t.num_ue; ++m) CHECK(back.ue_positions[m].x == t.ue_positions[m].x);

  std::stringstream bad("# hcran-topology v1\ndims 2\n");
  CHECK_THROWS_AS(read_topology(bad), ParseError);
  std::stringstream wrong_version("# hcran-topology v9\n");
  CHECK_THROWS_AS(read_topology(wrong_version), ParseError);
}

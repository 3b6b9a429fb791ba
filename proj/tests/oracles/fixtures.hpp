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

// Random end-to-end instances shared by the module tests. These run the library
// pipeline (schedule, draw, estimate) and are inputs, not reference values.

#include "hcran/beams.hpp"
#include "hcran/channel.hpp"
#include "hcran/pilot_scheduler.hpp"
#include "oracles/oracles.hpp"

namespace fixture {

using namespace hcran;

struct Instance {
  Topology topo;
  TrainingConfig tr;
  ChannelState cs;
};

inline Instance random_instance(Rng& rng, int max_rrh = 12, int max_ue = 8) {
  Instance in;
  in.topo = generate_topology(oracle::random_scenario(rng, max_rrh, max_ue));
  const ConflictGraph g = build_conflict_graph(in.topo);
  const Coloring col = dsatur_color(g);
  in.tr.tau = effective_tau(in.topo, col, std::uniform_int_distribution<int>(1, in.topo.num_ue)(rng));
  const PilotAssignment a = psa_schedule(in.topo, compute_beta(in.topo, g), g, in.tr.tau);
  const TrueChannels h = draw_small_scale(in.topo, rng());
  in.cs = estimate_channels(in.topo, a, in.tr, h, rng());
  return in;
}

// Beams scaled so that every RRH block carries about `watt`.
inline BeamformerSet random_beams(const Topology& t, Rng& rng, double watt) {
  BeamformerSet w = BeamformerSet::zeros(t);
  for (auto& v : w.rue) v = draw_cn_vector(rng, static_cast<int>(v.size()), watt / t.rrh_antennas);
  for (auto& v : w.bue) v = draw_cn_vector(rng, static_cast<int>(v.size()), watt / t.mbs_antennas / 4.0);
  return w;
}

}  // namespace fixture

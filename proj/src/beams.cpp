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

#include "hcran/beams.hpp"

#include <algorithm>

#include "hcran/simd/kernels.hpp"

namespace hcran {

BeamformerSet BeamformerSet::zeros(const Topology& topo) {
  BeamformerSet w;
  for (int i : topo.rue_set) {
    w.rue.push_back(CVec::Zero(topo.rrh_antennas * static_cast<int>(topo.serving_rrhs[i].size())));
  }
  for (std::size_t j = 0; j < topo.bue_set.size(); ++j) w.bue.push_back(CVec::Zero(topo.mbs_antennas));
  return w;
}

int block_offset(const Topology& topo, int ue, int rrh) {
  const auto& ks = topo.serving_rrhs[ue];
  auto it = std::lower_bound(ks.begin(), ks.end(), rrh);
  if (it == ks.end() || *it != rrh) return -1;
  return static_cast<int>(it - ks.begin()) * topo.rrh_antennas;
}

double BeamformerSet::rrh_power(const Topology& topo, int rrh) const {
  double p = 0.0;
  for (int i : topo.served_rues[rrh]) {
    const CVec& wi = rue[topo.rue_index(i)];
    p += simd::sqnorm({wi.data() + block_offset(topo, i, rrh), static_cast<std::size_t>(topo.rrh_antennas)});
  }
  return p;
}

double BeamformerSet::mbs_power() const {
  double p = 0.0;
  for (const CVec& wj : bue) p += wj.squaredNorm();
  return p;
}

double BeamformerSet::squared_distance(const BeamformerSet& other) const {
  double d = 0.0;
  for (std::size_t v = 0; v < rue.size(); ++v) d += (rue[v] - other.rue[v]).squaredNorm();
  for (std::size_t j = 0; j < bue.size(); ++j) d += (bue[j] - other.bue[j]).squaredNorm();
  return d;
}

}  // namespace hcran

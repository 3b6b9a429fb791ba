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

#include <vector>

#include "hcran/linalg.hpp"
#include "hcran/scenario.hpp"

namespace hcran {

/// Transmit beamformers. `rue[v]` belongs to RUE topo.rue_set[v] and stacks the
/// per-RRH blocks w_{k,i}, k ascending over K_i, each of length N. `bue[j]` is the
/// MBS beamformer of BUE topo.bue_set[j] (length B).
struct BeamformerSet {
  std::vector<CVec> rue;
  std::vector<CVec> bue;

  static BeamformerSet zeros(const Topology& topo);

  /// Transmit power of RRH k: sum over served RUEs of ||w_{k,i}||^2.
  double rrh_power(const Topology& topo, int rrh) const;
  double mbs_power() const;

  /// sum ||this - other||^2 over all blocks.
  double squared_distance(const BeamformerSet& other) const;
};

/// Offset of RRH `rrh`'s block inside the stacked beamformer of `ue`, or -1.
int block_offset(const Topology& topo, int ue, int rrh);

}  // namespace hcran

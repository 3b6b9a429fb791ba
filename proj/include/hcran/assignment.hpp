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

#include <iosfwd>
#include <string>
#include <vector>

#include "hcran/scenario.hpp"

namespace hcran {

/// Pilot index per UE. Pilots are 0-based in memory (0..tau-1); the CSV form is
/// 1-based to match the usual q_1..q_tau numbering.
struct PilotAssignment {
  int tau = 0;
  std::vector<int> pilot;  // indexed by UE id

  /// RUE ids sharing pilot p (U_p), ascending.
  std::vector<int> rues_on(const Topology& topo, int p) const;
  /// BUE ids on pilot p (V_p); at most one for a valid assignment.
  std::vector<int> bues_on(const Topology& topo, int p) const;
};

/// Reuse sets for every pilot, built once.
struct ReuseSets {
  std::vector<std::vector<int>> rues;  // U_p
  std::vector<std::vector<int>> bues;  // V_p

  ReuseSets() = default;
  ReuseSets(const Topology& topo, const PilotAssignment& a);
};

/// Throws ContractViolation unless: tau >= 1, every pilot in range, BUE pilots
/// pairwise distinct, and RUEs with overlapping serving sets on different pilots.
void validate_assignment(const Topology& topo, const PilotAssignment& a);

/// CSV rows `ue_id,pilot_index` with header.
void write_assignment_csv(std::ostream& os, const PilotAssignment& a);
PilotAssignment read_assignment_csv(std::istream& is, int tau);

}  // namespace hcran

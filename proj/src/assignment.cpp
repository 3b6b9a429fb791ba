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

#include "hcran/assignment.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>

#include "hcran/error.hpp"

namespace hcran {

std::vector<int> PilotAssignment::rues_on(const Topology& topo, int p) const {
  std::vector<int> out;
  for (int m : topo.rue_set) {
    if (pilot[m] == p) out.push_back(m);
  }
  return out;
}

std::vector<int> PilotAssignment::bues_on(const Topology& topo, int p) const {
  std::vector<int> out;
  for (int m : topo.bue_set) {
    if (pilot[m] == p) out.push_back(m);
  }
  return out;
}

ReuseSets::ReuseSets(const Topology& topo, const PilotAssignment& a)
    : rues(a.tau), bues(a.tau) {
  for (int m : topo.rue_set) rues[a.pilot[m]].push_back(m);
  for (int m : topo.bue_set) bues[a.pilot[m]].push_back(m);
}

void validate_assignment(const Topology& topo, const PilotAssignment& a) {
  auto fail = [](const std::string& what) { throw ContractViolation("pilot assignment: " + what); };
  if (a.tau < 1) fail("tau must be >= 1");
  if (static_cast<int>(a.pilot.size()) != topo.num_ue) fail("one pilot per UE required");
  for (int p : a.pilot) {
    if (p < 0 || p >= a.tau) fail("pilot index out of range");
  }
  std::vector<char> bue_used(a.tau, 0);
  for (int j : topo.bue_set) {
    if (bue_used[a.pilot[j]]) fail("two BUEs share pilot " + std::to_string(a.pilot[j] + 1));
    bue_used[a.pilot[j]] = 1;
  }
  for (int k = 0; k < topo.num_rrh; ++k) {
    const auto& us = topo.served_rues[k];
    for (std::size_t x = 0; x < us.size(); ++x) {
      for (std::size_t y = x + 1; y < us.size(); ++y) {
        if (a.pilot[us[x]] == a.pilot[us[y]]) {
          fail("UEs " + std::to_string(us[x]) + " and " + std::to_string(us[y]) +
               " share RRH " + std::to_string(k) + " and pilot " + std::to_string(a.pilot[us[x]] + 1));
        }
      }
    }
  }
}

void write_assignment_csv(std::ostream& os, const PilotAssignment& a) {
  os << "ue_id,pilot_index\n";
  for (std::size_t m = 0; m < a.pilot.size(); ++m) os << m << ',' << a.pilot[m] + 1 << '\n';
}

PilotAssignment read_assignment_csv(std::istream& is, int tau) {
  std::string line;
  if (!std::getline(is, line) || line != "ue_id,pilot_index") throw ParseError("assignment: bad header");
  PilotAssignment a;
  a.tau = tau;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    int ue = -1, p = -1;
    char comma = 0;
    if (!(ss >> ue >> comma >> p) || comma != ',') throw ParseError("assignment: bad row '" + line + "'");
    if (ue != static_cast<int>(a.pilot.size())) throw ParseError("assignment: rows must be in UE order");
    a.pilot.push_back(p - 1);
  }
  return a;
}

}  // namespace hcran

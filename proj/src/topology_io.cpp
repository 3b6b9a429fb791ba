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

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>

#include "hcran/error.hpp"
#include "hcran/scenario.hpp"

namespace hcran {

// Format, one record per line, comma separated:
//   # hcran-topology v1
//   dims,<K>,<M>,<N>,<B>,<coverage_radius>,<max_ue_per_rrh>
//   mbs,<x>,<y>
//   rrh,<k>,<x>,<y>
//   ue,<m>,<x>,<y>
//   serve,<k>,<m>
//   alpha_rrh,<k>,<m>,<gain>
//   alpha_mbs,<m>,<gain>
namespace {

constexpr const char* kMagic = "# hcran-topology v1";

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) out.push_back(field);
  return out;
}

}  // namespace

void write_topology(std::ostream& os, const Topology& t) {
  os << kMagic << '\n' << std::setprecision(17);
  os << "dims," << t.num_rrh << ',' << t.num_ue << ',' << t.rrh_antennas << ',' << t.mbs_antennas << ','
     << t.coverage_radius << ',' << t.max_ue_per_rrh << '\n';
  os << "mbs," << t.mbs_position.x << ',' << t.mbs_position.y << '\n';
  for (int k = 0; k < t.num_rrh; ++k) {
    os << "rrh," << k << ',' << t.rrh_positions[k].x << ',' << t.rrh_positions[k].y << '\n';
  }
  for (int m = 0; m < t.num_ue; ++m) {
    os << "ue," << m << ',' << t.ue_positions[m].x << ',' << t.ue_positions[m].y << '\n';
  }
  for (int k = 0; k < t.num_rrh; ++k) {
    for (int m : t.served_rues[k]) os << "serve," << k << ',' << m << '\n';
  }
  for (int k = 0; k < t.num_rrh; ++k) {
    for (int m = 0; m < t.num_ue; ++m) os << "alpha_rrh," << k << ',' << m << ',' << t.alpha_rrh(k, m) << '\n';
  }
  for (int m = 0; m < t.num_ue; ++m) os << "alpha_mbs," << m << ',' << t.alpha_mbs(m) << '\n';
}

Topology read_topology(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line != kMagic) throw ParseError("topology: missing '" + std::string(kMagic) + "' header");

  Topology t;
  bool have_dims = false;
  int lineno = 1;
  auto need = [&](bool ok, const std::string& what) {
    if (!ok) throw ParseError("topology line " + std::to_string(lineno) + ": " + what);
  };
  try {
    while (std::getline(is, line)) {
      ++lineno;
      if (line.empty() || line[0] == '#') continue;
      const auto f = split_csv(line);
      const std::string& tag = f[0];
      if (tag == "dims") {
        need(f.size() == 7, "dims expects 6 fields");
        t.num_rrh = std::stoi(f[1]);
        t.num_ue = std::stoi(f[2]);
        t.rrh_antennas = std::stoi(f[3]);
        t.mbs_antennas = std::stoi(f[4]);
        t.coverage_radius = std::stod(f[5]);
        t.max_ue_per_rrh = std::stoi(f[6]);
        need(t.num_rrh >= 0 && t.num_ue >= 1, "bad dims");
        t.rrh_positions.assign(t.num_rrh, {});
        t.ue_positions.assign(t.num_ue, {});
        t.serving_rrhs.assign(t.num_ue, {});
        t.served_rues.assign(t.num_rrh, {});
        t.alpha_rrh = RMat::Zero(t.num_rrh, t.num_ue);
        t.alpha_mbs = RVec::Zero(t.num_ue);
        have_dims = true;
        continue;
      }
      need(have_dims, "record before dims");
      if (tag == "mbs") {
        need(f.size() == 3, "mbs expects 2 fields");
        t.mbs_position = {std::stod(f[1]), std::stod(f[2])};
      } else if (tag == "rrh" || tag == "ue") {
        need(f.size() == 4, tag + " expects 3 fields");
        const int idx = std::stoi(f[1]);
        auto& vec = tag == "rrh" ? t.rrh_positions : t.ue_positions;
        need(idx >= 0 && idx < static_cast<int>(vec.size()), "index out of range");
        vec[idx] = {std::stod(f[2]), std::stod(f[3])};
      } else if (tag == "serve") {
        need(f.size() == 3, "serve expects 2 fields");
        const int k = std::stoi(f[1]);
        const int m = std::stoi(f[2]);
        need(k >= 0 && k < t.num_rrh && m >= 0 && m < t.num_ue, "index out of range");
        t.served_rues[k].push_back(m);
        t.serving_rrhs[m].push_back(k);
      } else if (tag == "alpha_rrh") {
        need(f.size() == 4, "alpha_rrh expects 3 fields");
        const int k = std::stoi(f[1]);
        const int m = std::stoi(f[2]);
        need(k >= 0 && k < t.num_rrh && m >= 0 && m < t.num_ue, "index out of range");
        t.alpha_rrh(k, m) = std::stod(f[3]);
      } else if (tag == "alpha_mbs") {
        need(f.size() == 3, "alpha_mbs expects 2 fields");
        const int m = std::stoi(f[1]);
        need(m >= 0 && m < t.num_ue, "index out of range");
        t.alpha_mbs(m) = std::stod(f[2]);
      } else {
        need(false, "unknown record '" + tag + "'");
      }
    }
  } catch (const std::logic_error& e) {  // stoi/stod failures
    throw ParseError("topology line " + std::to_string(lineno) + ": " + e.what());
  }
  need(have_dims, "no dims record");

  for (auto& v : t.served_rues) std::sort(v.begin(), v.end());
  for (auto& v : t.serving_rrhs) std::sort(v.begin(), v.end());
  for (int m = 0; m < t.num_ue; ++m) (t.serving_rrhs[m].empty() ? t.bue_set : t.rue_set).push_back(m);
  t.validate();
  return t;
}

void save_topology(const std::string& path, const Topology& topo) {
  std::ofstream os(path);
  if (!os) throw ParseError("cannot open " + path + " for writing");
  write_topology(os, topo);
}

Topology load_topology(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ParseError("cannot open " + path);
  return read_topology(is);
}

}  // namespace hcran

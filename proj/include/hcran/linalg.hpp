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

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace hcran {

using cplx = std::complex<double>;
using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;
using RVec = Eigen::VectorXd;
using RMat = Eigen::MatrixXd;

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

inline double distance(const Point2& a, const Point2& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

/// Block-diagonal matrix with `diag[o] * I_n` in block o.
inline CMat scaled_identity_blocks(const std::vector<double>& diag, int n) {
  const int blocks = static_cast<int>(diag.size());
  CMat m = CMat::Zero(blocks * n, blocks * n);
  for (int o = 0; o < blocks; ++o) {
    m.block(o * n, o * n, n, n).diagonal().setConstant(cplx(diag[o], 0.0));
  }
  return m;
}

/// True iff `m` admits a Cholesky factorization (Hermitian positive definite).
inline bool is_positive_definite(const CMat& m) {
  if (m.rows() != m.cols()) return false;
  if (m.rows() == 0) return true;
  Eigen::LLT<CMat> llt(m);
  return llt.info() == Eigen::Success;
}

}  // namespace hcran

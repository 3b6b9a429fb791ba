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

#include "hcran/qcqp_solver.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <limits>

#include "hcran/error.hpp"
#include "hcran/simd/kernels.hpp"

namespace hcran {

namespace {

// One RUE restricted to the blocks of RRHs with positive budget.
struct ReducedRue {
  int dim = 0;
  std::vector<int> keep;     // block positions kept, into the full stacked vector
  std::vector<int> dual_of;  // dual index of each kept block
  CMat F;
  CVec b;
};

// Dual state at one multiplier vector.
struct DualPoint {
  RVec mu;
  double value = 0.0;  // g(mu)
  RVec grad;           // d g / d mu
  std::vector<CVec> w; // reduced primal minimizers
};

class RrhDual {
 public:
  RrhDual(const RrhQcqp& p) : p_(p) {
    const int n = p.block_size;
    std::vector<int> dual_index(p.budget.size(), -1);
    for (std::size_t a = 0; a < p.F.size(); ++a) {
      if (p.F[a].rows() != p.b[a].size() || p.F[a].rows() != n * static_cast<int>(p.rrhs[a].size())) {
        throw SizeError("solve_rrh_qcqp: F/b/block map dimensions disagree");
      }
      if (!is_positive_definite(p.F[a])) throw MatrixError("solve_rrh_qcqp: F is not positive definite");
      ReducedRue r;
      for (std::size_t o = 0; o < p.rrhs[a].size(); ++o) {
        const int k = p.rrhs[a][o];
        if (p.budget(k) < 0.0) throw DomainError("solve_rrh_qcqp: negative power budget");
        if (p.budget(k) == 0.0) continue;
        if (dual_index[k] < 0) {
          dual_index[k] = static_cast<int>(rrh_of_dual_.size());
          rrh_of_dual_.push_back(k);
        }
        r.keep.push_back(static_cast<int>(o));
        r.dual_of.push_back(dual_index[k]);
      }
      r.dim = n * static_cast<int>(r.keep.size());
      r.F.resize(r.dim, r.dim);
      r.b.resize(r.dim);
      for (std::size_t x = 0; x < r.keep.size(); ++x) {
        r.b.segment(static_cast<int>(x) * n, n) = p.b[a].segment(r.keep[x] * n, n);
        for (std::size_t y = 0; y < r.keep.size(); ++y) {
          r.F.block(static_cast<int>(x) * n, static_cast<int>(y) * n, n, n) =
              p.F[a].block(r.keep[x] * n, r.keep[y] * n, n, n);
        }
      }
      rues_.push_back(std::move(r));
    }
    budget_.resize(static_cast<int>(rrh_of_dual_.size()));
    for (std::size_t d = 0; d < rrh_of_dual_.size(); ++d) budget_(d) = p.budget(rrh_of_dual_[d]);
  }

  int num_duals() const { return static_cast<int>(rrh_of_dual_.size()); }
  int rrh_of_dual(int d) const { return rrh_of_dual_[d]; }
  const RVec& budget() const { return budget_; }

  DualPoint evaluate(const RVec& mu, RMat* hessian = nullptr) const {
    const int n = p_.block_size;
    const int D = num_duals();
    DualPoint pt;
    pt.mu = mu;
    pt.grad = -budget_;
    pt.value = -mu.dot(budget_);
    if (hessian != nullptr) hessian->setZero(D, D);
    pt.w.reserve(rues_.size());
    for (const ReducedRue& r : rues_) {
      if (r.dim == 0) {
        pt.w.emplace_back();
        continue;
      }
      CMat m = r.F;
      for (std::size_t x = 0; x < r.keep.size(); ++x) {
        m.diagonal().segment(static_cast<int>(x) * n, n).array() += mu(r.dual_of[x]);
      }
      Eigen::LLT<CMat> llt(m);
      if (llt.info() != Eigen::Success) throw MatrixError("solve_rrh_qcqp: Cholesky failed");
      CVec w = llt.solve(r.b);
      pt.value -= r.b.dot(w).real();
      for (std::size_t x = 0; x < r.keep.size(); ++x) {
        pt.grad(r.dual_of[x]) += w.segment(static_cast<int>(x) * n, n).squaredNorm();
      }
      if (hessian != nullptr) {
        // d||w_x||^2 / d mu_y = -2 Re(w_x^H [M^{-1}]_{xy} w_y).
        const int nb = static_cast<int>(r.keep.size());
        CMat W = CMat::Zero(r.dim, nb);
        for (int x = 0; x < nb; ++x) W.block(x * n, x, n, 1) = w.segment(x * n, n);
        const CMat Z = llt.solve(W);
        const CMat C = W.adjoint() * Z;
        for (int x = 0; x < nb; ++x) {
          for (int y = 0; y < nb; ++y) (*hessian)(r.dual_of[x], r.dual_of[y]) -= 2.0 * C(x, y).real();
        }
      }
      pt.w.push_back(std::move(w));
    }
    return pt;
  }

  // Expands reduced minimizers to full stacked vectors, rescaling each RRH onto its
  // budget. Returns the maximum relative violation before rescaling.
  double expand(const DualPoint& pt, std::vector<CVec>& out) const {
    const int n = p_.block_size;
    RVec power = RVec::Zero(num_duals());
    for (std::size_t a = 0; a < rues_.size(); ++a) {
      const ReducedRue& r = rues_[a];
      for (std::size_t x = 0; x < r.keep.size(); ++x) {
        power(r.dual_of[x]) += pt.w[a].segment(static_cast<int>(x) * n, n).squaredNorm();
      }
    }
    RVec scale = RVec::Ones(num_duals());
    double violation = 0.0;
    for (int d = 0; d < num_duals(); ++d) {
      if (power(d) > budget_(d)) {
        violation = std::max(violation, (power(d) - budget_(d)) / budget_(d));
        scale(d) = std::sqrt(budget_(d) / power(d));
      }
    }
    out.assign(rues_.size(), CVec());
    for (std::size_t a = 0; a < rues_.size(); ++a) {
      const ReducedRue& r = rues_[a];
      out[a] = CVec::Zero(p_.F[a].rows());
      for (std::size_t x = 0; x < r.keep.size(); ++x) {
        out[a].segment(r.keep[x] * n, n) = scale(r.dual_of[x]) * pt.w[a].segment(static_cast<int>(x) * n, n);
      }
    }
    return violation;
  }

 private:
  const RrhQcqp& p_;
  std::vector<ReducedRue> rues_;
  std::vector<int> rrh_of_dual_;
  RVec budget_;
};

bool gap_closed(double primal, double dual, double tol) {
  const double gap = primal - dual;
  return gap <= tol * std::max(std::abs(primal), std::abs(dual));
}

}  // namespace

RVec rrh_block_powers(const RrhQcqp& p, const std::vector<CVec>& w) {
  const int n = p.block_size;
  RVec power = RVec::Zero(p.budget.size());
  for (std::size_t a = 0; a < p.rrhs.size(); ++a) {
    for (std::size_t o = 0; o < p.rrhs[a].size(); ++o) {
      power(p.rrhs[a][o]) += w[a].segment(static_cast<int>(o) * n, n).squaredNorm();
    }
  }
  return power;
}

std::vector<CVec> solve_rrh_qcqp(const RrhQcqp& p, const SolverOptions& opt, SolverDiagnostics* diag,
                                 const RVec* mu0) {
  RrhDual dual(p);
  const int D = dual.num_duals();
  RVec mu = RVec::Zero(D);
  if (mu0 != nullptr && mu0->size() == p.budget.size()) {
    for (int d = 0; d < D; ++d) mu(d) = std::max(0.0, (*mu0)(dual.rrh_of_dual(d)));
  }

  // Projected Newton ascent on the concave dual. Coordinates at the bound whose
  // gradient points outward are held fixed; the rest take a Newton step on the
  // reduced Hessian. Backtracking with projection keeps mu >= 0.
  constexpr double kArmijo = 1e-4;
  constexpr double kBoundEps = 1e-12;
  RMat hess;
  DualPoint pt = dual.evaluate(mu, &hess);
  std::vector<CVec> w;
  double primal = 0.0;
  double violation = 0.0;
  int iter = 0;
  bool converged = false;
  for (; iter <= opt.max_dual_iters; ++iter) {
    violation = dual.expand(pt, w);
    primal = qcqp_objective(p, w);
    if (gap_closed(primal, pt.value, opt.gap_tol)) {
      converged = true;
      break;
    }
    if (iter == opt.max_dual_iters) break;

    std::vector<int> free_idx;
    for (int d = 0; d < D; ++d) {
      const bool at_bound = pt.mu(d) <= kBoundEps * (1.0 + pt.mu.maxCoeff()) && pt.grad(d) < 0.0;
      if (!at_bound) free_idx.push_back(d);
    }
    RVec dir = RVec::Zero(D);
    for (int d = 0; d < D; ++d) {
      // Held coordinates: scaled gradient step toward the bound.
      const double h = -hess(d, d);
      dir(d) = h > 0.0 ? pt.grad(d) / h : pt.grad(d);
    }
    if (!free_idx.empty()) {
      const int nf = static_cast<int>(free_idx.size());
      RMat H(nf, nf);
      RVec g(nf);
      for (int x = 0; x < nf; ++x) {
        g(x) = pt.grad(free_idx[x]);
        for (int y = 0; y < nf; ++y) H(x, y) = -hess(free_idx[x], free_idx[y]);
      }
      const double ridge = 1e-14 * std::max(H.diagonal().maxCoeff(), std::numeric_limits<double>::min());
      H.diagonal().array() += ridge;
      Eigen::LDLT<RMat> ldlt(H);
      RVec step = ldlt.solve(g);
      if (ldlt.info() != Eigen::Success || !step.allFinite() || step.dot(g) <= 0.0) {
        for (int x = 0; x < nf; ++x) step(x) = H(x, x) > 0.0 ? g(x) / H(x, x) : g(x);
      }
      for (int x = 0; x < nf; ++x) dir(free_idx[x]) = step(x);
    }

    double t = 1.0;
    bool accepted = false;
    DualPoint trial;
    RMat trial_hess;
    for (int ls = 0; ls < 60; ++ls, t *= 0.5) {
      const RVec cand = (pt.mu + t * dir).cwiseMax(0.0);
      trial = dual.evaluate(cand, &trial_hess);
      if (trial.value >= pt.value + kArmijo * pt.grad.dot(cand - pt.mu)) {
        accepted = true;
        break;
      }
    }
    if (!accepted || (trial.mu - pt.mu).norm() == 0.0) {
      // Numerical floor: no representable ascent step remains.
      converged = gap_closed(primal, pt.value, std::max(opt.gap_tol, 1e-8));
      break;
    }
    pt = std::move(trial);
    hess = std::move(trial_hess);
  }

  if (opt.verbosity > 0) {
    std::cerr << "solve_rrh_qcqp: iterations=" << iter << " primal=" << primal << " dual=" << pt.value
              << " gap=" << primal - pt.value << '\n';
  }
  if (diag != nullptr) {
    diag->dual_iterations = iter;
    diag->primal = primal;
    diag->dual = pt.value;
    diag->gap = primal - pt.value;
    diag->max_violation = violation;
    diag->mu = RVec::Zero(p.budget.size());
    for (int d = 0; d < D; ++d) diag->mu(dual.rrh_of_dual(d)) = pt.mu(d);
  }
  if (!converged) {
    throw ConvergenceError("solve_rrh_qcqp: duality gap did not close", iter, primal - pt.value);
  }
  return w;
}

std::vector<CVec> solve_mbs_qcqp(const MbsQcqp& p, const SolverOptions& opt, SolverDiagnostics* diag) {
  const std::size_t nB = p.F.size();
  std::vector<CVec> w(nB);
  if (p.budget < 0.0) throw DomainError("solve_mbs_qcqp: negative power budget");
  if (nB == 0) return w;
  for (std::size_t j = 0; j < nB; ++j) w[j] = CVec::Zero(p.b[j].size());
  if (p.budget == 0.0) return w;

  std::vector<RVec> lambda(nB);
  std::vector<CMat> basis(nB);
  std::vector<CVec> c(nB);
  double bnorm2 = 0.0;
  for (std::size_t j = 0; j < nB; ++j) {
    if (p.F[j].rows() != p.b[j].size()) throw SizeError("solve_mbs_qcqp: F/b dimensions disagree");
    Eigen::SelfAdjointEigenSolver<CMat> eig(p.F[j]);
    if (eig.info() != Eigen::Success || eig.eigenvalues().minCoeff() <= 0.0) {
      throw MatrixError("solve_mbs_qcqp: F is not positive definite");
    }
    lambda[j] = eig.eigenvalues();
    basis[j] = eig.eigenvectors();
    c[j] = basis[j].adjoint() * p.b[j];
    bnorm2 += p.b[j].squaredNorm();
  }
  auto power = [&](double nu) {
    double s = 0.0;
    for (std::size_t j = 0; j < nB; ++j) {
      s += (c[j].cwiseAbs2().array() / (lambda[j].array() + nu).square()).sum();
    }
    return s;
  };

  double nu = 0.0;
  if (power(0.0) > p.budget) {
    double lo = 0.0;
    double hi = std::sqrt(bnorm2 / p.budget);
    for (int it = 0; it < 400 && hi - lo > 1e-15 * hi; ++it) {
      const double mid = 0.5 * (lo + hi);
      (power(mid) > p.budget ? lo : hi) = mid;
    }
    nu = hi;
  }
  double total = 0.0;
  for (std::size_t j = 0; j < nB; ++j) {
    const CVec z = (c[j].array() / (lambda[j].array() + nu).cast<cplx>()).matrix();
    w[j] = basis[j] * z;
    total += w[j].squaredNorm();
  }
  if (total > p.budget) {
    const double s = std::sqrt(p.budget / total);
    for (CVec& v : w) v *= s;
  }
  if (opt.verbosity > 0) std::cerr << "solve_mbs_qcqp: multiplier=" << nu << '\n';
  if (diag != nullptr) diag->mbs_multiplier = nu;
  return w;
}

BeamformerSet solve_qcqp(const QcqpProblem& p, const SolverOptions& opt, SolverDiagnostics* diag) {
  BeamformerSet w;
  w.rue = solve_rrh_qcqp(p.rrh, opt, diag);
  w.bue = solve_mbs_qcqp(p.mbs, opt, diag);
  return w;
}

}  // namespace hcran

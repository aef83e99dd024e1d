// Copyright 2026 The uavmec Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "uavmec/barrier.hpp"

#include <Eigen/SparseCholesky>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace uavmec::numerics {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kTrustDecrement = 1e-2;

// t f0(x) - sum log(-g(x)); +inf outside the strict interior.
double barrier_value(const ConvexProgram& prog, const Eigen::VectorXd& x, double t,
                     Eigen::VectorXd& g) {
  const double f = prog.objective(x);
  if (!std::isfinite(f)) return kInf;
  prog.inequalities(x, g);
  double acc = t * f;
  for (Eigen::Index i = 0; i < g.size(); ++i) {
    if (!(g[i] < 0.0)) return kInf;
    acc -= std::log(-g[i]);
  }
  return acc;
}

// Cholesky solve with a tiny diagonal shift when H is numerically singular.
Eigen::VectorXd newton_solve(Eigen::MatrixXd h, const Eigen::VectorXd& rhs) {
  Eigen::LLT<Eigen::MatrixXd> llt(h);
  if (llt.info() != Eigen::Success) {
    h.diagonal().array() += 1e-12 * (1.0 + h.diagonal().cwiseAbs().maxCoeff());
    llt.compute(h);
  }
  return llt.solve(rhs);
}

// Sparse counterpart of newton_solve for programs without equalities.
Eigen::VectorXd sparse_newton_solve(const Eigen::MatrixXd& f_hess, const Eigen::MatrixXd& jac,
                                    const Eigen::VectorXd& w, double t,
                                    const Eigen::MatrixXd& extra, const Eigen::VectorXd& rhs) {
  using Sparse = Eigen::SparseMatrix<double>;
  const Sparse j = jac.sparseView();
  Sparse h = (t * f_hess + extra).sparseView();
  h += Sparse(j.transpose() * w.cwiseAbs2().asDiagonal() * j);
  Eigen::SimplicialLDLT<Sparse> ldlt(h);
  if (ldlt.info() != Eigen::Success) {
    Eigen::VectorXd d = h.diagonal();
    const double shift = 1e-12 * (1.0 + d.cwiseAbs().maxCoeff());
    for (Eigen::Index i = 0; i < h.rows(); ++i) h.coeffRef(i, i) += shift;
    ldlt.compute(h);
  }
  return ldlt.solve(rhs);
}

}  // namespace

BarrierResult solve_barrier(const ConvexProgram& prog, const Eigen::VectorXd& x0,
                            const BarrierOptions& opt) {
  const Eigen::Index n = prog.dim();
  const Eigen::Index m = prog.num_inequalities();
  const Eigen::MatrixXd A = prog.equality_matrix();
  const Eigen::Index p = A.rows();

  BarrierResult res;
  res.x = x0;
  Eigen::VectorXd g(m);
  if (!std::isfinite(barrier_value(prog, x0, 1.0, g)))
    throw std::invalid_argument("barrier: starting point is not strictly feasible");

  double t = opt.t0 > 0.0 ? opt.t0
                          : static_cast<double>(std::max<Eigen::Index>(m, 1)) /
                                std::max(1.0, std::abs(prog.objective(x0)));

  Eigen::VectorXd grad(n), f_grad(n), w(m), dx(n), x_try(n), g_try(m);
  Eigen::MatrixXd hess(n, n), f_hess(n, n), jac(m, n);
  Eigen::VectorXd nu = Eigen::VectorXd::Zero(p);

  // Newton steps live in null(A), spanned by the columns of Z.
  Eigen::MatrixXd Z;
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> a_qr;
  if (p > 0) {
    a_qr.compute(A.transpose());
    const Eigen::MatrixXd Q = a_qr.householderQ();
    Z = Q.rightCols(n - a_qr.rank());
  }

  for (int outer = 0; outer < opt.max_outer; ++outer) {
    for (int it = 0; it < opt.max_newton; ++it) {
      prog.inequalities(res.x, g);
      prog.objective_derivatives(res.x, f_grad, f_hess);
      prog.inequality_jacobian(res.x, jac);
      for (Eigen::Index i = 0; i < m; ++i) w[i] = -1.0 / g[i];
      grad = t * f_grad + jac.transpose() * w;
      if (p == 0 && prog.sparse()) {
        hess.setZero();
        prog.add_inequality_hessians(res.x, w, hess);
        dx = sparse_newton_solve(f_hess, jac, w, t, hess, -grad);
      } else {
        hess = t * f_hess + jac.transpose() * w.cwiseAbs2().asDiagonal() * jac;
        prog.add_inequality_hessians(res.x, w, hess);
      }

      if (p == 0 && prog.sparse()) {
        // Solved above.
      } else if (p == 0) {
        dx = newton_solve(hess, -grad);
      } else {
        const Eigen::MatrixXd reduced = Z.transpose() * hess * Z;
        dx = Z * newton_solve(reduced, -(Z.transpose() * grad));
        // A^T nu = -(grad + H dx) in the least-squares sense, rescaled to f0.
        nu = a_qr.solve(-(grad + hess * dx)) / t;
      }
      const double decrement = -grad.dot(dx);
      ++res.newton_steps;
      if (!(decrement > 0.0) || 0.5 * decrement <= opt.newton_tol) break;

      const double phi0 = barrier_value(prog, res.x, t, g);
      double step = 1.0;
      bool moved = false;
      for (int ls = 0; ls < 80; ++ls) {
        x_try = res.x + step * dx;
        const double phi = barrier_value(prog, x_try, t, g_try);
        // Close to the centre phi is too large to resolve the decrease in
        // floating point; the quadratic model is trusted for a full step.
        const bool local = step == 1.0 && decrement < kTrustDecrement;
        if (std::isfinite(phi) && (local || phi <= phi0 - 0.25 * step * decrement)) {
          res.x = x_try;
          moved = true;
          break;
        }
        step *= 0.5;
      }
      if (!moved) break;
    }

    res.gap = static_cast<double>(m) / t;
    const double fval = prog.objective(res.x);
    if (res.gap <= opt.gap_tol * std::max(1.0, std::abs(fval))) {
      res.converged = true;
      break;
    }
    t *= opt.growth;
  }

  prog.inequalities(res.x, g);
  prog.objective_derivatives(res.x, f_grad, f_hess);
  prog.inequality_jacobian(res.x, jac);
  res.ineq_duals.resize(m);
  for (Eigen::Index i = 0; i < m; ++i) res.ineq_duals[i] = -1.0 / (t * g[i]);
  res.eq_duals = nu;
  res.objective = prog.objective(res.x);

  Eigen::VectorXd station = f_grad + jac.transpose() * res.ineq_duals;
  if (p > 0) station += A.transpose() * nu;
  const double scale = 1.0 + f_grad.cwiseAbs().maxCoeff();
  res.stationarity = station.cwiseAbs().maxCoeff() / scale;
  res.primal_infeasibility = m > 0 ? std::max(0.0, g.maxCoeff()) : 0.0;
  if (p > 0)
    res.primal_infeasibility =
        std::max(res.primal_infeasibility, (A * res.x - prog.equality_rhs()).cwiseAbs().maxCoeff());
  double comp = 0.0;
  for (Eigen::Index i = 0; i < m; ++i) comp = std::max(comp, std::abs(res.ineq_duals[i] * g[i]));
  res.complementarity = comp / std::max(1.0, std::abs(res.objective));
  return res;
}

}  // namespace uavmec::numerics

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

#pragma once

#include <Eigen/Dense>

namespace uavmec::numerics {

/// Smooth convex program  min f0(x)  s.t.  g_i(x) <= 0,  A x = b.
class ConvexProgram {
 public:
  virtual ~ConvexProgram() = default;

  virtual Eigen::Index dim() const = 0;
  virtual Eigen::Index num_inequalities() const = 0;

  /// Objective value; +inf outside its domain.
  virtual double objective(const Eigen::VectorXd& x) const = 0;
  virtual void objective_derivatives(const Eigen::VectorXd& x, Eigen::VectorXd& grad,
                                     Eigen::MatrixXd& hess) const = 0;

  virtual void inequalities(const Eigen::VectorXd& x, Eigen::VectorXd& g) const = 0;
  /// Rows are constraint gradients (m x n).
  virtual void inequality_jacobian(const Eigen::VectorXd& x, Eigen::MatrixXd& jac) const = 0;
  /// hess += sum_i w_i * Hessian(g_i)(x).
  virtual void add_inequality_hessians(const Eigen::VectorXd& x, const Eigen::VectorXd& w,
                                       Eigen::MatrixXd& hess) const = 0;

  /// True when the Hessian and Jacobian are mostly zero; Newton systems are
  /// then assembled and factored in sparse form.
  virtual bool sparse() const { return false; }

  virtual Eigen::MatrixXd equality_matrix() const { return Eigen::MatrixXd(0, dim()); }
  virtual Eigen::VectorXd equality_rhs() const { return Eigen::VectorXd(0); }
};

struct BarrierOptions {
  double t0 = 0.0;            // 0: pick m / max(1, |f0(x0)|)
  double growth = 20.0;
  double gap_tol = 1e-9;      // stop when m / t <= gap_tol * max(1, |f0|)
  double newton_tol = 1e-12;  // half squared Newton decrement
  int max_newton = 100;       // per centering step
  int max_outer = 60;
};

struct BarrierResult {
  Eigen::VectorXd x;
  Eigen::VectorXd ineq_duals;  // 1 / (-t g_i)
  Eigen::VectorXd eq_duals;
  double objective = 0.0;
  double gap = 0.0;            // m / t
  int newton_steps = 0;
  bool converged = false;

  // Scaled KKT residuals at the returned point.
  double stationarity = 0.0;
  double primal_infeasibility = 0.0;
  double complementarity = 0.0;
};

/// Log-barrier interior-point method with Newton centering. x0 must be
/// strictly feasible for the inequalities and satisfy the equalities.
BarrierResult solve_barrier(const ConvexProgram& prog, const Eigen::VectorXd& x0,
                            const BarrierOptions& opt = {});

}  // namespace uavmec::numerics

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

#include <vector>

#include "uavmec/model.hpp"

namespace uavmec {

/// Distance-dependent energy of one slot: A |u|^2 - 2 b.u + c, i.e. the sum
/// of coef * (|u - p|^2 + H^2) over the streams served from that waypoint.
struct SlotQuadratic {
  double a = 0.0;
  Vec2 b;
  double c = 0.0;

  double operator()(Vec2 u) const { return a * u.norm2() - 2.0 * b.dot(u) + c; }
};

/// Objective of the trajectory subproblem with schedule and bandwidth fixed:
/// w_U tau (theta1 |du|^3 / tau^3 + theta2 / v) + sum of slot quadratics.
struct TrajectoryObjective {
  std::vector<SlotQuadratic> slots;  // index n-1
  double fly_cubic = 0.0;            // w_U theta1 / tau^2, multiplies |du|^3
  double fly_inverse = 0.0;          // w_U tau theta2, multiplies 1/v

  /// Exact energy of a trajectory, speeds floored as in fly_energy.
  double true_value(const Trajectory& u) const;
  /// Surrogate with slack speeds in the inverse term.
  double surrogate_value(const Trajectory& u, const std::vector<double>& vtilde) const;
};

/// Per-stream coefficient w delta N0 (2^(l/(delta b)) - 1) / h0 of the
/// (|u - p|^2 + H^2) factor; zero for an idle stream.
double distance_coefficient(const Scenario& scn, double weight, double bits, double band);

TrajectoryObjective build_convex_objective(const Scenario& scn, const Schedule& z,
                                           const BandwidthPlan& b);

struct ScaState {
  Trajectory anchor;
  std::vector<double> vtilde;   // slack speeds paired with the anchor
  int iteration = 0;
  std::vector<double> history;  // true objective of every accepted anchor
  double damping = 1.0;
  bool degenerate = false;      // some anchor segment slower than the speed floor
};

struct ScaStepReport {
  bool accepted = false;
  bool solver_converged = false;
  double surrogate = 0.0;       // optimum of the convex program
  double stationarity = 0.0;
  double primal_infeasibility = 0.0;
  double complementarity = 0.0;
};

/// One convex subproblem around state.anchor; moves the anchor when the true
/// objective does not increase, otherwise halves the step towards the
/// minimiser before giving up.
ScaStepReport sca_step(const Scenario& scn, const TrajectoryObjective& obj, ScaState& state);

struct TrajectoryResult {
  Trajectory trajectory;
  std::vector<double> vtilde;
  std::vector<double> history;
  int iterations = 0;
  bool converged = false;
  bool degenerate = false;
  // Worst KKT residuals over the inner convex solves.
  double stationarity = 0.0;
  double primal_infeasibility = 0.0;
  double complementarity = 0.0;
};

struct TrajectoryOptions {
  double rel_tol = 1e-4;
  int max_iterations = 30;
};

/// Successive convex approximation from u_init (replaced by a loiter loop
/// when its segments are too slow to linearise).
TrajectoryResult solve_p13(const Scenario& scn, const Schedule& z, const BandwidthPlan& b,
                           const Trajectory& u_init, const TrajectoryOptions& opt = {});

/// Chord plus a closed loop, for endpoints too close to fly straight.
Trajectory loiter_trajectory(const Scenario& scn);

}  // namespace uavmec

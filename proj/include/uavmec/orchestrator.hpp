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

#include <string>
#include <vector>

#include "uavmec/bandwidth.hpp"
#include "uavmec/model.hpp"
#include "uavmec/scheduler.hpp"
#include "uavmec/trajectory.hpp"

namespace uavmec {

enum class Scheme { kProposed, kDirectTrajectory, kOffloadingOnly, kEqualBandwidth, kLocalComputing };

std::string scheme_name(Scheme s);
/// Accepts the CLI spellings: proposed, direct, offload-only, equal-bw, local.
Scheme parse_scheme(const std::string& name);
std::vector<Scheme> all_schemes();

struct SolveConfig {
  double outer_tol = 1e-4;  // epsilon, J
  double inner_tol = 1e-4;  // epsilon_1, J
  int max_outer = 10;
  Scheme scheme = Scheme::kProposed;
  SchedulerOptions scheduler;
  TrajectoryOptions trajectory;

  void validate() const;
};

/// One outer pass of the alternation.
struct PassRecord {
  double wsec = 0.0;
  double after_schedule = 0.0;
  double after_bandwidth = 0.0;
  double after_trajectory = 0.0;
  int scheduler_iterations = 0;
  int sca_iterations = 0;
};

struct SolveResult {
  Scheme scheme = Scheme::kProposed;
  Schedule schedule;
  BandwidthPlan bandwidth;
  Trajectory trajectory;
  std::vector<double> vtilde;  // slack speeds of the last trajectory step; empty if none ran
  DualState duals;
  EnergyReport energy;
  std::vector<double> wsec_trace;  // E_zeta after each pass; pass i yields zeta = i + 1
  std::vector<PassRecord> passes;
  bool converged = false;
  bool scheduler_converged = true;
  bool trajectory_converged = true;
  bool degenerate_trajectory = false;
  int corner_hits = 0;
  double wall_seconds = 0.0;
  // Worst KKT residuals reported by the trajectory solves.
  double trajectory_stationarity = 0.0;
  double trajectory_complementarity = 0.0;
};

/// Alternating optimisation for the configured scheme.
SolveResult solve(const Scenario& scn, const SolveConfig& cfg = {});

SolveResult baseline_direct_trajectory(const Scenario& scn, SolveConfig cfg = {});
SolveResult baseline_offloading_only(const Scenario& scn, SolveConfig cfg = {});
SolveResult baseline_equal_bandwidth(const Scenario& scn, SolveConfig cfg = {});
SolveResult baseline_local_computing(const Scenario& scn);

/// Minimum of the scheduling subproblem by a log-barrier interior-point
/// method on the per-UE convex programs; +inf when infeasible.
double oracle_p11(const Scenario& scn, const Trajectory& u, const BandwidthPlan& b);

enum class SweepParam { kTaskBits, kHorizon, kOutputRatio, kWeightUav };

std::string sweep_param_name(SweepParam p);
/// I (Mbit), T (s), O, wU.
SweepParam parse_sweep_param(const std::string& name);
/// Scenario with the swept parameter set uniformly (I in bits).
Scenario apply_sweep(const Scenario& base, SweepParam p, double value);

struct SweepRow {
  double value = 0.0;  // in the parameter's display unit (Mbit for I)
  Scheme scheme = Scheme::kProposed;
  SolveResult result;
};

/// Every scheme at every grid point. Grid points run on UAVMEC_THREADS
/// worker threads (default 1); rows come back in grid-then-scheme order.
std::vector<SweepRow> sweep(const Scenario& base, SweepParam p, const std::vector<double>& grid,
                            const std::vector<Scheme>& schemes, const SolveConfig& cfg = {});

}  // namespace uavmec

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

#include <optional>
#include <vector>

#include "uavmec/energy.hpp"
#include "uavmec/model.hpp"

namespace uavmec {

/// Lagrange multipliers of the scheduling subproblem.
///
/// lambda(k, n-1) prices receive-causality at slot n in 2..N-1 and
/// mu(k, n-1) prices output-causality at slot n in 3..N; entries outside
/// those ranges stay zero. eta, rho and beta price the relay balance, the
/// output balance and task completion of UE k.
struct DualState {
  Grid lambda;
  Grid mu;
  std::vector<double> eta, rho, beta;

  static DualState zeros(const Scenario& scn);
};

/// Suffix sums of one UE's causality multipliers, 1-based and padded with
/// zeros so that any n in 0..N+1 is addressable:
///   lambda_tilde[n] = sum_{i=n}^{N-1} lambda_i,  lambda_hat[n] = lambda_tilde[n+1],
///   mu_tilde[n]     = sum_{i=n}^{N}   mu_i,      mu_hat[n]     = mu_tilde[n+1].
struct SuffixSums {
  std::vector<double> lambda_tilde, lambda_hat, mu_tilde, mu_hat;

  static SuffixSums of(const DualState& d, std::size_t k);
};

/// log2 priority indicators; -inf where the corresponding band is zero or
/// the slot is outside the stream's admissible range.
struct PriorityIndicators {
  Grid phi_ue;
  Grid phi_uav_off;
  Grid phi_uav_down;
};

PriorityIndicators compute_indicators(const Scenario& scn, const Gains& gains,
                                      const BandwidthPlan& b);

/// Lagrangian minimiser of the scheduling subproblem for fixed multipliers.
Schedule closed_form_schedule(const Scenario& scn, const Gains& gains, const BandwidthPlan& b,
                              const DualState& d);

/// Causality subgradients of UE k: d_lambda[n-1] for n in 2..N-1 and
/// d_mu[n-1] for n in 3..N (zeros elsewhere).
struct Subgradients {
  std::vector<double> d_lambda;
  std::vector<double> d_mu;
};

Subgradients subgradients(const Scenario& scn, const Schedule& z, std::size_t k);

struct EqualityDuals {
  double beta = 0.0;
  double eta = 0.0;
  double rho = 0.0;
  // Task balance residual sum(x) - sum(l) left by the search, in bits.
  double residual = 0.0;
  // 0: interior root; -1: no root at beta = 0 (all-offload corner);
  // +1: no root below beta_max (all-local corner).
  int corner = 0;
  int evaluations = 0;
};

enum class LocalComputing { kAllowed, kForbidden };

/// Nested searches for (beta_k, eta_k, rho_k) with the causality multipliers
/// of UE k held fixed. With local computing forbidden the task must be fully
/// offloaded and beta_k only fixes the offset between the UE and relay prices.
EqualityDuals solve_equality_duals(const Scenario& scn, const Gains& gains, const BandwidthPlan& b,
                                   const DualState& d, std::size_t k,
                                   LocalComputing local = LocalComputing::kAllowed);

/// 3 C_k w_k kappa_k (I_k C_k / T)^2.
double beta_max(const Scenario& scn, std::size_t k);

/// Weighted energy of the scheduling subproblem (flight excluded).
double p11_objective(const Scenario& scn, const Gains& gains, const BandwidthPlan& b,
                     const Schedule& z);
double p11_objective_ue(const Scenario& scn, const Gains& gains, const BandwidthPlan& b,
                        const Schedule& z, std::size_t k);

/// Turns an approximately feasible schedule into an exactly feasible one:
/// snaps sub-bit values to zero, restores the three balances by scaling and
/// defers processing or download that runs ahead of causality.
void repair_schedule(const Scenario& scn, const BandwidthPlan& b, Schedule& z, std::size_t k,
                     LocalComputing local = LocalComputing::kAllowed);

struct SchedulerOptions {
  double objective_tol = 1e-4;  // epsilon_1, J
  int max_iterations = 500;
  double gap_tol = 1e-4;        // relative duality gap required to stop
  double step_gain = 0.1;       // first step moves a multiplier by this fraction of its scale
  double step_exponent = 0.5;
  LocalComputing local = LocalComputing::kAllowed;
};

struct SchedulerResult {
  Schedule schedule;
  DualState duals;
  std::vector<double> objective_trace;  // feasible scheduling objective per iteration
  std::vector<double> dual_trace;       // Lagrangian value per iteration
  double objective = 0.0;
  double gap = 0.0;                     // best objective minus best Lagrangian bound
  int iterations = 0;
  bool converged = false;
  int corner_hits = 0;                  // equality searches that ended on a bracket end
};

/// Dual subgradient loop over the causality multipliers with the nested
/// equality searches at every iterate. The best feasible iterate is returned;
/// when `incumbent` is supplied and cheaper, it is returned instead.
SchedulerResult solve_p11(const Scenario& scn, const Trajectory& u, const BandwidthPlan& b,
                          const std::optional<DualState>& warm = std::nullopt,
                          const SchedulerOptions& opt = {},
                          const Schedule* incumbent = nullptr);

/// Bits below this count are treated as zero when snapping schedules.
inline constexpr double kBitFloor = 1.0;

}  // namespace uavmec

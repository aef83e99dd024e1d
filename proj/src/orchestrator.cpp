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

#include "uavmec/orchestrator.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <thread>

#include "uavmec/energy.hpp"

namespace uavmec {

std::string scheme_name(Scheme s) {
  switch (s) {
    case Scheme::kProposed: return "proposed";
    case Scheme::kDirectTrajectory: return "direct";
    case Scheme::kOffloadingOnly: return "offload-only";
    case Scheme::kEqualBandwidth: return "equal-bw";
    case Scheme::kLocalComputing: return "local";
  }
  return "unknown";
}

Scheme parse_scheme(const std::string& name) {
  for (Scheme s : all_schemes())
    if (scheme_name(s) == name) return s;
  throw std::invalid_argument("unknown scheme '" + name + "'");
}

std::vector<Scheme> all_schemes() {
  return {Scheme::kProposed, Scheme::kDirectTrajectory, Scheme::kOffloadingOnly,
          Scheme::kEqualBandwidth, Scheme::kLocalComputing};
}

void SolveConfig::validate() const {
  if (!(outer_tol > 0.0) || !(inner_tol > 0.0)) throw std::invalid_argument("tolerances must be positive");
  if (max_outer < 1) throw std::invalid_argument("max_outer must be at least 1");
  if (scheduler.max_iterations < 1) throw std::invalid_argument("scheduler needs one iteration");
  if (trajectory.max_iterations < 0) throw std::invalid_argument("negative SCA iteration cap");
}

SolveResult baseline_local_computing(const Scenario& scn) {
  scn.validate();
  const auto t0 = std::chrono::steady_clock::now();
  SolveResult r;
  r.scheme = Scheme::kLocalComputing;
  r.schedule = Schedule::zeros(scn);
  for (std::size_t k = 0; k < scn.K(); ++k) {
    const double f = scn.task_bits[k] * scn.cycles_per_bit[k] / scn.horizon;
    for (std::size_t n = 0; n < scn.N(); ++n) r.schedule.f_ue(k, n) = f;
  }
  r.bandwidth = BandwidthPlan::zeros(scn);
  r.trajectory = Trajectory::direct(scn);
  r.duals = DualState::zeros(scn);
  r.energy = wsec(scn, r.schedule, r.bandwidth, r.trajectory);
  r.wsec_trace = {r.energy.wsec};
  r.converged = true;
  r.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

SolveResult solve(const Scenario& scn, const SolveConfig& cfg) {
  scn.validate();
  cfg.validate();
  if (cfg.scheme == Scheme::kLocalComputing) return baseline_local_computing(scn);
  const auto t0 = std::chrono::steady_clock::now();

  SolveResult r;
  r.scheme = cfg.scheme;
  r.trajectory = Trajectory::direct(scn);
  r.bandwidth = structural_bandwidth(scn);
  r.schedule = Schedule::zeros(scn);

  SchedulerOptions sopt = cfg.scheduler;
  sopt.objective_tol = cfg.inner_tol;
  if (cfg.scheme == Scheme::kOffloadingOnly) sopt.local = LocalComputing::kForbidden;

  std::optional<DualState> warm;
  for (int pass_no = 1; pass_no <= cfg.max_outer; ++pass_no) {
    PassRecord pass;
    // Step 1: scheduling.
    const SchedulerResult s = solve_p11(scn, r.trajectory, r.bandwidth, warm, sopt,
                                        pass_no > 1 ? &r.schedule : nullptr);
    r.schedule = s.schedule;
    r.duals = s.duals;
    warm = s.duals;
    r.corner_hits += s.corner_hits;
    r.scheduler_converged = r.scheduler_converged && s.converged;
    pass.scheduler_iterations = s.iterations;
    pass.after_schedule = wsec(scn, r.schedule, r.bandwidth, r.trajectory).wsec;

    // Step 2: bandwidth.
    BandwidthPlan next = cfg.scheme == Scheme::kEqualBandwidth
                             ? equal_bandwidth(scn, r.schedule)
                             : solve_p12(scn, r.trajectory, r.schedule).plan;
    r.bandwidth = std::move(next);
    pass.after_bandwidth = wsec(scn, r.schedule, r.bandwidth, r.trajectory).wsec;

    // Step 3: trajectory.
    if (cfg.scheme != Scheme::kDirectTrajectory) {
      const TrajectoryResult t = solve_p13(scn, r.schedule, r.bandwidth, r.trajectory, cfg.trajectory);
      r.trajectory = t.trajectory;
      r.vtilde = t.vtilde;
      pass.sca_iterations = t.iterations;
      r.trajectory_converged = r.trajectory_converged && t.converged;
      r.degenerate_trajectory = r.degenerate_trajectory || t.degenerate;
      r.trajectory_stationarity = std::max(r.trajectory_stationarity, t.stationarity);
      r.trajectory_complementarity = std::max(r.trajectory_complementarity, t.complementarity);
    }
    r.energy = wsec(scn, r.schedule, r.bandwidth, r.trajectory);
    pass.after_trajectory = r.energy.wsec;
    pass.wsec = r.energy.wsec;
    r.passes.push_back(pass);
    r.wsec_trace.push_back(r.energy.wsec);

    const std::size_t m = r.wsec_trace.size();
    if (m >= 2 && std::abs(r.wsec_trace[m - 1] - r.wsec_trace[m - 2]) < cfg.outer_tol) {
      r.converged = true;
      break;
    }
  }
  r.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

SolveResult baseline_direct_trajectory(const Scenario& scn, SolveConfig cfg) {
  cfg.scheme = Scheme::kDirectTrajectory;
  return solve(scn, cfg);
}

SolveResult baseline_offloading_only(const Scenario& scn, SolveConfig cfg) {
  cfg.scheme = Scheme::kOffloadingOnly;
  return solve(scn, cfg);
}

SolveResult baseline_equal_bandwidth(const Scenario& scn, SolveConfig cfg) {
  cfg.scheme = Scheme::kEqualBandwidth;
  return solve(scn, cfg);
}

std::string sweep_param_name(SweepParam p) {
  switch (p) {
    case SweepParam::kTaskBits: return "I";
    case SweepParam::kHorizon: return "T";
    case SweepParam::kOutputRatio: return "O";
    case SweepParam::kWeightUav: return "wU";
  }
  return "?";
}

SweepParam parse_sweep_param(const std::string& name) {
  if (name == "I") return SweepParam::kTaskBits;
  if (name == "T") return SweepParam::kHorizon;
  if (name == "O") return SweepParam::kOutputRatio;
  if (name == "wU" || name == "w_U") return SweepParam::kWeightUav;
  throw std::invalid_argument("unknown sweep parameter '" + name + "' (expected I, T, O or wU)");
}

Scenario apply_sweep(const Scenario& base, SweepParam p, double value) {
  Scenario s = base;
  switch (p) {
    case SweepParam::kTaskBits:
      for (double& i : s.task_bits) i = value * 1e6;
      break;
    case SweepParam::kHorizon:
      s.horizon = value;
      for (double& t : s.latency) t = value;
      break;
    case SweepParam::kOutputRatio:
      for (double& o : s.output_ratio) o = value;
      break;
    case SweepParam::kWeightUav:
      s.weight_uav = value;
      break;
  }
  return s;
}

std::vector<SweepRow> sweep(const Scenario& base, SweepParam p, const std::vector<double>& grid,
                            const std::vector<Scheme>& schemes, const SolveConfig& cfg) {
  std::vector<SweepRow> rows(grid.size() * schemes.size());
  for (std::size_t i = 0; i < grid.size(); ++i)
    for (std::size_t j = 0; j < schemes.size(); ++j) {
      rows[i * schemes.size() + j].value = grid[i];
      rows[i * schemes.size() + j].scheme = schemes[j];
    }
  auto run = [&](std::size_t idx) {
    SweepRow& row = rows[idx];
    SolveConfig c = cfg;
    c.scheme = row.scheme;
    row.result = solve(apply_sweep(base, p, row.value), c);
  };

  unsigned threads = 1;
  if (const char* env = std::getenv("UAVMEC_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) threads = static_cast<unsigned>(v);
  }
  threads = std::min<unsigned>(threads, static_cast<unsigned>(rows.size()));
  if (threads <= 1) {
    for (std::size_t i = 0; i < rows.size(); ++i) run(i);
    return rows;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(threads);
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      try {
        for (std::size_t i = t; i < rows.size(); i += threads) run(i);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return rows;
}

}  // namespace uavmec

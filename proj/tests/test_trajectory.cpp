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

#include <doctest.h>

#include <cmath>
#include <random>

#include "support.hpp"
#include "uavmec/bandwidth.hpp"
#include "uavmec/energy.hpp"
#include "uavmec/feasibility.hpp"
#include "uavmec/orchestrator.hpp"
#include "uavmec/trajectory.hpp"

using namespace uavmec;
using doctest::Approx;

TEST_CASE("distance coefficient") {
  const Scenario s = Scenario::reference();
  CHECK(distance_coefficient(s, 1.0, 0.0, 0.0) == 0.0);
  const double c = distance_coefficient(s, 1.0, 1e6, 3e7);
  CHECK(c == Approx(0.05 * 1e-9 * (std::cbrt(4.0) - 1.0) / 1e-3).epsilon(1e-12));
  CHECK(c == Approx(2.937e-8).epsilon(1e-3));
  // coefficient * (d^2 + H^2) is the transmission energy itself.
  const Vec2 u{1.5, -2.0};
  const double d2 = (u - s.ue_pos[0]).norm2() + 100.0;
  CHECK(c * d2 == Approx(transmission_energy(s, 1e6, 3e7, channel_gain_ue(s, u, 0))).epsilon(1e-12));
}

TEST_CASE("convex objective agrees with wsec on a fixed trajectory") {
  const Scenario s = Scenario::reference();
  SolveConfig cfg;
  cfg.max_outer = 1;
  const SolveResult r = solve(s, cfg);
  const TrajectoryObjective obj = build_convex_objective(s, r.schedule, r.bandwidth);
  const EnergyReport e = r.energy;
  const double radio = s.weight_uav * (e.total_uav_offload + e.total_uav_download) + e.total_ue_offload;
  const double fly = s.weight_uav * e.total_uav_fly;
  CHECK(obj.true_value(r.trajectory) == Approx(radio + fly).epsilon(1e-9));

  // Slots without bits contribute only flight.
  const TrajectoryObjective none = build_convex_objective(s, Schedule::zeros(s), BandwidthPlan::zeros(s));
  for (const auto& q : none.slots) CHECK(q.a == 0.0);
  CHECK(none.true_value(r.trajectory) == Approx(fly).epsilon(1e-12));
}

TEST_CASE("linearised speed bound is an inner approximation") {
  // If vt^2 tau^2 - 2 a.d + |a|^2 <= 0 then vt tau <= |d|, for any anchor step a.
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int i = 0; i < 2000; ++i) {
    const Vec2 a{u(rng), u(rng)}, d{u(rng), u(rng)};
    const double tau = 0.2;
    const double rhs = 2.0 * a.dot(d) - a.norm2();
    if (rhs <= 0.0) continue;
    const double vt = std::sqrt(rhs) / tau;  // largest slack speed allowed
    CHECK(vt * tau <= d.norm() * (1.0 + 1e-12));
  }
}

TEST_CASE("flight-only SCA from the chord stays on the chord") {
  const Scenario s = Scenario::reference();
  const TrajectoryResult r = solve_p13(s, Schedule::zeros(s), BandwidthPlan::zeros(s), Trajectory::direct(s));
  CHECK(r.converged);
  for (std::size_t n = 0; n < s.N(); ++n) {
    CHECK(r.trajectory.speeds[n] == Approx(1.0).epsilon(1e-6));
    CHECK(r.vtilde[n] == Approx(r.trajectory.speeds[n]).epsilon(1e-6));
  }
}

TEST_CASE("coincident endpoints fall back to a loiter loop") {
  Scenario s = Scenario::reference();
  s.uav_end = s.uav_start;
  const TrajectoryResult r = solve_p13(s, Schedule::zeros(s), BandwidthPlan::zeros(s), Trajectory::direct(s));
  CHECK(r.degenerate);
  CHECK(r.trajectory.waypoints.front() == s.uav_start);
  CHECK(r.trajectory.waypoints.back() == s.uav_end);
  const double hover = s.weight_uav * s.num_slots * fly_energy(s, kSpeedFloor);
  CHECK(r.history.back() < 0.1 * hover);
  for (double v : r.trajectory.speeds) CHECK(v == Approx(min_power_speed(s)).epsilon(0.05));
}

TEST_CASE("SCA on a solver schedule: monotone, feasible, dominated and bent towards the heavy UE") {
  Scenario s = Scenario::reference();
  s.task_bits = {600e6, 200e6, 400e6, 200e6};
  SolveConfig cfg;
  cfg.max_outer = 1;
  cfg.scheme = Scheme::kDirectTrajectory;
  const SolveResult fixed = solve(s, cfg);
  const Trajectory chord = Trajectory::direct(s);
  const TrajectoryResult r = solve_p13(s, fixed.schedule, fixed.bandwidth, chord);

  for (std::size_t i = 1; i < r.history.size(); ++i) CHECK(r.history[i] <= r.history[i - 1] + 1e-9);
  CHECK(r.history.back() < r.history.front());
  CHECK(r.trajectory.waypoints.front() == s.uav_start);
  CHECK(r.trajectory.waypoints.back() == s.uav_end);
  for (std::size_t n = 0; n < s.N(); ++n) {
    CHECK(r.trajectory.speeds[n] <= s.v_max + 1e-9);
    CHECK(r.vtilde[n] <= r.trajectory.speeds[n] + 1e-6);
    CHECK(r.vtilde[n] >= kSpeedFloor);
    const double exact = fly_energy(s, r.trajectory.speeds[n]);
    const double bound = s.slot_len() * (s.fly_coeff_1 * std::pow(r.trajectory.speeds[n], 3) +
                                         s.fly_coeff_2 / r.vtilde[n]);
    CHECK(bound >= exact * (1.0 - 1e-12));
  }
  CHECK(r.stationarity <= 1e-5);
  CHECK(r.complementarity <= 1e-5);
  CHECK(r.primal_infeasibility <= 1e-9);
  CHECK(check_feasibility(s, fixed.schedule, fixed.bandwidth, r.trajectory).empty());

  // UE 1 carries the largest task: the path gets closer to it than the chord.
  auto closest = [&](const Trajectory& u) {
    double best = INFINITY;
    for (const Vec2& p : u.waypoints) best = std::min(best, (p - s.ue_pos[0]).norm());
    return best;
  };
  CHECK(closest(r.trajectory) < closest(chord));

  const SolveResult wsec_after = [&] {
    SolveResult x = fixed;
    x.trajectory = r.trajectory;
    x.energy = wsec(s, x.schedule, x.bandwidth, x.trajectory);
    return x;
  }();
  CHECK(wsec_after.energy.wsec < fixed.energy.wsec);
}

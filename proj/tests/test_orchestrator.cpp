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
#include <sstream>

#include "uavmec/feasibility.hpp"
#include "uavmec/orchestrator.hpp"
#include "uavmec/report.hpp"

using namespace uavmec;
using doctest::Approx;

namespace {

Scenario light() {
  // Short horizon keeps these runs quick while exercising every stream.
  Scenario s = Scenario::reference();
  s.num_slots = 12;
  s.task_bits.assign(4, 120e6);
  return s;
}

}  // namespace

TEST_CASE("local computing baseline") {
  const Scenario s = Scenario::reference();
  const SolveResult r = baseline_local_computing(s);
  const double per_ue = s.horizon * 1e-28 * std::pow(400e6 * 1000.0 / 10.0, 3);
  CHECK(per_ue == Approx(6.4e4).epsilon(1e-12));
  CHECK(r.energy.ue_weighted == Approx(2.56e5).epsilon(1e-12));
  CHECK(r.energy.total_uav_offload == 0.0);
  CHECK(check_feasibility(s, r.schedule, r.bandwidth, r.trajectory).empty());
  for (double o : {0.2, 0.5, 1.0}) {
    const SolveResult q = baseline_local_computing(apply_sweep(s, SweepParam::kOutputRatio, o));
    CHECK(q.energy.wsec == r.energy.wsec);
  }
}

TEST_CASE("proposed scheme: feasible, monotone and stopping rule") {
  const Scenario s = light();
  SolveConfig cfg;
  const SolveResult r = solve(s, cfg);
  CHECK(check_feasibility(s, r.schedule, r.bandwidth, r.trajectory).empty());
  for (std::size_t i = 1; i < r.wsec_trace.size(); ++i)
    CHECK(r.wsec_trace[i] <= r.wsec_trace[i - 1] + 1e-9);
  CHECK(r.wsec_trace.size() == r.passes.size());
  CHECK(r.energy.wsec == r.wsec_trace.back());
  for (const PassRecord& p : r.passes) {
    CHECK(p.after_bandwidth <= p.after_schedule + 1e-9);
    CHECK(p.after_trajectory <= p.after_bandwidth + 1e-9);
  }
  if (r.converged) {
    const std::size_t m = r.wsec_trace.size();
    CHECK(std::abs(r.wsec_trace[m - 1] - r.wsec_trace[m - 2]) < cfg.outer_tol);
  }

  SolveConfig loose = cfg;
  loose.outer_tol = 1e9;
  const SolveResult q = solve(s, loose);
  CHECK(q.converged);
  CHECK(q.wsec_trace.size() == 2);

  SolveConfig one = cfg;
  one.max_outer = 1;
  CHECK_FALSE(solve(s, one).converged);
}

TEST_CASE("baselines keep their defining restrictions and rank behind the proposed scheme") {
  const Scenario s = light();
  const SolveResult prop = solve(s);
  const SolveResult direct = baseline_direct_trajectory(s);
  const SolveResult off = baseline_offloading_only(s);
  const SolveResult eq = baseline_equal_bandwidth(s);
  const SolveResult local = baseline_local_computing(s);

  for (const SolveResult* r : {&direct, &off, &eq})
    CHECK(check_feasibility(s, r->schedule, r->bandwidth, r->trajectory).empty());

  for (double v : direct.trajectory.speeds) CHECK(v == Approx(1.0).epsilon(1e-12));

  CHECK(off.energy.total_ue_local == 0.0);
  for (std::size_t k = 0; k < s.K(); ++k) {
    double sent = 0.0;
    for (std::size_t n = 0; n < s.N(); ++n) sent += off.schedule.l_off_ue(k, n);
    CHECK(sent == Approx(s.task_bits[k]).epsilon(1e-9));
  }

  for (std::size_t k = 0; k < s.K(); ++k)
    for (std::size_t n = 0; n < s.N(); ++n) {
      int active = 0;
      for (double l : {eq.schedule.l_off_ue(k, n), eq.schedule.l_off_uav(k, n), eq.schedule.l_down_uav(k, n)})
        active += l >= 1.0;
      if (active >= 2) CHECK(eq.bandwidth.b_off_ue(k, n) + eq.bandwidth.b_off_uav(k, n) +
                                 eq.bandwidth.b_down_uav(k, n) ==
                             Approx(s.bandwidth_total));
      if (active == 2 && eq.schedule.l_off_ue(k, n) >= 1.0)
        CHECK(eq.bandwidth.b_off_ue(k, n) == Approx(s.bandwidth_total / 2));
      if (active == 3) CHECK(eq.bandwidth.b_down_uav(k, n) == Approx(s.bandwidth_total / 3));
    }

  CHECK(prop.energy.wsec <= direct.energy.wsec);
  CHECK(prop.energy.wsec <= eq.energy.wsec);
  CHECK(prop.energy.wsec <= local.energy.wsec);
}

TEST_CASE("identical inputs give identical results") {
  const Scenario s = light();
  const SolveResult a = solve(s), b = solve(s);
  CHECK(a.wsec_trace == b.wsec_trace);
  std::ostringstream x, y;
  write_schedule_csv(x, s, a.schedule);
  write_schedule_csv(y, s, b.schedule);
  CHECK(x.str() == y.str());
}

TEST_CASE("sweep ordering and parameter mapping") {
  Scenario s = light();
  s.num_slots = 6;
  const std::vector<double> grid = {60.0, 80.0};
  const auto rows = sweep(s, SweepParam::kTaskBits, grid, {Scheme::kLocalComputing, Scheme::kDirectTrajectory});
  REQUIRE(rows.size() == 4);
  CHECK(rows[0].value == 60.0);
  CHECK(rows[0].scheme == Scheme::kLocalComputing);
  CHECK(rows[1].scheme == Scheme::kDirectTrajectory);
  CHECK(rows[3].value == 80.0);
  CHECK(rows[2].result.energy.wsec > rows[0].result.energy.wsec);
  CHECK(rows[3].result.energy.wsec > rows[1].result.energy.wsec);

  CHECK(apply_sweep(s, SweepParam::kTaskBits, 450.0).task_bits[2] == 450e6);
  const Scenario t = apply_sweep(s, SweepParam::kHorizon, 12.0);
  CHECK(t.horizon == 12.0);
  CHECK(t.latency[1] == 12.0);
  CHECK(apply_sweep(s, SweepParam::kOutputRatio, 0.5).output_ratio[3] == 0.5);
  CHECK(apply_sweep(s, SweepParam::kWeightUav, 0.7).weight_uav == 0.7);

  CHECK(parse_sweep_param("wU") == SweepParam::kWeightUav);
  CHECK_THROWS(parse_sweep_param("Q"));
  for (Scheme sc : all_schemes()) CHECK(parse_scheme(scheme_name(sc)) == sc);
  CHECK_THROWS(parse_scheme("fastest"));
}

TEST_CASE("configuration validation") {
  SolveConfig c;
  c.outer_tol = 0.0;
  CHECK_THROWS(c.validate());
  c = SolveConfig{};
  c.max_outer = 0;
  CHECK_THROWS(c.validate());
  Scenario s = Scenario::reference();
  s.v_max = 0.1;
  CHECK_THROWS_AS(solve(s), ModelError);
}

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
#include <numbers>
#include <random>

#include "support.hpp"
#include "uavmec/feasibility.hpp"
#include "uavmec/orchestrator.hpp"
#include "uavmec/scheduler.hpp"

using namespace uavmec;
using doctest::Approx;

namespace {

Scenario small(int slots) {
  Scenario s = Scenario::reference();
  s.num_slots = slots;
  s.resize_ues(1);
  return s;
}

Gains flat_gains(const Scenario& s, double h) {
  Gains g;
  g.ap.assign(s.N(), h);
  g.ue = Grid(s.K(), s.N(), h);
  return g;
}

}  // namespace

TEST_CASE("priority indicators") {
  const Scenario s = small(6);
  const Gains g = flat_gains(s, 1e-5);
  BandwidthPlan b = BandwidthPlan::zeros(s);
  b.b_off_ue(0, 1) = 3e7;
  b.b_off_ue(0, 2) = 6e7;
  b.b_down_uav(0, 3) = 3e7;
  b.b_off_ue(0, 3) = 3e7;

  Scenario same_w = s;
  same_w.weight_uav = 1.0;
  const PriorityIndicators p = compute_indicators(same_w, g, b);
  const double expected = std::log2(3e7 * 1e-5 / (1e-9 * std::numbers::ln2));
  CHECK(expected == Approx(38.655).epsilon(1e-4));
  CHECK(p.phi_ue(0, 1) == Approx(expected).epsilon(1e-14));
  CHECK(p.phi_ue(0, 2) - p.phi_ue(0, 1) == Approx(1.0).epsilon(1e-12));
  CHECK(p.phi_uav_down(0, 3) == Approx(p.phi_ue(0, 3)).epsilon(1e-14));
  CHECK(std::isinf(p.phi_ue(0, 4)));
  CHECK(p.phi_ue(0, 4) < 0.0);

  // Heavier UAV weight lowers its indicators.
  const PriorityIndicators q = compute_indicators(s, g, b);
  CHECK(q.phi_uav_down(0, 3) == Approx(p.phi_uav_down(0, 3) - std::log2(s.weight_uav)).epsilon(1e-12));
}

TEST_CASE("suffix sums are consistent and non-increasing") {
  const Scenario s = small(8);
  DualState d = DualState::zeros(s);
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (std::size_t n = 1; n + 1 < s.N(); ++n) d.lambda(0, n) = u(rng);
  for (std::size_t n = 2; n < s.N(); ++n) d.mu(0, n) = u(rng);
  const SuffixSums ss = SuffixSums::of(d, 0);
  const std::size_t N = s.N();
  for (std::size_t n = 1; n <= N; ++n) {
    double lt = 0.0, mt = 0.0;
    for (std::size_t i = n; i <= N - 1; ++i) lt += d.lambda(0, i - 1);
    for (std::size_t i = n; i <= N; ++i) mt += d.mu(0, i - 1);
    CHECK(ss.lambda_tilde[n] == Approx(lt).epsilon(1e-14));
    CHECK(ss.mu_tilde[n] == Approx(mt).epsilon(1e-14));
    CHECK(ss.lambda_hat[n] == Approx(ss.lambda_tilde[n + 1]).epsilon(1e-14));
    CHECK(ss.mu_hat[n] == Approx(ss.mu_tilde[n + 1]).epsilon(1e-14));
    CHECK(ss.lambda_hat[n] <= ss.lambda_tilde[n]);
    CHECK(ss.mu_tilde[n + 1] <= ss.mu_tilde[n]);
  }
}

TEST_CASE("closed-form schedule: local frequency and boundary structure") {
  const testing::TinyInstance t = testing::tiny_instance(5);
  const Scenario& s = t.scn;
  const Gains g = Gains::along(s, t.u);
  DualState d = DualState::zeros(s);

  Schedule z = closed_form_schedule(s, g, t.b, d);
  for (std::size_t n = 0; n < s.N(); ++n) CHECK(z.f_ue(0, n) == 0.0);

  d.beta[0] = beta_max(s, 0);
  z = closed_form_schedule(s, g, t.b, d);
  const double full = s.task_bits[0] * s.cycles_per_bit[0] / s.horizon;
  for (std::size_t n = 0; n < s.N(); ++n) CHECK(z.f_ue(0, n) == Approx(full).epsilon(1e-12));
  CHECK(beta_max(s, 0) == Approx(3.0 * 1000.0 * 1e-28 * std::pow(s.task_bits[0] * 1000.0 / 10.0, 2)).epsilon(1e-12));

  // Random multipliers never break signs or boundary zeros.
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 25; ++trial) {
    for (std::size_t n = 0; n < s.N(); ++n) {
      d.lambda(0, n) = (n >= 1 && n + 1 < s.N()) ? 1e-9 * u(rng) : 0.0;
      d.mu(0, n) = n >= 2 ? 1e-9 * u(rng) : 0.0;
    }
    d.beta[0] = beta_max(s, 0) * u(rng);
    d.eta[0] = 1e-9 * (u(rng) - 0.5);
    d.rho[0] = 1e-9 * (u(rng) - 0.5);
    z = closed_form_schedule(s, g, t.b, d);
    const std::size_t N = s.N();
    CHECK(z.l_off_ue(0, N - 2) == 0.0);
    CHECK(z.l_off_ue(0, N - 1) == 0.0);
    CHECK(z.f_uav(0, 0) == 0.0);
    CHECK(z.f_uav(0, N - 1) == 0.0);
    CHECK(z.l_off_uav(0, 0) == 0.0);
    CHECK(z.l_off_uav(0, N - 1) == 0.0);
    CHECK(z.l_down_uav(0, 0) == 0.0);
    CHECK(z.l_down_uav(0, 1) == 0.0);
    for (std::size_t n = 0; n < N; ++n) {
      CHECK(z.f_ue(0, n) >= 0.0);
      CHECK(z.l_off_ue(0, n) >= 0.0);
      CHECK(z.f_uav(0, n) >= 0.0);
      CHECK(z.l_off_uav(0, n) >= 0.0);
      CHECK(z.l_down_uav(0, n) >= 0.0);
    }
  }
}

TEST_CASE("causality subgradients match hand partial sums") {
  Scenario s = small(4);
  s.output_ratio[0] = 0.8;
  const double delta = s.subslot_len();  // 2.5 s
  Schedule z = Schedule::zeros(s);
  CHECK(subgradients(s, z, 0).d_lambda == std::vector<double>(4, 0.0));

  const double l[4] = {100, 50, 0, 0};
  const double proc[4] = {0, 100, 50, 0};  // delta f / C
  const double off[4] = {0, 20, 10, 0};
  const double down[4] = {0, 0, 30, 40};
  for (int n = 0; n < 4; ++n) {
    z.l_off_ue(0, n) = l[n];
    z.f_uav(0, n) = proc[n] * s.cycles_per_bit[0] / delta;
    z.l_off_uav(0, n) = off[n];
    z.l_down_uav(0, n) = down[n];
  }
  const Subgradients g = subgradients(s, z, 0);
  // Slot 2: 100 - 120; slot 3: 150 - 180.
  CHECK(g.d_lambda[0] == 0.0);
  CHECK(g.d_lambda[1] == Approx(-20.0).epsilon(1e-12));
  CHECK(g.d_lambda[2] == Approx(-30.0).epsilon(1e-12));
  CHECK(g.d_lambda[3] == 0.0);
  // Slot 3: 0.8 * 120 - 30; slot 4: 0.8 * 180 - 70.
  CHECK(g.d_mu[0] == 0.0);
  CHECK(g.d_mu[1] == 0.0);
  CHECK(g.d_mu[2] == Approx(66.0).epsilon(1e-12));
  CHECK(g.d_mu[3] == Approx(74.0).epsilon(1e-12));
}

TEST_CASE("equality duals reproduce the three balances") {
  for (std::uint64_t seed : {1u, 4u, 9u}) {
    const testing::TinyInstance t = testing::tiny_instance(seed);
    const Scenario& s = t.scn;
    const Gains g = Gains::along(s, t.u);
    DualState d = DualState::zeros(s);
    const EqualityDuals e = solve_equality_duals(s, g, t.b, d, 0);
    d.beta[0] = e.beta;
    d.eta[0] = e.eta;
    d.rho[0] = e.rho;
    CHECK(e.beta >= 0.0);
    CHECK(e.beta <= beta_max(s, 0));
    const Schedule z = closed_form_schedule(s, g, t.b, d);
    double local = 0.0, sent = 0.0, relayed = 0.0, down = 0.0;
    for (std::size_t n = 0; n < s.N(); ++n) {
      local += local_bits(s, 0, z.f_ue(0, n));
      sent += z.l_off_ue(0, n);
      relayed += uav_compute_bits(s, 0, z.f_uav(0, n)) + z.l_off_uav(0, n);
      down += z.l_down_uav(0, n);
    }
    // The searches stop at 1e-9 of the task; repair_schedule closes the rest.
    const double tol = 1e-9 * s.task_bits[0];
    CHECK(std::abs(local + sent - s.task_bits[0]) <= tol);
    CHECK(std::abs(relayed - sent) <= tol);
    CHECK(std::abs(down - s.output_ratio[0] * relayed) <= tol);
  }
}

TEST_CASE("all-local corner when nothing can be offloaded") {
  const testing::TinyInstance t = testing::tiny_instance(3);
  const Scenario& s = t.scn;
  const Gains g = Gains::along(s, t.u);
  DualState d = DualState::zeros(s);
  const BandwidthPlan none = BandwidthPlan::zeros(s);
  const EqualityDuals e = solve_equality_duals(s, g, none, d, 0);
  CHECK(e.beta == Approx(beta_max(s, 0)).epsilon(1e-9));
  CHECK(e.corner == 1);
  d.beta[0] = e.beta;
  const Schedule z = closed_form_schedule(s, g, none, d);
  double sent = 0.0;
  double local = 0.0, relayed = 0.0;
  for (std::size_t n = 0; n < s.N(); ++n) {
    sent += z.l_off_ue(0, n);
    local += local_bits(s, 0, z.f_ue(0, n));
    relayed += uav_compute_bits(s, 0, z.f_uav(0, n)) + z.l_off_uav(0, n);
  }
  CHECK(sent == 0.0);
  CHECK(relayed == 0.0);
  CHECK(local == Approx(s.task_bits[0]).epsilon(1e-12));
}

TEST_CASE("solve_p11 matches the interior-point oracle on tiny instances") {
  for (std::uint64_t seed = 100; seed < 105; ++seed) {
    const testing::TinyInstance t = testing::tiny_instance(seed);
    const SchedulerResult r = solve_p11(t.scn, t.u, t.b);
    const double oracle = oracle_p11(t.scn, t.u, t.b);
    CHECK(r.objective == Approx(oracle).epsilon(1e-2));
    CHECK(r.objective >= oracle * (1.0 - 1e-6));
    CHECK(check_feasibility(t.scn, r.schedule, t.b, t.u).empty());
    CHECK(r.gap >= -1e-9 * std::abs(r.objective));
    for (std::size_t i = 1; i < r.objective_trace.size(); ++i)
      CHECK(r.objective_trace[i] <= r.objective_trace[i - 1]);
  }
}

TEST_CASE("offloading-only scheduling keeps the UE CPU idle") {
  const testing::TinyInstance t = testing::tiny_instance(21);
  SchedulerOptions opt;
  opt.local = LocalComputing::kForbidden;
  const SchedulerResult r = solve_p11(t.scn, t.u, t.b, std::nullopt, opt);
  double sent = 0.0;
  for (std::size_t n = 0; n < t.scn.N(); ++n) {
    CHECK(r.schedule.f_ue(0, n) == 0.0);
    sent += r.schedule.l_off_ue(0, n);
  }
  CHECK(sent == Approx(t.scn.task_bits[0]).epsilon(1e-9));
  CHECK(check_feasibility(t.scn, r.schedule, t.b, t.u).empty());
}

TEST_CASE("oracle is deterministic, falls back to all-local and rejects bad input") {
  const testing::TinyInstance t = testing::tiny_instance(8);
  CHECK(oracle_p11(t.scn, t.u, t.b) == oracle_p11(t.scn, t.u, t.b));

  const Scenario& s = t.scn;
  const double f = s.task_bits[0] * s.cycles_per_bit[0] / s.horizon;
  const double all_local = s.num_slots * s.slot_len() * s.cap_ue[0] * f * f * f;
  CHECK(oracle_p11(s, t.u, BandwidthPlan::zeros(s)) == Approx(all_local).epsilon(1e-12));
  CHECK(oracle_p11(s, t.u, t.b) < all_local);

  BandwidthPlan bad = t.b;
  bad.b_off_uav(0, 2) = -1.0;
  CHECK(std::isinf(oracle_p11(s, t.u, bad)));
  Trajectory short_path = t.u;
  short_path.waypoints.pop_back();
  CHECK(std::isinf(oracle_p11(s, short_path, t.b)));
}

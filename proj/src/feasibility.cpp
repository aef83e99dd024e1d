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

#include "uavmec/feasibility.hpp"

#include <cmath>
#include <sstream>

namespace uavmec {

std::string describe(const Violation& v) {
  std::ostringstream os;
  os << v.constraint;
  if (v.ue >= 0) os << " ue=" << v.ue;
  if (v.slot >= 0) os << " slot=" << v.slot;
  os << " amount=" << v.amount;
  return os.str();
}

std::vector<Violation> check_feasibility(const Scenario& scn, const Schedule& z,
                                         const BandwidthPlan& b, const Trajectory& u,
                                         const FeasibilityTolerance& tol) {
  std::vector<Violation> out;
  const std::size_t K = scn.K(), N = scn.N();
  const double delta = scn.subslot_len();
  const double tau = scn.slot_len();
  auto add = [&](const char* name, std::size_t k, std::size_t n1, double amount) {
    out.push_back({name, static_cast<int>(k), static_cast<int>(n1), amount});
  };

  for (std::size_t k = 0; k < K; ++k) {
    const double C = scn.cycles_per_bit[k];
    const double O = scn.output_ratio[k];
    auto processed = [&](std::size_t idx) { return delta * z.f_uav(k, idx) / C + z.l_off_uav(k, idx); };

    // Signs.
    const Grid* grids[] = {&z.f_ue, &z.l_off_ue, &z.f_uav, &z.l_off_uav, &z.l_down_uav,
                           &b.b_off_ue, &b.b_off_uav, &b.b_down_uav};
    for (const Grid* g : grids)
      for (std::size_t n = 0; n < N; ++n)
        if (!((*g)(k, n) >= 0.0)) add("negative_value", k, n + 1, (*g)(k, n));

    // Boundary zeros (1-based slots listed in comments).
    auto must_zero = [&](const Grid& g, std::size_t idx, const char* name) {
      if (g(k, idx) != 0.0) add(name, k, idx + 1, g(k, idx));
    };
    must_zero(z.l_off_ue, N - 2, "boundary_l_off_ue");  // N-1
    must_zero(z.l_off_ue, N - 1, "boundary_l_off_ue");  // N
    must_zero(z.f_uav, 0, "boundary_f_uav");            // 1
    must_zero(z.f_uav, N - 1, "boundary_f_uav");        // N
    must_zero(z.l_off_uav, 0, "boundary_l_off_uav");
    must_zero(z.l_off_uav, N - 1, "boundary_l_off_uav");
    must_zero(z.l_down_uav, 0, "boundary_l_down_uav");  // 1
    must_zero(z.l_down_uav, 1, "boundary_l_down_uav");  // 2
    must_zero(b.b_off_ue, N - 2, "boundary_b_off_ue");
    must_zero(b.b_off_ue, N - 1, "boundary_b_off_ue");
    must_zero(b.b_off_uav, 0, "boundary_b_off_uav");
    must_zero(b.b_off_uav, N - 1, "boundary_b_off_uav");
    must_zero(b.b_down_uav, 0, "boundary_b_down_uav");
    must_zero(b.b_down_uav, 1, "boundary_b_down_uav");

    // Receive causality, slots 2..N-1.
    double received = 0.0, done = 0.0;
    for (std::size_t n1 = 2; n1 <= N - 1; ++n1) {
      received += z.l_off_ue(k, n1 - 2);
      done += processed(n1 - 1);
      if (done > received + tol.bits) add("causality_receive", k, n1, done - received);
    }
    // Output causality, slots 3..N.
    double produced = 0.0, sent = 0.0;
    for (std::size_t n1 = 3; n1 <= N; ++n1) {
      produced += O * processed(n1 - 2);
      sent += z.l_down_uav(k, n1 - 1);
      if (sent > produced + tol.bits) add("causality_output", k, n1, sent - produced);
    }

    double total_l = 0.0, total_x = 0.0, total_d = 0.0, total_local = 0.0;
    for (std::size_t n = 0; n < N; ++n) {
      total_l += z.l_off_ue(k, n);
      total_x += processed(n);
      total_d += z.l_down_uav(k, n);
      total_local += tau * z.f_ue(k, n) / C;
    }
    if (std::abs(total_x - total_l) > tol.bits) add("balance_relay", k, -1, total_x - total_l);
    if (std::abs(total_d - O * total_x) > tol.bits)
      add("balance_output", k, -1, total_d - O * total_x);
    const double task_gap = total_local + total_l - scn.task_bits[k];
    if (std::abs(task_gap) > tol.bits) add("task_completion", k, -1, task_gap);

    for (std::size_t n = 0; n < N; ++n) {
      const double s = b.sum(k, n);
      if (s > 0.0 && std::abs(s - scn.bandwidth_total) > tol.band_hz)
        add("bandwidth_sum", k, n + 1, s - scn.bandwidth_total);
      if (z.l_off_ue(k, n) > 0.0 && !(b.b_off_ue(k, n) > 0.0))
        add("rate_infeasible_off_ue", k, n + 1, z.l_off_ue(k, n));
      if (z.l_off_uav(k, n) > 0.0 && !(b.b_off_uav(k, n) > 0.0))
        add("rate_infeasible_off_uav", k, n + 1, z.l_off_uav(k, n));
      if (z.l_down_uav(k, n) > 0.0 && !(b.b_down_uav(k, n) > 0.0))
        add("rate_infeasible_down_uav", k, n + 1, z.l_down_uav(k, n));
    }
  }

  if (u.waypoints.size() != N + 1) {
    out.push_back({"trajectory_size", -1, -1, static_cast<double>(u.waypoints.size())});
    return out;
  }
  const double scale = 1.0 + scn.uav_start.norm() + scn.uav_end.norm();
  const double e0 = (u.waypoints.front() - scn.uav_start).norm();
  const double e1 = (u.waypoints.back() - scn.uav_end).norm();
  if (e0 > 1e-12 * scale) out.push_back({"endpoint_start", -1, 0, e0});
  if (e1 > 1e-12 * scale) out.push_back({"endpoint_end", -1, static_cast<int>(N), e1});
  for (std::size_t n = 1; n <= N; ++n) {
    const double v = (u.waypoints[n] - u.waypoints[n - 1]).norm() / tau;
    if (v > scn.v_max + 1e-9) out.push_back({"speed", -1, static_cast<int>(n), v - scn.v_max});
  }
  return out;
}

}  // namespace uavmec

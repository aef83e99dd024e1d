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

#include "uavmec/model.hpp"

#include <algorithm>
#include <sstream>

namespace uavmec {

namespace {

bool positive_all(const std::vector<double>& v) {
  for (double x : v)
    if (!(x > 0.0)) return false;
  return true;
}

}  // namespace

Scenario Scenario::reference() {
  Scenario s;
  s.ue_pos = {{5.0, 5.0}, {-5.0, 5.0}, {-5.0, -5.0}, {5.0, -5.0}};
  s.weight_ue.assign(4, 1.0);
  s.cap_ue.assign(4, 1e-28);
  s.task_bits.assign(4, 400e6);
  s.cycles_per_bit.assign(4, 1000.0);
  s.output_ratio.assign(4, 0.8);
  s.latency.assign(4, s.horizon);
  return s;
}

void Scenario::resize_ues(int k) {
  auto fit = [k](auto& v) {
    if (!v.empty()) v.resize(static_cast<std::size_t>(k), v.front());
  };
  num_ues = k;
  fit(ue_pos);
  fit(weight_ue);
  fit(cap_ue);
  fit(task_bits);
  fit(cycles_per_bit);
  fit(output_ratio);
  fit(latency);
}

std::vector<std::string> Scenario::problems() const {
  std::vector<std::string> out;
  if (num_slots < 3) out.push_back("num_slots must be at least 3");
  if (num_ues < 1) out.push_back("num_ues must be at least 1");
  auto pos = [&](double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) out.push_back(std::string(name) + " must be positive");
  };
  pos(horizon, "horizon");
  pos(bandwidth_total, "bandwidth");
  pos(ref_gain, "ref_gain");
  pos(noise_power, "noise_power");
  pos(altitude, "altitude");
  pos(v_max, "v_max");
  pos(fly_coeff_1, "fly_coeff_1");
  pos(fly_coeff_2, "fly_coeff_2");
  pos(weight_uav, "weight_uav");
  pos(cap_uav, "cap_uav");

  const auto k = static_cast<std::size_t>(std::max(num_ues, 0));
  auto sized = [&](std::size_t n, const char* name) {
    if (n != k) {
      std::ostringstream os;
      os << name << " has " << n << " entries, expected " << k;
      out.push_back(os.str());
    }
  };
  sized(ue_pos.size(), "ue_pos");
  sized(weight_ue.size(), "weight_ue");
  sized(cap_ue.size(), "cap_ue");
  sized(task_bits.size(), "task_bits");
  sized(cycles_per_bit.size(), "cycles_per_bit");
  sized(output_ratio.size(), "output_ratio");
  sized(latency.size(), "latency");
  if (!positive_all(weight_ue)) out.push_back("weight_ue entries must be positive");
  if (!positive_all(cap_ue)) out.push_back("cap_ue entries must be positive");
  if (!positive_all(task_bits)) out.push_back("task_bits entries must be positive");
  if (!positive_all(cycles_per_bit)) out.push_back("cycles_per_bit entries must be positive");
  for (double o : output_ratio)
    if (!(o > 0.0 && o <= 1.0)) {
      out.push_back("output_ratio entries must lie in (0, 1]");
      break;
    }
  for (double t : latency)
    if (std::abs(t - horizon) > 1e-12 * horizon) {
      out.push_back("per-UE latency must equal the horizon (only T_k = T is supported)");
      break;
    }
  if (horizon > 0.0 && v_max > 0.0) {
    const double need = (uav_end - uav_start).norm() / horizon;
    if (v_max < need) {
      std::ostringstream os;
      os << "v_max " << v_max << " m/s is below |u_F - u_I| / T = " << need
         << " m/s: no feasible trajectory exists";
      out.push_back(os.str());
    }
  }
  return out;
}

void Scenario::validate() const {
  auto p = problems();
  if (p.empty()) return;
  std::string msg = "invalid scenario:";
  for (auto& s : p) msg += "\n  - " + s;
  throw ModelError(msg);
}

Schedule Schedule::zeros(const Scenario& scn) {
  Grid g(scn.K(), scn.N());
  return {g, g, g, g, g};
}

BandwidthPlan BandwidthPlan::zeros(const Scenario& scn) {
  Grid g(scn.K(), scn.N());
  return {g, g, g};
}

void Trajectory::update_speeds(double slot_len) {
  speeds.assign(waypoints.empty() ? 0 : waypoints.size() - 1, 0.0);
  for (std::size_t n = 1; n < waypoints.size(); ++n)
    speeds[n - 1] = (waypoints[n] - waypoints[n - 1]).norm() / slot_len;
}

Trajectory Trajectory::from_waypoints(std::vector<Vec2> pts, double slot_len) {
  Trajectory t;
  t.waypoints = std::move(pts);
  t.update_speeds(slot_len);
  return t;
}

Trajectory Trajectory::direct(const Scenario& scn) {
  std::vector<Vec2> pts(scn.N() + 1);
  for (std::size_t n = 0; n <= scn.N(); ++n) {
    const double s = static_cast<double>(n) / static_cast<double>(scn.N());
    pts[n] = scn.uav_start + (scn.uav_end - scn.uav_start) * s;
  }
  pts.front() = scn.uav_start;
  pts.back() = scn.uav_end;
  return from_waypoints(std::move(pts), scn.slot_len());
}

}  // namespace uavmec

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

#include "uavmec/energy.hpp"

#include <numbers>
#include <string>

namespace uavmec {

double channel_gain_ap(const Scenario& scn, Vec2 u) {
  return scn.ref_gain / ((u - scn.ap_pos).norm2() + scn.altitude * scn.altitude);
}

double channel_gain_ue(const Scenario& scn, Vec2 u, std::size_t k) {
  if (k >= scn.ue_pos.size())
    throw ModelError("UE index " + std::to_string(k) + " out of range");
  return scn.ref_gain / ((u - scn.ue_pos[k]).norm2() + scn.altitude * scn.altitude);
}

namespace {
void require_frequency(double f) {
  if (f < 0.0 || std::isnan(f)) throw ModelError("CPU frequency must be non-negative");
}
}  // namespace

double local_energy(const Scenario& scn, std::size_t k, double f) {
  require_frequency(f);
  return scn.slot_len() * scn.cap_ue.at(k) * f * f * f;
}

double local_bits(const Scenario& scn, std::size_t k, double f) {
  require_frequency(f);
  return scn.slot_len() * f / scn.cycles_per_bit.at(k);
}

double uav_compute_energy(const Scenario& scn, double f) {
  require_frequency(f);
  return scn.subslot_len() * scn.cap_uav * f * f * f;
}

double uav_compute_bits(const Scenario& scn, std::size_t k, double f) {
  require_frequency(f);
  return scn.subslot_len() * f / scn.cycles_per_bit.at(k);
}

double transmission_energy(const Scenario& scn, double bits, double band, double gain) {
  if (bits < 0.0 || std::isnan(bits)) throw ModelError("bit count must be non-negative");
  if (bits == 0.0) return 0.0;
  if (!(band > 0.0)) throw ModelError("positive bits scheduled on a zero band");
  if (!(gain > 0.0)) throw ModelError("channel gain must be positive");
  const double delta = scn.subslot_len();
  const double rate = bits / (delta * band);
  return delta * scn.noise_power / gain * std::expm1(rate * std::numbers::ln2);
}

double fly_energy(const Scenario& scn, double v, SpeedFloor mode) {
  if (v < kSpeedFloor) {
    if (mode == SpeedFloor::kStrict)
      throw ModelError("flight speed " + std::to_string(v) + " m/s is below the 0.1 m/s floor");
    v = kSpeedFloor;
  }
  return scn.slot_len() * (scn.fly_coeff_1 * v * v * v + scn.fly_coeff_2 / v);
}

Gains Gains::along(const Scenario& scn, const Trajectory& u) {
  if (u.waypoints.size() != scn.N() + 1) throw ModelError("dimension mismatch in trajectory");
  Gains g;
  g.ap.resize(scn.N());
  g.ue = Grid(scn.K(), scn.N());
  for (std::size_t n = 0; n < scn.N(); ++n) {
    const Vec2 pos = u.at_slot(n);
    g.ap[n] = channel_gain_ap(scn, pos);
    for (std::size_t k = 0; k < scn.K(); ++k) g.ue(k, n) = channel_gain_ue(scn, pos, k);
  }
  return g;
}

double min_power_speed(const Scenario& scn) {
  return std::pow(scn.fly_coeff_2 / (3.0 * scn.fly_coeff_1), 0.25);
}

EnergyReport wsec(const Scenario& scn, const Schedule& z, const BandwidthPlan& b,
                  const Trajectory& u) {
  const std::size_t K = scn.K(), N = scn.N();
  auto check = [&](const Grid& g, const char* name) {
    if (g.rows() != K || g.cols() != N)
      throw ModelError(std::string("dimension mismatch in ") + name);
  };
  check(z.f_ue, "f_ue");
  check(z.l_off_ue, "l_off_ue");
  check(z.f_uav, "f_uav");
  check(z.l_off_uav, "l_off_uav");
  check(z.l_down_uav, "l_down_uav");
  check(b.b_off_ue, "b_off_ue");
  check(b.b_off_uav, "b_off_uav");
  check(b.b_down_uav, "b_down_uav");
  if (u.waypoints.size() != N + 1 || u.speeds.size() != N)
    throw ModelError("dimension mismatch in trajectory");

  EnergyReport r;
  r.ue_local.assign(N, 0.0);
  r.ue_offload.assign(N, 0.0);
  r.uav_compute.assign(N, 0.0);
  r.uav_offload.assign(N, 0.0);
  r.uav_download.assign(N, 0.0);
  r.uav_fly.assign(N, 0.0);
  r.ue_total_by_ue.assign(K, 0.0);

  for (std::size_t n = 0; n < N; ++n) {
    const Vec2 pos = u.at_slot(n);
    const double h_ap = channel_gain_ap(scn, pos);
    for (std::size_t k = 0; k < K; ++k) {
      const double h_k = channel_gain_ue(scn, pos, k);
      const double loc = local_energy(scn, k, z.f_ue(k, n));
      const double off = ue_offload_energy(scn, z.l_off_ue(k, n), b.b_off_ue(k, n), h_k);
      r.ue_local[n] += loc;
      r.ue_offload[n] += off;
      r.ue_total_by_ue[k] += loc + off;
      r.uav_compute[n] += uav_compute_energy(scn, z.f_uav(k, n));
      r.uav_offload[n] += uav_offload_energy(scn, z.l_off_uav(k, n), b.b_off_uav(k, n), h_ap);
      r.uav_download[n] += uav_download_energy(scn, z.l_down_uav(k, n), b.b_down_uav(k, n), h_k);
    }
    r.uav_fly[n] = fly_energy(scn, u.speeds[n]);
  }
  for (std::size_t n = 0; n < N; ++n) {
    r.total_ue_local += r.ue_local[n];
    r.total_ue_offload += r.ue_offload[n];
    r.total_uav_compute += r.uav_compute[n];
    r.total_uav_offload += r.uav_offload[n];
    r.total_uav_download += r.uav_download[n];
    r.total_uav_fly += r.uav_fly[n];
  }
  for (std::size_t k = 0; k < K; ++k) r.ue_weighted += scn.weight_ue[k] * r.ue_total_by_ue[k];
  r.uav_weighted = scn.weight_uav * r.total_uav();
  r.wsec = r.uav_weighted + r.ue_weighted;
  return r;
}

}  // namespace uavmec

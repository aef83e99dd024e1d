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

#include "uavmec/model.hpp"

namespace uavmec {

/// h0 / (|u - v0|^2 + H^2): LoS gain between the UAV at horizontal position u and the AP.
double channel_gain_ap(const Scenario& scn, Vec2 u);
/// Same path-loss law towards UE k. Throws ModelError on a bad index.
double channel_gain_ue(const Scenario& scn, Vec2 u, std::size_t k);

double local_energy(const Scenario& scn, std::size_t k, double f);
double local_bits(const Scenario& scn, std::size_t k, double f);

double uav_compute_energy(const Scenario& scn, double f);
double uav_compute_bits(const Scenario& scn, std::size_t k, double f);

/// Energy to push `bits` through `band` Hz within one TDMA sub-slot at
/// channel gain h: delta N0 / h (2^(l / (delta b)) - 1). Zero bits cost
/// nothing even on a zero band; positive bits on a zero band throw.
double transmission_energy(const Scenario& scn, double bits, double band, double gain);

inline double ue_offload_energy(const Scenario& scn, double bits, double band, double gain) {
  return transmission_energy(scn, bits, band, gain);
}
inline double uav_offload_energy(const Scenario& scn, double bits, double band, double gain_ap) {
  return transmission_energy(scn, bits, band, gain_ap);
}
inline double uav_download_energy(const Scenario& scn, double bits, double band, double gain_ue) {
  return transmission_energy(scn, bits, band, gain_ue);
}

enum class SpeedFloor { kClamp, kStrict };

/// Fixed-wing propulsion energy for one slot flown at speed v.
/// Speeds below kSpeedFloor are clamped, or rejected in strict mode.
double fly_energy(const Scenario& scn, double v, SpeedFloor mode = SpeedFloor::kClamp);

/// Channel gains of every slot along a trajectory.
struct Gains {
  std::vector<double> ap;  // index n-1
  Grid ue;                 // K x N

  static Gains along(const Scenario& scn, const Trajectory& u);
};

/// Speed minimising theta1 v^3 + theta2 / v.
double min_power_speed(const Scenario& scn);

EnergyReport wsec(const Scenario& scn, const Schedule& z, const BandwidthPlan& b,
                  const Trajectory& u);

}  // namespace uavmec

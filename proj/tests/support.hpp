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

#include <cstdint>
#include <vector>

#include "uavmec/model.hpp"

namespace uavmec::testing {

/// W0(x) by bisection on w e^w = x in long double; shares no code with the
/// library's Halley iteration.
long double reference_w0(long double x);

/// Minimum weighted transmission energy of one slot found by nested golden
/// sections over the band split. `bits`, `weight`, `gain` hold the three
/// streams; inactive streams carry zero bits.
double reference_slot_energy(const Scenario& scn, const double bits[3], const double weight[3],
                             const double gain[3]);

/// Sum of reference_slot_energy over every (k, n) of a schedule.
double reference_p12(const Scenario& scn, const Trajectory& u, const Schedule& z);

/// Single-UE, six-slot instance with random geometry, task, output ratio,
/// UAV weight, a jittered feasible trajectory and a random band split.
struct TinyInstance {
  Scenario scn;
  Trajectory u;
  BandwidthPlan b;
};
TinyInstance tiny_instance(std::uint64_t seed);

/// Plain energy formula, written out independently of the library.
double plain_tx_energy(double delta, double noise, double bits, double band, double gain);

}  // namespace uavmec::testing

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

#include "uavmec/energy.hpp"
#include "uavmec/model.hpp"

namespace uavmec {

/// Per-slot multipliers of the bandwidth-sum equality, stored as
/// phi = nu / (delta^2 N0 ln 2). NaN where fewer than two streams are active.
struct BandwidthDuals {
  Grid phi;
};

/// Bits of the three streams of UE k in slot n (0-based) and their weights
/// and gains; the unit every per-slot bandwidth routine works on.
struct SlotStreams {
  double bits[3] = {0.0, 0.0, 0.0};     // UE offload, UAV offload, UAV download
  double weight[3] = {0.0, 0.0, 0.0};
  double gain[3] = {0.0, 0.0, 0.0};

  static SlotStreams of(const Scenario& scn, const Schedule& z, const Gains& g, std::size_t k,
                        std::size_t n);
  int active() const;
};

/// Band a stream with `bits` needs so that its marginal energy saving per Hz
/// equals the common price phi: (ln2/2) l / (delta W0((ln2/2) sqrt(phi h l / w))).
double closed_form_band(const Scenario& scn, double bits, double weight, double gain, double phi);

/// The same band as a function of log(phi); overflow safe for any argument.
double closed_form_band_log(const Scenario& scn, double bits, double weight, double gain,
                            double log_phi);

/// Price at which the stream receives exactly `band` Hz, as log(phi).
double log_phi_for_band(const Scenario& scn, double bits, double weight, double gain,
                        double band);

/// Multi-stream slot: log(phi) at which the active closed forms sum to B.
double solve_log_phi(const Scenario& scn, const SlotStreams& s);

/// Weighted transmission energy of one slot under a three-way split.
double slot_energy(const Scenario& scn, const SlotStreams& s, const double band[3]);

struct BandwidthResult {
  BandwidthPlan plan;
  BandwidthDuals duals;
  double objective = 0.0;  // weighted transmission energy
};

/// Optimal split of every (k, n) for a fixed schedule and trajectory.
BandwidthResult solve_p12(const Scenario& scn, const Trajectory& u, const Schedule& z);

/// Equal split of B among the streams carrying bits; forced ends as in solve_p12.
BandwidthPlan equal_bandwidth(const Scenario& scn, const Schedule& z);

/// Equal split among the streams the boundary structure allows, used to seed
/// the alternation before any schedule exists.
BandwidthPlan structural_bandwidth(const Scenario& scn);

/// Weighted transmission energy of a full plan.
double p12_objective(const Scenario& scn, const Trajectory& u, const Schedule& z,
                     const BandwidthPlan& b);

}  // namespace uavmec

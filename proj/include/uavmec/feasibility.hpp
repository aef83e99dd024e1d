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

#include <string>
#include <vector>

#include "uavmec/model.hpp"

namespace uavmec {

struct Violation {
  std::string constraint;  // e.g. "causality_receive"
  int ue = -1;             // -1 when not UE specific
  int slot = -1;           // 1-based slot, -1 when not slot specific
  double amount = 0.0;     // size of the breach in the constraint's units
};

struct FeasibilityTolerance {
  double bits = 1e-3;       // bit balances and causality
  double band_hz = 1e-3;    // bandwidth sums
  double relative = 1e-6;   // everything else
};

/// Checks every constraint of the joint problem. Idle (k, n) pairs, where all
/// three bands are zero, are exempt from the bandwidth-sum equality.
std::vector<Violation> check_feasibility(const Scenario& scn, const Schedule& z,
                                         const BandwidthPlan& b, const Trajectory& u,
                                         const FeasibilityTolerance& tol = {});

std::string describe(const Violation& v);

}  // namespace uavmec

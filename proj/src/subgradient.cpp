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

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "uavmec/numerics.hpp"

namespace uavmec::numerics {

double StepSchedule::step(int j) const {
  if (j < 1) throw std::invalid_argument("step index starts at 1");
  if (kind == StepKind::kConstant) return a;
  return a / std::pow(static_cast<double>(j), exponent);
}

void StepSchedule::validate() const {
  if (!(a > 0.0)) throw std::invalid_argument("step base must be positive");
  if (kind == StepKind::kDiminishing && !(exponent >= 0.5 && exponent <= 1.0))
    throw std::invalid_argument("diminishing exponent must lie in [0.5, 1]");
}

double subgradient_step(double value, double grad, double step) {
  return std::max(0.0, value - step * grad);
}

}  // namespace uavmec::numerics

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

#include <functional>
#include <stdexcept>

namespace uavmec::numerics {

/// Principal branch W0 of the Lambert W function, defined for x >= -1/e.
/// Throws std::domain_error below the branch point.
double lambert_w0(double x);

/// W0(exp(t)) without forming exp(t); valid for any real t.
double lambert_w0_exp(double t);

enum class Monotone { kIncreasing, kDecreasing };

struct BisectionSpec {
  double lo = 0.0;
  double hi = 1.0;
  double tol = 1e-12;       // absolute width of the final bracket
  int max_iter = 200;
  Monotone direction = Monotone::kIncreasing;
  double value_tol = 0.0;   // optional early exit on |g(x) - target|
};

struct RootResult {
  double root = 0.0;
  double value = 0.0;       // g(root)
  int iterations = 0;
  bool bracketed = true;    // false: target lies outside [g(lo), g(hi)]
  bool converged = false;
  // On a bracket miss, sign of g(endpoint) - target at the returned endpoint.
  int miss_sign = 0;
};

/// Plain bisection for g(x) = target on a monotone g. A non-bracketing
/// interval is reported through `bracketed`, never thrown; the endpoint
/// closest to the target is returned.
RootResult bisect(const BisectionSpec& spec, const std::function<double(double)>& g,
                  double target);

/// Same contract as bisect, but picks the interior point by Illinois false
/// position and falls back to a midpoint when the bracket stops halving.
RootResult false_position(const BisectionSpec& spec, const std::function<double(double)>& g,
                          double target);

enum class StepKind { kDiminishing, kConstant };

/// step_j = a / j^p (diminishing) or a (constant), j = 1, 2, ...
struct StepSchedule {
  StepKind kind = StepKind::kDiminishing;
  double a = 1.0;
  double exponent = 0.5;

  double step(int j) const;
  void validate() const;
};

/// Projected subgradient update [value - step * grad]^+.
double subgradient_step(double value, double grad, double step);

}  // namespace uavmec::numerics

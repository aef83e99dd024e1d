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

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "uavmec/numerics.hpp"

namespace uavmec::numerics {

namespace {

constexpr int kMaxHalley = 20;

// Solves w + ln(w) = t for w > 0 by Halley's method; this is W0(e^t).
double solve_log_form(double t, double w) {
  for (int i = 0; i < kMaxHalley; ++i) {
    const double f = w + std::log(w) - t;
    const double d1 = 1.0 + 1.0 / w;
    const double d2 = -1.0 / (w * w);
    const double step = f / (d1 - 0.5 * f * d2 / d1);
    double next = w - step;
    if (next <= 0.0) next = 0.5 * w;
    if (std::abs(next - w) <= 4.0 * std::numeric_limits<double>::epsilon() * next) return next;
    w = next;
  }
  return w;
}

}  // namespace

double lambert_w0(double x) {
  constexpr double kBranch = -1.0 / std::numbers::e;
  if (std::isnan(x)) return x;
  if (x < kBranch) throw std::domain_error("lambert_w0: argument below -1/e");
  if (x == 0.0) return 0.0;
  if (x == kBranch) return -1.0;
  if (std::isinf(x)) return x;
  if (x > 3.0) {
    const double l1 = std::log(x);
    const double l2 = std::log(l1);
    return solve_log_form(l1, l1 - l2 + l2 / l1);
  }

  double w;
  if (x < -0.25) {
    // Series about the branch point.
    const double p = std::sqrt(2.0 * (std::numbers::e * x + 1.0));
    w = -1.0 + p - p * p / 3.0 + 11.0 / 72.0 * p * p * p;
  } else {
    w = std::log1p(x);
  }
  for (int i = 0; i < kMaxHalley; ++i) {
    const double ew = std::exp(w);
    const double f = w * ew - x;
    const double wp1 = w + 1.0;
    if (wp1 == 0.0) break;
    const double denom = ew * wp1 - (w + 2.0) * f / (2.0 * wp1);
    const double step = f / denom;
    w -= step;
    if (std::abs(step) <= 4.0 * std::numeric_limits<double>::epsilon() * (1.0 + std::abs(w)))
      break;
  }
  return w;
}

double lambert_w0_exp(double t) {
  if (t < 1.0) return lambert_w0(std::exp(t));
  // For t >= 1 the root of w + ln w = t is bounded below by 1.
  const double l2 = std::log(t);
  return solve_log_form(t, std::max(1.0, t - l2 + l2 / t));
}

}  // namespace uavmec::numerics

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
#include <stdexcept>

#include "uavmec/numerics.hpp"

namespace uavmec::numerics {

namespace {

// Orients the problem so that h(x) = s * (g(x) - target) is increasing.
struct Oriented {
  const std::function<double(double)>& g;
  double target;
  double sign;
  double operator()(double x) const { return sign * (g(x) - target); }
};

RootResult miss(double x, double hx, double gx, double sign) {
  RootResult r;
  r.root = x;
  r.value = gx;
  r.bracketed = false;
  r.converged = false;
  r.miss_sign = hx * sign > 0.0 ? 1 : -1;
  return r;
}

template <typename Pick>
RootResult solve(const BisectionSpec& spec, const std::function<double(double)>& g, double target,
                 Pick pick) {
  if (!(spec.lo <= spec.hi)) throw std::invalid_argument("bisection: lo > hi");
  if (!(spec.tol > 0.0)) throw std::invalid_argument("bisection: tol must be positive");
  const double sign = spec.direction == Monotone::kIncreasing ? 1.0 : -1.0;
  Oriented h{g, target, sign};

  double lo = spec.lo, hi = spec.hi;
  double hlo = h(lo), hhi = h(hi);
  if (hlo > 0.0) return miss(lo, hlo, hlo * sign + target, sign);
  if (hhi < 0.0) return miss(hi, hhi, hhi * sign + target, sign);
  if (hlo == 0.0) return {lo, target, 0, true, true, 0};
  if (hhi == 0.0) return {hi, target, 0, true, true, 0};

  RootResult r;
  int side = 0;
  double wlo = hlo, whi = hhi;  // Illinois-weighted copies used by `pick`
  for (r.iterations = 1; r.iterations <= spec.max_iter; ++r.iterations) {
    double x = pick(lo, hi, wlo, whi);
    if (!(x > lo && x < hi)) x = 0.5 * (lo + hi);
    if (x <= lo || x >= hi) break;  // bracket at machine resolution
    const double hx = h(x);
    if (hx == 0.0 || (spec.value_tol > 0.0 && std::abs(hx) <= spec.value_tol)) {
      r.root = x;
      r.value = hx * sign + target;
      r.converged = true;
      return r;
    }
    if (hx < 0.0) {
      lo = x;
      hlo = wlo = hx;
      whi = side == -1 ? 0.5 * whi : hhi;
      side = -1;
    } else {
      hi = x;
      hhi = whi = hx;
      wlo = side == 1 ? 0.5 * wlo : hlo;
      side = 1;
    }
    if (hi - lo <= spec.tol) break;
  }
  if (r.iterations > spec.max_iter) r.iterations = spec.max_iter;
  r.root = -hlo <= hhi ? lo : hi;
  r.value = (r.root == lo ? hlo : hhi) * sign + target;
  r.converged = hi - lo <= spec.tol || hi <= std::nextafter(lo, hi);
  return r;
}

}  // namespace

RootResult bisect(const BisectionSpec& spec, const std::function<double(double)>& g,
                  double target) {
  return solve(spec, g, target,
               [](double lo, double hi, double, double) { return 0.5 * (lo + hi); });
}

RootResult false_position(const BisectionSpec& spec, const std::function<double(double)>& g,
                          double target) {
  int since_halving = 0;
  double last_width = spec.hi - spec.lo;
  return solve(spec, g, target,
               [&](double lo, double hi, double hlo, double hhi) {
                 const double w = hi - lo;
                 if (w > 0.5 * last_width) {
                   ++since_halving;
                 } else {
                   since_halving = 0;
                   last_width = w;
                 }
                 if (since_halving >= 3) {
                   since_halving = 0;
                   last_width = w;
                   return 0.5 * (lo + hi);
                 }
                 return lo - hlo * (hi - lo) / (hhi - hlo);
               });
}

}  // namespace uavmec::numerics

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

#include "support.hpp"

#include <cmath>
#include <functional>
#include <random>

namespace uavmec::testing {

namespace {

// Largest exponent l / (delta b) the oracle explores; far beyond any optimum.
constexpr double kMaxRate = 200.0;

double golden_min(const std::function<double(double)>& f, double lo, double hi) {
  const double r = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = lo, b = hi;
  double x1 = b - r * (b - a), x2 = a + r * (b - a);
  double f1 = f(x1), f2 = f(x2);
  while (b - a > 1e-10 * std::max(1.0, std::abs(hi))) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - r * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + r * (b - a);
      f2 = f(x2);
    }
  }
  return f(0.5 * (a + b));
}

double gain_at(const Scenario& scn, Vec2 u, Vec2 p) {
  const double d2 = (u.x - p.x) * (u.x - p.x) + (u.y - p.y) * (u.y - p.y);
  return scn.ref_gain / (d2 + scn.altitude * scn.altitude);
}

}  // namespace

long double reference_w0(long double x) {
  if (x == 0.0L) return 0.0L;
  long double lo = -1.0L, hi = std::max(1.0L, std::log(x) + 1.0L);
  for (int i = 0; i < 400 && hi - lo > 0.0L; ++i) {
    const long double mid = 0.5L * (lo + hi);
    if (mid == lo || mid == hi) break;
    if (mid * std::exp(mid) < x) lo = mid; else hi = mid;
  }
  return 0.5L * (lo + hi);
}

double plain_tx_energy(double delta, double noise, double bits, double band, double gain) {
  if (bits == 0.0) return 0.0;
  return delta * noise / gain * (std::pow(2.0, bits / (delta * band)) - 1.0);
}

double reference_slot_energy(const Scenario& scn, const double bits[3], const double weight[3],
                             const double gain[3]) {
  const double B = scn.bandwidth_total;
  const double delta = scn.subslot_len();
  std::vector<int> on;
  for (int i = 0; i < 3; ++i)
    if (bits[i] >= 1.0) on.push_back(i);
  auto cost = [&](int i, double band) {
    return weight[i] * plain_tx_energy(delta, scn.noise_power, bits[i], band, gain[i]);
  };
  auto floor_of = [&](int i) { return bits[i] / (delta * kMaxRate); };

  if (on.empty()) return 0.0;
  if (on.size() == 1) return cost(on[0], B);
  if (on.size() == 2) {
    const int a = on[0], c = on[1];
    return golden_min([&](double x) { return cost(a, x) + cost(c, B - x); }, floor_of(a),
                      B - floor_of(c));
  }
  const int a = on[0], m = on[1], c = on[2];
  auto inner = [&](double xa) {
    const double rest = B - xa;
    return cost(a, xa) + golden_min([&](double xm) { return cost(m, xm) + cost(c, rest - xm); },
                                    floor_of(m), rest - floor_of(c));
  };
  return golden_min(inner, floor_of(a), B - floor_of(m) - floor_of(c));
}

double reference_p12(const Scenario& scn, const Trajectory& u, const Schedule& z) {
  double total = 0.0;
  for (std::size_t k = 0; k < scn.K(); ++k) {
    for (std::size_t n = 0; n < scn.N(); ++n) {
      const Vec2 p = u.waypoints[n + 1];
      const double bits[3] = {z.l_off_ue(k, n), z.l_off_uav(k, n), z.l_down_uav(k, n)};
      const double weight[3] = {scn.weight_ue[k], scn.weight_uav, scn.weight_uav};
      const double gain[3] = {gain_at(scn, p, scn.ue_pos[k]), gain_at(scn, p, scn.ap_pos),
                              gain_at(scn, p, scn.ue_pos[k])};
      total += reference_slot_energy(scn, bits, weight, gain);
    }
  }
  return total;
}

TinyInstance tiny_instance(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  TinyInstance t;
  Scenario& s = t.scn;
  s = Scenario::reference();
  s.num_slots = 6;
  s.resize_ues(1);
  s.ue_pos[0] = {20.0 * unit(rng) - 10.0, 20.0 * unit(rng) - 10.0};
  s.ap_pos = {20.0 * unit(rng) - 10.0, 20.0 * unit(rng) - 10.0};
  s.task_bits[0] = (20.0 + 200.0 * unit(rng)) * 1e6;
  s.output_ratio[0] = 0.2 + 0.8 * unit(rng);
  s.weight_uav = 0.05 + unit(rng);

  const int N = s.num_slots;
  std::vector<Vec2> pts(N + 1);
  for (int n = 0; n <= N; ++n) {
    const double a = static_cast<double>(n) / N;
    pts[n] = s.uav_start + (s.uav_end - s.uav_start) * a;
    if (n > 0 && n < N) pts[n] = pts[n] + Vec2{unit(rng) - 0.5, unit(rng) - 0.5};
  }
  t.u = Trajectory::from_waypoints(pts, s.slot_len());

  // Random split among the streams the slot may carry (1-based slot n:
  // UE offload up to N-2, relay 2..N-1, download from 3).
  t.b = BandwidthPlan::zeros(s);
  for (int n = 1; n <= N; ++n) {
    const bool open[3] = {n <= N - 2, n >= 2 && n <= N - 1, n >= 3};
    double w[3], sum = 0.0;
    for (int i = 0; i < 3; ++i) {
      w[i] = open[i] ? 0.05 + unit(rng) : 0.0;
      sum += w[i];
    }
    t.b.b_off_ue(0, n - 1) = s.bandwidth_total * w[0] / sum;
    t.b.b_off_uav(0, n - 1) = s.bandwidth_total * w[1] / sum;
    t.b.b_down_uav(0, n - 1) = s.bandwidth_total * w[2] / sum;
  }
  return t;
}

}  // namespace uavmec::testing

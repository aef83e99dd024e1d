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

#include "uavmec/bandwidth.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "uavmec/numerics.hpp"

namespace uavmec {

namespace {

constexpr double kLn2 = std::numbers::ln2;

// Bits below one are treated as an idle stream.
bool carries(double bits) { return bits >= 1.0; }

void set_slot(BandwidthPlan& b, std::size_t k, std::size_t n, const double band[3]) {
  b.b_off_ue(k, n) = band[0];
  b.b_off_uav(k, n) = band[1];
  b.b_down_uav(k, n) = band[2];
}

// Idle slot: nothing to send, except the ends whose band is pinned.
void idle_slot(const Scenario& scn, double band[3], std::size_t n) {
  band[0] = band[1] = band[2] = 0.0;
  if (n == 0) band[0] = scn.bandwidth_total;
  if (n + 1 == scn.N()) band[2] = scn.bandwidth_total;
}

}  // namespace

SlotStreams SlotStreams::of(const Scenario& scn, const Schedule& z, const Gains& g, std::size_t k,
                            std::size_t n) {
  SlotStreams s;
  s.bits[0] = z.l_off_ue(k, n);
  s.bits[1] = z.l_off_uav(k, n);
  s.bits[2] = z.l_down_uav(k, n);
  s.weight[0] = scn.weight_ue[k];
  s.weight[1] = s.weight[2] = scn.weight_uav;
  s.gain[0] = s.gain[2] = g.ue(k, n);
  s.gain[1] = g.ap[n];
  return s;
}

int SlotStreams::active() const {
  return carries(bits[0]) + carries(bits[1]) + carries(bits[2]);
}

double closed_form_band_log(const Scenario& scn, double bits, double weight, double gain,
                            double log_phi) {
  if (bits <= 0.0) return 0.0;
  const double delta = scn.subslot_len();
  // W0((ln2/2) sqrt(phi h l / w)) = W0(exp(t)).
  const double t = std::log(0.5 * kLn2) + 0.5 * (log_phi + std::log(gain * bits / weight));
  return 0.5 * kLn2 * bits / (delta * numerics::lambert_w0_exp(t));
}

double closed_form_band(const Scenario& scn, double bits, double weight, double gain, double phi) {
  if (bits <= 0.0) return 0.0;
  if (!(phi > 0.0)) throw std::domain_error("bandwidth price must be positive");
  return closed_form_band_log(scn, bits, weight, gain, std::log(phi));
}

double log_phi_for_band(const Scenario& scn, double bits, double weight, double gain,
                        double band) {
  const double delta = scn.subslot_len();
  return std::log(weight * bits / (delta * delta * band * band * gain)) +
         bits * kLn2 / (delta * band);
}

double solve_log_phi(const Scenario& scn, const SlotStreams& s) {
  const double B = scn.bandwidth_total;
  const int m = s.active();
  if (m < 2) throw std::logic_error("price search needs two active streams");
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (int i = 0; i < 3; ++i) {
    if (!carries(s.bits[i])) continue;
    const double t = log_phi_for_band(scn, s.bits[i], s.weight[i], s.gain[i], B / m);
    lo = std::min(lo, t);
    hi = std::max(hi, t);
  }
  auto total = [&](double t) {
    double acc = 0.0;
    for (int i = 0; i < 3; ++i)
      if (carries(s.bits[i])) acc += closed_form_band_log(scn, s.bits[i], s.weight[i], s.gain[i], t);
    return acc;
  };
  // The brackets hold analytically; widen by a decade if rounding defeats them.
  for (int i = 0; i < 20 && total(lo) < B; ++i) lo -= std::log(10.0);
  for (int i = 0; i < 20 && total(hi) > B; ++i) hi += std::log(10.0);
  if (hi <= lo) return lo;
  numerics::BisectionSpec spec;
  spec.lo = lo;
  spec.hi = hi;
  spec.tol = 1e-15 * std::max(1.0, std::max(std::abs(lo), std::abs(hi)));
  spec.direction = numerics::Monotone::kDecreasing;
  spec.value_tol = 1e-4;
  return numerics::bisect(spec, total, B).root;
}

double slot_energy(const Scenario& scn, const SlotStreams& s, const double band[3]) {
  double e = 0.0;
  for (int i = 0; i < 3; ++i)
    e += s.weight[i] * transmission_energy(scn, s.bits[i], band[i], s.gain[i]);
  return e;
}

BandwidthResult solve_p12(const Scenario& scn, const Trajectory& u, const Schedule& z) {
  const std::size_t K = scn.K(), N = scn.N();
  const Gains g = Gains::along(scn, u);
  const double B = scn.bandwidth_total;
  BandwidthResult res;
  res.plan = BandwidthPlan::zeros(scn);
  res.duals.phi = Grid(K, N, std::numeric_limits<double>::quiet_NaN());
  for (std::size_t k = 0; k < K; ++k) {
    for (std::size_t n = 0; n < N; ++n) {
      const SlotStreams s = SlotStreams::of(scn, z, g, k, n);
      for (double l : s.bits)
        if (l > 0.0 && !carries(l))
          throw ModelError("schedule carries sub-bit traffic; snap it before bandwidth allocation");
      double band[3] = {0.0, 0.0, 0.0};
      const int m = s.active();
      if (m == 0) {
        idle_slot(scn, band, n);
      } else if (m == 1) {
        for (int i = 0; i < 3; ++i)
          if (carries(s.bits[i])) band[i] = B;
      } else {
        const double t = solve_log_phi(scn, s);
        double sum = 0.0;
        for (int i = 0; i < 3; ++i) {
          if (!carries(s.bits[i])) continue;
          band[i] = closed_form_band_log(scn, s.bits[i], s.weight[i], s.gain[i], t);
          sum += band[i];
        }
        for (double& x : band) x *= B / sum;
        // Exact sum: give the rounding remainder to the largest share.
        int big = 0;
        for (int i = 1; i < 3; ++i)
          if (band[i] > band[big]) big = i;
        band[big] = B - (band[0] + band[1] + band[2] - band[big]);
        res.duals.phi(k, n) = std::exp(t);
      }
      set_slot(res.plan, k, n, band);
      res.objective += slot_energy(scn, s, band);
    }
  }
  return res;
}

BandwidthPlan equal_bandwidth(const Scenario& scn, const Schedule& z) {
  BandwidthPlan plan = BandwidthPlan::zeros(scn);
  const double B = scn.bandwidth_total;
  for (std::size_t k = 0; k < scn.K(); ++k) {
    for (std::size_t n = 0; n < scn.N(); ++n) {
      const double bits[3] = {z.l_off_ue(k, n), z.l_off_uav(k, n), z.l_down_uav(k, n)};
      int m = 0;
      for (double l : bits) m += carries(l);
      double band[3] = {0.0, 0.0, 0.0};
      if (m == 0) {
        idle_slot(scn, band, n);
      } else {
        for (int i = 0; i < 3; ++i)
          if (carries(bits[i])) band[i] = B / m;
      }
      set_slot(plan, k, n, band);
    }
  }
  return plan;
}

BandwidthPlan structural_bandwidth(const Scenario& scn) {
  BandwidthPlan plan = BandwidthPlan::zeros(scn);
  const std::size_t N = scn.N();
  const double B = scn.bandwidth_total;
  for (std::size_t k = 0; k < scn.K(); ++k) {
    for (std::size_t i = 0; i < N; ++i) {
      const std::size_t n = i + 1;
      const bool open[3] = {n <= N - 2, n >= 2 && n <= N - 1, n >= 3};
      int m = open[0] + open[1] + open[2];
      double band[3] = {0.0, 0.0, 0.0};
      for (int s = 0; s < 3; ++s)
        if (open[s]) band[s] = B / m;
      set_slot(plan, k, i, band);
    }
  }
  return plan;
}

double p12_objective(const Scenario& scn, const Trajectory& u, const Schedule& z,
                     const BandwidthPlan& b) {
  const Gains g = Gains::along(scn, u);
  double e = 0.0;
  for (std::size_t k = 0; k < scn.K(); ++k) {
    for (std::size_t n = 0; n < scn.N(); ++n) {
      const SlotStreams s = SlotStreams::of(scn, z, g, k, n);
      const double band[3] = {b.b_off_ue(k, n), b.b_off_uav(k, n), b.b_down_uav(k, n)};
      e += slot_energy(scn, s, band);
    }
  }
  return e;
}

}  // namespace uavmec

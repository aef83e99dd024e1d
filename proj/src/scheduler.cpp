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

#include "uavmec/scheduler.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "uavmec/numerics.hpp"

namespace uavmec {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double indicator(double band, double gain, double weight, double noise) {
  if (!(band > 0.0)) return -kInf;
  return std::log2(band * gain / (weight * noise * std::numbers::ln2));
}

// delta * B * [phi + log2(price)]^+, zero when the band is closed.
double rate_bits(double delta, double band, double phi, double price) {
  if (!(band > 0.0) || !(price > 0.0)) return 0.0;
  const double e = phi + std::log2(price);
  return e > 0.0 ? delta * band * e : 0.0;
}

// Everything the closed forms of one UE need, with slots 1-based.
struct UeView {
  std::size_t N;
  double delta, tau, C, O, I;
  double fu_coeff;  // 3 C w_U kappa_U
  double fk_coeff;  // 3 C w_k kappa_k
  std::vector<double> b_l, b_o, b_d, phi_l, phi_o, phi_d;
  SuffixSums s;

  UeView(const Scenario& scn, const PriorityIndicators& ind, const BandwidthPlan& b,
         const DualState& d, std::size_t k)
      : N(scn.N()),
        delta(scn.subslot_len()),
        tau(scn.slot_len()),
        C(scn.cycles_per_bit[k]),
        O(scn.output_ratio[k]),
        I(scn.task_bits[k]),
        fu_coeff(3.0 * C * scn.weight_uav * scn.cap_uav),
        fk_coeff(3.0 * C * scn.weight_ue[k] * scn.cap_ue[k]),
        b_l(N + 2, 0.0), b_o(N + 2, 0.0), b_d(N + 2, 0.0),
        phi_l(N + 2, -kInf), phi_o(N + 2, -kInf), phi_d(N + 2, -kInf),
        s(SuffixSums::of(d, k)) {
    for (std::size_t n = 1; n <= N; ++n) {
      if (n <= N - 2) {
        b_l[n] = b.b_off_ue(k, n - 1);
        phi_l[n] = ind.phi_ue(k, n - 1);
      }
      if (n >= 2 && n <= N - 1) {
        b_o[n] = b.b_off_uav(k, n - 1);
        phi_o[n] = ind.phi_uav_off(k, n - 1);
      }
      if (n >= 3) {
        b_d[n] = b.b_down_uav(k, n - 1);
        phi_d[n] = ind.phi_uav_down(k, n - 1);
      }
    }
  }

  // UE offload in slot n given eta' = eta - beta.
  double l(std::size_t n, double eta_p) const {
    return rate_bits(delta, b_l[n], phi_l[n], s.lambda_hat[n] - eta_p);
  }
  // Price of relay bits in slot n given eta_x = eta - O rho.
  double x_price(std::size_t n, double eta_x) const {
    return eta_x + O * s.mu_hat[n] - s.lambda_tilde[n];
  }
  double f_uav(std::size_t n, double eta_x) const {
    const double c = x_price(n, eta_x);
    return c > 0.0 ? std::sqrt(c / fu_coeff) : 0.0;
  }
  double l_off(std::size_t n, double eta_x) const {
    return rate_bits(delta, b_o[n], phi_o[n], x_price(n, eta_x));
  }
  double x(std::size_t n, double eta_x) const {
    return delta * f_uav(n, eta_x) / C + l_off(n, eta_x);
  }
  double d(std::size_t n, double rho) const {
    return rate_bits(delta, b_d[n], phi_d[n], rho - s.mu_tilde[n]);
  }

  double sum_l(double eta_p) const {
    double t = 0.0;
    for (std::size_t n = 1; n <= N - 2; ++n) t += l(n, eta_p);
    return t;
  }
  double sum_x(double eta_x) const {
    double t = 0.0;
    for (std::size_t n = 2; n <= N - 1; ++n) t += x(n, eta_x);
    return t;
  }
  double sum_d(double rho) const {
    double t = 0.0;
    for (std::size_t n = 3; n <= N; ++n) t += d(n, rho);
    return t;
  }

  double beta_of_local(double bits) const {
    const double f = bits * C / (static_cast<double>(N) * tau);
    return fk_coeff * f * f;
  }
};

// Root of a monotone g(x) = target. The bracket [lo, hi] is widened until
// it contains the target, then refined by false position.
double monotone_root(std::function<double(double)> g, double target, double lo, double hi,
                     bool increasing, double value_tol) {
  using numerics::BisectionSpec;
  auto below = [&](double v) { return increasing ? v < target : v > target; };
  double width = std::max(hi - lo, 1e-300);
  for (int i = 0; i < 200 && !below(g(lo)); ++i) {
    lo -= width;
    width *= 2.0;
  }
  width = std::max(hi - lo, 1e-300);
  for (int i = 0; i < 200 && below(g(hi)); ++i) {
    hi += width;
    width *= 2.0;
  }
  BisectionSpec spec;
  spec.lo = lo;
  spec.hi = hi;
  spec.tol = std::max(1e-300, 4.0 * std::numeric_limits<double>::epsilon() *
                                  std::max(std::abs(lo), std::abs(hi)));
  spec.max_iter = 300;
  spec.direction = increasing ? numerics::Monotone::kIncreasing : numerics::Monotone::kDecreasing;
  spec.value_tol = value_tol;
  return numerics::false_position(spec, g, target).root;
}

// eta' at which the UE offloads `total` bits.
double solve_eta_p(const UeView& v, double total, double tol) {
  double hi = -kInf, lo = kInf, sb = 0.0, sbphi = 0.0;
  for (std::size_t n = 1; n <= v.N - 2; ++n) {
    if (!(v.b_l[n] > 0.0)) continue;
    hi = std::max(hi, v.s.lambda_hat[n] - std::exp2(-v.phi_l[n]));
    lo = std::min(lo, v.s.lambda_hat[n]);
    sb += v.b_l[n];
    sbphi += v.b_l[n] * v.phi_l[n];
  }
  if (sb == 0.0 || total <= 0.0) return sb == 0.0 ? 0.0 : hi;
  lo -= std::exp2(std::min(1000.0, (total / v.delta - sbphi) / sb));
  return monotone_root([&](double e) { return v.sum_l(e); }, total, lo, hi, false, tol);
}

double solve_rho(const UeView& v, double total, double tol) {
  double lo = kInf, hi = -kInf, sb = 0.0, sbphi = 0.0;
  for (std::size_t n = 3; n <= v.N; ++n) {
    if (!(v.b_d[n] > 0.0)) continue;
    lo = std::min(lo, v.s.mu_tilde[n] + std::exp2(-v.phi_d[n]));
    hi = std::max(hi, v.s.mu_tilde[n]);
    sb += v.b_d[n];
    sbphi += v.b_d[n] * v.phi_d[n];
  }
  if (sb == 0.0 || total <= 0.0) return sb == 0.0 ? 0.0 : lo;
  hi += std::exp2(std::min(1000.0, (total / v.delta - sbphi) / sb));
  return monotone_root([&](double r) { return v.sum_d(r); }, total, lo, hi, true, tol);
}

double solve_eta_x(const UeView& v, double total, double tol) {
  double lo = kInf, hi = -kInf, sb = 0.0, sbphi = 0.0;
  for (std::size_t n = 2; n <= v.N - 1; ++n) {
    const double off = v.s.lambda_tilde[n] - v.O * v.s.mu_hat[n];
    lo = std::min(lo, off);
    hi = std::max(hi, off);
    if (v.b_o[n] > 0.0) {
      sb += v.b_o[n];
      sbphi += v.b_o[n] * v.phi_o[n];
    }
  }
  if (total <= 0.0) return lo;
  const double per_slot = total * v.C / (static_cast<double>(v.N - 2) * v.delta);
  double extra = v.fu_coeff * per_slot * per_slot;
  if (sb > 0.0) extra = std::min(extra, std::exp2(std::min(1000.0, (total / v.delta - sbphi) / sb)));
  return monotone_root([&](double e) { return v.sum_x(e); }, total, lo, hi + extra, true, tol);
}

struct Equality {
  double beta, eta, rho, eta_p, eta_x, residual;
  int corner;
  int evaluations;
};

Equality equality_duals(const UeView& v, LocalComputing local) {
  const double inner_tol = 1e-10 * std::max(v.I, 1.0);
  const double outer_tol = 1e-8 * std::max(v.I, 1.0);
  int evals = 0;

  auto offload_corner = [&](int corner) {
    Equality e{};
    e.eta_p = solve_eta_p(v, v.I, inner_tol);
    e.rho = solve_rho(v, v.O * v.I, inner_tol);
    e.eta_x = solve_eta_x(v, v.I, inner_tol);
    e.eta = e.eta_x + v.O * e.rho;
    e.beta = e.eta - e.eta_p;
    e.residual = v.sum_x(e.eta_x) - v.sum_l(e.eta_p);
    e.corner = corner;
    e.evaluations = evals + 1;
    return e;
  };
  if (local == LocalComputing::kForbidden) return offload_corner(0);

  // Without an upload band, or without a download band for a non-empty
  // result, nothing can leave the UE.
  auto any_open = [](const std::vector<double>& band) {
    return std::any_of(band.begin(), band.end(), [](double x) { return x > 0.0; });
  };
  if (!any_open(v.b_l) || (v.O > 0.0 && !any_open(v.b_d))) {
    Equality e{};
    e.beta = v.beta_of_local(v.I);
    e.rho = solve_rho(v, 0.0, inner_tol);
    e.eta_x = solve_eta_x(v, 0.0, inner_tol);
    e.eta = e.eta_x + v.O * e.rho;
    e.eta_p = e.eta - e.beta;
    e.residual = v.sum_x(e.eta_x) - v.sum_l(e.eta_p);
    e.corner = 1;
    e.evaluations = 0;
    return e;
  }

  // g(L) = sum x - S with L = I - S locally computed bits; increasing in L.
  auto g = [&](double bits_local) {
    ++evals;
    const double S = v.I - bits_local;
    const double beta = v.beta_of_local(bits_local);
    const double eta_p = solve_eta_p(v, S, inner_tol);
    const double rho = solve_rho(v, v.O * S, inner_tol);
    const double eta_x = eta_p + beta - v.O * rho;
    return v.sum_x(eta_x) - S;
  };
  const double g0 = g(0.0);
  if (g0 >= 0.0) return offload_corner(-1);

  numerics::BisectionSpec spec;
  spec.lo = 0.0;
  spec.hi = v.I;
  spec.tol = 1e-9;
  spec.value_tol = outer_tol;
  const auto r = numerics::false_position(spec, g, 0.0);
  const double L = r.root;
  Equality e{};
  const double S = v.I - L;
  e.beta = v.beta_of_local(L);
  e.eta_p = solve_eta_p(v, S, inner_tol);
  e.rho = solve_rho(v, v.O * S, inner_tol);
  e.eta = e.eta_p + e.beta;
  e.eta_x = e.eta - v.O * e.rho;
  e.residual = v.sum_x(e.eta_x) - v.sum_l(e.eta_p);
  e.corner = r.bracketed ? 0 : 1;
  e.evaluations = evals;
  return e;
}

void fill_ue(const UeView& v, double beta, double eta, double rho, LocalComputing local,
             Schedule& z, std::size_t k) {
  const double eta_p = eta - beta;
  const double eta_x = eta - v.O * rho;
  const double fk =
      local == LocalComputing::kAllowed && beta > 0.0 ? std::sqrt(beta / v.fk_coeff) : 0.0;
  for (std::size_t n = 1; n <= v.N; ++n) {
    const std::size_t i = n - 1;
    z.f_ue(k, i) = fk;
    z.l_off_ue(k, i) = n <= v.N - 2 ? v.l(n, eta_p) : 0.0;
    const bool relay = n >= 2 && n <= v.N - 1;
    z.f_uav(k, i) = relay ? v.f_uav(n, eta_x) : 0.0;
    z.l_off_uav(k, i) = relay ? v.l_off(n, eta_x) : 0.0;
    z.l_down_uav(k, i) = n >= 3 ? v.d(n, rho) : 0.0;
  }
}

double sum_row(const Grid& g, std::size_t k) {
  double t = 0.0;
  for (std::size_t n = 0; n < g.cols(); ++n) t += g(k, n);
  return t;
}

}  // namespace

DualState DualState::zeros(const Scenario& scn) {
  DualState d;
  d.lambda = Grid(scn.K(), scn.N());
  d.mu = Grid(scn.K(), scn.N());
  d.eta.assign(scn.K(), 0.0);
  d.rho.assign(scn.K(), 0.0);
  d.beta.assign(scn.K(), 0.0);
  return d;
}

SuffixSums SuffixSums::of(const DualState& d, std::size_t k) {
  const std::size_t N = d.lambda.cols();
  SuffixSums s;
  s.lambda_tilde.assign(N + 3, 0.0);
  s.lambda_hat.assign(N + 3, 0.0);
  s.mu_tilde.assign(N + 3, 0.0);
  s.mu_hat.assign(N + 3, 0.0);
  for (std::size_t n = N; n >= 1; --n) {
    const double lam = n >= 2 && n <= N - 1 ? d.lambda(k, n - 1) : 0.0;
    const double mu = n >= 3 ? d.mu(k, n - 1) : 0.0;
    s.lambda_tilde[n] = s.lambda_tilde[n + 1] + lam;
    s.mu_tilde[n] = s.mu_tilde[n + 1] + mu;
  }
  for (std::size_t n = 0; n <= N + 1; ++n) {
    s.lambda_hat[n] = s.lambda_tilde[n + 1];
    s.mu_hat[n] = s.mu_tilde[n + 1];
  }
  s.lambda_tilde[0] = s.lambda_tilde[1];
  s.mu_tilde[0] = s.mu_tilde[1];
  return s;
}

PriorityIndicators compute_indicators(const Scenario& scn, const Gains& gains,
                                      const BandwidthPlan& b) {
  const std::size_t K = scn.K(), N = scn.N();
  PriorityIndicators ind{Grid(K, N, -kInf), Grid(K, N, -kInf), Grid(K, N, -kInf)};
  for (std::size_t k = 0; k < K; ++k) {
    for (std::size_t n = 0; n < N; ++n) {
      ind.phi_ue(k, n) =
          indicator(b.b_off_ue(k, n), gains.ue(k, n), scn.weight_ue[k], scn.noise_power);
      ind.phi_uav_off(k, n) =
          indicator(b.b_off_uav(k, n), gains.ap[n], scn.weight_uav, scn.noise_power);
      ind.phi_uav_down(k, n) =
          indicator(b.b_down_uav(k, n), gains.ue(k, n), scn.weight_uav, scn.noise_power);
    }
  }
  return ind;
}

Schedule closed_form_schedule(const Scenario& scn, const Gains& gains, const BandwidthPlan& b,
                              const DualState& d) {
  const auto ind = compute_indicators(scn, gains, b);
  Schedule z = Schedule::zeros(scn);
  for (std::size_t k = 0; k < scn.K(); ++k) {
    UeView v(scn, ind, b, d, k);
    fill_ue(v, d.beta[k], d.eta[k], d.rho[k], LocalComputing::kAllowed, z, k);
  }
  return z;
}

Subgradients subgradients(const Scenario& scn, const Schedule& z, std::size_t k) {
  const std::size_t N = scn.N();
  const double delta = scn.subslot_len();
  const double C = scn.cycles_per_bit[k];
  const double O = scn.output_ratio[k];
  Subgradients g{std::vector<double>(N, 0.0), std::vector<double>(N, 0.0)};
  // Running sums: received through n-1, relayed 2..n, relayed 2..n-1, downloaded 3..n.
  double recv = 0.0, relay = 0.0, relay_prev = 0.0, down = 0.0;
  for (std::size_t n = 1; n <= N; ++n) {
    const std::size_t i = n - 1;
    const double x = n >= 2 ? delta * z.f_uav(k, i) / C + z.l_off_uav(k, i) : 0.0;
    relay_prev = relay;
    relay += x;
    if (n >= 3) down += z.l_down_uav(k, i);
    if (n >= 2 && n <= N - 1) g.d_lambda[i] = recv - relay;
    if (n >= 3) g.d_mu[i] = O * relay_prev - down;
    recv += z.l_off_ue(k, i);
  }
  return g;
}

double beta_max(const Scenario& scn, std::size_t k) {
  const double f = scn.task_bits[k] * scn.cycles_per_bit[k] / scn.horizon;
  return 3.0 * scn.cycles_per_bit[k] * scn.weight_ue[k] * scn.cap_ue[k] * f * f;
}

EqualityDuals solve_equality_duals(const Scenario& scn, const Gains& gains, const BandwidthPlan& b,
                                   const DualState& d, std::size_t k, LocalComputing local) {
  const auto ind = compute_indicators(scn, gains, b);
  UeView v(scn, ind, b, d, k);
  const Equality e = equality_duals(v, local);
  return {e.beta, e.eta, e.rho, e.residual, e.corner, e.evaluations};
}

double p11_objective_ue(const Scenario& scn, const Gains& gains, const BandwidthPlan& b,
                        const Schedule& z, std::size_t k) {
  double ue = 0.0, uav = 0.0;
  for (std::size_t n = 0; n < scn.N(); ++n) {
    ue += local_energy(scn, k, z.f_ue(k, n)) +
          ue_offload_energy(scn, z.l_off_ue(k, n), b.b_off_ue(k, n), gains.ue(k, n));
    uav += uav_compute_energy(scn, z.f_uav(k, n)) +
           uav_offload_energy(scn, z.l_off_uav(k, n), b.b_off_uav(k, n), gains.ap[n]) +
           uav_download_energy(scn, z.l_down_uav(k, n), b.b_down_uav(k, n), gains.ue(k, n));
  }
  return scn.weight_ue[k] * ue + scn.weight_uav * uav;
}

double p11_objective(const Scenario& scn, const Gains& gains, const BandwidthPlan& b,
                     const Schedule& z) {
  double t = 0.0;
  for (std::size_t k = 0; k < scn.K(); ++k) t += p11_objective_ue(scn, gains, b, z, k);
  return t;
}

namespace {

// True when some stream of UE k carries a positive amount below the floor.
bool has_dust(const Scenario& scn, const Schedule& z, std::size_t k) {
  const double C = scn.cycles_per_bit[k], delta = scn.subslot_len();
  for (std::size_t i = 0; i < scn.N(); ++i) {
    for (double v : {z.l_off_ue(k, i), z.l_off_uav(k, i), z.l_down_uav(k, i),
                     delta * z.f_uav(k, i) / C})
      if (v > 0.0 && v < kBitFloor) return true;
  }
  return false;
}

void repair_once(const Scenario& scn, const BandwidthPlan& b, Schedule& z, std::size_t k,
                 LocalComputing local);

}  // namespace

void repair_schedule(const Scenario& scn, const BandwidthPlan& b, Schedule& z, std::size_t k,
                     LocalComputing local) {
  // Rescaling can push a stream back under the floor; snap and rebalance again.
  for (int round = 0; round < 8; ++round) {
    repair_once(scn, b, z, k, local);
    if (!has_dust(scn, z, k)) return;
  }
}

namespace {

void repair_once(const Scenario& scn, const BandwidthPlan& b, Schedule& z, std::size_t k,
                 LocalComputing local) {
  const std::size_t N = scn.N();
  const double delta = scn.subslot_len();
  const double C = scn.cycles_per_bit[k];
  const double O = scn.output_ratio[k];
  const double I = scn.task_bits[k];
  auto a_bits = [&](std::size_t i) { return delta * z.f_uav(k, i) / C; };
  auto set_a_bits = [&](std::size_t i, double bits) { z.f_uav(k, i) = bits * C / delta; };

  // Structural zeros, closed bands and sub-bit dust.
  for (std::size_t i = 0; i < N; ++i) {
    const std::size_t n = i + 1;
    double& l = z.l_off_ue(k, i);
    double& o = z.l_off_uav(k, i);
    double& d = z.l_down_uav(k, i);
    if (n > N - 2 || !(b.b_off_ue(k, i) > 0.0) || l < kBitFloor) l = 0.0;
    if (n < 2 || n > N - 1 || !(b.b_off_uav(k, i) > 0.0) || o < kBitFloor) o = 0.0;
    if (n < 2 || n > N - 1 || a_bits(i) < kBitFloor) z.f_uav(k, i) = 0.0;
    if (n < 3 || !(b.b_down_uav(k, i) > 0.0) || d < kBitFloor) d = 0.0;
  }

  // Task completion.
  double sum_l = sum_row(z.l_off_ue, k);
  if (local == LocalComputing::kForbidden || sum_l > I) {
    if (sum_l > 0.0) {
      for (std::size_t i = 0; i < N; ++i) z.l_off_ue(k, i) *= I / sum_l;
    } else {
      std::size_t open = 0;
      for (std::size_t i = 0; i + 2 < N; ++i) open += b.b_off_ue(k, i) > 0.0;
      for (std::size_t i = 0; i + 2 < N; ++i)
        if (b.b_off_ue(k, i) > 0.0) z.l_off_ue(k, i) = I / static_cast<double>(open);
    }
    sum_l = sum_row(z.l_off_ue, k);
  }
  const double local_bits_total = local == LocalComputing::kAllowed ? std::max(0.0, I - sum_l) : 0.0;
  const double fk = local_bits_total * C / scn.horizon;
  for (std::size_t i = 0; i < N; ++i) z.f_ue(k, i) = fk;

  // Relay volume matches the received volume.
  double sum_x = 0.0;
  for (std::size_t i = 1; i + 1 < N; ++i) sum_x += a_bits(i) + z.l_off_uav(k, i);
  if (sum_x > 0.0) {
    const double s = sum_l / sum_x;
    for (std::size_t i = 1; i + 1 < N; ++i) {
      set_a_bits(i, a_bits(i) * s);
      z.l_off_uav(k, i) *= s;
    }
  } else if (sum_l > 0.0) {
    for (std::size_t i = 1; i + 1 < N; ++i) {
      const double bits = z.l_off_ue(k, i - 1);
      if (b.b_off_uav(k, i) > 0.0) z.l_off_uav(k, i) = bits;
      else set_a_bits(i, bits);
    }
  }

  // Receive causality: relay no more than has arrived, defer the excess.
  double recv = 0.0, relay = 0.0;
  for (std::size_t i = 1; i + 1 < N; ++i) {
    recv += z.l_off_ue(k, i - 1);
    const double a = a_bits(i), o = z.l_off_uav(k, i);
    const double excess = relay + a + o - recv;
    if (excess > 0.0 && i + 2 < N) {
      const double x = a + o;
      const double keep = std::max(0.0, x - excess);
      const double s = x > 0.0 ? keep / x : 0.0;
      set_a_bits(i, a * s);
      z.l_off_uav(k, i) = o * s;
      const std::size_t j = i + 1;
      const double na = a_bits(j), no = z.l_off_uav(k, j);
      const double moved = x - keep;
      if (!(b.b_off_uav(k, j) > 0.0)) {
        set_a_bits(j, na + moved);
      } else if (na + no > 0.0) {
        set_a_bits(j, na + moved * na / (na + no));
        z.l_off_uav(k, j) = no + moved * no / (na + no);
      } else {
        z.l_off_uav(k, j) = moved;
      }
    }
    relay += a_bits(i) + z.l_off_uav(k, i);
  }

  // Output volume matches O times the relayed volume.
  double xs = 0.0;
  for (std::size_t i = 1; i + 1 < N; ++i) xs += a_bits(i) + z.l_off_uav(k, i);
  const double out = O * xs;
  const double sum_d = sum_row(z.l_down_uav, k);
  if (sum_d > 0.0) {
    for (std::size_t i = 0; i < N; ++i) z.l_down_uav(k, i) *= out / sum_d;
  } else if (out > 0.0) {
    for (std::size_t i = 2; i < N; ++i)
      z.l_down_uav(k, i) = b.b_down_uav(k, i) > 0.0
                               ? O * (a_bits(i - 1) + z.l_off_uav(k, i - 1))
                               : 0.0;
    const double s2 = sum_row(z.l_down_uav, k);
    if (s2 > 0.0)
      for (std::size_t i = 0; i < N; ++i) z.l_down_uav(k, i) *= out / s2;
    else
      z.l_down_uav(k, N - 1) = out;
  }

  // Output causality: download no more than has been produced.
  double produced = 0.0, sent = 0.0, carry = 0.0;
  for (std::size_t i = 2; i < N; ++i) {
    produced += O * (a_bits(i - 1) + z.l_off_uav(k, i - 1));
    double d = z.l_down_uav(k, i) + carry;
    carry = 0.0;
    const bool open = b.b_down_uav(k, i) > 0.0 || d == 0.0;
    const double room = std::max(0.0, produced - sent);
    if (i + 1 < N && (!open || d > room)) {
      const double keep = open ? room : 0.0;
      carry = d - keep;
      d = keep;
    }
    z.l_down_uav(k, i) = d;
    sent += d;
  }
}

}  // namespace

SchedulerResult solve_p11(const Scenario& scn, const Trajectory& u, const BandwidthPlan& b,
                          const std::optional<DualState>& warm, const SchedulerOptions& opt,
                          const Schedule* incumbent) {
  const std::size_t K = scn.K(), N = scn.N();
  const Gains gains = Gains::along(scn, u);
  const auto ind = compute_indicators(scn, gains, b);
  const double delta = scn.subslot_len();

  SchedulerResult res;
  res.duals = warm ? *warm : DualState::zeros(scn);
  res.schedule = Schedule::zeros(scn);
  if (res.duals.lambda.rows() != K || res.duals.lambda.cols() != N)
    res.duals = DualState::zeros(scn);

  // Per-UE ascent state: the last accepted multipliers, their dual value and
  // subgradient, and the current step length.
  struct Ascent {
    std::vector<double> lambda, mu, d_lambda, d_mu;
    double value = -kInf;
    double step = 0.0;
  };
  std::vector<Ascent> asc(K);
  std::vector<double> best(K, kInf);
  Schedule z = Schedule::zeros(scn);
  Schedule avg = Schedule::zeros(scn);
  std::vector<double> weight_sum(K, 0.0);
  double prev_total = kInf;

  auto consider = [&](const Schedule& cand, std::size_t k) {
    if (has_dust(scn, cand, k)) return kInf;
    double e;
    try {
      e = p11_objective_ue(scn, gains, b, cand, k);
    } catch (const ModelError&) {
      return kInf;
    }
    if (e < best[k]) {
      best[k] = e;
      for (std::size_t n = 0; n < N; ++n) {
        res.schedule.f_ue(k, n) = cand.f_ue(k, n);
        res.schedule.l_off_ue(k, n) = cand.l_off_ue(k, n);
        res.schedule.f_uav(k, n) = cand.f_uav(k, n);
        res.schedule.l_off_uav(k, n) = cand.l_off_uav(k, n);
        res.schedule.l_down_uav(k, n) = cand.l_down_uav(k, n);
      }
    }
    return e;
  };

  for (int j = 1; j <= opt.max_iterations; ++j) {
    res.iterations = j;
    double total = 0.0;
    for (std::size_t k = 0; k < K; ++k) {
      UeView v(scn, ind, b, res.duals, k);
      const Equality e = equality_duals(v, opt.local);
      if (e.corner != 0) ++res.corner_hits;
      fill_ue(v, e.beta, e.eta, e.rho, opt.local, z, k);
      const Subgradients g = subgradients(scn, z, k);

      // Dual value at the closed-form minimiser.
      double lag = p11_objective_ue(scn, gains, b, z, k);
      for (std::size_t n = 0; n < N; ++n)
        lag -= res.duals.lambda(k, n) * g.d_lambda[n] + res.duals.mu(k, n) * g.d_mu[n];
      {
        const double C = scn.cycles_per_bit[k], O = scn.output_ratio[k];
        double sl = 0.0, sx = 0.0, sd = 0.0, loc = 0.0;
        for (std::size_t n = 0; n < N; ++n) {
          sl += z.l_off_ue(k, n);
          sx += delta * z.f_uav(k, n) / C + z.l_off_uav(k, n);
          sd += z.l_down_uav(k, n);
          loc += scn.slot_len() * z.f_ue(k, n) / C;
        }
        lag += e.eta * (sl - sx) + e.rho * (O * sx - sd) + e.beta * (scn.task_bits[k] - loc - sl);
      }

      Ascent& a = asc[k];
      if (j == 1) {
        double gmax = 0.0;
        for (std::size_t n = 0; n < N; ++n)
          gmax = std::max({gmax, std::abs(g.d_lambda[n]), std::abs(g.d_mu[n])});
        const double price = std::max({std::abs(e.eta - e.beta), std::abs(e.eta_x), std::abs(e.rho)});
        a.step = gmax > 0.0 ? opt.step_gain * price / gmax : 0.0;
      }
      // Accept the trial point if the dual value did not drop; otherwise
      // return to the last accepted point with a shorter step.
      const bool accept = lag >= a.value - 1e-14 * std::abs(a.value);
      if (accept) {
        a.value = lag;
        a.lambda.assign(N, 0.0);
        a.mu.assign(N, 0.0);
        for (std::size_t n = 0; n < N; ++n) {
          a.lambda[n] = res.duals.lambda(k, n);
          a.mu[n] = res.duals.mu(k, n);
        }
        a.d_lambda = g.d_lambda;
        a.d_mu = g.d_mu;
        if (j > 1) a.step *= 1.5;
        res.duals.beta[k] = e.beta;
        res.duals.eta[k] = e.eta;
        res.duals.rho[k] = e.rho;

        weight_sum[k] += 1.0;
        const double w = 1.0 / weight_sum[k];
        for (std::size_t n = 0; n < N; ++n) {
          avg.f_ue(k, n) += w * (z.f_ue(k, n) - avg.f_ue(k, n));
          avg.l_off_ue(k, n) += w * (z.l_off_ue(k, n) - avg.l_off_ue(k, n));
          avg.f_uav(k, n) += w * (z.f_uav(k, n) - avg.f_uav(k, n));
          avg.l_off_uav(k, n) += w * (z.l_off_uav(k, n) - avg.l_off_uav(k, n));
          avg.l_down_uav(k, n) += w * (z.l_down_uav(k, n) - avg.l_down_uav(k, n));
        }
        Schedule cur = z;
        repair_schedule(scn, b, cur, k, opt.local);
        total += std::min(consider(cur, k), best[k]);
        Schedule av = avg;
        repair_schedule(scn, b, av, k, opt.local);
        consider(av, k);
      } else {
        a.step *= 0.5;
        total += best[k];
      }

      for (std::size_t n = 0; n < N; ++n) {
        res.duals.lambda(k, n) = numerics::subgradient_step(a.lambda[n], a.d_lambda[n], a.step);
        res.duals.mu(k, n) = numerics::subgradient_step(a.mu[n], a.d_mu[n], a.step);
      }
    }

    double best_total = 0.0, bound = 0.0;
    for (std::size_t k = 0; k < K; ++k) {
      best_total += best[k];
      bound += asc[k].value;
    }
    res.objective_trace.push_back(best_total);
    res.dual_trace.push_back(bound);
    res.gap = best_total - bound;
    if (std::abs(total - prev_total) < opt.objective_tol &&
        res.gap <= opt.gap_tol * std::abs(best_total)) {
      res.converged = true;
      break;
    }
    prev_total = total;
  }

  // Leave the accepted multipliers behind for warm starts.
  for (std::size_t k = 0; k < K; ++k)
    for (std::size_t n = 0; n < N && !asc[k].lambda.empty(); ++n) {
      res.duals.lambda(k, n) = asc[k].lambda[n];
      res.duals.mu(k, n) = asc[k].mu[n];
    }
  if (incumbent) {
    for (std::size_t k = 0; k < K; ++k) consider(*incumbent, k);
  }
  res.objective = 0.0;
  for (double e : best) res.objective += e;
  return res;
}

}  // namespace uavmec

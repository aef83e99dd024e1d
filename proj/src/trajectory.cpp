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

#include "uavmec/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "uavmec/barrier.hpp"
#include "uavmec/energy.hpp"

namespace uavmec {

namespace {

using Eigen::Index;
using Eigen::MatrixXd;
using Eigen::VectorXd;

// Anchors slower than this are not linearised; the slack speed is capped instead.
constexpr double kLinearisable = 1.5 * kSpeedFloor;
constexpr double kMaxExtrapolation = 64.0;

// Variables: u_1..u_{N-1} (x, y interleaved), then vtilde_1..vtilde_N.
class ScaProgram : public numerics::ConvexProgram {
 public:
  ScaProgram(const Scenario& scn, const TrajectoryObjective& obj, const Trajectory& anchor)
      : N_(scn.N()),
        tau_(scn.slot_len()),
        step_max2_(scn.v_max * scn.slot_len() * scn.v_max * scn.slot_len()),
        start_(scn.uav_start),
        end_(scn.uav_end),
        obj_(obj) {
    anchor_delta_.resize(N_);
    linear_.resize(N_);
    for (std::size_t n = 1; n <= N_; ++n) {
      anchor_delta_[n - 1] = anchor.waypoints[n] - anchor.waypoints[n - 1];
      linear_[n - 1] = anchor_delta_[n - 1].norm() / tau_ >= kLinearisable;
    }
  }

  Index dim() const override { return static_cast<Index>(3 * N_ - 2); }
  Index num_inequalities() const override { return static_cast<Index>(3 * N_); }
  bool sparse() const override { return true; }

  bool degenerate() const {
    return std::find(linear_.begin(), linear_.end(), false) != linear_.end();
  }

  Vec2 point(const VectorXd& x, std::size_t n) const {
    if (n == 0) return start_;
    if (n == N_) return end_;
    return {x[2 * (n - 1)], x[2 * (n - 1) + 1]};
  }
  Vec2 delta(const VectorXd& x, std::size_t n) const { return point(x, n) - point(x, n - 1); }
  Index v_index(std::size_t n) const { return static_cast<Index>(2 * (N_ - 1) + n - 1); }

  double objective(const VectorXd& x) const override {
    double f = 0.0;
    for (std::size_t n = 1; n <= N_; ++n) {
      const double v = x[v_index(n)];
      if (!(v > 0.0)) return std::numeric_limits<double>::infinity();
      const double r = delta(x, n).norm();
      f += obj_.fly_cubic * r * r * r + obj_.fly_inverse / v + obj_.slots[n - 1](point(x, n));
    }
    return f;
  }

  void objective_derivatives(const VectorXd& x, VectorXd& grad, MatrixXd& hess) const override {
    grad.setZero(dim());
    hess.setZero(dim(), dim());
    for (std::size_t n = 1; n <= N_; ++n) {
      const Index vi = v_index(n);
      const double v = x[vi];
      grad[vi] += -obj_.fly_inverse / (v * v);
      hess(vi, vi) += 2.0 * obj_.fly_inverse / (v * v * v);

      const Vec2 d = delta(x, n);
      const double r = d.norm();
      const double gx = 3.0 * obj_.fly_cubic * r * d.x, gy = 3.0 * obj_.fly_cubic * r * d.y;
      double h[2][2] = {{0.0, 0.0}, {0.0, 0.0}};
      if (r > 0.0) {
        const double c = 3.0 * obj_.fly_cubic;
        h[0][0] = c * (r + d.x * d.x / r);
        h[1][1] = c * (r + d.y * d.y / r);
        h[0][1] = h[1][0] = c * d.x * d.y / r;
      }
      add_delta_terms(n, gx, gy, h, grad, hess);

      if (n < N_) {
        const SlotQuadratic& q = obj_.slots[n - 1];
        const Vec2 p = point(x, n);
        const Index ui = static_cast<Index>(2 * (n - 1));
        grad[ui] += 2.0 * (q.a * p.x - q.b.x);
        grad[ui + 1] += 2.0 * (q.a * p.y - q.b.y);
        hess(ui, ui) += 2.0 * q.a;
        hess(ui + 1, ui + 1) += 2.0 * q.a;
      }
    }
  }

  // Rows 3(n-1) + {0: speed cap, 1: speed floor, 2: slack linearisation}.
  void inequalities(const VectorXd& x, VectorXd& g) const override {
    g.resize(num_inequalities());
    for (std::size_t n = 1; n <= N_; ++n) {
      const Vec2 d = delta(x, n);
      const double v = x[v_index(n)];
      const Index r = static_cast<Index>(3 * (n - 1));
      g[r] = d.norm2() - step_max2_;
      g[r + 1] = kSpeedFloor - v;
      const Vec2 a = anchor_delta_[n - 1];
      g[r + 2] = linear_[n - 1] ? v * v * tau_ * tau_ - 2.0 * a.dot(d) + a.norm2()
                                : v - 2.0 * kSpeedFloor;
    }
  }

  void inequality_jacobian(const VectorXd& x, MatrixXd& jac) const override {
    jac.setZero(num_inequalities(), dim());
    for (std::size_t n = 1; n <= N_; ++n) {
      const Vec2 d = delta(x, n);
      const Index r = static_cast<Index>(3 * (n - 1));
      const Index vi = v_index(n);
      set_delta_row(jac, r, n, 2.0 * d.x, 2.0 * d.y);
      jac(r + 1, vi) = -1.0;
      if (linear_[n - 1]) {
        const Vec2 a = anchor_delta_[n - 1];
        set_delta_row(jac, r + 2, n, -2.0 * a.x, -2.0 * a.y);
        jac(r + 2, vi) = 2.0 * x[vi] * tau_ * tau_;
      } else {
        jac(r + 2, vi) = 1.0;
      }
    }
  }

  void add_inequality_hessians(const VectorXd&, const VectorXd& w, MatrixXd& hess) const override {
    VectorXd dummy = VectorXd::Zero(dim());
    for (std::size_t n = 1; n <= N_; ++n) {
      const Index r = static_cast<Index>(3 * (n - 1));
      const double h[2][2] = {{2.0 * w[r], 0.0}, {0.0, 2.0 * w[r]}};
      add_delta_terms(n, 0.0, 0.0, h, dummy, hess);
      if (linear_[n - 1]) hess(v_index(n), v_index(n)) += 2.0 * tau_ * tau_ * w[r + 2];
    }
  }

 private:
  // Scatter a gradient/Hessian taken w.r.t. delta_n = u_n - u_{n-1}.
  void add_delta_terms(std::size_t n, double gx, double gy, const double h[2][2], VectorXd& grad,
                       MatrixXd& hess) const {
    Index idx[2];
    double sign[2];
    int cnt = 0;
    if (n < N_) {
      idx[cnt] = static_cast<Index>(2 * (n - 1));
      sign[cnt++] = 1.0;
    }
    if (n > 1) {
      idx[cnt] = static_cast<Index>(2 * (n - 2));
      sign[cnt++] = -1.0;
    }
    for (int i = 0; i < cnt; ++i) {
      grad[idx[i]] += sign[i] * gx;
      grad[idx[i] + 1] += sign[i] * gy;
      for (int j = 0; j < cnt; ++j) {
        const double s = sign[i] * sign[j];
        for (int a = 0; a < 2; ++a)
          for (int b = 0; b < 2; ++b) hess(idx[i] + a, idx[j] + b) += s * h[a][b];
      }
    }
  }

  void set_delta_row(MatrixXd& jac, Index row, std::size_t n, double gx, double gy) const {
    if (n < N_) {
      jac(row, static_cast<Index>(2 * (n - 1))) += gx;
      jac(row, static_cast<Index>(2 * (n - 1) + 1)) += gy;
    }
    if (n > 1) {
      jac(row, static_cast<Index>(2 * (n - 2))) -= gx;
      jac(row, static_cast<Index>(2 * (n - 2) + 1)) -= gy;
    }
  }

  std::size_t N_;
  double tau_, step_max2_;
  Vec2 start_, end_;
  const TrajectoryObjective& obj_;
  std::vector<Vec2> anchor_delta_;
  std::vector<bool> linear_;
};

Trajectory blend(const Scenario& scn, const Trajectory& a, const Trajectory& b, double s) {
  std::vector<Vec2> pts(a.waypoints.size());
  for (std::size_t i = 0; i < pts.size(); ++i)
    pts[i] = a.waypoints[i] + (b.waypoints[i] - a.waypoints[i]) * s;
  pts.front() = scn.uav_start;
  pts.back() = scn.uav_end;
  return Trajectory::from_waypoints(std::move(pts), scn.slot_len());
}

}  // namespace

double TrajectoryObjective::true_value(const Trajectory& u) const {
  double f = 0.0;
  for (std::size_t n = 1; n < u.waypoints.size(); ++n) {
    const double v = std::max(u.speeds[n - 1], kSpeedFloor);
    const double r = (u.waypoints[n] - u.waypoints[n - 1]).norm();
    f += fly_cubic * r * r * r + fly_inverse / v + slots[n - 1](u.waypoints[n]);
  }
  return f;
}

double TrajectoryObjective::surrogate_value(const Trajectory& u,
                                            const std::vector<double>& vtilde) const {
  double f = 0.0;
  for (std::size_t n = 1; n < u.waypoints.size(); ++n) {
    const double r = (u.waypoints[n] - u.waypoints[n - 1]).norm();
    f += fly_cubic * r * r * r + fly_inverse / vtilde[n - 1] + slots[n - 1](u.waypoints[n]);
  }
  return f;
}

double distance_coefficient(const Scenario& scn, double weight, double bits, double band) {
  if (bits <= 0.0) return 0.0;
  if (!(band > 0.0)) throw ModelError("positive bits scheduled on a zero band");
  const double delta = scn.subslot_len();
  return weight * delta * scn.noise_power *
         std::expm1(bits / (delta * band) * std::numbers::ln2) / scn.ref_gain;
}

TrajectoryObjective build_convex_objective(const Scenario& scn, const Schedule& z,
                                           const BandwidthPlan& b) {
  const std::size_t N = scn.N();
  const double tau = scn.slot_len();
  const double H2 = scn.altitude * scn.altitude;
  TrajectoryObjective obj;
  obj.fly_cubic = scn.weight_uav * scn.fly_coeff_1 / (tau * tau);
  obj.fly_inverse = scn.weight_uav * tau * scn.fly_coeff_2;
  obj.slots.resize(N);
  auto add = [&](SlotQuadratic& q, double coef, Vec2 p) {
    q.a += coef;
    q.b = q.b + p * coef;
    q.c += coef * (p.norm2() + H2);
  };
  for (std::size_t n = 0; n < N; ++n) {
    SlotQuadratic& q = obj.slots[n];
    for (std::size_t k = 0; k < scn.K(); ++k) {
      add(q, distance_coefficient(scn, scn.weight_ue[k], z.l_off_ue(k, n), b.b_off_ue(k, n)),
          scn.ue_pos[k]);
      add(q, distance_coefficient(scn, scn.weight_uav, z.l_off_uav(k, n), b.b_off_uav(k, n)),
          scn.ap_pos);
      add(q, distance_coefficient(scn, scn.weight_uav, z.l_down_uav(k, n), b.b_down_uav(k, n)),
          scn.ue_pos[k]);
    }
  }
  return obj;
}

ScaStepReport sca_step(const Scenario& scn, const TrajectoryObjective& obj, ScaState& state) {
  const std::size_t N = scn.N();
  const double tau = scn.slot_len();
  ScaProgram prog(scn, obj, state.anchor);
  state.degenerate = state.degenerate || prog.degenerate();

  // Strictly feasible start: the anchor itself, slack speeds halfway up.
  VectorXd x0(prog.dim());
  for (std::size_t n = 1; n < N; ++n) {
    x0[static_cast<Index>(2 * (n - 1))] = state.anchor.waypoints[n].x;
    x0[static_cast<Index>(2 * (n - 1) + 1)] = state.anchor.waypoints[n].y;
  }
  const double cap = scn.v_max * tau;
  bool interior = true;
  for (std::size_t n = 1; n <= N; ++n) {
    const double s = (state.anchor.waypoints[n] - state.anchor.waypoints[n - 1]).norm();
    if (s >= cap) interior = false;
    const double v = s / tau;
    x0[prog.v_index(n)] = v >= kLinearisable ? 0.5 * (kSpeedFloor + v) : 1.5 * kSpeedFloor;
  }

  ScaStepReport rep;
  if (!interior) {
    // Speed cap active at the anchor; pull it towards the chord first.
    const Trajectory chord = Trajectory::direct(scn);
    state.anchor = blend(scn, state.anchor, chord, 1e-6);
    return rep;
  }

  numerics::BarrierOptions bo;
  bo.gap_tol = 1e-7;
  numerics::BarrierResult br;
  try {
    br = numerics::solve_barrier(prog, x0, bo);
  } catch (const std::exception&) {
    return rep;
  }
  rep.solver_converged = br.converged;
  rep.surrogate = br.objective;
  rep.stationarity = br.stationarity;
  rep.primal_infeasibility = br.primal_infeasibility;
  rep.complementarity = br.complementarity;

  std::vector<Vec2> pts(N + 1);
  for (std::size_t n = 0; n <= N; ++n) pts[n] = prog.point(br.x, n);
  const Trajectory cand = Trajectory::from_waypoints(std::move(pts), tau);
  std::vector<double> vt(N);
  for (std::size_t n = 1; n <= N; ++n) vt[n - 1] = br.x[prog.v_index(n)];

  const double before = obj.true_value(state.anchor);
  const double slack = 1e-12 * std::max(1.0, std::abs(before));

  // Over-relaxation: the linearised speed bound charges for turning a
  // segment, so full steps undershoot along the flat directions of the
  // true objective. Keep doubling while it still decreases.
  if (state.damping == 1.0 && obj.true_value(cand) <= before + slack) {
    Trajectory best = cand;
    double best_val = obj.true_value(cand);
    for (double f = 2.0; f <= kMaxExtrapolation; f *= 2.0) {
      const Trajectory t = blend(scn, state.anchor, cand, f);
      bool fits = true;
      for (double v : t.speeds) fits = fits && v < scn.v_max;
      const double val = obj.true_value(t);
      if (!fits || !(val < best_val)) break;
      best = t;
      best_val = val;
    }
    if (best_val < obj.true_value(cand)) {
      state.anchor = best;
      state.vtilde.resize(N);
      for (std::size_t n = 0; n < N; ++n) state.vtilde[n] = std::max(kSpeedFloor, best.speeds[n]);
      state.history.push_back(best_val);
      rep.accepted = true;
      ++state.iteration;
      return rep;
    }
  }

  double s = state.damping;
  for (int i = 0; i < 12; ++i, s *= 0.5) {
    const Trajectory t = s == 1.0 ? cand : blend(scn, state.anchor, cand, s);
    if (obj.true_value(t) <= before + slack) {
      state.anchor = t;
      if (s == 1.0) {
        state.vtilde = vt;
      } else {
        state.vtilde.resize(N);
        for (std::size_t n = 0; n < N; ++n)
          state.vtilde[n] = std::max(kSpeedFloor, std::min(vt[n], t.speeds[n]));
      }
      state.history.push_back(obj.true_value(t));
      rep.accepted = true;
      break;
    }
  }
  if (!rep.accepted) state.damping *= 0.5;
  ++state.iteration;
  return rep;
}

Trajectory loiter_trajectory(const Scenario& scn) {
  const std::size_t N = scn.N();
  const double tau = scn.slot_len();
  const double pi = std::numbers::pi;
  const double v = std::min(min_power_speed(scn), 0.5 * scn.v_max);
  const double r = v * tau / (2.0 * std::sin(pi / static_cast<double>(N)));
  std::vector<Vec2> pts(N + 1);
  for (std::size_t n = 0; n <= N; ++n) {
    const double s = static_cast<double>(n) / static_cast<double>(N);
    const double th = 2.0 * pi * s;
    pts[n] = scn.uav_start + (scn.uav_end - scn.uav_start) * s +
             Vec2{r * (std::cos(th) - 1.0), r * std::sin(th)};
  }
  pts.front() = scn.uav_start;
  pts.back() = scn.uav_end;
  return Trajectory::from_waypoints(std::move(pts), tau);
}

TrajectoryResult solve_p13(const Scenario& scn, const Schedule& z, const BandwidthPlan& b,
                           const Trajectory& u_init, const TrajectoryOptions& opt) {
  const TrajectoryObjective obj = build_convex_objective(scn, z, b);
  ScaState st;
  st.anchor = u_init;
  bool slow = false;
  for (double v : u_init.speeds) slow = slow || v < kLinearisable;
  if (slow) {
    const Trajectory loop = loiter_trajectory(scn);
    bool fits = true;
    for (double v : loop.speeds) fits = fits && v < scn.v_max;
    if (fits && obj.true_value(loop) < obj.true_value(u_init)) st.anchor = loop;
    st.degenerate = true;
  }
  st.vtilde.resize(scn.N());
  for (std::size_t n = 0; n < scn.N(); ++n)
    st.vtilde[n] = std::max(kSpeedFloor, st.anchor.speeds[n]);
  st.history.push_back(obj.true_value(st.anchor));

  TrajectoryResult res;
  double prev = std::numeric_limits<double>::quiet_NaN();
  for (int i = 0; i < opt.max_iterations; ++i) {
    const ScaStepReport rep = sca_step(scn, obj, st);
    res.iterations = i + 1;
    res.stationarity = std::max(res.stationarity, rep.stationarity);
    res.primal_infeasibility = std::max(res.primal_infeasibility, rep.primal_infeasibility);
    res.complementarity = std::max(res.complementarity, rep.complementarity);
    if (!rep.accepted) {
      if (st.damping < 1e-3) {
        res.converged = true;
        break;
      }
      continue;
    }
    const double cur = rep.surrogate;
    if (std::isfinite(prev) && std::abs(cur - prev) <= opt.rel_tol * std::max(1e-12, std::abs(prev))) {
      res.converged = true;
      break;
    }
    prev = cur;
  }
  res.trajectory = st.anchor;
  res.vtilde = st.vtilde;
  res.history = st.history;
  res.degenerate = st.degenerate;
  return res;
}

}  // namespace uavmec

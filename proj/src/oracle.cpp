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

#include "uavmec/barrier.hpp"
#include "uavmec/energy.hpp"
#include "uavmec/orchestrator.hpp"

namespace uavmec {

namespace {

using Eigen::Index;
using Eigen::MatrixXd;
using Eigen::VectorXd;

constexpr double kUnit = 1e6;  // variables in Mbit
constexpr double kInf = std::numeric_limits<double>::infinity();

enum class Kind { kLocal, kOffload, kCompute, kForward, kDownload };

struct Var {
  Kind kind;
  std::size_t slot;  // 1-based
  double coef;       // energy = coef * (2^(rate * x) - 1) or coef * x^3
  double rate;       // transmission only
};

// One UE's scheduling program in Mbit. Inequalities: every variable
// positive, receive causality for n = 2..N-2, output causality for
// n = 3..N-1 (the last ones follow from the balances).
class UeProgram : public numerics::ConvexProgram {
 public:
  UeProgram(const Scenario& scn, const Gains& g, const BandwidthPlan& b, std::size_t k)
      : N_(scn.N()), O_(scn.output_ratio[k]), I_(scn.task_bits[k] / kUnit) {
    const double delta = scn.subslot_len(), tau = scn.slot_len(), C = scn.cycles_per_bit[k];
    const double N0 = scn.noise_power, wk = scn.weight_ue[k], wu = scn.weight_uav;
    auto radio = [&](Kind kind, std::size_t n, double w, double band, double h) {
      if (band > 0.0)
        vars_.push_back({kind, n, w * delta * N0 / h, kUnit / (delta * band) * std::numbers::ln2});
    };
    for (std::size_t n = 1; n <= N_; ++n) {
      const std::size_t i = n - 1;
      const double fl = kUnit * C / tau;  // frequency per Mbit
      vars_.push_back({Kind::kLocal, n, wk * tau * scn.cap_ue[k] * fl * fl * fl, 0.0});
      if (n <= N_ - 2) radio(Kind::kOffload, n, wk, b.b_off_ue(k, i), g.ue(k, i));
      if (n >= 2 && n <= N_ - 1) {
        const double fc = kUnit * C / delta;
        vars_.push_back({Kind::kCompute, n, wu * delta * scn.cap_uav * fc * fc * fc, 0.0});
        radio(Kind::kForward, n, wu, b.b_off_uav(k, i), g.ap[i]);
      }
      if (n >= 3) radio(Kind::kDownload, n, wu, b.b_down_uav(k, i), g.ue(k, i));
    }
    const Index nv = static_cast<Index>(vars_.size());
    // Rows of the causality constraints as linear forms.
    for (std::size_t n = 2; n + 2 <= N_; ++n) {
      VectorXd row = VectorXd::Zero(nv);
      for (Index j = 0; j < nv; ++j) {
        const Var& v = vars_[static_cast<std::size_t>(j)];
        if (v.kind == Kind::kOffload && v.slot <= n - 1) row[j] = -1.0;
        if (is_relay(v.kind) && v.slot >= 2 && v.slot <= n) row[j] = 1.0;
      }
      causal_.push_back(row);
    }
    for (std::size_t n = 3; n + 1 <= N_; ++n) {
      VectorXd row = VectorXd::Zero(nv);
      for (Index j = 0; j < nv; ++j) {
        const Var& v = vars_[static_cast<std::size_t>(j)];
        if (is_relay(v.kind) && v.slot >= 2 && v.slot <= n - 1) row[j] = -O_;
        if (v.kind == Kind::kDownload && v.slot >= 3 && v.slot <= n) row[j] = 1.0;
      }
      causal_.push_back(row);
    }
    A_ = MatrixXd::Zero(3, nv);
    for (Index j = 0; j < nv; ++j) {
      const Kind kind = vars_[static_cast<std::size_t>(j)].kind;
      if (kind == Kind::kOffload) A_(0, j) = 1.0, A_(2, j) = 1.0;
      if (is_relay(kind)) A_(0, j) = -1.0, A_(1, j) = O_;
      if (kind == Kind::kDownload) A_(1, j) = -1.0;
      if (kind == Kind::kLocal) A_(2, j) = 1.0;
    }
    b_ = VectorXd::Zero(3);
    b_[2] = I_;
  }

  static bool is_relay(Kind k) { return k == Kind::kCompute || k == Kind::kForward; }

  Index dim() const override { return static_cast<Index>(vars_.size()); }
  Index num_inequalities() const override {
    return dim() + static_cast<Index>(causal_.size());
  }

  double energy(std::size_t j, double x) const {
    const Var& v = vars_[j];
    if (v.rate == 0.0) return v.coef * x * x * x;
    return v.coef * std::expm1(v.rate * x);
  }

  double objective(const VectorXd& x) const override {
    double f = 0.0;
    for (std::size_t j = 0; j < vars_.size(); ++j) {
      const double e = energy(j, x[static_cast<Index>(j)]);
      if (!std::isfinite(e)) return kInf;
      f += e;
    }
    return f;
  }

  void objective_derivatives(const VectorXd& x, VectorXd& grad, MatrixXd& hess) const override {
    grad.setZero(dim());
    hess.setZero(dim(), dim());
    for (std::size_t j = 0; j < vars_.size(); ++j) {
      const Index i = static_cast<Index>(j);
      const Var& v = vars_[j];
      const double xi = x[i];
      if (v.rate == 0.0) {
        grad[i] = 3.0 * v.coef * xi * xi;
        hess(i, i) = 6.0 * v.coef * xi;
      } else {
        const double e = v.coef * std::exp(v.rate * xi);
        grad[i] = v.rate * e;
        hess(i, i) = v.rate * v.rate * e;
      }
    }
  }

  void inequalities(const VectorXd& x, VectorXd& g) const override {
    g.resize(num_inequalities());
    for (Index j = 0; j < dim(); ++j) g[j] = -x[j];
    for (std::size_t r = 0; r < causal_.size(); ++r) g[dim() + static_cast<Index>(r)] = causal_[r].dot(x);
  }

  void inequality_jacobian(const VectorXd&, MatrixXd& jac) const override {
    jac.setZero(num_inequalities(), dim());
    for (Index j = 0; j < dim(); ++j) jac(j, j) = -1.0;
    for (std::size_t r = 0; r < causal_.size(); ++r) jac.row(dim() + static_cast<Index>(r)) = causal_[r].transpose();
  }

  void add_inequality_hessians(const VectorXd&, const VectorXd&, MatrixXd&) const override {}

  MatrixXd equality_matrix() const override { return A_; }
  VectorXd equality_rhs() const override { return b_; }

  // Strictly feasible point, or an empty vector when none is found.
  VectorXd start() const {
    const std::size_t N = N_;
    const double eps = 0.01;
    std::vector<double> l(N + 1, 0.0);
    std::vector<std::size_t> off_slots;
    for (const Var& v : vars_)
      if (v.kind == Kind::kOffload) off_slots.push_back(v.slot);
    if (off_slots.empty() || off_slots.front() != 1) return {};
    const double per = 0.5 * I_ / static_cast<double>(off_slots.size());
    for (std::size_t s : off_slots) l[s] = per;

    // Cumulative relay X_n strictly below received-so-far, meeting it at N-1.
    std::vector<double> recv(N + 1, 0.0);
    for (std::size_t n = 1; n <= N; ++n) recv[n] = recv[n - 1] + l[n];
    std::vector<double> X(N + 1, 0.0), x(N + 1, 0.0);
    for (std::size_t n = 2; n + 2 <= N; ++n)
      X[n] = (1.0 - eps) * recv[n - 1] -
             eps * l[1] * static_cast<double>(N - n) / static_cast<double>(N);
    X[N - 1] = recv[N - 2];
    for (std::size_t n = 2; n <= N - 1; ++n) x[n] = X[n] - X[n - 1];

    // Cumulative download strictly below produced-so-far, deferred past closed slots.
    std::vector<bool> down_open(N + 1, false);
    for (const Var& v : vars_)
      if (v.kind == Kind::kDownload) down_open[v.slot] = true;
    if (!down_open[N]) return {};
    std::vector<double> d(N + 1, 0.0);
    double Dprev = 0.0, carry = 0.0;
    for (std::size_t n = 3; n <= N; ++n) {
      const double D = n == N ? O_ * X[N - 1]
                              : (1.0 - eps) * O_ * X[n - 1] -
                                    eps * O_ * x[2] * static_cast<double>(N - n) /
                                        static_cast<double>(N);
      carry += D - Dprev;
      Dprev = D;
      if (down_open[n] && carry > 0.0) {
        d[n] = carry;
        carry = 0.0;
      }
    }

    VectorXd x0(dim());
    std::vector<bool> forward_open(N + 1, false);
    for (const Var& v : vars_)
      if (v.kind == Kind::kForward) forward_open[v.slot] = true;
    const double local = (I_ - 0.5 * I_) / static_cast<double>(N);
    for (std::size_t j = 0; j < vars_.size(); ++j) {
      const Var& v = vars_[j];
      double val = 0.0;
      switch (v.kind) {
        case Kind::kLocal: val = local; break;
        case Kind::kOffload: val = l[v.slot]; break;
        case Kind::kCompute: val = forward_open[v.slot] ? 0.5 * x[v.slot] : x[v.slot]; break;
        case Kind::kForward: val = 0.5 * x[v.slot]; break;
        case Kind::kDownload: val = d[v.slot]; break;
      }
      x0[static_cast<Index>(j)] = val;
    }
    VectorXd g;
    inequalities(x0, g);
    if (g.maxCoeff() >= 0.0) return {};
    return x0;
  }

 private:
  std::size_t N_;
  double O_, I_;
  std::vector<Var> vars_;
  std::vector<VectorXd> causal_;
  MatrixXd A_;
  VectorXd b_;
};

}  // namespace

double oracle_p11(const Scenario& scn, const Trajectory& u, const BandwidthPlan& b) {
  if (u.waypoints.size() != scn.N() + 1 || b.b_off_ue.rows() != scn.K() ||
      b.b_off_ue.cols() != scn.N())
    return kInf;
  for (const Grid* grid : {&b.b_off_ue, &b.b_off_uav, &b.b_down_uav})
    for (double v : grid->data())
      if (!(v >= 0.0)) return kInf;
  const Gains g = Gains::along(scn, u);
  double total = 0.0;
  for (std::size_t k = 0; k < scn.K(); ++k) {
    UeProgram prog(scn, g, b, k);
    const VectorXd x0 = prog.start();
    if (x0.size() == 0) {
      // No band to offload through or to return results on: all local.
      const double f = scn.task_bits[k] * scn.cycles_per_bit[k] / scn.horizon;
      total += scn.weight_ue[k] * static_cast<double>(scn.N()) * local_energy(scn, k, f);
      continue;
    }
    numerics::BarrierOptions opt;
    opt.gap_tol = 1e-12;
    opt.max_outer = 80;
    const auto r = numerics::solve_barrier(prog, x0, opt);
    if (!std::isfinite(r.objective)) return kInf;
    total += r.objective;
  }
  return total;
}

}  // namespace uavmec

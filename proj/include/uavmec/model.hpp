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

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace uavmec {

// Slot indexing: the model numbers slots n = 1..N; every array in this
// library stores slot n at index n - 1. Waypoints are the exception: they
// hold u[0..N] directly, so slot n is served from waypoint index n.

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
  Vec2 operator*(double s) const { return {x * s, y * s}; }
  double dot(Vec2 o) const { return x * o.x + y * o.y; }
  double norm2() const { return x * x + y * y; }
  double norm() const { return std::hypot(x, y); }
  bool operator==(const Vec2&) const = default;
};

class ModelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// K x N table of doubles, one row per UE and one column per slot.
class Grid {
 public:
  Grid() = default;
  Grid(std::size_t rows, std::size_t cols, double value = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, value) {}

  double& operator()(std::size_t k, std::size_t n) { return data_[k * cols_ + n]; }
  double operator()(std::size_t k, std::size_t n) const { return data_[k * cols_ + n]; }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const std::vector<double>& data() const { return data_; }
  bool operator==(const Grid&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

/// Immutable problem instance. All quantities are SI: bits, Hz, W, J, s, m.
struct Scenario {
  int num_slots = 50;
  int num_ues = 4;
  double horizon = 10.0;
  double bandwidth_total = 30e6;
  double ref_gain = 1e-3;
  double noise_power = 1e-9;
  double altitude = 10.0;
  double v_max = 10.0;
  double fly_coeff_1 = 0.00614;
  double fly_coeff_2 = 15.976;
  Vec2 uav_start{-5.0, -5.0};
  Vec2 uav_end{5.0, -5.0};
  Vec2 ap_pos{0.0, 0.0};
  double weight_uav = 0.2;
  double cap_uav = 1e-28;

  std::vector<Vec2> ue_pos;
  std::vector<double> weight_ue;
  std::vector<double> cap_ue;
  std::vector<double> task_bits;
  std::vector<double> cycles_per_bit;
  std::vector<double> output_ratio;
  std::vector<double> latency;

  double slot_len() const { return horizon / num_slots; }
  double subslot_len() const { return horizon / (static_cast<double>(num_slots) * num_ues); }
  std::size_t N() const { return static_cast<std::size_t>(num_slots); }
  std::size_t K() const { return static_cast<std::size_t>(num_ues); }

  /// Human-readable list of broken invariants; empty when valid.
  std::vector<std::string> problems() const;
  /// Throws ModelError listing every problem.
  void validate() const;

  /// Default simulation setup: 4 UEs on the corners of a 10 m square,
  /// 400 Mbit tasks, 30 MHz, 10 s over 50 slots.
  static Scenario reference();
  /// Resize every per-UE vector to k entries, replicating the first entry.
  void resize_ues(int k);
};

/// Flight-speed floor guarding the 1/v propulsion term.
inline constexpr double kSpeedFloor = 0.1;

struct Schedule {
  Grid f_ue;        // local CPU frequency, Hz
  Grid l_off_ue;    // UE -> UAV bits
  Grid f_uav;       // UAV CPU frequency spent on UE k, Hz
  Grid l_off_uav;   // UAV -> AP bits
  Grid l_down_uav;  // UAV -> UE result bits

  static Schedule zeros(const Scenario& scn);
};

struct BandwidthPlan {
  Grid b_off_ue;
  Grid b_off_uav;
  Grid b_down_uav;

  static BandwidthPlan zeros(const Scenario& scn);
  double sum(std::size_t k, std::size_t n) const {
    return b_off_ue(k, n) + b_off_uav(k, n) + b_down_uav(k, n);
  }
};

struct Trajectory {
  std::vector<Vec2> waypoints;  // u[0..N]
  std::vector<double> speeds;   // v[1..N] at index n-1

  /// Slot n (1-based) hovers at waypoints[n].
  Vec2 at_slot(std::size_t idx) const { return waypoints[idx + 1]; }
  void update_speeds(double slot_len);
  static Trajectory from_waypoints(std::vector<Vec2> pts, double slot_len);
  /// Straight chord u_I -> u_F at constant speed.
  static Trajectory direct(const Scenario& scn);
};

struct EnergyReport {
  // Per-slot sums over UEs (unweighted), index n-1.
  std::vector<double> ue_local, ue_offload, uav_compute, uav_offload, uav_download, uav_fly;
  // Per-UE totals over slots (unweighted local + offload).
  std::vector<double> ue_total_by_ue;

  double total_ue_local = 0.0;
  double total_ue_offload = 0.0;
  double total_uav_compute = 0.0;
  double total_uav_offload = 0.0;
  double total_uav_download = 0.0;
  double total_uav_fly = 0.0;

  double ue_weighted = 0.0;   // sum_k w_k E_k
  double uav_weighted = 0.0;  // w_U E_U
  double wsec = 0.0;

  double total_uav() const {
    return total_uav_compute + total_uav_offload + total_uav_download + total_uav_fly;
  }
  double total_ue() const { return total_ue_local + total_ue_offload; }
};

}  // namespace uavmec

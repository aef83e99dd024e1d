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

#include <ostream>
#include <string>
#include <vector>

#include "uavmec/orchestrator.hpp"

namespace uavmec {

/// Bumped whenever a CSV column is added, removed or renamed.
inline constexpr int kCsvSchemaVersion = 1;

void write_summary_csv(std::ostream& os, const std::vector<SolveResult>& runs);
void write_schedule_csv(std::ostream& os, const Scenario& scn, const Schedule& z);
void write_bandwidth_csv(std::ostream& os, const Scenario& scn, const BandwidthPlan& b);
void write_trajectory_csv(std::ostream& os, const Scenario& scn, const SolveResult& r);
void write_convergence_csv(std::ostream& os, const SolveResult& r);
void write_trajectory_svg(std::ostream& os, const Scenario& scn, const Trajectory& u);
void write_sweep_csv(std::ostream& os, SweepParam p, const std::vector<SweepRow>& rows);

/// summary.csv, schedule.csv, bandwidth.csv, trajectory.csv,
/// convergence.csv and trajectory.svg in `dir` (created if missing).
void write_run_dir(const std::string& dir, const Scenario& scn, const SolveResult& r);

/// SVG pixel position of a scene point; shared by the plot and its tests.
struct SvgFrame {
  double min_x, min_y, scale, margin, height;
  double px(Vec2 p) const { return margin + (p.x - min_x) * scale; }
  double py(Vec2 p) const { return height - margin - (p.y - min_y) * scale; }
  static SvgFrame fit(const Scenario& scn, const Trajectory& u);
};

}  // namespace uavmec

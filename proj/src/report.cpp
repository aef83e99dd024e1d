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

#include "uavmec/report.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <locale>

namespace uavmec {

namespace {

void prepare(std::ostream& os) {
  os.imbue(std::locale::classic());
  os << std::setprecision(17);
}

void summary_row(std::ostream& os, const SolveResult& r) {
  const EnergyReport& e = r.energy;
  os << kCsvSchemaVersion << ',' << scheme_name(r.scheme) << ',' << e.wsec << ',' << e.ue_weighted
     << ',' << e.uav_weighted << ',' << e.total_ue_local << ',' << e.total_ue_offload << ','
     << e.total_uav_compute << ',' << e.total_uav_offload << ',' << e.total_uav_download << ','
     << e.total_uav_fly << ',' << r.wsec_trace.size() << ',' << (r.converged ? 1 : 0) << ','
     << (r.scheduler_converged ? 1 : 0) << ',' << (r.trajectory_converged ? 1 : 0) << ','
     << r.corner_hits << '\n';
}

const char* kSummaryHeader =
    "schema,scheme,wsec_j,ue_weighted_j,uav_weighted_j,ue_local_j,ue_offload_j,uav_compute_j,"
    "uav_offload_j,uav_download_j,uav_fly_j,passes,converged,scheduler_converged,"
    "trajectory_converged,corner_hits";

std::ofstream open(const std::filesystem::path& p) {
  std::ofstream f(p, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write '" + p.string() + "'");
  return f;
}

}  // namespace

void write_summary_csv(std::ostream& os, const std::vector<SolveResult>& runs) {
  prepare(os);
  os << kSummaryHeader << '\n';
  for (const auto& r : runs) summary_row(os, r);
}

void write_schedule_csv(std::ostream& os, const Scenario& scn, const Schedule& z) {
  prepare(os);
  os << "ue,slot,f_ue_hz,l_off_ue_bits,f_uav_hz,l_off_uav_bits,l_down_uav_bits\n";
  for (std::size_t k = 0; k < scn.K(); ++k)
    for (std::size_t n = 0; n < scn.N(); ++n)
      os << k + 1 << ',' << n + 1 << ',' << z.f_ue(k, n) << ',' << z.l_off_ue(k, n) << ','
         << z.f_uav(k, n) << ',' << z.l_off_uav(k, n) << ',' << z.l_down_uav(k, n) << '\n';
}

void write_bandwidth_csv(std::ostream& os, const Scenario& scn, const BandwidthPlan& b) {
  prepare(os);
  os << "ue,slot,b_off_ue_hz,b_off_uav_hz,b_down_uav_hz\n";
  for (std::size_t k = 0; k < scn.K(); ++k)
    for (std::size_t n = 0; n < scn.N(); ++n)
      os << k + 1 << ',' << n + 1 << ',' << b.b_off_ue(k, n) << ',' << b.b_off_uav(k, n) << ','
         << b.b_down_uav(k, n) << '\n';
}

void write_trajectory_csv(std::ostream& os, const Scenario& scn, const SolveResult& r) {
  prepare(os);
  os << "index,x_m,y_m,speed_mps,slack_speed_mps\n";
  const Trajectory& u = r.trajectory;
  for (std::size_t n = 0; n <= scn.N(); ++n) {
    os << n << ',' << u.waypoints[n].x << ',' << u.waypoints[n].y << ',';
    if (n > 0) {
      os << u.speeds[n - 1] << ',';
      if (!r.vtilde.empty()) os << r.vtilde[n - 1];
    } else {
      os << ',';
    }
    os << '\n';
  }
}

void write_convergence_csv(std::ostream& os, const SolveResult& r) {
  prepare(os);
  os << "zeta,wsec_j,after_schedule_j,after_bandwidth_j,after_trajectory_j,scheduler_iterations,"
        "sca_iterations\n";
  for (std::size_t i = 0; i < r.passes.size(); ++i) {
    const PassRecord& p = r.passes[i];
    os << i + 2 << ',' << p.wsec << ',' << p.after_schedule << ',' << p.after_bandwidth << ','
       << p.after_trajectory << ',' << p.scheduler_iterations << ',' << p.sca_iterations << '\n';
  }
}

SvgFrame SvgFrame::fit(const Scenario& scn, const Trajectory& u) {
  std::vector<Vec2> pts = u.waypoints;
  pts.push_back(scn.ap_pos);
  for (Vec2 p : scn.ue_pos) pts.push_back(p);
  double x0 = pts[0].x, x1 = x0, y0 = pts[0].y, y1 = y0;
  for (Vec2 p : pts) {
    x0 = std::min(x0, p.x);
    x1 = std::max(x1, p.x);
    y0 = std::min(y0, p.y);
    y1 = std::max(y1, p.y);
  }
  const double span = std::max({x1 - x0, y1 - y0, 1e-9});
  const double size = 480.0, margin = 40.0;
  return {x0, y0, (size - 2.0 * margin) / span, margin, size};
}

void write_trajectory_svg(std::ostream& os, const Scenario& scn, const Trajectory& u) {
  prepare(os);
  const SvgFrame f = SvgFrame::fit(scn, u);
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << f.height << "\" height=\""
     << f.height << "\" viewBox=\"0 0 " << f.height << ' ' << f.height << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<polyline id=\"path\" fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"2\" points=\"";
  for (std::size_t i = 0; i < u.waypoints.size(); ++i) {
    if (i) os << ' ';
    os << f.px(u.waypoints[i]) << ',' << f.py(u.waypoints[i]);
  }
  os << "\"/>\n";
  for (std::size_t k = 0; k < scn.ue_pos.size(); ++k) {
    const Vec2 p = scn.ue_pos[k];
    os << "<circle class=\"ue\" cx=\"" << f.px(p) << "\" cy=\"" << f.py(p)
       << "\" r=\"6\" fill=\"#2ca02c\"/>\n";
    os << "<text x=\"" << f.px(p) + 8 << "\" y=\"" << f.py(p) - 8 << "\" font-size=\"12\">UE"
       << k + 1 << "</text>\n";
  }
  const Vec2 ap = scn.ap_pos;
  os << "<rect class=\"ap\" x=\"" << f.px(ap) - 6 << "\" y=\"" << f.py(ap) - 6
     << "\" width=\"12\" height=\"12\" fill=\"#d62728\"/>\n";
  os << "<text x=\"" << f.px(ap) + 8 << "\" y=\"" << f.py(ap) - 8 << "\" font-size=\"12\">AP</text>\n";
  os << "</svg>\n";
}

void write_sweep_csv(std::ostream& os, SweepParam p, const std::vector<SweepRow>& rows) {
  prepare(os);
  os << "parameter,value," << kSummaryHeader << '\n';
  for (const auto& row : rows) {
    os << sweep_param_name(p) << ',' << row.value << ',';
    summary_row(os, row.result);
  }
}

void write_run_dir(const std::string& dir, const Scenario& scn, const SolveResult& r) {
  namespace fs = std::filesystem;
  const fs::path d(dir);
  fs::create_directories(d);
  {
    auto f = open(d / "summary.csv");
    write_summary_csv(f, {r});
  }
  {
    auto f = open(d / "schedule.csv");
    write_schedule_csv(f, scn, r.schedule);
  }
  {
    auto f = open(d / "bandwidth.csv");
    write_bandwidth_csv(f, scn, r.bandwidth);
  }
  {
    auto f = open(d / "trajectory.csv");
    write_trajectory_csv(f, scn, r);
  }
  {
    auto f = open(d / "convergence.csv");
    write_convergence_csv(f, r);
  }
  {
    auto f = open(d / "trajectory.svg");
    write_trajectory_svg(f, scn, r.trajectory);
  }
}

}  // namespace uavmec

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

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>

#include "uavmec/orchestrator.hpp"
#include "uavmec/report.hpp"
#include "uavmec/scenario_io.hpp"

using namespace uavmec;
using doctest::Approx;

namespace {

std::string error_of(const std::string& yaml) {
  try {
    parse_scenario(yaml, "case.yaml");
  } catch (const ModelError& e) {
    return e.what();
  }
  return "";
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream is(text);
  for (std::string l; std::getline(is, l);) out.push_back(l);
  return out;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("empty scenario file gives the reference scenario") {
  const ScenarioFile f = parse_scenario("");
  const Scenario& s = f.scenario;
  const Scenario t = Scenario::reference();
  CHECK(s.num_slots == t.num_slots);
  CHECK(s.task_bits == t.task_bits);
  CHECK(s.ue_pos == t.ue_pos);
  CHECK_FALSE(f.sweep.has_value());
}

TEST_CASE("unit conversions") {
  const Scenario s = parse_scenario(
                         "noise_dbm: -60\nref_gain_db: -30\nbandwidth_mhz: 2.5\n"
                         "task_mbits: [100, 200, 300, 400]\nhorizon_s: 12\nap_pos: [10, 5]\n")
                         .scenario;
  CHECK(s.noise_power == Approx(1e-9).epsilon(1e-12));
  CHECK(s.ref_gain == Approx(1e-3).epsilon(1e-12));
  CHECK(s.bandwidth_total == 2.5e6);
  CHECK(s.task_bits[3] == 400e6);
  CHECK(s.latency[0] == 12.0);
  CHECK(s.ap_pos == Vec2{10.0, 5.0});
  CHECK(parse_scenario("task_mbits: 300").scenario.task_bits == std::vector<double>(4, 300e6));
}

TEST_CASE("sweep block") {
  const ScenarioFile f = parse_scenario("sweep:\n  parameter: T\n  grid: 8..12:2\n");
  REQUIRE(f.sweep.has_value());
  CHECK(f.sweep->parameter == "T");
  CHECK(f.sweep->grid == std::vector<double>{8, 10, 12});
  CHECK(parse_scenario("sweep: {parameter: O, grid: [0.2, 1.0]}").sweep->grid.size() == 2);
}

TEST_CASE("scenario errors carry the origin and line") {
  const std::string e = error_of("num_slots: 40\nspeed_limit: 3\n");
  CHECK(e.find("case.yaml:2") != std::string::npos);
  CHECK(e.find("speed_limit") != std::string::npos);
  CHECK(error_of("v_max_mps: 0.2\n").find("invalid scenario") != std::string::npos);
  CHECK(error_of("num_slots: 2.5\n").find("case.yaml:1") != std::string::npos);
  CHECK(error_of("uav_start: [1]\n").find("[x, y]") != std::string::npos);
  CHECK(error_of("weight_uav: heavy\n").find("expects a number") != std::string::npos);
  CHECK_FALSE(error_of("a: [\n").empty());
  CHECK_THROWS_AS(load_scenario("/nonexistent/file.yaml"), ModelError);
}

TEST_CASE("grid syntax") {
  CHECK(parse_grid("400,450,500") == std::vector<double>{400, 450, 500});
  CHECK(parse_grid("0.2..1.0:0.2").size() == 5);
  CHECK(parse_grid("8..12") == std::vector<double>{8, 10, 12});
  CHECK(parse_grid("5..5") == std::vector<double>{5});
  CHECK_THROWS_AS(parse_grid("12..8"), ModelError);
  CHECK_THROWS_AS(parse_grid("1..2:-1"), ModelError);
  CHECK_THROWS_AS(parse_grid("x,y"), ModelError);
}

TEST_CASE("csv layout and round trip") {
  Scenario s = Scenario::reference();
  s.num_slots = 8;
  s.task_bits.assign(4, 60e6);
  const SolveResult r = baseline_direct_trajectory(s);

  std::ostringstream sched, band, traj, conv, sum;
  write_schedule_csv(sched, s, r.schedule);
  write_bandwidth_csv(band, s, r.bandwidth);
  write_trajectory_csv(traj, s, r);
  write_convergence_csv(conv, r);
  write_summary_csv(sum, {r});

  const auto sl = lines(sched.str());
  CHECK(sl.size() == 1 + s.K() * s.N());
  CHECK(sl[0] == "ue,slot,f_ue_hz,l_off_ue_bits,f_uav_hz,l_off_uav_bits,l_down_uav_bits");
  // Values are written with enough digits to parse back exactly.
  std::istringstream row(sl[1]);
  std::string cell;
  std::vector<std::string> cells;
  while (std::getline(row, cell, ',')) cells.push_back(cell);
  REQUIRE(cells.size() == 7);
  CHECK(std::stod(cells[3]) == r.schedule.l_off_ue(0, 0));

  CHECK(lines(band.str()).size() == 1 + s.K() * s.N());
  CHECK(lines(traj.str()).size() == 2 + s.N());
  const auto cl = lines(conv.str());
  REQUIRE(cl.size() == 1 + r.passes.size());
  CHECK(cl[1].rfind("2,", 0) == 0);
  const auto ml = lines(sum.str());
  REQUIRE(ml.size() == 2);
  CHECK(ml[1].rfind("1,direct,", 0) == 0);
}

TEST_CASE("svg places points through one affine map") {
  Scenario s = Scenario::reference();
  s.ap_pos = {10.0, 5.0};
  const Trajectory u = Trajectory::direct(s);
  const SvgFrame f = SvgFrame::fit(s, u);
  std::ostringstream os;
  write_trajectory_svg(os, s, u);
  const std::string svg = os.str();

  // Pixel coordinates of the path vertices match the frame.
  const std::regex pts("points=\"([^\"]*)\"");
  std::smatch m;
  REQUIRE(std::regex_search(svg, m, pts));
  std::istringstream is(m[1].str());
  std::string pair;
  std::size_t i = 0;
  while (is >> pair) {
    const auto comma = pair.find(',');
    CHECK(std::stod(pair.substr(0, comma)) == Approx(f.px(u.waypoints[i])).epsilon(1e-9));
    CHECK(std::stod(pair.substr(comma + 1)) == Approx(f.py(u.waypoints[i])).epsilon(1e-9));
    ++i;
  }
  CHECK(i == u.waypoints.size());

  // y grows upward in the world and downward on screen; scale is isotropic.
  const Vec2 a{0.0, 0.0}, b{1.0, 1.0};
  CHECK(f.px(b) - f.px(a) == Approx(f.scale));
  CHECK(f.py(a) - f.py(b) == Approx(f.scale));
  for (Vec2 p : s.ue_pos) {
    CHECK(f.px(p) >= f.margin - 1e-9);
    CHECK(f.px(p) <= f.height - f.margin + 1e-9);
    CHECK(f.py(p) >= f.margin - 1e-9);
    CHECK(f.py(p) <= f.height - f.margin + 1e-9);
  }
  CHECK(svg.find("class=\"ap\"") != std::string::npos);
}

TEST_CASE("run directory is complete and byte-identical across runs") {
  namespace fs = std::filesystem;
  Scenario s = Scenario::reference();
  s.num_slots = 8;
  s.task_bits.assign(4, 60e6);
  const fs::path root = fs::temp_directory_path() / "uavmec_test_io";
  fs::remove_all(root);
  write_run_dir((root / "a").string(), s, solve(s));
  write_run_dir((root / "b").string(), s, solve(s));
  int files = 0;
  for (const auto& e : fs::directory_iterator(root / "a")) {
    ++files;
    const std::string name = e.path().filename().string();
    CHECK(slurp(e.path()) == slurp(root / "b" / name));
  }
  CHECK(files == 6);
  fs::remove_all(root);
}

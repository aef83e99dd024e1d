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

#include "uavmec/scenario_io.hpp"

#include <yaml-cpp/yaml.h>

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace uavmec {

namespace {

[[noreturn]] void fail(const std::string& origin, const YAML::Node& node, const std::string& what) {
  std::ostringstream os;
  os << origin;
  if (node.IsDefined() && node.Mark().line >= 0) os << ":" << node.Mark().line + 1;
  os << ": " << what;
  throw ModelError(os.str());
}

double scalar(const std::string& origin, const YAML::Node& node, const std::string& key) {
  try {
    return node.as<double>();
  } catch (const YAML::Exception&) {
    fail(origin, node, "key '" + key + "' expects a number");
  }
}

Vec2 point(const std::string& origin, const YAML::Node& node, const std::string& key) {
  if (!node.IsSequence() || node.size() != 2) fail(origin, node, "key '" + key + "' expects [x, y]");
  return {scalar(origin, node[0], key), scalar(origin, node[1], key)};
}

// Scalar applies to every UE; a list sets them one by one.
void per_ue(const std::string& origin, const YAML::Node& node, const std::string& key,
            std::vector<double>& out, double scale) {
  if (node.IsSequence()) {
    out.clear();
    for (const auto& v : node) out.push_back(scale * scalar(origin, v, key));
  } else {
    const double v = scale * scalar(origin, node, key);
    for (double& x : out) x = v;
  }
}

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

}  // namespace

std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> grid;
  const auto dots = text.find("..");
  try {
    if (dots == std::string::npos) {
      std::stringstream ss(text);
      std::string item;
      while (std::getline(ss, item, ',')) grid.push_back(std::stod(item));
    } else {
      const double lo = std::stod(text.substr(0, dots));
      std::string rest = text.substr(dots + 2);
      double step = 0.0;
      const auto colon = rest.find(':');
      if (colon != std::string::npos) {
        step = std::stod(rest.substr(colon + 1));
        rest = rest.substr(0, colon);
      }
      const double hi = std::stod(rest);
      if (hi < lo) throw ModelError("grid '" + text + "' has hi < lo");
      if (step == 0.0) step = hi > lo ? (hi - lo) / 2.0 : 1.0;
      if (!(step > 0.0)) throw ModelError("grid step must be positive");
      const int count = static_cast<int>(std::floor((hi - lo) / step + 1e-9));
      for (int i = 0; i <= count; ++i) grid.push_back(lo + step * i);
    }
  } catch (const std::logic_error&) {
    throw ModelError("cannot parse grid '" + text + "'");
  }
  if (grid.empty()) throw ModelError("grid '" + text + "' is empty");
  return grid;
}

ScenarioFile parse_scenario(const std::string& yaml_text, const std::string& origin) {
  YAML::Node root;
  try {
    root = YAML::Load(yaml_text);
  } catch (const YAML::ParserException& e) {
    std::ostringstream os;
    os << origin << ":" << e.mark.line + 1 << ": " << e.msg;
    throw ModelError(os.str());
  }
  ScenarioFile out;
  Scenario& s = out.scenario;
  s = Scenario::reference();
  if (root.IsNull()) {
    s.validate();
    return out;
  }
  if (!root.IsMap()) fail(origin, root, "top level must be a mapping");

  // UE count first so that per-UE keys resize correctly.
  if (root["num_ues"]) {
    const double k = scalar(origin, root["num_ues"], "num_ues");
    if (k < 1 || k != std::floor(k)) fail(origin, root["num_ues"], "num_ues must be a positive integer");
    s.resize_ues(static_cast<int>(k));
  }

  const std::set<std::string> known = {
      "num_slots", "num_ues", "horizon_s", "bandwidth_mhz", "ref_gain_db", "noise_dbm",
      "altitude_m", "v_max_mps", "fly_coeff_1", "fly_coeff_2", "uav_start", "uav_end",
      "ap_pos", "weight_uav", "cap_uav", "ue_pos", "weight_ue", "cap_ue", "task_mbits",
      "cycles_per_bit", "output_ratio", "sweep"};
  for (const auto& kv : root) {
    const std::string key = kv.first.as<std::string>();
    const YAML::Node& v = kv.second;
    if (!known.count(key)) fail(origin, kv.first, "unknown key '" + key + "'");
    if (key == "num_slots") {
      const double n = scalar(origin, v, key);
      if (n < 3 || n != std::floor(n)) fail(origin, v, "num_slots must be an integer >= 3");
      s.num_slots = static_cast<int>(n);
    } else if (key == "horizon_s") {
      s.horizon = scalar(origin, v, key);
      for (double& t : s.latency) t = s.horizon;
    } else if (key == "bandwidth_mhz") {
      s.bandwidth_total = 1e6 * scalar(origin, v, key);
    } else if (key == "ref_gain_db") {
      s.ref_gain = db_to_linear(scalar(origin, v, key));
    } else if (key == "noise_dbm") {
      s.noise_power = 1e-3 * db_to_linear(scalar(origin, v, key));
    } else if (key == "altitude_m") {
      s.altitude = scalar(origin, v, key);
    } else if (key == "v_max_mps") {
      s.v_max = scalar(origin, v, key);
    } else if (key == "fly_coeff_1") {
      s.fly_coeff_1 = scalar(origin, v, key);
    } else if (key == "fly_coeff_2") {
      s.fly_coeff_2 = scalar(origin, v, key);
    } else if (key == "uav_start") {
      s.uav_start = point(origin, v, key);
    } else if (key == "uav_end") {
      s.uav_end = point(origin, v, key);
    } else if (key == "ap_pos") {
      s.ap_pos = point(origin, v, key);
    } else if (key == "weight_uav") {
      s.weight_uav = scalar(origin, v, key);
    } else if (key == "cap_uav") {
      s.cap_uav = scalar(origin, v, key);
    } else if (key == "ue_pos") {
      if (!v.IsSequence()) fail(origin, v, "ue_pos expects a list of [x, y]");
      s.ue_pos.clear();
      for (const auto& p : v) s.ue_pos.push_back(point(origin, p, key));
    } else if (key == "weight_ue") {
      per_ue(origin, v, key, s.weight_ue, 1.0);
    } else if (key == "cap_ue") {
      per_ue(origin, v, key, s.cap_ue, 1.0);
    } else if (key == "task_mbits") {
      per_ue(origin, v, key, s.task_bits, 1e6);
    } else if (key == "cycles_per_bit") {
      per_ue(origin, v, key, s.cycles_per_bit, 1.0);
    } else if (key == "output_ratio") {
      per_ue(origin, v, key, s.output_ratio, 1.0);
    } else if (key == "sweep") {
      if (!v.IsMap()) fail(origin, v, "sweep expects {parameter, grid}");
      SweepSpec sw;
      for (const auto& f : v) {
        const std::string fk = f.first.as<std::string>();
        if (fk == "parameter") {
          sw.parameter = f.second.as<std::string>();
        } else if (fk == "grid") {
          if (f.second.IsSequence()) {
            for (const auto& g : f.second) sw.grid.push_back(scalar(origin, g, "sweep.grid"));
          } else {
            try {
              sw.grid = parse_grid(f.second.as<std::string>());
            } catch (const ModelError& e) {
              fail(origin, f.second, e.what());
            }
          }
        } else {
          fail(origin, f.first, "unknown key 'sweep." + fk + "'");
        }
      }
      if (sw.parameter.empty() || sw.grid.empty()) fail(origin, v, "sweep needs parameter and grid");
      out.sweep = sw;
    }
  }
  auto probs = s.problems();
  if (!probs.empty()) {
    std::string msg = origin + ": invalid scenario:";
    for (auto& p : probs) msg += "\n  - " + p;
    throw ModelError(msg);
  }
  return out;
}

ScenarioFile load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ModelError("cannot open scenario file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_scenario(ss.str(), path);
}

}  // namespace uavmec

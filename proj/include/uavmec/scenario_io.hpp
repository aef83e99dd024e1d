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

#include <optional>
#include <string>
#include <vector>

#include "uavmec/model.hpp"

namespace uavmec {

struct SweepSpec {
  std::string parameter;  // I, T, O or wU
  std::vector<double> grid;
};

struct ScenarioFile {
  Scenario scenario;
  std::optional<SweepSpec> sweep;
};

/// Parses a YAML scenario. Omitted keys keep the default 4-UE setup; units
/// are carried in the key names (bandwidth_mhz, noise_dbm, task_mbits, ...)
/// and converted to SI here. Unknown keys and invalid scenarios throw
/// ModelError naming the offending key or listing every broken invariant.
ScenarioFile parse_scenario(const std::string& yaml_text, const std::string& origin = "<string>");
ScenarioFile load_scenario(const std::string& path);

/// Expands "lo..hi[:step]" or a comma list into grid values.
std::vector<double> parse_grid(const std::string& text);

}  // namespace uavmec

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

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "uavmec/feasibility.hpp"
#include "uavmec/orchestrator.hpp"
#include "uavmec/report.hpp"
#include "uavmec/scenario_io.hpp"

namespace fs = std::filesystem;
using namespace uavmec;

namespace {

enum Exit { kOk = 0, kUsage = 1, kInfeasible = 2, kNotConverged = 3 };

std::string value_label(double v) {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os << std::setprecision(12) << v;
  return os.str();
}

// Feasibility and convergence verdict for one run; messages go to stderr.
int verdict(const Scenario& scn, const SolveResult& r, const std::string& label) {
  const auto v = check_feasibility(scn, r.schedule, r.bandwidth, r.trajectory);
  if (!v.empty()) {
    std::cerr << label << ": " << v.size() << " constraint violation(s), first: " << describe(v[0])
              << "\n";
    return kInfeasible;
  }
  if (!r.converged) {
    std::cerr << label << ": outer loop stopped at the pass limit without meeting the tolerance\n";
    return kNotConverged;
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Minimum weighted-sum-energy planning for UAV-assisted edge computing"};
  std::string scenario_path, scheme = "proposed", sweep_arg, out = "uavmec_out";
  int max_outer = 10;
  double tol = 1e-4;
  bool quiet = false;
  app.add_option("--scenario", scenario_path, "YAML scenario file (defaults to the 4-UE setup)");
  app.add_option("--scheme", scheme, "proposed, direct, offload-only, equal-bw, local or all")
      ->check(CLI::IsMember({"proposed", "direct", "offload-only", "equal-bw", "local", "all"}));
  app.add_option("--sweep", sweep_arg, "PARAM=lo..hi[:step] or PARAM=a,b,c with PARAM in I, T, O, wU");
  app.add_option("--out", out, "output directory");
  app.add_option("--max-outer", max_outer, "outer iteration cap")->check(CLI::PositiveNumber);
  app.add_option("--tol", tol, "outer tolerance on WSEC change, J")->check(CLI::PositiveNumber);
  app.add_flag("--quiet", quiet, "suppress the progress table");
  CLI11_PARSE(app, argc, argv);

  try {
    ScenarioFile file;
    if (scenario_path.empty()) {
      file.scenario = Scenario::reference();
    } else {
      file = load_scenario(scenario_path);
    }
    const Scenario& scn = file.scenario;

    SolveConfig cfg;
    cfg.max_outer = max_outer;
    cfg.outer_tol = tol;
    const std::vector<Scheme> schemes =
        scheme == "all" ? all_schemes() : std::vector<Scheme>{parse_scheme(scheme)};

    std::optional<SweepSpec> sw = file.sweep;
    if (!sweep_arg.empty()) {
      const auto eq = sweep_arg.find('=');
      if (eq == std::string::npos) throw ModelError("--sweep expects PARAM=GRID");
      sw = SweepSpec{sweep_arg.substr(0, eq), parse_grid(sweep_arg.substr(eq + 1))};
    }

    fs::create_directories(out);
    int status = kOk;
    // Infeasibility outranks a missed tolerance.
    auto note = [&](int s) {
      if (s == kInfeasible || status == kOk) status = s;
    };

    if (sw) {
      const SweepParam p = parse_sweep_param(sw->parameter);
      const auto rows = sweep(scn, p, sw->grid, schemes, cfg);
      std::ofstream table(fs::path(out) / "sweep.csv", std::ios::binary);
      write_sweep_csv(table, p, rows);
      for (const auto& row : rows) {
        const Scenario s = apply_sweep(scn, p, row.value);
        const std::string label =
            sweep_param_name(p) + "=" + value_label(row.value) + "/" + scheme_name(row.scheme);
        write_run_dir((fs::path(out) / label).string(), s, row.result);
        note(verdict(s, row.result, label));
        if (!quiet)
          std::cout << std::left << std::setw(24) << label << " WSEC " << std::setprecision(10)
                    << row.result.energy.wsec << " J  passes " << row.result.wsec_trace.size()
                    << "\n";
      }
      return status;
    }

    std::vector<SolveResult> results;
    for (Scheme s : schemes) {
      SolveConfig c = cfg;
      c.scheme = s;
      results.push_back(solve(scn, c));
      const SolveResult& r = results.back();
      const std::string dir = schemes.size() == 1 ? out : (fs::path(out) / scheme_name(s)).string();
      write_run_dir(dir, scn, r);
      note(verdict(scn, r, scheme_name(s)));
      if (!quiet)
        std::cout << std::left << std::setw(14) << scheme_name(s) << " WSEC " << std::setprecision(10)
                  << r.energy.wsec << " J  passes " << r.wsec_trace.size() << "\n";
    }
    if (schemes.size() > 1) {
      std::ofstream f(fs::path(out) / "summary.csv", std::ios::binary);
      write_summary_csv(f, results);
    }
    return status;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
}

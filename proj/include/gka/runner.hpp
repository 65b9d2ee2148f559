#pragma once

#include <string>
#include <vector>

#include "gka/checks.hpp"
#include "gka/scenario.hpp"

namespace gka {

struct RunReport {
  std::string scenario_name;
  std::vector<CheckResult> results;
  std::vector<std::string> files_written;
  // Environment block (grid, step counts, backend). Wall time is printed
  // to the console only: artifacts must be bit-identical across runs.
  std::string environment_summary;
  bool any_fail = false;
  bool any_inconclusive = false;

  int exit_code(bool strict) const;
};

// One console/report line for a check result: verdict, name, numbers.
std::string report_line(const CheckResult& r);

// Executes the scenario pipeline end to end and writes report.json,
// report.txt, norms_*.csv, fields_*.csv, and expansion_*.json under out_dir.
// out_dir empty means: $GKA_OUT_DIR, or "./gka_out/<scenario name>".
RunReport run_scenario(const Scenario& sc, std::string out_dir);

// Validation-only entry: parse errors and hypothesis violations throw.
void validate_scenario_file(const std::string& path);

}  // namespace gka

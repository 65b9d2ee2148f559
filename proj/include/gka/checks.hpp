#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "gka/rates.hpp"
#include "gka/scenario.hpp"
#include "gka/semigroup.hpp"

namespace gka {

struct CheckResult {
  std::string name;
  std::string claim;      // what was verified, in plain words
  double predicted = 0.0; // target value (slope bound, tolerance, ...)
  double measured = 0.0;
  Verdict verdict = Verdict::INCONCLUSIVE;
  std::string detail;
  // Optional trajectory payload for CSV export: (t, raw, scaled) rows.
  std::vector<std::array<double, 3>> trajectory;
  std::string trajectory_label;
};

// Everything a check needs to run. Trajectories/profiles are computed once
// by the runner and shared; fields not needed by a given check stay empty.
struct CheckContext {
  const Scenario& scenario;
  const SemigroupOperator& op;
  const Field& phi;
  const std::vector<double>& snapshot_times;
  // Nonlinear payload (empty/null when the scenario is linear):
  const Trajectory* trajectory = nullptr;
  const struct ExpansionState* expansion = nullptr;
  const std::vector<std::vector<Field>>* profiles = nullptr;  // U_0..U_n at snapshots
  const struct CorrectedProfile* corrected = nullptr;
  const CacheStore* caches = nullptr;
};

struct CheckDef {
  std::string name;
  std::string claim;
  bool needs_solution;  // requires the nonlinear solve
  std::function<std::vector<CheckResult>(const CheckContext&)> run;
};

// Static registry of every available check.
const std::vector<CheckDef>& check_registry();

// Names run for a scenario when its `checks` list is empty: all linear
// checks, plus the nonlinear ones when a nonlinearity is enabled.
std::vector<std::string> default_check_names(const Scenario& sc);

}  // namespace gka

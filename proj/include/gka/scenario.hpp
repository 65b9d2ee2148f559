#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gka/duhamel.hpp"
#include "gka/field_ops.hpp"
#include "gka/grid.hpp"
#include "gka/kernel.hpp"

namespace gka {

// One additive piece of the initial data.
struct InitialDataTerm {
  enum class Kind { gaussian, bump, kernel_snapshot, hermite_moment_free, pareto_moment_free };
  Kind kind = Kind::gaussian;
  double center = 0.0;
  double width = 1.0;
  double amplitude = 1.0;
  double t0 = 1.0;    // kernel_snapshot
  int k = 2;          // moment-free order
  double eps = 0.1;   // pareto tail margin
};

struct SnapshotSpec {
  double t0 = 1.0;    // first output time
  double rho = 1.25;  // geometric ratio between outputs
  int count = 20;
};

// A full experiment description, parsed from JSON. Invariants enforced by
// validate(): K < L, [K] + 1 <= gamma, and A_p > 0 whenever nonlinear
// profiles are requested.
struct Scenario {
  std::string name;
  KernelSpec kernel;
  std::size_t grid_n = 4096;
  double grid_R = 100.0;
  std::vector<InitialDataTerm> phi;
  NonlinearitySpec nonlinearity;
  double K = 0.0;
  int n_levels = 0;
  SnapshotSpec snapshots;
  SolverControls solver;
  double slope_tol = 0.1;
  QuadratureGuard guard;
  ResolutionPolicy resolution;
  std::vector<std::string> checks;  // registry names; empty = defaults

  Grid make_grid() const { return Grid(kernel.dim, grid_n, grid_R); }
  std::vector<double> snapshot_times() const;
  double t_end() const;

  // Throws Error(config) on malformed inputs, Error(hypothesis) on
  // violated preconditions ("requires K < L" and friends).
  void validate() const;
};

Scenario parse_scenario_file(const std::string& path);
Scenario parse_scenario_json(const std::string& text, const std::string& origin);

Field build_initial_data(const Scenario& sc, const SemigroupOperator& op);

}  // namespace gka

#include "gka/scenario.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

#include "gka/error.hpp"
#include "gka/initial_data.hpp"
#include "gka/multiindex.hpp"

namespace gka {

namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& origin, const std::string& msg) {
  throw Error(ErrorKind::config, origin + ": " + msg);
}

void check_keys(const json& obj, const std::string& origin,
                const std::string& where, const std::set<std::string>& allowed) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (!allowed.count(it.key())) {
      bad(origin, "unknown key '" + it.key() + "' in " + where);
    }
  }
}

double num(const json& obj, const char* key, double fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_number()) throw Error(ErrorKind::config, std::string(key) + " must be a number");
  return obj[key].get<double>();
}

int integer(const json& obj, const char* key, int fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_number_integer()) {
    throw Error(ErrorKind::config, std::string(key) + " must be an integer");
  }
  return obj[key].get<int>();
}

KernelSpec parse_kernel(const json& k, const std::string& origin) {
  if (!k.is_object()) bad(origin, "kernel must be an object");
  check_keys(k, origin, "kernel",
             {"family", "dim", "theta", "m", "L", "gamma", "coefficients"});
  if (!k.contains("family")) bad(origin, "kernel.family is required");
  std::string family = k["family"].get<std::string>();
  int dim = integer(k, "dim", 1);
  double L = num(k, "L", 10.0);
  int gamma = integer(k, "gamma", 6);
  if (family == "heat") return KernelSpec::heat(dim, L, gamma);
  if (family == "fractional") {
    return KernelSpec::fractional(dim, num(k, "theta", 1.0));
  }
  if (family == "polyharmonic") {
    return KernelSpec::polyharmonic(dim, integer(k, "m", 2), L, gamma);
  }
  if (family == "elliptic_symbol") {
    if (!k.contains("coefficients") || !k["coefficients"].is_array()) {
      bad(origin, "elliptic_symbol kernel needs a coefficients array");
    }
    std::vector<std::pair<MultiIndex, double>> coeffs;
    for (const json& c : k["coefficients"]) {
      check_keys(c, origin, "kernel.coefficients entry", {"alpha", "value"});
      if (!c.contains("alpha") || !c["alpha"].is_array() || !c.contains("value")) {
        bad(origin, "coefficient entries need alpha (array) and value");
      }
      std::vector<int> a;
      for (const json& e : c["alpha"]) a.push_back(e.get<int>());
      coeffs.emplace_back(MultiIndex(a), c["value"].get<double>());
    }
    return KernelSpec::elliptic(dim, integer(k, "m", 1), std::move(coeffs), L, gamma);
  }
  bad(origin, "unknown kernel family '" + family + "'");
}

InitialDataTerm parse_term(const json& t, const std::string& origin) {
  check_keys(t, origin, "initial_data entry",
             {"kind", "center", "width", "amplitude", "t0", "k", "eps"});
  if (!t.contains("kind")) bad(origin, "initial_data entries need a kind");
  InitialDataTerm term;
  std::string kind = t["kind"].get<std::string>();
  if (kind == "gaussian") term.kind = InitialDataTerm::Kind::gaussian;
  else if (kind == "bump") term.kind = InitialDataTerm::Kind::bump;
  else if (kind == "kernel_snapshot") term.kind = InitialDataTerm::Kind::kernel_snapshot;
  else if (kind == "hermite_moment_free") term.kind = InitialDataTerm::Kind::hermite_moment_free;
  else if (kind == "pareto_moment_free") term.kind = InitialDataTerm::Kind::pareto_moment_free;
  else bad(origin, "unknown initial_data kind '" + kind + "'");
  term.center = num(t, "center", 0.0);
  term.width = num(t, "width", 1.0);
  term.amplitude = num(t, "amplitude", 1.0);
  term.t0 = num(t, "t0", 1.0);
  term.k = integer(t, "k", 2);
  term.eps = num(t, "eps", 0.1);
  return term;
}

}  // namespace

std::vector<double> Scenario::snapshot_times() const {
  std::vector<double> times;
  double t = snapshots.t0;
  for (int i = 0; i < snapshots.count; ++i) {
    times.push_back(t);
    t *= snapshots.rho;
  }
  return times;
}

double Scenario::t_end() const { return snapshot_times().back(); }

void Scenario::validate() const {
  if (name.empty()) throw Error(ErrorKind::config, "scenario needs a name");
  if (K < 0.0) throw Error(ErrorKind::config, "expansion order K must be >= 0");
  if (!(K < kernel.L)) {
    throw Error(ErrorKind::hypothesis,
                "requires K < L: K=" + std::to_string(K) +
                    ", L=" + std::to_string(kernel.L));
  }
  if (bracket(K) + 1 > kernel.gamma()) {
    throw Error(ErrorKind::hypothesis,
                "requires [K]+1 <= gamma: [K]+1=" + std::to_string(bracket(K) + 1) +
                    ", gamma=" + std::to_string(kernel.gamma()));
  }
  if (nonlinearity.enabled()) {
    double a_p = nonlinearity.a_p(kernel.dim, kernel.d());
    if (!(a_p > 0.0)) {
      throw Error(ErrorKind::hypothesis,
                  "requires A_p > 0: got A_p=" + std::to_string(a_p));
    }
    if (nonlinearity.p < 1.0) {
      throw Error(ErrorKind::config, "nonlinearity power p must be >= 1");
    }
  }
  if (phi.empty()) throw Error(ErrorKind::config, "initial_data must have at least one term");
  for (const InitialDataTerm& t : phi) {
    if (t.kind == InitialDataTerm::Kind::kernel_snapshot && !(t.t0 > 0.0)) {
      throw Error(ErrorKind::config, "kernel_snapshot t0 must be positive");
    }
  }
  if (n_levels < 0 || n_levels > 3) {
    throw Error(ErrorKind::config, "n_levels must lie in [0, 3]");
  }
  if (!(snapshots.t0 > 0.0) || !(snapshots.rho > 1.0) || snapshots.count < 1) {
    throw Error(ErrorKind::config, "snapshots need t0 > 0, rho > 1, count >= 1");
  }
  if (solver.steps_per_unit < 1 || solver.steps_per_unit > 4096) {
    throw Error(ErrorKind::config, "steps_per_unit must lie in [1, 4096]");
  }
  if (!(solver.growth >= 1.0 && solver.growth <= 1.5)) {
    throw Error(ErrorKind::config, "step growth must lie in [1, 1.5]");
  }
  if (!(slope_tol > 0.0)) throw Error(ErrorKind::config, "slope_tol must be positive");
  Grid probe = make_grid();  // validates n power of two, R > 0
  (void)probe;
}

Scenario parse_scenario_json(const std::string& text, const std::string& origin) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::exception& e) {
    bad(origin, std::string("JSON parse error: ") + e.what());
  }
  if (!root.is_object()) bad(origin, "top level must be an object");
  check_keys(root, origin, "scenario",
             {"name", "description", "kernel", "grid", "initial_data",
              "nonlinearity", "K", "n_levels", "snapshots", "solver",
              "slope_tol", "guard", "resolution", "checks"});

  Scenario sc;
  try {
    if (!root.contains("name")) bad(origin, "scenario.name is required");
    sc.name = root["name"].get<std::string>();
    if (!root.contains("kernel")) bad(origin, "scenario.kernel is required");
    sc.kernel = parse_kernel(root["kernel"], origin);

    if (root.contains("grid")) {
      const json& g = root["grid"];
      check_keys(g, origin, "grid", {"n", "R"});
      sc.grid_n = static_cast<std::size_t>(integer(g, "n", 4096));
      sc.grid_R = num(g, "R", 100.0);
    }
    if (root.contains("initial_data")) {
      if (!root["initial_data"].is_array()) bad(origin, "initial_data must be an array");
      for (const json& t : root["initial_data"]) sc.phi.push_back(parse_term(t, origin));
    }
    if (root.contains("nonlinearity")) {
      const json& f = root["nonlinearity"];
      check_keys(f, origin, "nonlinearity",
                 {"p", "A", "lambda", "signed_power", "c_star"});
      sc.nonlinearity.p = num(f, "p", 1.0);
      sc.nonlinearity.A = num(f, "A", 0.0);
      sc.nonlinearity.lambda = num(f, "lambda", 0.0);
      sc.nonlinearity.c_star = num(f, "c_star", 1.0);
      if (f.contains("signed_power")) {
        sc.nonlinearity.signed_power = f["signed_power"].get<bool>();
      }
    }
    sc.K = num(root, "K", 0.0);
    sc.n_levels = integer(root, "n_levels", 0);
    if (root.contains("snapshots")) {
      const json& s = root["snapshots"];
      check_keys(s, origin, "snapshots", {"t0", "rho", "count"});
      sc.snapshots.t0 = num(s, "t0", 1.0);
      sc.snapshots.rho = num(s, "rho", 1.25);
      sc.snapshots.count = integer(s, "count", 20);
    }
    if (root.contains("solver")) {
      const json& s = root["solver"];
      check_keys(s, origin, "solver",
                 {"scheme", "steps_per_unit", "growth", "blowup_factor"});
      if (s.contains("scheme")) {
        std::string scheme = s["scheme"].get<std::string>();
        if (scheme == "euler" || scheme == "exponential_euler") {
          sc.solver.scheme = Scheme::exponential_euler;
        } else if (scheme == "trapezoid" || scheme == "exponential_trapezoid") {
          sc.solver.scheme = Scheme::exponential_trapezoid;
        } else {
          bad(origin, "unknown solver scheme '" + scheme + "'");
        }
      }
      sc.solver.steps_per_unit = integer(s, "steps_per_unit", 32);
      sc.solver.growth = num(s, "growth", 1.1);
      sc.solver.blowup_factor = num(s, "blowup_factor", 1e3);
    }
    sc.slope_tol = num(root, "slope_tol", 0.1);
    if (root.contains("guard")) {
      const json& g = root["guard"];
      check_keys(g, origin, "guard", {"tail_tol", "cancel_floor", "max_order"});
      sc.guard.tail_tol = num(g, "tail_tol", sc.guard.tail_tol);
      sc.guard.cancel_floor = num(g, "cancel_floor", sc.guard.cancel_floor);
      sc.guard.max_order = integer(g, "max_order", sc.guard.max_order);
    }
    if (root.contains("resolution")) {
      const json& r = root["resolution"];
      check_keys(r, origin, "resolution", {"min_width_cells", "domain_margin"});
      sc.resolution.min_width_cells = num(r, "min_width_cells", sc.resolution.min_width_cells);
      sc.resolution.domain_margin = num(r, "domain_margin", sc.resolution.domain_margin);
    }
    if (root.contains("checks")) {
      if (!root["checks"].is_array()) bad(origin, "checks must be an array of names");
      for (const json& c : root["checks"]) sc.checks.push_back(c.get<std::string>());
    }
  } catch (const json::exception& e) {
    bad(origin, std::string("JSON type error: ") + e.what());
  }
  sc.validate();
  return sc;
}

Scenario parse_scenario_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::io, "cannot open scenario file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario_json(buf.str(), path);
}

Field build_initial_data(const Scenario& sc, const SemigroupOperator& op) {
  const Grid& grid = op.grid();
  Field out(grid, 0.0);
  for (const InitialDataTerm& t : sc.phi) {
    Field term(grid, 0.0);
    switch (t.kind) {
      case InitialDataTerm::Kind::gaussian:
        term = make_gaussian(grid, t.center, t.width, t.amplitude);
        break;
      case InitialDataTerm::Kind::bump:
        term = make_bump(grid, t.center, t.width, t.amplitude);
        break;
      case InitialDataTerm::Kind::kernel_snapshot:
        term = make_kernel_snapshot(op, t.t0, t.amplitude);
        break;
      case InitialDataTerm::Kind::hermite_moment_free:
        term = make_hermite_moment_free(grid, t.k, t.width, t.amplitude);
        break;
      case InitialDataTerm::Kind::pareto_moment_free:
        term = make_pareto_moment_free(grid, t.k, t.eps, t.amplitude);
        break;
    }
    add_scaled(out, term, 1.0);
  }
  return out;
}

}  // namespace gka

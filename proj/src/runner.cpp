#include "gka/runner.hpp"

#include <cstdlib>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "gka/duhamel.hpp"
#include "gka/error.hpp"
#include "gka/expansion.hpp"
#include "gka/io.hpp"
#include "gka/scenario.hpp"
#include "gka/vecops.hpp"

namespace gka {

namespace {

std::string resolve_out_dir(const Scenario& sc, std::string out_dir) {
  if (!out_dir.empty()) return out_dir;
  const char* env = std::getenv("GKA_OUT_DIR");
  if (env != nullptr && *env != '\0') {
    return std::string(env) + "/" + sc.name;
  }
  return "./gka_out/" + sc.name;
}

std::string scheme_name(Scheme s) {
  return s == Scheme::exponential_euler ? "exponential_euler"
                                        : "exponential_trapezoid";
}

}  // namespace

std::string report_line(const CheckResult& r) {
  std::string line = verdict_name(r.verdict);
  line.resize(12, ' ');
  line += r.name;
  if (line.size() < 46) line.resize(46, ' ');
  line += " predicted " + format_double(r.predicted) + ", measured " +
          format_double(r.measured);
  if (!r.detail.empty()) line += "  [" + r.detail + "]";
  return line;
}

int RunReport::exit_code(bool strict) const {
  if (any_fail) return 1;
  if (strict && any_inconclusive) return 1;
  return 0;
}

RunReport run_scenario(const Scenario& sc, std::string out_dir) {
  sc.validate();
  const std::string dir = resolve_out_dir(sc, std::move(out_dir));
  ensure_directory(dir);

  Grid grid = sc.make_grid();
  SemigroupOperator op(sc.kernel, grid, sc.resolution);
  Field phi = build_initial_data(sc, op);
  const std::vector<double> times = sc.snapshot_times();

  // Resolve the check list against the registry before doing any work.
  std::map<std::string, const CheckDef*> by_name;
  for (const CheckDef& def : check_registry()) by_name[def.name] = &def;
  std::vector<std::string> names = sc.checks.empty() ? default_check_names(sc)
                                                     : sc.checks;
  std::vector<const CheckDef*> defs;
  for (const std::string& n : names) {
    auto it = by_name.find(n);
    if (it == by_name.end()) {
      throw Error(ErrorKind::config, "unknown check name: " + n);
    }
    defs.push_back(it->second);
  }

  CacheStore caches(op, sc.K, sc.guard);

  const bool nonlinear = sc.nonlinearity.enabled();
  Trajectory traj = solve(op, phi, sc.nonlinearity, sc.t_end(), sc.solver,
                          times, nonlinear ? sc.K : -1.0, sc.guard);

  std::optional<ExpansionState> expansion;
  std::vector<std::vector<Field>> profiles;
  std::optional<CorrectedProfile> corrected;
  if (nonlinear) {
    double a_p = sc.nonlinearity.a_p(sc.kernel.dim, sc.kernel.d());
    expansion = coefficients(traj, phi, caches, a_p);
    TimeMesh mesh;
    mesh.nodes = traj.mesh_nodes;
    profiles = profile_levels(*expansion, caches, sc.nonlinearity, mesh, times,
                              sc.n_levels);
    if (sc.K < 1.0) {
      corrected = profile_tilde_u(*expansion, caches, sc.nonlinearity, traj, times);
    }
  }

  CheckContext ctx{sc,
                   op,
                   phi,
                   times,
                   &traj,
                   expansion ? &*expansion : nullptr,
                   profiles.empty() ? nullptr : &profiles,
                   corrected ? &*corrected : nullptr,
                   &caches};

  RunReport report;
  report.scenario_name = sc.name;
  report.environment_summary =
      "grid n=" + std::to_string(grid.n) + " R=" + format_double(grid.R) +
      " dim=" + std::to_string(grid.dim) + "; kernel=" +
      sc.kernel.family_name() + "; scheme=" + scheme_name(sc.solver.scheme) +
      "; mesh_nodes=" + std::to_string(traj.mesh_nodes.size()) +
      "; backend=" + vecops::backend_name(vecops::active_backend());

  for (const CheckDef* def : defs) {
    try {
      std::vector<CheckResult> results = def->run(ctx);
      for (CheckResult& r : results) report.results.push_back(std::move(r));
    } catch (const Error& e) {
      CheckResult r;
      r.name = def->name;
      r.claim = def->claim;
      r.verdict = Verdict::INCONCLUSIVE;
      r.detail = std::string(error_kind_name(e.kind())) + " error: " + e.what();
      report.results.push_back(std::move(r));
    }
  }

  int n_pass = 0, n_fail = 0, n_inconclusive = 0;
  for (const CheckResult& r : report.results) {
    switch (r.verdict) {
      case Verdict::PASS: ++n_pass; break;
      case Verdict::FAIL: ++n_fail; break;
      case Verdict::INCONCLUSIVE: ++n_inconclusive; break;
    }
  }
  report.any_fail = n_fail > 0;
  report.any_inconclusive = n_inconclusive > 0;

  // ---- artifacts ----
  auto record = [&](const std::string& path) {
    report.files_written.push_back(path);
  };

  for (const CheckResult& r : report.results) {
    if (r.trajectory.empty()) continue;
    std::string path = dir + "/norms_" + r.trajectory_label + ".csv";
    write_norms_csv(path, r.trajectory);
    record(path);
  }

  {
    std::string path = dir + "/fields_u_final.csv";
    write_field_csv(path, traj.snapshots.back());
    record(path);
  }
  for (std::size_t l = 0; l < profiles.size(); ++l) {
    std::string path = dir + "/fields_U" + std::to_string(l) + "_final.csv";
    write_field_csv(path, profiles[l].back());
    record(path);
  }
  if (corrected) {
    std::string path = dir + "/fields_tilde_u_final.csv";
    write_field_csv(path, corrected->profiles.back());
    record(path);
  }

  if (expansion) {
    nlohmann::ordered_json je;
    je["K"] = expansion->K;
    je["A_p"] = expansion->A_p;
    je["mass_M"] = expansion->mass_M;
    je["mass_converged"] = expansion->mass_converged;
    nlohmann::ordered_json tracks = nlohmann::ordered_json::array();
    for (const CoefficientTrack& tr : expansion->tracks) {
      nlohmann::ordered_json jt;
      jt["alpha"] = tr.alpha.entries();
      jt["t"] = tr.t;
      jt["c"] = tr.c;
      jt["limit"] = tr.limit;
      jt["limit_valid"] = tr.limit_valid;
      jt["converged"] = tr.converged;
      tracks.push_back(std::move(jt));
    }
    je["tracks"] = std::move(tracks);
    if (corrected) {
      je["mass_M_prime"] = corrected->mass_M_prime;
      je["tail_integrand"] = corrected->tail_integrand;
      je["tail_exponent"] = corrected->tail_exponent;
      je["tail_resolved"] = corrected->tail_resolved;
    }
    std::string path = dir + "/expansion_coefficients.json";
    write_text_file(path, je.dump(2) + "\n");
    record(path);
  }

  {
    nlohmann::ordered_json jr;
    jr["scenario"] = sc.name;
    jr["environment"] = report.environment_summary;
    nlohmann::ordered_json checks = nlohmann::ordered_json::array();
    for (const CheckResult& r : report.results) {
      nlohmann::ordered_json jc;
      jc["name"] = r.name;
      jc["claim"] = r.claim;
      jc["verdict"] = verdict_name(r.verdict);
      jc["predicted"] = r.predicted;
      jc["measured"] = r.measured;
      jc["detail"] = r.detail;
      checks.push_back(std::move(jc));
    }
    jr["checks"] = std::move(checks);
    jr["summary"] = {{"pass", n_pass},
                     {"fail", n_fail},
                     {"inconclusive", n_inconclusive}};
    std::string path = dir + "/report.json";
    write_text_file(path, jr.dump(2) + "\n");
    record(path);
  }

  {
    std::string txt = "scenario " + sc.name + "\n" +
                      report.environment_summary + "\n\n";
    for (const CheckResult& r : report.results) {
      txt += report_line(r) + "\n";
    }
    txt += "\n" + std::to_string(n_pass) + " pass, " + std::to_string(n_fail) +
           " fail, " + std::to_string(n_inconclusive) + " inconclusive\n";
    std::string path = dir + "/report.txt";
    write_text_file(path, txt);
    record(path);
  }

  return report;
}

void validate_scenario_file(const std::string& path) {
  Scenario sc = parse_scenario_file(path);
  sc.validate();
}

}  // namespace gka

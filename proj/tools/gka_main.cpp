#include <chrono>
#include <cstdio>
#include <exception>
#include <string>

#include "CLI11.hpp"

#include "gka/checks.hpp"
#include "gka/error.hpp"
#include "gka/io.hpp"
#include "gka/runner.hpp"
#include "gka/scenario.hpp"

namespace {

int exit_code_for(const gka::Error& e) {
  switch (e.kind()) {
    case gka::ErrorKind::config:
    case gka::ErrorKind::hypothesis:
    case gka::ErrorKind::io:
      return 2;
    default:
      return 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"workbench for decay asymptotics of generalized diffusion"};
  app.require_subcommand(1);

  std::string config;
  std::string out_dir;
  bool strict = false;
  int threads = 1;

  CLI::App* run =
      app.add_subcommand("run", "run a scenario and write its artifacts");
  run->add_option("config", config, "scenario JSON file")->required();
  run->add_option("--out", out_dir,
                  "output directory (default: $GKA_OUT_DIR/<name> or "
                  "./gka_out/<name>)");
  run->add_flag("--strict", strict, "treat INCONCLUSIVE verdicts as failures");
  run->add_option("--threads", threads,
                  "reserved for future use; checks run serially");

  CLI::App* list =
      app.add_subcommand("list-checks", "list every check in the registry");

  std::string vconfig;
  CLI::App* validate =
      app.add_subcommand("validate", "parse and validate a scenario file");
  validate->add_option("config", vconfig, "scenario JSON file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      auto t0 = std::chrono::steady_clock::now();
      gka::Scenario sc = gka::parse_scenario_file(config);
      gka::RunReport report = gka::run_scenario(sc, out_dir);
      std::printf("scenario %s\n%s\n\n", report.scenario_name.c_str(),
                  report.environment_summary.c_str());
      for (const gka::CheckResult& r : report.results) {
        std::printf("%s\n", gka::report_line(r).c_str());
      }
      int n_pass = 0, n_fail = 0, n_inc = 0;
      for (const gka::CheckResult& r : report.results) {
        if (r.verdict == gka::Verdict::PASS) ++n_pass;
        else if (r.verdict == gka::Verdict::FAIL) ++n_fail;
        else ++n_inc;
      }
      double secs = std::chrono::duration<double>(
                        std::chrono::steady_clock::now() - t0)
                        .count();
      std::printf("\n%d pass, %d fail, %d inconclusive\n", n_pass, n_fail,
                  n_inc);
      // Wall time goes to the console only; artifacts stay bit-identical.
      std::printf("wall time %.2f s\n", secs);
      for (const std::string& f : report.files_written) {
        std::printf("wrote %s\n", f.c_str());
      }
      return report.exit_code(strict);
    }
    if (list->parsed()) {
      for (const gka::CheckDef& def : gka::check_registry()) {
        std::printf("%-28s %s\n", def.name.c_str(), def.claim.c_str());
      }
      return 0;
    }
    if (validate->parsed()) {
      gka::validate_scenario_file(vconfig);
      std::printf("%s: OK\n", vconfig.c_str());
      return 0;
    }
  } catch (const gka::Error& e) {
    std::fprintf(stderr, "error (%s): %s\n", gka::error_kind_name(e.kind()),
                 e.what());
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}

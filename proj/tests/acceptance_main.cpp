// Acceptance gate: one criterion per function, one verdict line each, exit
// code = number of failed criteria. Every criterion builds its own inputs
// and states the measured numbers next to the thresholds it was held to.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "gka/duhamel.hpp"
#include "gka/error.hpp"
#include "gka/expansion.hpp"
#include "gka/field_ops.hpp"
#include "gka/initial_data.hpp"
#include "gka/kernel.hpp"
#include "gka/moments.hpp"
#include "gka/rates.hpp"
#include "gka/runner.hpp"
#include "gka/scenario.hpp"
#include "gka/semigroup.hpp"

using namespace gka;

namespace {

constexpr double kPi = 3.14159265358979323846264338328;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::vector<double> log_times(double lo, double hi, int count) {
  std::vector<double> t(count);
  double ratio = std::pow(hi / lo, 1.0 / (count - 1));
  t[0] = lo;
  for (int i = 1; i < count; ++i) t[i] = t[i - 1] * ratio;
  return t;
}

double l1(const Field& f) { return lq_norm(f, 1.0); }

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4g", v);
  return buf;
}

// ---------------------------------------------------------------- C1
// Kernel families: closed forms, unit mass, rescaling, composition.
Outcome c1_kernel_validity() {
  Outcome out;

  ConditionGTolerances heat_tol;
  heat_tol.chapman_kolmogorov = 1e-7;  // the smooth family is held tighter
  ConditionGReport heat_rep =
      validate_condition_G(KernelSpec::heat(1), Grid(1, 2048, 80.0), heat_tol);
  ConditionGReport frac_rep =
      validate_condition_G(KernelSpec::fractional(1, 1.0), Grid(1, 8192, 300.0));

  // Heat closed form (4 pi t)^{-1/2} e^{-x^2/4t}, relative to the peak.
  // The box keeps the periodic wrap below rounding on the whole grid.
  Grid hg(1, 4096, 160.0);
  double heat_rel = 0.0;
  double mass_err = 0.0;
  for (double t : {1.0, 4.0}) {
    Field k = kernel_field(KernelSpec::heat(1), hg, t);
    mass_err = std::max(mass_err,
                        std::fabs(monomial_moment(k, MultiIndex({0})) - 1.0));
    double peak = std::pow(4.0 * kPi * t, -0.5);
    for (std::size_t i = 0; i < hg.size(); ++i) {
      double x = hg.coord(i);
      double want = peak * std::exp(-x * x / (4.0 * t));
      heat_rel = std::max(heat_rel, std::fabs(k.values[i] - want) / peak);
    }
  }

  // Order-one fractional free-space form t / (pi (x^2 + t^2)): the slow
  // x^{-2} tail wraps around the torus, so the comparison runs on a wide
  // box and away from its edge, where the nearest images contribute under
  // 5e-7 of the peak.
  Grid fg(1, 32768, 1200.0);
  double frac_rel = 0.0;
  for (double t : {0.5, 1.0}) {
    Field k = kernel_field(KernelSpec::fractional(1, 1.0), fg, t);
    mass_err = std::max(mass_err,
                        std::fabs(monomial_moment(k, MultiIndex({0})) - 1.0));
    double peak = 1.0 / (kPi * t);
    for (std::size_t i = 0; i < fg.size(); ++i) {
      double x = fg.coord(i);
      if (std::fabs(x) > 100.0) continue;
      double want = t / (kPi * (x * x + t * t));
      frac_rel = std::max(frac_rel, std::fabs(k.values[i] - want) / peak);
    }
  }

  // High-resolution oracle on the working box: the periodized form has the
  // closed geometric-series expression, exact up to rounding everywhere.
  Grid pg(1, 8192, 300.0);
  double peri_rel = 0.0;
  for (double t : {1.0, 4.0}) {
    Field k = kernel_field(KernelSpec::fractional(1, 1.0), pg, t);
    double rho = std::exp(-kPi * t / pg.R);
    double peak = (1.0 + rho) / (1.0 - rho) / (2.0 * pg.R);
    for (std::size_t i = 0; i < pg.size(); ++i) {
      double x = pg.coord(i);
      double denom = 1.0 - 2.0 * rho * std::cos(kPi * x / pg.R) + rho * rho;
      double want = (1.0 - rho * rho) / denom / (2.0 * pg.R);
      peri_rel = std::max(peri_rel, std::fabs(k.values[i] - want) / peak);
    }
  }

  out.pass = heat_rep.pass && frac_rep.pass && heat_rel <= 1e-6 &&
             frac_rel <= 1e-6 && peri_rel <= 1e-9 && mass_err <= 1e-8;
  out.detail = "relative closed-form gaps " + num(heat_rel) + " / " +
               num(frac_rel) + " (tol 1e-6), wrapped-form gap " + num(peri_rel) +
               " (tol 1e-9), mass gap " + num(mass_err) +
               " (tol 1e-8), composition " +
               num(heat_rep.chapman_kolmogorov_residual) + " / " +
               num(frac_rep.chapman_kolmogorov_residual) +
               " (tol 1e-7 / 1e-5), rescaling " +
               num(std::max(heat_rep.self_similarity_residual,
                            frac_rep.self_similarity_residual)) +
               " (tol 1e-6)";
  return out;
}

// ---------------------------------------------------------------- C2
// Decay of evolved data: sup-norm slopes must match -N/d within 0.05.
Outcome c2_smoothing() {
  Outcome out;
  Grid g(1, 4096, 160.0);
  Field probe = make_bump(g, 0.0, 1.0, 1.0);

  SemigroupOperator heat(KernelSpec::heat(1), g);
  SmoothingFit hs = verify_smoothing(heat, probe, kInfiniteQ, 1.0,
                                     log_times(4.0, 40.0, 8), MultiIndex({0}));

  SemigroupOperator frac(KernelSpec::fractional(1, 1.0), g);
  SmoothingFit fs = verify_smoothing(frac, probe, kInfiniteQ, 1.0,
                                     log_times(2.0, 16.0, 8), MultiIndex({0}));

  bool heat_ok = std::fabs(hs.slope - hs.expected) <= 0.05;
  bool frac_ok = std::fabs(fs.slope - fs.expected) <= 0.05;
  out.pass = heat_ok && frac_ok && hs.expected == -0.5 && fs.expected == -1.0;
  out.detail = "sup-norm slopes " + num(hs.slope) + " vs -0.5 and " +
               num(fs.slope) + " vs -1.0 (tol 0.05 two-sided)";
  return out;
}

// ---------------------------------------------------------------- C3
// Moment machinery: annihilation, snapshot recovery, conservation.
Outcome c3_moment_machinery() {
  Outcome out;
  SemigroupOperator op(KernelSpec::heat(1), Grid(1, 4096, 100.0));
  Field f = make_gaussian(op.grid(), 1.2, 1.0, 1.0);
  add_scaled(f, make_gaussian(op.grid(), -2.0, 2.0, 0.6), 1.0);

  double worst_annihilation = 0.0;
  for (double K : {0.0, 1.0, 2.0}) {
    for (double t : {0.0, 1.0, 4.0}) {
      KernelMomentCache cache(op, K, t);
      Field data = f;
      data.time = t;
      MomentTable table = compute_moments(data, cache);
      Field proj = project(data, table, cache);
      MomentTable after = compute_moments(proj, cache);
      for (double v : after.values) {
        worst_annihilation = std::max(worst_annihilation, std::fabs(v));
      }
    }
  }

  // Basis recovery: the coefficients of each basis function are a Kronecker
  // delta, and a scaled kernel snapshot is pure order zero.
  KernelMomentCache dcache(op, 2.0, 1.0);
  double recovery = 0.0;
  for (std::size_t bi = 0; bi < dcache.index_count(); ++bi) {
    Field gb = op.g_alpha(dcache.indices()[bi], 1.0);
    gb.time = 1.0;
    MomentTable tb = compute_moments(gb, dcache);
    for (std::size_t ai = 0; ai < tb.values.size(); ++ai) {
      double want = ai == bi ? 1.0 : 0.0;
      recovery = std::max(recovery, std::fabs(tb.values[ai] - want));
    }
  }
  KernelMomentCache cache3(op, 3.0, 0.0);
  Field snap = make_kernel_snapshot(op, 1.0, 0.7);
  snap.time = 0.0;
  MomentTable snap_table = compute_moments(snap, cache3);
  recovery = std::max(recovery, std::fabs(snap_table.at(MultiIndex({0})) - 0.7));
  for (std::size_t i = 1; i < cache3.index_count(); ++i) {
    recovery = std::max(recovery, std::fabs(snap_table.values[i]));
  }

  Field g0 = make_gaussian(op.grid(), 0.8, 1.3, 1.0);
  Lemma21Report cons =
      verify_moment_conservation(op, g0, 2.0, {1.0, 4.0, 16.0}, false);

  KernelMomentCache cache0(op, 2.0, 0.0);
  MomentTable t0 = compute_moments(g0, cache0);
  Field killed = project(g0, t0, cache0);
  killed.time = 0.0;
  Lemma21Report vanish =
      verify_moment_conservation(op, killed, 2.0, {1.0, 4.0, 16.0}, true);

  out.pass = worst_annihilation <= 1e-6 && recovery <= 1e-6 &&
             cons.max_conservation_gap <= 1e-6 &&
             vanish.max_vanishing_moment <= 1e-6;
  out.detail = "annihilation " + num(worst_annihilation) +
               ", snapshot recovery " + num(recovery) + ", conservation " +
               num(cons.max_conservation_gap) + ", preserved zeros " +
               num(vanish.max_vanishing_moment) + " (tol 1e-6 each)";
  return out;
}

// ---------------------------------------------------------------- C4
// Removing the grid moments below order 2 pins the linear decay of the
// integral norm at t^{-1} over three decades, two-sided.
Outcome c4_moment_free_decay() {
  Outcome out;
  Grid g(1, 16384, 400.0);
  SemigroupOperator op(KernelSpec::heat(1), g);
  Field phi = make_pareto_moment_free(g, 2, 0.9, 1.0);

  auto times = log_times(10.0, 1000.0, 14);
  std::vector<double> norms;
  for (double t : times) norms.push_back(l1(op.apply(phi, t)));
  WindowPolicy wp;
  wp.t_lo = 10.0;
  RateFit fit = fit_rate(NormTrajectory::make(times, norms, "l1"), wp);

  out.pass = std::fabs(fit.slope - (-1.0)) <= 0.1;
  out.detail = "integral-norm slope " + num(fit.slope) +
               " vs -1.0 (tol 0.1 two-sided, window [10, 1e3])";
  return out;
}

// ---------------------------------------------------------------- C5
// The compensated order-2 linear remainder of a unit Gaussian is bounded
// and falls over the last decade, and the bound is stable under grid
// doubling.
Outcome c5_remainder_stability() {
  Outcome out;
  auto t_start = std::chrono::steady_clock::now();
  auto times = log_times(2.0, 200.0, 14);

  auto compensated = [&](std::size_t n) {
    Grid g(1, n, 200.0);
    SemigroupOperator op(KernelSpec::heat(1), g);
    CacheStore caches(op, 2.0, QuadratureGuard{});
    Field phi = make_gaussian(g, 0.0, 1.0, 1.0);  // exp(-x^2)
    phi.time = 0.0;
    auto rem = linear_remainder(caches, phi, times);
    std::vector<double> scaled(times.size());
    for (std::size_t i = 0; i < times.size(); ++i) {
      scaled[i] = times[i] * l1(rem[i]);  // compensation exponent K/d = 1
    }
    return scaled;
  };

  auto coarse = compensated(8192);
  auto fine = compensated(16384);

  double bound_coarse = 0.0, bound_fine = 0.0;
  for (std::size_t i = 0; i < times.size(); ++i) {
    bound_coarse = std::max(bound_coarse, coarse[i]);
    bound_fine = std::max(bound_fine, fine[i]);
  }
  // The integral norm of a sign-changing remainder converges at the order
  // of its zero-crossing kinks, not spectrally, so the bound moves by a few
  // 1e-5 under doubling; 1e-3 separates that cleanly from real instability.
  double bound_shift = std::fabs(bound_fine - bound_coarse) /
                       std::max(bound_coarse, 1e-300);
  Verdict falling =
      obound_verdict(NormTrajectory::make(times, coarse, "t*l1"), 0.0);

  double elapsed = std::chrono::duration<double>(
                       std::chrono::steady_clock::now() - t_start)
                       .count();
  out.pass = std::isfinite(bound_coarse) && falling == Verdict::PASS &&
             bound_shift <= 1e-3 && elapsed <= 120.0;
  out.detail = "compensated remainder bound " + num(bound_coarse) +
               ", last decade falling: " +
               (falling == Verdict::PASS ? "yes" : "no") +
               ", bound shift under grid doubling " + num(bound_shift) +
               " (tol 1e-3); " + num(elapsed) + " s (cap 120)";
  return out;
}

// ---------------------------------------------------------------- C6
// Forced linear problem: projecting a decaying moment-rich source leaves a
// remainder that decays strictly faster than t^{-K/d} at K = 1.
Outcome c6_forced_remainder() {
  Outcome out;
  Grid g(1, 8192, 240.0);
  SemigroupOperator op(KernelSpec::heat(1), g);
  CacheStore caches(op, 1.0, QuadratureGuard{});
  Field bump = make_bump(g, 1.5, 2.0, 1.0);  // off-center: all moments live

  SolverControls controls;
  std::vector<double> outs = {8.0, 16.0, 32.0, 64.0, 128.0, 256.0, 512.0};
  TimeMesh mesh = TimeMesh::build(outs.back(), controls, outs);
  SourceFn f = [&](double s) {
    Field slice = scaled_copy(bump, std::pow(1.0 + s, -2.0));
    slice.time = s;
    return slice;
  };
  auto rem = remainder_RK(caches, f, mesh, outs, Scheme::exponential_trapezoid);

  std::vector<double> scaled(outs.size());
  for (std::size_t i = 0; i < outs.size(); ++i) {
    scaled[i] = std::pow(outs[i], 0.5) * l1(rem[i]);
  }
  RateFit fit = fit_rate(NormTrajectory::make(outs, scaled, "t^{1/2} R"));

  out.pass = fit.slope < 0.0 && fit.slope_stderr < 0.05;
  out.detail = "compensated projected-remainder slope " + num(fit.slope) +
               " (< 0) with stderr " + num(fit.slope_stderr) + " (< 0.05)";
  return out;
}

// Shared nonlinear setup: quartic absorbing source on the heat family.
NonlinearitySpec quartic_source() {
  NonlinearitySpec F;
  F.p = 4.0;
  F.A = 0.0;
  F.lambda = -1.0;
  F.signed_power = true;
  return F;
}

// ---------------------------------------------------------------- C7
// Leading-order profile: the distance to the one-term expansion decays at
// least at the generic rate, and at the borderline K the fit prefers the
// logarithmic model.
Outcome c7_leading_order() {
  Outcome out;
  auto t_start = std::chrono::steady_clock::now();
  NonlinearitySpec F = quartic_source();  // balance exponent 0.5
  SolverControls controls;
  Grid g(1, 8192, 160.0);
  SemigroupOperator op(KernelSpec::heat(1), g);

  std::vector<double> outs;
  for (int i = 0; i < 24; ++i) outs.push_back(std::pow(1.25, i));

  // (a) Small Gaussian data, K = 0.5: one-sided slope bound -0.1.
  CacheStore caches_a(op, 0.5, QuadratureGuard{});
  Field phi_a = make_gaussian(g, 0.0, 1.0, 0.1);
  phi_a.time = 0.0;
  Trajectory traj_a = solve(op, phi_a, F, outs.back(), controls, outs, 0.5);
  ExpansionState state_a = coefficients(traj_a, phi_a, caches_a, 0.5);
  std::vector<double> dist_a;
  for (double t : outs) {
    Field u0 = profile_U0(state_a, caches_a, t);
    dist_a.push_back(l1(difference(traj_a.at_time(t), u0)));
  }
  RateFit fit_a = fit_rate(NormTrajectory::make(outs, dist_a, "u-U0"));

  // (b) Kernel-snapshot data, K = 1: the predicted rate carries a log
  // factor, so the three-parameter model must win the comparison.
  CacheStore caches_b(op, 1.0, QuadratureGuard{});
  Field phi_b = make_kernel_snapshot(op, 1.0, 0.8);
  phi_b.time = 0.0;
  Trajectory traj_b = solve(op, phi_b, F, outs.back(), controls, outs, 1.0);
  ExpansionState state_b = coefficients(traj_b, phi_b, caches_b, 0.5);
  std::vector<double> dist_b;
  for (double t : outs) {
    Field u0 = profile_U0(state_b, caches_b, t);
    dist_b.push_back(l1(difference(traj_b.at_time(t), u0)));
  }
  RateFit fit_b = fit_rate(NormTrajectory::make(outs, dist_b, "u-U0"));
  RatePrediction pred_b = predict_rate(
      {RateCase::expansion_distance, 1.0, 2.0, 0.5, 0});

  double elapsed = std::chrono::duration<double>(
                       std::chrono::steady_clock::now() - t_start)
                       .count();
  out.pass = fit_a.slope <= -0.25 + 0.15 && pred_b.log_factor &&
             fit_b.preferred == RateModel::power_log && elapsed <= 300.0;
  out.detail = "one-term distance slope " + num(fit_a.slope) +
               " (<= -0.1); borderline case prefers the log model: " +
               (fit_b.preferred == RateModel::power_log ? "yes" : "no") +
               "; " + num(elapsed) + " s (cap 300)";
  return out;
}

// Long-horizon nonlinear run shared by C8 and C9.
struct LongRun {
  Grid g{1, 16384, 320.0};
  SemigroupOperator op;
  CacheStore caches;
  NonlinearitySpec F;
  SolverControls controls;
  std::vector<double> outs;
  Trajectory traj;
  ExpansionState state;
  TimeMesh mesh;

  LongRun()
      : op(KernelSpec::heat(1), g),
        caches(op, 0.5, QuadratureGuard{}),
        F(quartic_source()),
        outs([] {
          std::vector<double> t;
          for (int i = 0; i < 32; ++i) t.push_back(std::pow(1.25, i));
          return t;
        }()),
        traj([&] {
          Field phi = make_kernel_snapshot(op, 1.0, 0.8);
          phi.time = 0.0;
          return solve(op, phi, F, outs.back(), controls, outs, 0.5);
        }()),
        state(coefficients(traj,
                           [&] {
                             Field phi = make_kernel_snapshot(op, 1.0, 0.8);
                             phi.time = 0.0;
                             return phi;
                           }(),
                           caches, 0.5)),
        mesh(TimeMesh::build(outs.back(), controls, outs)) {}
};

WindowPolicy late_window() {
  WindowPolicy wp;
  wp.t_lo = 40.0;
  wp.min_decades = 1.25;
  return wp;
}

// ---------------------------------------------------------------- C8
// Adding the first recursive correction visibly steepens the decay of the
// distance to the solution.
Outcome c8_second_order(const LongRun& run) {
  Outcome out;
  auto levels =
      profile_levels(run.state, run.caches, run.F, run.mesh, run.outs, 1);

  std::vector<double> d0, d1;
  for (std::size_t i = 0; i < run.outs.size(); ++i) {
    const Field& u = run.traj.at_time(run.outs[i]);
    d0.push_back(l1(difference(u, levels[0][i])));
    d1.push_back(l1(difference(u, levels[1][i])));
  }
  RateFit f0 = fit_rate(NormTrajectory::make(run.outs, d0, "u-U0"), late_window());
  RateFit f1 = fit_rate(NormTrajectory::make(run.outs, d1, "u-U1"), late_window());

  out.pass = f1.slope <= f0.slope - 0.15;
  out.detail = "late-window slopes " + num(f1.slope) + " (one correction) vs " +
               num(f0.slope) + " (none); gap " + num(f0.slope - f1.slope) +
               " (need >= 0.15)";
  return out;
}

// ---------------------------------------------------------------- C9
// The corrected single-term profile reaches the doubled source rate, and
// the two independent routes to the projected remainder agree.
Outcome c9_corrected_profile(const LongRun& run) {
  Outcome out;
  CorrectedProfile cp =
      profile_tilde_u(run.state, run.caches, run.F, run.traj, run.outs);

  std::vector<double> dist;
  for (std::size_t i = 0; i < run.outs.size(); ++i) {
    dist.push_back(
        l1(difference(run.traj.at_time(run.outs[i]), cp.profiles[i])));
  }
  RateFit fit =
      fit_rate(NormTrajectory::make(run.outs, dist, "u-tilde"), late_window());
  RatePrediction pred = predict_rate({RateCase::corrected_distance, 0.5, 2.0, 0.5, 0});
  double target = pred.exponent + 0.15;

  // Dual route: the projected remainder of the level-0 source computed
  // directly and via integrated moment corrections must coincide.
  SourceFn f = [&](double s) {
    Field u0 = profile_U0(run.state, run.caches, s);
    return run.F.evaluate(u0, s);
  };
  std::vector<double> probe = {run.outs[20]};
  auto direct = remainder_RK(run.caches, f, run.mesh, probe,
                             Scheme::exponential_trapezoid);
  auto via = remainder_RK_via_moments(run.caches, f, run.mesh, probe,
                                      Scheme::exponential_trapezoid);
  double gap = l1(difference(direct[0], via[0])) /
               std::max(l1(direct[0]), 1e-300);

  out.pass = fit.slope <= target && gap <= 1e-7;
  out.detail = "corrected-profile slope " + num(fit.slope) + " (<= " +
               num(target) + "), remainder route gap " + num(gap) +
               " (tol 1e-7)";
  return out;
}

// ---------------------------------------------------------------- C10
// Scheme orders measured against the exact scalar flow.
Outcome c10_scheme_orders() {
  Outcome out;
  SemigroupOperator op(KernelSpec::heat(1), Grid(1, 1024, 40.0));
  Field phi(op.grid(), 0.0);
  for (auto& v : phi.values) v = 1.0;
  NonlinearitySpec F;
  F.p = 1.0;
  F.lambda = -0.5;
  const double exact = std::exp(-0.5);

  auto order_of = [&](Scheme scheme) {
    std::vector<double> dts, errs;
    for (int steps : {8, 16, 32, 64}) {
      SolverControls controls;
      controls.scheme = scheme;
      controls.steps_per_unit = steps;
      Trajectory traj = solve(op, phi, F, 1.0, controls, {1.0});
      dts.push_back(1.0 / steps);
      errs.push_back(std::fabs(traj.at_time(1.0).values[0] - exact));
    }
    RateFit fit = fit_rate(NormTrajectory::make(dts, errs, "err"),
                           WindowPolicy{0.0, 0.0, 4, 0.5});
    return fit.slope;  // slope in log(dt) = convergence order
  };

  double euler = order_of(Scheme::exponential_euler);
  double trap = order_of(Scheme::exponential_trapezoid);
  out.pass = std::fabs(euler - 1.0) <= 0.2 && std::fabs(trap - 2.0) <= 0.2;
  out.detail = "measured orders " + num(euler) + " vs 1 and " + num(trap) +
               " vs 2 (tol 0.2 two-sided)";
  return out;
}

// ---------------------------------------------------------------- C11
// Bit-identical artifacts across repeated runs of a bundled scenario.
Outcome c11_determinism() {
  Outcome out;
  Scenario sc = parse_scenario_file(std::string(GKA_SCENARIO_DIR) +
                                    "/heat_linear_K2.json");
  RunReport a = run_scenario(sc, "accept_out_a");
  RunReport b = run_scenario(sc, "accept_out_b");

  auto slurp = [](const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };

  std::size_t compared = 0;
  bool identical = a.files_written.size() == b.files_written.size();
  for (std::size_t i = 0; identical && i < a.files_written.size(); ++i) {
    std::string fa = slurp(a.files_written[i]);
    std::string fb = slurp(b.files_written[i]);
    identical = !fa.empty() && fa == fb;
    ++compared;
  }
  out.pass = identical && compared > 0 && !a.any_fail;
  out.detail = std::to_string(compared) +
               " artifact files byte-compared: " +
               (identical ? "identical" : "MISMATCH");
  return out;
}

}  // namespace

int main() {
  struct Row {
    const char* label;
    std::function<Outcome()> fn;
  };

  // The two long-horizon criteria share one solve; build it lazily so a
  // construction failure is charged to the first criterion that needs it.
  std::unique_ptr<LongRun> long_run;
  auto get_long_run = [&]() -> const LongRun& {
    if (!long_run) long_run = std::make_unique<LongRun>();
    return *long_run;
  };

  std::vector<Row> rows = {
      {"C1  kernel family validity", c1_kernel_validity},
      {"C2  evolved-data decay exponents", c2_smoothing},
      {"C3  moment extraction and projection", c3_moment_machinery},
      {"C4  moment-free data decay rate", c4_moment_free_decay},
      {"C5  order-2 remainder bound and grid stability", c5_remainder_stability},
      {"C6  forced-source projected remainder", c6_forced_remainder},
      {"C7  one-term nonlinear profile", c7_leading_order},
      {"C8  recursive correction improves the rate",
       [&] { return c8_second_order(get_long_run()); }},
      {"C9  corrected profile and remainder identity",
       [&] { return c9_corrected_profile(get_long_run()); }},
      {"C10 time-stepping convergence orders", c10_scheme_orders},
      {"C11 bit-identical artifacts", c11_determinism},
  };

  int failures = 0;
  for (auto& row : rows) {
    Outcome o;
    try {
      o = row.fn();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    if (!o.pass) ++failures;
    std::printf("%s  %s -- %s\n", o.pass ? "PASS" : "FAIL", row.label,
                o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(rows.size()) - failures,
              rows.size());
  return failures;
}

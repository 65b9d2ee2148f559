#include "gka/expansion.hpp"

#include <cmath>
#include <string>

#include "gka/error.hpp"

namespace gka {

double ExpansionState::c_at(std::size_t track, double t) const {
  const CoefficientTrack& tr = tracks.at(track);
  for (std::size_t i = 0; i < tr.t.size(); ++i) {
    if (tr.t[i] == t) return tr.c[i];
  }
  throw Error(ErrorKind::mismatch,
              "coefficient track has no node at t=" + std::to_string(t));
}

ExpansionState coefficients(const Trajectory& traj, const Field& phi,
                            const CacheStore& caches, double A_p) {
  const KernelMomentCache& base_cache = caches.at(0.0);
  MomentTable base = compute_moments(phi, base_cache, caches.guard());
  std::size_t count = base_cache.index_count();

  if (!traj.record_indices.empty() && traj.record_indices != base_cache.indices()) {
    throw Error(ErrorKind::mismatch,
                "recorded moment layout does not match the cache layout");
  }
  if (traj.record_indices.empty() && !traj.samples_per_step.empty() &&
      !traj.samples_per_step.front().empty()) {
    throw Error(ErrorKind::mismatch,
                "trajectory carries source samples but no recorded moments");
  }

  ExpansionState state;
  state.K = caches.K();
  state.A_p = A_p;
  state.tracks.resize(count);
  double d = caches.op().spec().d();

  for (std::size_t a = 0; a < count; ++a) {
    CoefficientTrack& tr = state.tracks[a];
    tr.alpha = base_cache.indices()[a];
    tr.t.reserve(traj.mesh_nodes.size());
    tr.c.reserve(traj.mesh_nodes.size());
    tr.t.push_back(traj.mesh_nodes.front());
    tr.c.push_back(base.values[a]);
  }

  // March the coefficient integrals with exactly the samples and weights
  // the solver fed into its own Duhamel sum.
  for (std::size_t j = 0; j < traj.samples_per_step.size(); ++j) {
    std::vector<double> inc(count, 0.0);
    for (const DuhamelSample& s : traj.samples_per_step[j]) {
      MomentTable m = moments_from_raw(s.raw_moments, caches.at(s.s));
      for (std::size_t a = 0; a < count; ++a) inc[a] += s.weight * m.values[a];
    }
    for (std::size_t a = 0; a < count; ++a) {
      CoefficientTrack& tr = state.tracks[a];
      tr.t.push_back(traj.mesh_nodes[j + 1]);
      tr.c.push_back(tr.c.back() + inc[a]);
    }
  }
  // A linear trajectory carries no steps; the tracks are then the constant
  // initial moments over the nodes.
  if (traj.samples_per_step.empty()) {
    for (std::size_t a = 0; a < count; ++a) {
      CoefficientTrack& tr = state.tracks[a];
      for (std::size_t j = 1; j < traj.mesh_nodes.size(); ++j) {
        tr.t.push_back(traj.mesh_nodes[j]);
        tr.c.push_back(tr.c.front());
      }
    }
  }

  auto node_near = [](const CoefficientTrack& tr, double target) {
    std::size_t best = 0;
    for (std::size_t i = 0; i < tr.t.size(); ++i) {
      if (std::fabs(tr.t[i] - target) < std::fabs(tr.t[best] - target)) best = i;
    }
    return best;
  };
  for (std::size_t a = 0; a < count; ++a) {
    CoefficientTrack& tr = state.tracks[a];
    tr.limit = tr.c.back();
    tr.limit_valid = A_p > tr.alpha.order() / d;
    // Dyadic increment test: when the limit exists, the increment over
    // [T/2, T] contracts against the one over [T/4, T/2] by the factor
    // 2^{-(A_p - |alpha|/d)}; accept a 30% band around it. Increments at
    // rounding level count as converged outright.
    double T = tr.t.back();
    double c_half = tr.c[node_near(tr, T / 2.0)];
    double c_quarter = tr.c[node_near(tr, T / 4.0)];
    double d2 = std::fabs(tr.c.back() - c_half);
    double d1 = std::fabs(c_half - c_quarter);
    double tiny = 1e-12 * std::max(std::fabs(tr.limit), 1.0);
    if (d2 <= tiny && d1 <= tiny) {
      tr.converged = true;
    } else if (!tr.limit_valid || d1 <= tiny) {
      tr.converged = false;
    } else {
      double contraction = std::pow(2.0, -(A_p - tr.alpha.order() / d));
      tr.converged = std::fabs(d2 / d1 - contraction) <= 0.3 * contraction;
    }
  }
  state.mass_M = state.tracks.front().limit;
  state.mass_converged = state.tracks.front().converged;
  return state;
}

Field profile_U0(const ExpansionState& state, const CacheStore& caches, double t) {
  const KernelMomentCache& cache = caches.at(t);
  Field out(caches.op().grid(), t);
  for (std::size_t a = 0; a < cache.index_count(); ++a) {
    add_scaled(out, cache.g_field(a), state.c_at(a, t));
  }
  return out;
}

std::vector<std::vector<Field>> profile_levels(const ExpansionState& state,
                                               const CacheStore& caches,
                                               const NonlinearitySpec& F,
                                               const TimeMesh& mesh,
                                               const std::vector<double>& out_times,
                                               int n_levels) {
  if (n_levels < 0) throw Error(ErrorKind::config, "n_levels must be >= 0");
  const SemigroupOperator& op = caches.op();
  std::size_t n_out = out_times.size();
  std::vector<std::vector<Field>> levels(
      static_cast<std::size_t>(n_levels) + 1,
      std::vector<Field>(n_out, Field(op.grid(), 0.0)));
  std::vector<bool> done(n_out, false);

  auto project_source = [&](const Field& u, double s) {
    Field src = F.evaluate(u, s);
    const KernelMomentCache& cache = caches.at(s);
    MomentTable m = compute_moments(src, cache, caches.guard());
    return project(src, m, cache);
  };

  // All levels march together: within one step, level l-1 is advanced to
  // the right endpoint before level l asks for its source there.
  std::vector<Field> acc(static_cast<std::size_t>(n_levels), Field(op.grid(), 0.0));
  std::vector<Field> prev_src;
  Field u0 = profile_U0(state, caches, mesh.nodes.front());

  auto capture = [&](double t) {
    for (std::size_t i = 0; i < n_out; ++i) {
      if (done[i] || out_times[i] != t) continue;
      levels[0][i] = u0;
      for (int l = 1; l <= n_levels; ++l) {
        Field ul = u0;
        add_scaled(ul, acc[static_cast<std::size_t>(l - 1)], 1.0);
        ul.time = t;
        levels[static_cast<std::size_t>(l)][i] = std::move(ul);
      }
      done[i] = true;
    }
  };

  for (int l = 0; l < n_levels; ++l) {
    Field ul = u0;
    if (l > 0) add_scaled(ul, acc[static_cast<std::size_t>(l - 1)], 1.0);
    prev_src.push_back(project_source(ul, mesh.nodes.front()));
  }
  capture(mesh.nodes.front());

  for (std::size_t j = 0; j + 1 < mesh.nodes.size(); ++j) {
    double t1 = mesh.nodes[j + 1];
    double dt = t1 - mesh.nodes[j];
    for (int l = 0; l < n_levels; ++l) {
      auto li = static_cast<std::size_t>(l);
      add_scaled(acc[li], prev_src[li], 0.5 * dt);
      acc[li] = op.apply(acc[li], dt);
      acc[li].time = t1;
      // Right-endpoint source: needs U_{l-1}(t1), i.e. acc[l-1] already
      // advanced (true, the loop goes upward) and U_0(t1).
      if (l == 0) u0 = profile_U0(state, caches, t1);
      Field ul = u0;
      if (l > 0) add_scaled(ul, acc[li - 1], 1.0);
      ul.time = t1;
      Field src = project_source(ul, t1);
      add_scaled(acc[li], src, 0.5 * dt);
      prev_src[li] = std::move(src);
    }
    if (n_levels == 0) u0 = profile_U0(state, caches, t1);
    capture(t1);
  }
  for (std::size_t i = 0; i < n_out; ++i) {
    if (!done[i]) {
      throw Error(ErrorKind::config,
                  "output time " + std::to_string(out_times[i]) +
                      " is not a mesh node");
    }
  }
  return levels;
}

CorrectedProfile profile_tilde_u(const ExpansionState& state,
                                 const CacheStore& caches,
                                 const NonlinearitySpec& F,
                                 const Trajectory& traj,
                                 const std::vector<double>& out_times) {
  const SemigroupOperator& op = caches.op();
  double M = state.mass_M;
  MultiIndex zero = MultiIndex::zero(op.grid().dim);

  SourceFn f_M = [&caches, &F, M](double s) {
    Field g0 = scaled_copy(caches.at(s).g_field(0), M);
    return F.evaluate(g0, s);
  };

  TimeMesh mesh;
  mesh.nodes = traj.mesh_nodes;
  std::vector<Field> acc =
      duhamel_accumulate(op, f_M, mesh, out_times, Scheme::exponential_trapezoid);

  // Mass ledger: integral of mass(F(u)) comes from the recorded solver
  // samples; integral of mass(f_M) is marched on the same mesh with the
  // trapezoid rule. Their difference must be an integrable tail.
  double source_mass_integral = 0.0;
  for (const auto& step : traj.samples_per_step) {
    for (const DuhamelSample& s : step) {
      source_mass_integral += s.weight * s.raw_moments.front();
    }
  }

  std::vector<double> fm_mass(mesh.nodes.size());
  for (std::size_t j = 0; j < mesh.nodes.size(); ++j) {
    fm_mass[j] = monomial_moment(f_M(mesh.nodes[j]), zero, caches.guard());
  }
  double fM_mass_integral = 0.0;
  for (std::size_t j = 0; j + 1 < mesh.nodes.size(); ++j) {
    fM_mass_integral += 0.5 * (mesh.nodes[j + 1] - mesh.nodes[j]) *
                        (fm_mass[j] + fm_mass[j + 1]);
  }

  // Tail diagnostic at the left endpoint of each step, where the recorded
  // sample is the source evaluated on the solution itself (the right
  // endpoint of a trapezoid step holds the predictor evaluation instead).
  std::vector<double> delta_t, delta_v;
  for (std::size_t j = 0; j < traj.samples_per_step.size(); ++j) {
    if (traj.samples_per_step[j].empty()) continue;
    const DuhamelSample& s = traj.samples_per_step[j].front();
    if (s.s != mesh.nodes[j]) continue;
    delta_t.push_back(mesh.nodes[j]);
    delta_v.push_back(std::fabs(s.raw_moments.front() - fm_mass[j]));
  }

  CorrectedProfile out;
  out.mass_M_prime = traj.mass_phi + source_mass_integral - fM_mass_integral;
  out.tail_integrand = delta_v.empty() ? 0.0 : delta_v.back();

  NormTrajectory tail = NormTrajectory::make(delta_t, delta_v, "mass defect integrand");
  if (tail.t.empty()) {
    // A defect that is identically zero (for instance a disabled source)
    // needs no tail estimate.
    bool all_zero = true;
    for (double v : delta_v) all_zero = all_zero && v == 0.0;
    out.tail_resolved = all_zero;
  } else {
    double T = tail.t.back();
    WindowPolicy w;
    w.t_lo = T / 10.0;
    w.min_samples = 4;
    w.min_decades = 0.9;
    try {
      RateFit fit = fit_rate(tail, w);
      out.tail_exponent = fit.slope;
      out.tail_resolved =
          fit.slope <= -1.1 &&
          out.tail_integrand * T <=
              0.1 * std::max(std::fabs(out.mass_M_prime), 1e-10);
    } catch (const Error&) {
      out.tail_resolved = false;
    }
  }

  out.profiles.reserve(out_times.size());
  for (std::size_t i = 0; i < out_times.size(); ++i) {
    Field p = scaled_copy(caches.at(out_times[i]).g_field(0), out.mass_M_prime);
    p.time = out_times[i];
    add_scaled(p, acc[i], 1.0);
    out.profiles.push_back(std::move(p));
  }
  return out;
}

std::vector<Field> linear_remainder(const CacheStore& caches, const Field& phi,
                                    const std::vector<double>& times) {
  const SemigroupOperator& op = caches.op();
  MomentTable base = compute_moments(phi, caches.at(0.0), caches.guard());
  std::vector<Field> out;
  out.reserve(times.size());
  for (double t : times) {
    Field v = op.apply(phi, t);
    v.time = t;
    const KernelMomentCache& cache = caches.at(t);
    for (std::size_t a = 0; a < cache.index_count(); ++a) {
      add_scaled(v, cache.g_field(a), -base.values[a]);
    }
    out.push_back(std::move(v));
  }
  return out;
}

namespace {

bool near(double a, double b) {
  return std::fabs(a - b) <= 1e-12 * std::max({1.0, std::fabs(a), std::fabs(b)});
}

}  // namespace

RatePrediction predict_rate(const RateQuery& query) {
  if (!(query.A_p > 0.0)) {
    throw Error(ErrorKind::hypothesis,
                "requires A_p > 0: got A_p = " + std::to_string(query.A_p));
  }
  if (query.K < 0.0 || query.d <= 0.0 || query.n < 0) {
    throw Error(ErrorKind::config, "malformed rate query");
  }
  double K = query.K, d = query.d, A_p = query.A_p;
  RatePrediction pred;
  switch (query.kind) {
    case RateCase::expansion_distance: {
      double levels = static_cast<double>(query.n + 1);
      pred.exponent = -std::min(K / d, levels * A_p);
      pred.log_factor = near(levels * A_p, K / d);
      pred.source_case = "expansion remainder, level " + std::to_string(query.n);
      break;
    }
    case RateCase::single_term_distance: {
      if (K < 1.0) {
        pred.exponent = -std::min(K / d, A_p);
        pred.log_factor = near(A_p, K / d);
        pred.source_case = "single term, K < 1";
      } else {
        pred.exponent = -std::min(1.0 / d, A_p);
        pred.log_factor = near(A_p, 1.0 / d);
        pred.source_case = "single term, K >= 1";
      }
      break;
    }
    case RateCase::single_term_symmetric: {
      if (K < 1.0) {
        throw Error(ErrorKind::hypothesis,
                    "requires K >= 1 for the symmetric-source refinement");
      }
      pred.exponent = -std::min(1.0 / d, A_p);
      pred.log_factor = false;
      pred.source_case = "single term, symmetric sources";
      break;
    }
    case RateCase::corrected_distance: {
      if (K >= 1.0) {
        throw Error(ErrorKind::hypothesis,
                    "requires K < 1 for the corrected profile");
      }
      pred.exponent = -std::min(K / d, 2.0 * A_p);
      pred.log_factor = near(2.0 * A_p, K / d);
      pred.source_case = "corrected single term";
      break;
    }
  }
  return pred;
}

}  // namespace gka

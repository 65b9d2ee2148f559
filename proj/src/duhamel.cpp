#include "gka/duhamel.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <string>

#include "gka/error.hpp"
#include "gka/vecops.hpp"

namespace gka {

namespace {

std::uint64_t bit_key(double t) {
  std::uint64_t k;
  std::memcpy(&k, &t, sizeof(k));
  return k;
}

}  // namespace

Field NonlinearitySpec::evaluate(const Field& u, double t) const {
  if (p < 1.0) throw Error(ErrorKind::config, "nonlinearity power p must be >= 1");
  Field out(u.grid, t);
  std::size_t n = u.values.size();
  if (signed_power) {
    vecops::signed_pow(out.values.data(), u.values.data(), n, p);
  } else {
    vecops::abs_pow(out.values.data(), u.values.data(), n, p);
  }
  double scale = lambda * std::pow(1.0 + t, A);
  vecops::scale(out.values.data(), n, scale);
  if (a0) {
    if (a0->size() != n) {
      throw Error(ErrorKind::mismatch, "coefficient field a0 does not match the grid");
    }
    vecops::mul(out.values.data(), a0->data(), n);
  }
  return out;
}

TimeMesh TimeMesh::build(double t_end, const SolverControls& controls,
                         const std::vector<double>& required_times) {
  if (!(t_end > 0.0)) throw Error(ErrorKind::config, "mesh end time must be positive");
  if (controls.steps_per_unit < 1) {
    throw Error(ErrorKind::config, "steps_per_unit must be >= 1");
  }
  if (!(controls.growth >= 1.0)) {
    throw Error(ErrorKind::config, "step growth must be >= 1");
  }

  std::vector<double> nodes;
  nodes.push_back(0.0);
  double dt0 = 1.0 / controls.steps_per_unit;
  double uniform_end = std::min(1.0, t_end);
  int uniform_steps = static_cast<int>(std::ceil(uniform_end / dt0 - 1e-12));
  for (int j = 1; j <= uniform_steps; ++j) {
    double t = std::min(uniform_end, j * dt0);
    if (t > nodes.back()) nodes.push_back(t);
  }
  double dt = dt0;
  while (nodes.back() < t_end) {
    dt *= controls.growth;
    nodes.push_back(std::min(t_end, nodes.back() + dt));
  }

  // Splice the required output times in exactly: a nearby accumulated node
  // is replaced (so lookups later can compare doubles with ==), a missing
  // one is inserted.
  for (double r : required_times) {
    if (r < 0.0 || r > t_end * (1.0 + 1e-12)) {
      throw Error(ErrorKind::config, "output time outside [0, t_end]");
    }
    if (r == 0.0) continue;
    double tol = 1e-9 * std::max(1.0, r);
    auto near = std::min_element(nodes.begin(), nodes.end(), [&](double a, double b) {
      return std::fabs(a - r) < std::fabs(b - r);
    });
    if (std::fabs(*near - r) <= tol) {
      if (*near != 0.0) *near = r;
    } else {
      nodes.push_back(r);
    }
  }
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  for (std::size_t j = 1; j < nodes.size(); ++j) {
    if (!(nodes[j] > nodes[j - 1])) {
      throw Error(ErrorKind::numeric, "mesh nodes failed to be strictly increasing");
    }
  }
  TimeMesh mesh;
  mesh.nodes = std::move(nodes);
  return mesh;
}

const Field& Trajectory::at_time(double t) const {
  for (const Field& f : snapshots) {
    if (f.time == t) return f;
  }
  throw Error(ErrorKind::mismatch,
              "no snapshot at t=" + std::to_string(t));
}

namespace {

std::vector<double> record_raw(const Field& f,
                               const std::vector<MultiIndex>& indices,
                               const QuadratureGuard& guard) {
  std::vector<double> raw;
  raw.reserve(indices.size());
  for (const MultiIndex& a : indices) raw.push_back(monomial_moment(f, a, guard));
  return raw;
}

}  // namespace

Trajectory solve(const SemigroupOperator& op, const Field& phi,
                 const NonlinearitySpec& F, double t_end,
                 const SolverControls& controls,
                 const std::vector<double>& snapshot_times,
                 double record_K, const QuadratureGuard& guard) {
  if (phi.grid != op.grid()) {
    throw Error(ErrorKind::mismatch, "initial data grid does not match operator grid");
  }
  Trajectory traj;
  traj.scheme = controls.scheme;
  traj.mass_phi = monomial_moment(phi, MultiIndex::zero(phi.grid.dim), guard);

  TimeMesh mesh = TimeMesh::build(t_end, controls, snapshot_times);
  traj.mesh_nodes = mesh.nodes;

  if (!F.enabled()) {
    // Pure semigroup flow: evaluate each snapshot in one spectral step.
    for (double t : snapshot_times) {
      Field u = op.apply(phi, t);
      u.time = t;
      u.check_finite();
      traj.snapshots.push_back(std::move(u));
    }
    return traj;
  }

  auto want_snapshot = [&snapshot_times](double t) {
    return std::find(snapshot_times.begin(), snapshot_times.end(), t) !=
           snapshot_times.end();
  };

  if (record_K >= 0.0) {
    traj.record_indices = enumerate_indices(phi.grid.dim, record_K);
  }
  double blowup_cap = controls.blowup_factor *
                      vecops::max_abs(phi.values.data(), phi.values.size());

  Field u = phi;
  u.time = 0.0;
  if (want_snapshot(0.0)) traj.snapshots.push_back(u);

  for (std::size_t j = 0; j + 1 < mesh.nodes.size(); ++j) {
    double t0 = mesh.nodes[j];
    double t1 = mesh.nodes[j + 1];
    double dt = t1 - t0;
    std::vector<DuhamelSample> samples;

    if (controls.scheme == Scheme::exponential_euler) {
      Field f0 = F.evaluate(u, t0);
      if (!traj.record_indices.empty()) {
        samples.push_back({t0, dt, record_raw(f0, traj.record_indices, guard)});
      }
      add_scaled(u, f0, dt);
      u = op.apply(u, dt);
    } else {
      Field f0 = F.evaluate(u, t0);
      Field pred = u;
      add_scaled(pred, f0, dt);
      pred = op.apply(pred, dt);
      pred.time = t1;
      Field f1 = F.evaluate(pred, t1);
      if (!traj.record_indices.empty()) {
        samples.push_back({t0, 0.5 * dt, record_raw(f0, traj.record_indices, guard)});
        samples.push_back({t1, 0.5 * dt, record_raw(f1, traj.record_indices, guard)});
      }
      add_scaled(u, f0, 0.5 * dt);
      u = op.apply(u, dt);
      add_scaled(u, f1, 0.5 * dt);
    }
    u.time = t1;
    traj.samples_per_step.push_back(std::move(samples));

    u.check_finite();
    if (vecops::max_abs(u.values.data(), u.values.size()) > blowup_cap) {
      throw Error(ErrorKind::blowup,
                  "solution exceeded " + std::to_string(controls.blowup_factor) +
                      " times the initial sup norm at t=" + std::to_string(t1));
    }
    if (want_snapshot(t1)) traj.snapshots.push_back(u);
  }
  return traj;
}

std::vector<Field> duhamel_accumulate(const SemigroupOperator& op,
                                      const SourceFn& f, const TimeMesh& mesh,
                                      const std::vector<double>& out_times,
                                      Scheme scheme) {
  Field acc(op.grid(), 0.0);
  std::vector<Field> out(out_times.size(), acc);
  std::vector<bool> done(out_times.size(), false);

  auto capture = [&](double t, const Field& value) {
    for (std::size_t i = 0; i < out_times.size(); ++i) {
      if (!done[i] && out_times[i] == t) {
        out[i] = value;
        done[i] = true;
      }
    }
  };
  capture(0.0, acc);

  Field prev = f(mesh.nodes.front());
  for (std::size_t j = 0; j + 1 < mesh.nodes.size(); ++j) {
    double t0 = mesh.nodes[j];
    double t1 = mesh.nodes[j + 1];
    double dt = t1 - t0;
    if (scheme == Scheme::exponential_euler) {
      add_scaled(acc, prev, dt);
      acc = op.apply(acc, dt);
      if (j + 2 < mesh.nodes.size()) prev = f(t1);
    } else {
      add_scaled(acc, prev, 0.5 * dt);
      acc = op.apply(acc, dt);
      prev = f(t1);
      add_scaled(acc, prev, 0.5 * dt);
    }
    acc.time = t1;
    capture(t1, acc);
  }
  for (std::size_t i = 0; i < out_times.size(); ++i) {
    if (!done[i]) {
      throw Error(ErrorKind::config,
                  "output time " + std::to_string(out_times[i]) +
                      " is not a mesh node");
    }
  }
  return out;
}

CacheStore::CacheStore(const SemigroupOperator& op, double K,
                       const QuadratureGuard& guard)
    : op_(op), K_(K), guard_(guard) {}

const KernelMomentCache& CacheStore::at(double t) const {
  auto it = store_.find(bit_key(t));
  if (it == store_.end()) {
    it = store_.try_emplace(bit_key(t), op_, K_, t, guard_).first;
  }
  return it->second;
}

std::vector<Field> remainder_RK(const CacheStore& caches, const SourceFn& f,
                                const TimeMesh& mesh,
                                const std::vector<double>& out_times,
                                Scheme scheme) {
  SourceFn projected = [&caches, &f](double s) {
    Field fs = f(s);
    const KernelMomentCache& cache = caches.at(s);
    MomentTable m = compute_moments(fs, cache, caches.guard());
    return project(fs, m, cache);
  };
  return duhamel_accumulate(caches.op(), projected, mesh, out_times, scheme);
}

std::vector<Field> remainder_RK_via_moments(const CacheStore& caches,
                                            const SourceFn& f,
                                            const TimeMesh& mesh,
                                            const std::vector<double>& out_times,
                                            Scheme scheme) {
  std::vector<Field> plain =
      duhamel_accumulate(caches.op(), f, mesh, out_times, scheme);

  const KernelMomentCache& layout = caches.at(mesh.nodes.front());
  std::size_t count = layout.index_count();
  std::vector<double> integral(count, 0.0);

  auto moments_at = [&caches, &f](double s) {
    Field fs = f(s);
    const KernelMomentCache& cache = caches.at(s);
    return compute_moments(fs, cache, caches.guard()).values;
  };

  auto correct = [&](std::size_t out_i, double t) {
    const KernelMomentCache& cache = caches.at(t);
    for (std::size_t a = 0; a < count; ++a) {
      add_scaled(plain[out_i], cache.g_field(a), -integral[a]);
    }
  };

  std::vector<bool> done(out_times.size(), false);
  auto capture = [&](double t) {
    for (std::size_t i = 0; i < out_times.size(); ++i) {
      if (!done[i] && out_times[i] == t) {
        correct(i, t);
        done[i] = true;
      }
    }
  };
  capture(0.0);

  std::vector<double> prev = moments_at(mesh.nodes.front());
  for (std::size_t j = 0; j + 1 < mesh.nodes.size(); ++j) {
    double dt = mesh.nodes[j + 1] - mesh.nodes[j];
    if (scheme == Scheme::exponential_euler) {
      for (std::size_t a = 0; a < count; ++a) integral[a] += dt * prev[a];
      if (j + 2 < mesh.nodes.size()) prev = moments_at(mesh.nodes[j + 1]);
    } else {
      std::vector<double> cur = moments_at(mesh.nodes[j + 1]);
      for (std::size_t a = 0; a < count; ++a) {
        integral[a] += 0.5 * dt * (prev[a] + cur[a]);
      }
      prev = std::move(cur);
    }
    capture(mesh.nodes[j + 1]);
  }
  return plain;
}

}  // namespace gka

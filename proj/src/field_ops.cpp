#include "gka/field_ops.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "gka/error.hpp"
#include "gka/vecops.hpp"

namespace gka {

namespace {

void require_same_grid(const Grid& a, const Grid& b, const char* what) {
  if (a != b) {
    throw Error(ErrorKind::mismatch, std::string(what) + ": grid mismatch");
  }
}

// |x|^p per node. p = 0 gives 1 everywhere.
std::vector<double> radial_power(const Grid& g, double p) {
  std::vector<double> out(g.size());
  if (g.dim == 1) {
    for (std::size_t j = 0; j < g.n; ++j) {
      out[j] = p == 0.0 ? 1.0 : std::pow(std::fabs(g.coord(j)), p);
    }
  } else {
    for (std::size_t i = 0; i < g.n; ++i) {
      double xi = g.coord(i);
      for (std::size_t j = 0; j < g.n; ++j) {
        double xj = g.coord(j);
        double r = std::sqrt(xi * xi + xj * xj);
        out[i * g.n + j] = p == 0.0 ? 1.0 : std::pow(r, p);
      }
    }
  }
  return out;
}

std::vector<double> monomial_weights(const Grid& g, const MultiIndex& a) {
  std::vector<double> out(g.size());
  double x[2];
  for (std::size_t flat = 0; flat < g.size(); ++flat) {
    g.node_coords(flat, x);
    out[flat] = monomial(a, x);
  }
  return out;
}

}  // namespace

double lq_norm(const Field& f, double q) {
  if (q == kInfiniteQ) {
    return vecops::max_abs(f.values.data(), f.values.size());
  }
  if (!(q >= 1.0)) {
    throw Error(ErrorKind::config, "lq_norm needs q >= 1");
  }
  std::vector<double> tmp(f.values.size());
  vecops::abs_pow(tmp.data(), f.values.data(), tmp.size(), q);
  double s = vecops::sum(tmp.data(), tmp.size()) * f.grid.cell_volume();
  return q == 1.0 ? s : std::pow(s, 1.0 / q);
}

double weighted_l1_norm(const Field& f, double ell) {
  if (ell < 0.0) {
    throw Error(ErrorKind::config, "weighted_l1_norm needs ell >= 0");
  }
  std::vector<double> absf(f.values.size());
  vecops::abs_pow(absf.data(), f.values.data(), absf.size(), 1.0);
  std::vector<double> w = radial_power(f.grid, ell);
  for (double& wi : w) wi += 1.0;
  return vecops::dot(absf.data(), w.data(), absf.size()) * f.grid.cell_volume();
}

namespace {

double moment_quadrature(const Field& f, const MultiIndex& a,
                         const QuadratureGuard* guard) {
  if (a.dim() != f.grid.dim) {
    throw Error(ErrorKind::mismatch, "moment index dimension mismatch");
  }
  const Grid& g = f.grid;
  std::vector<double> w = monomial_weights(g, a);
  double moment = vecops::dot(f.values.data(), w.data(), w.size()) * g.cell_volume();
  if (!guard) return moment;

  if (a.order() > guard->max_order) {
    throw Error(ErrorKind::config,
                "moment order " + std::to_string(a.order()) +
                    " exceeds the configured maximum " +
                    std::to_string(guard->max_order));
  }

  // The plain sum over the periodic box is the trapezoidal rule on a
  // periodic function, exact up to aliasing; the boundary ring is not an
  // error indicator for it.  Only coordinate weights, which break the
  // periodicity with a sawtooth, expose genuine truncation, so the tail
  // screen below applies to weighted moments alone.
  if (a.order() == 0) return moment;

  std::vector<double> absf(f.values.size());
  vecops::abs_pow(absf.data(), f.values.data(), absf.size(), 1.0);
  std::vector<double> wabs(w.size());
  vecops::abs_pow(wabs.data(), w.data(), w.size(), 1.0);
  double abs_moment =
      vecops::dot(absf.data(), wabs.data(), absf.size()) * g.cell_volume();
  double weighted_max = 0.0;
  for (std::size_t i = 0; i < absf.size(); ++i) {
    double v = wabs[i] * absf[i];
    if (v > weighted_max) weighted_max = v;
  }

  // Boundary ring: every node with axis index 0 (the farthest nodes of the
  // periodic box). If the weighted integrand is still alive there, the box
  // chopped off tail mass the moment needed.
  double ring_stat = 0.0;
  double x[2];
  auto consider = [&](std::size_t flat) {
    g.node_coords(flat, x);
    double r = g.dim == 1 ? std::fabs(x[0]) : std::sqrt(x[0] * x[0] + x[1] * x[1]);
    double v = std::pow(r, static_cast<double>(a.order())) * std::fabs(f.values[flat]);
    if (v > ring_stat) ring_stat = v;
  };
  if (g.dim == 1) {
    consider(0);
  } else {
    for (std::size_t j = 0; j < g.n; ++j) {
      consider(j);          // axis 0 index 0
      consider(j * g.n);    // axis 1 index 0
    }
  }

  double scale = std::max(std::fabs(moment), guard->cancel_floor * abs_moment);
  double threshold = std::max(guard->tail_tol * scale,
                              guard->noise_floor * weighted_max);
  if (ring_stat > threshold) {
    std::ostringstream msg;
    msg << "moment " << a.to_string() << " unreliable: boundary ring value "
        << ring_stat << " exceeds the threshold " << threshold
        << " (tail_tol " << guard->tail_tol << " * scale " << scale
        << ", noise floor " << guard->noise_floor << " * peak integrand "
        << weighted_max << ")";
    throw Error(ErrorKind::tail_dominance, msg.str());
  }
  return moment;
}

}  // namespace

double monomial_moment(const Field& f, const MultiIndex& a,
                       const QuadratureGuard& guard) {
  return moment_quadrature(f, a, &guard);
}

double monomial_moment_unguarded(const Field& f, const MultiIndex& a) {
  return moment_quadrature(f, a, nullptr);
}

Field& add_scaled(Field& dst, const Field& src, double a) {
  require_same_grid(dst.grid, src.grid, "add_scaled");
  vecops::axpy(dst.values.data(), src.values.data(), dst.values.size(), a);
  return dst;
}

Field scaled_copy(const Field& src, double a) {
  Field out = src;
  vecops::scale(out.values.data(), out.values.size(), a);
  return out;
}

Field difference(const Field& a, const Field& b) {
  require_same_grid(a.grid, b.grid, "difference");
  Field out = a;
  vecops::axpy(out.values.data(), b.values.data(), out.values.size(), -1.0);
  return out;
}

}  // namespace gka

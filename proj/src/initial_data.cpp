#include "gka/initial_data.hpp"

#include <cmath>
#include <vector>

#include "gka/error.hpp"
#include "gka/field_ops.hpp"
#include "gka/vecops.hpp"

namespace gka {

Field make_gaussian(const Grid& grid, double center, double width,
                    double amplitude) {
  if (!(width > 0.0)) throw Error(ErrorKind::config, "gaussian width must be positive");
  Field out(grid, 0.0);
  double x[2];
  for (std::size_t j = 0; j < grid.size(); ++j) {
    grid.node_coords(j, x);
    // The scalar center shifts every axis.
    double r2 = (x[0] - center) * (x[0] - center);
    if (grid.dim == 2) r2 += (x[1] - center) * (x[1] - center);
    out.values[j] = amplitude * std::exp(-r2 / (width * width));
  }
  return out;
}

Field make_bump(const Grid& grid, double center, double width, double amplitude) {
  if (!(width > 0.0)) throw Error(ErrorKind::config, "bump width must be positive");
  Field out(grid, 0.0);
  double x[2];
  for (std::size_t j = 0; j < grid.size(); ++j) {
    grid.node_coords(j, x);
    double r2 = (x[0] - center) * (x[0] - center);
    if (grid.dim == 2) r2 += (x[1] - center) * (x[1] - center);
    double s = r2 / (width * width);
    out.values[j] = s < 1.0 ? amplitude * std::exp(-1.0 / (1.0 - s)) : 0.0;
  }
  return out;
}

Field make_kernel_snapshot(const SemigroupOperator& op, double t0,
                           double amplitude) {
  Field out = scaled_copy(op.kernel_snapshot(t0), amplitude);
  out.time = 0.0;
  return out;
}

namespace {

// Solves the small dense system A c = b in place; partial pivoting.
std::vector<double> solve_dense(std::vector<std::vector<double>> A,
                                std::vector<double> b) {
  std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t row = col + 1; row < n; ++row) {
      if (std::fabs(A[row][col]) > std::fabs(A[piv][col])) piv = row;
    }
    if (std::fabs(A[piv][col]) < 1e-14) {
      throw Error(ErrorKind::numeric, "moment calibration system is singular");
    }
    std::swap(A[piv], A[col]);
    std::swap(b[piv], b[col]);
    for (std::size_t row = 0; row < n; ++row) {
      if (row == col) continue;
      double f = A[row][col] / A[col][col];
      for (std::size_t q = col; q < n; ++q) A[row][q] -= f * A[col][q];
      b[row] -= f * b[col];
    }
  }
  for (std::size_t i = 0; i < n; ++i) b[i] /= A[i][i];
  return b;
}

// Subtracts the combination of x^j exp(-(x/scale)^2), j = 0..k, that makes
// every grid moment of `f` through order k vanish exactly (in the plain
// truncated-sum sense; the guard must stay out of the way here, vanishing
// is the goal, not a symptom).
void kill_grid_moments(Field& f, int k, double scale) {
  const Grid& grid = f.grid;
  std::vector<Field> basis;
  for (int j = 0; j <= k; ++j) {
    Field b(grid, 0.0);
    double x[1];
    for (std::size_t i = 0; i < grid.size(); ++i) {
      grid.node_coords(i, x);
      double s = x[0] / scale;
      b.values[i] = std::pow(x[0], j) * std::exp(-s * s);
    }
    basis.push_back(std::move(b));
  }
  std::vector<std::vector<double>> A(k + 1, std::vector<double>(k + 1));
  std::vector<double> rhs(k + 1);
  for (int m = 0; m <= k; ++m) {
    MultiIndex am({m});
    for (int j = 0; j <= k; ++j) {
      A[m][j] = monomial_moment_unguarded(basis[j], am);
    }
    rhs[m] = monomial_moment_unguarded(f, am);
  }
  std::vector<double> c = solve_dense(A, rhs);
  for (int j = 0; j <= k; ++j) add_scaled(f, basis[j], -c[j]);
}

double hermite(int n, double y) {
  double h0 = 1.0, h1 = 2.0 * y;
  if (n == 0) return h0;
  for (int i = 1; i < n; ++i) {
    double h2 = 2.0 * y * h1 - 2.0 * i * h0;
    h0 = h1;
    h1 = h2;
  }
  return h1;
}

}  // namespace

Field make_hermite_moment_free(const Grid& grid, int k, double scale,
                               double amplitude) {
  if (grid.dim != 1) {
    throw Error(ErrorKind::config, "moment-free profiles are one-dimensional");
  }
  if (k < 0 || k > 10) throw Error(ErrorKind::config, "moment-free order out of range");
  if (!(scale > 0.0)) throw Error(ErrorKind::config, "profile scale must be positive");
  Field out(grid, 0.0);
  double x[1];
  for (std::size_t i = 0; i < grid.size(); ++i) {
    grid.node_coords(i, x);
    double y = x[0] / scale;
    out.values[i] = hermite(k, y) * std::exp(-y * y);
  }
  // Orthogonality already zeroes the continuum moments below order k; the
  // grid correction makes the truncated sums vanish exactly as well.  The
  // order-k moment itself stays away from zero, so the evolved profile
  // decays at exactly the order-k rate.
  kill_grid_moments(out, k - 1, scale);
  vecops::scale(out.values.data(), out.values.size(), amplitude);
  return out;
}

Field make_pareto_moment_free(const Grid& grid, int k, double eps,
                              double amplitude) {
  if (grid.dim != 1) {
    throw Error(ErrorKind::config, "moment-free profiles are one-dimensional");
  }
  if (k < 0 || k > 10) throw Error(ErrorKind::config, "moment-free order out of range");
  if (!(eps > 0.0 && eps < 1.0)) {
    throw Error(ErrorKind::config, "tail margin eps must lie in (0,1)");
  }
  Field out(grid, 0.0);
  // Tail |x|^{-(1 + k + eps)}: the weighted norm through order k is finite
  // while the (k+1)-th absolute moment diverges, so the profile sits just
  // above the borderline for the order-k decay rate.  Moments below order k
  // are removed; the surviving order-k moment sets the rate, and the tail
  // contributes a correction another factor t^{-eps/d} down.
  double power = -(1.0 + k + eps) / 2.0;
  double x[1];
  for (std::size_t i = 0; i < grid.size(); ++i) {
    grid.node_coords(i, x);
    out.values[i] = std::pow(1.0 + x[0] * x[0], power);
  }
  kill_grid_moments(out, k - 1, 2.0);
  vecops::scale(out.values.data(), out.values.size(), amplitude);
  return out;
}

}  // namespace gka

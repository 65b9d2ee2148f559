#pragma once

#include <limits>

#include "gka/grid.hpp"
#include "gka/multiindex.hpp"

namespace gka {

inline constexpr double kInfiniteQ = std::numeric_limits<double>::infinity();

// Guard parameters for moment quadrature. A moment is rejected when the
// boundary ring of the grid still carries weight: max over ring nodes of
// |x|^|a| |f| exceeding tail_tol times the moment scale means the domain
// truncated a tail the integral actually needed. The scale is
// max(|moment|, cancel_floor * absolute moment) so that moments which
// vanish by symmetry are judged against the size of their integrand, not
// against the cancelled value.
struct QuadratureGuard {
  double tail_tol = 1e-10;
  double cancel_floor = 1e-3;
  int max_order = 8;
  // Ring values below this fraction of the peak weighted integrand are
  // treated as quadrature noise, not as a truncated tail: FFT-sampled
  // fields carry relative rounding of order n*eps, and the monomial
  // weight amplifies exactly that noise at the box edge (measured up to
  // ~6e-11 of peak for square weights at n=4096).  Genuinely truncated
  // tails show up orders of magnitude above this.
  double noise_floor = 3e-10;
};

// (sum |f|^q h^dim)^(1/q); q = kInfiniteQ gives the grid max. q < 1 throws.
double lq_norm(const Field& f, double q);

// sum |f| (1 + |x|^ell) h^dim; ell = 0 gives exactly 2*l1 norm.
double weighted_l1_norm(const Field& f, double ell);

// sum x^a f h^dim with the tail-dominance guard above.
double monomial_moment(const Field& f, const MultiIndex& a,
                       const QuadratureGuard& guard = {});

// Same quadrature with no guard, for callers that intentionally look at
// truncated-tail sums (e.g. moment-free calibration of initial data).
double monomial_moment_unguarded(const Field& f, const MultiIndex& a);

// Elementwise helpers used across modules; all operate on matching grids.
Field& add_scaled(Field& dst, const Field& src, double a);  // dst += a*src
Field scaled_copy(const Field& src, double a);
Field difference(const Field& a, const Field& b);  // a - b, keeps a's time

}  // namespace gka

#pragma once

#include "gka/grid.hpp"
#include "gka/semigroup.hpp"

namespace gka {

// amplitude * exp(-|x - center|^2 / width^2)
Field make_gaussian(const Grid& grid, double center, double width,
                    double amplitude);

// Compactly supported bump: amplitude * exp(-1/(1 - r^2)) for r < 1 with
// r = |x - center| / width, zero outside.
Field make_bump(const Grid& grid, double center, double width, double amplitude);

// amplitude * G(., t0) sampled through the operator's spectral path.
Field make_kernel_snapshot(const SemigroupOperator& op, double t0,
                           double amplitude);

// Hermite-type profile whose grid moments vanish exactly below order k:
// H_k(x/scale) exp(-(x/scale)^2) corrected by a small combination of
// x^j exp(-(x/scale)^2), j < k, solving out the measured discrete moments.
// The order-k moment survives and pins the evolved decay at -k/d. 1D only.
Field make_hermite_moment_free(const Grid& grid, int k, double scale,
                               double amplitude);

// Heavy-tailed moment-free profile with the same vanishing pattern: tail
// |x|^{-(1 + k + eps)} minus a Gaussian-polynomial correction killing grid
// moments below order k. The surviving order-k moment sets the rate -k/d
// while the (k+1)-th absolute moment diverges, so the profile sits just
// above the borderline for that rate. 1D only.
Field make_pareto_moment_free(const Grid& grid, int k, double eps,
                              double amplitude);

// Sums of the above are assembled by the scenario layer.

}  // namespace gka

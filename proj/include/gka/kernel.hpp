#pragma once

#include <string>
#include <utility>
#include <vector>

#include "gka/grid.hpp"
#include "gka/multiindex.hpp"

namespace gka {

enum class KernelFamily { heat, fractional, polyharmonic, elliptic_symbol };

// A diffusion kernel family described by its Fourier symbol psi, with the
// scaling exponent d (kernel width grows like t^{1/d}), spatial decay order
// L, and the highest derivative order gamma the expansion machinery may
// request. All families here have real, even, nonnegative symbols with
// psi(0) = 0, so the time-t multiplier exp(-t psi) is a real array.
struct KernelSpec {
  int dim = 1;
  KernelFamily family = KernelFamily::heat;
  double theta = 1.0;  // fractional order, in (0,2)
  int m = 1;           // half the operator order for polyharmonic/elliptic
  std::vector<std::pair<MultiIndex, double>> coefficients;  // elliptic only
  double L = 10.0;
  int gamma_max = 4;

  double d() const;
  int gamma() const;
  double psi(const double* xi) const;  // symbol at a frequency point

  static KernelSpec heat(int dim, double L = 10.0, int gamma = 6);
  static KernelSpec fractional(int dim, double theta);
  static KernelSpec polyharmonic(int dim, int m, double L = 10.0, int gamma = 6);
  static KernelSpec elliptic(int dim, int m,
                             std::vector<std::pair<MultiIndex, double>> coeffs,
                             double L = 10.0, int gamma = 6);

  std::string family_name() const;
};

// Grid-adequacy policy for sampling G(.,t): the kernel width t^{1/d} must
// span at least min_width_cells grid cells (else the grid cannot resolve
// it) and at most R/domain_margin (else the periodic box truncates it).
struct ResolutionPolicy {
  double min_width_cells = 4.0;
  double domain_margin = 8.0;
};

// Throws Error(resolution) / Error(truncation) when the grid cannot carry
// G(.,t) under the policy above.
void require_resolved(const KernelSpec& spec, const Grid& grid, double t,
                      const ResolutionPolicy& policy);

// Samples of G(.,t) on the grid via the inverse transform of exp(-t psi).
// What is actually produced is the 2R-periodization of G, which is the
// object all grid quadratures see; the policy keeps the wrap-around below
// quadrature noise. Throws Error(resolution) / Error(truncation).
Field kernel_field(const KernelSpec& spec, const Grid& grid, double t,
                   const ResolutionPolicy& policy = {});

// Closed-form sampling for the heat family only; oracle path for tests.
Field kernel_field_closed_form(const KernelSpec& spec, const Grid& grid, double t);

// g_a(.,t) = ((-1)^|a|/a!) d^a G(.,t+1): inverse transform of
// ((-1)^|a|/a!) (i xi)^a exp(-(t+1) psi). Requires |a| <= gamma.
Field g_alpha_field(const KernelSpec& spec, const Grid& grid,
                    const MultiIndex& a, double t,
                    const ResolutionPolicy& policy = {});

// Sanity report for a kernel family on a grid: self-similar rescaling
// residual, decay-envelope statistics, and the semigroup composition
// residual, each with a pass flag at the given tolerances.
struct ConditionGReport {
  double self_similarity_residual = 0.0;   // max over t in {0.5,1,2,4}
  std::vector<double> envelope_stat;       // j = 0..gamma, at t=1
  bool envelope_flagged = false;           // grows when R is doubled
  double chapman_kolmogorov_residual = 0.0;  // L1, (t,s) = (2,1)
  double unit_mass_error = 0.0;            // worst |mass - 1| over sampled t
  bool pass = false;
};

struct ConditionGTolerances {
  double self_similarity = 1e-6;
  double chapman_kolmogorov = 1e-5;
  double unit_mass = 1e-8;
  double envelope_growth = 1.25;  // flag when doubling R grows the stat this much
};

ConditionGReport validate_condition_G(const KernelSpec& spec, const Grid& grid,
                                      const ConditionGTolerances& tol = {});

// Ellipticity check for a 2m-th order constant-coefficient symbol: on real
// frequencies the symbol sum must stay below -c1 |xi|^{2m} for some c1 > 0.
// Directions and magnitudes are sampled deterministically over decades.
struct SymbolCheck {
  bool ok = false;
  double c1 = 0.0;  // best (largest) coefficient found; <= 0 means failure
};

SymbolCheck validate_symbol(int dim,
                            const std::vector<std::pair<MultiIndex, double>>& coeffs,
                            int sample_count = 64);

}  // namespace gka

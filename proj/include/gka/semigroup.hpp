#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <utility>
#include <vector>

#include "gka/grid.hpp"
#include "gka/kernel.hpp"
#include "gka/multiindex.hpp"
#include "gka/spectral.hpp"

namespace gka {

// e^{tL} realized as a Fourier multiplier on the periodic grid. Multiplier
// tables are cached per exact bit pattern of t, so repeated applications at
// the same time reuse (and bit-exactly reproduce) the first computation.
class SemigroupOperator {
 public:
  SemigroupOperator(const KernelSpec& spec, const Grid& grid,
                    const ResolutionPolicy& policy = {});

  const Grid& grid() const { return ws_.grid(); }
  const KernelSpec& spec() const { return ws_.spec(); }
  const SpectralWorkspace& workspace() const { return ws_; }
  const ResolutionPolicy& policy() const { return policy_; }

  // Forward transform, multiply by exp(-t psi), inverse transform. t = 0
  // returns phi unchanged, bit for bit. Output time stamp = phi.time + t.
  Field apply(const Field& phi, double t) const;

  // Multiplier (i xi)^a exp(-t psi): the a-derivative of e^{tL} phi.
  Field apply_derivative(const Field& phi, double t, const MultiIndex& a) const;

  // Kernel and basis-function samples on this operator's grid.
  Field kernel_snapshot(double t) const;                       // G(.,t)
  Field g_alpha(const MultiIndex& a, double t) const;          // g_a(.,t)

  // Quadrature convolution against the sampled kernel: O(n^2) oracle used
  // by cross-checks only, never by the main path.
  Field apply_direct(const Field& phi, double t) const;

 private:
  const std::vector<double>& multiplier(double t) const;

  SpectralWorkspace ws_;
  ResolutionPolicy policy_;
  mutable std::map<std::uint64_t, std::vector<double>> cache_;
};

// Least-squares slope of log ||d^a e^{tL} phi||_q against log t over the
// supplied times (at least 4), together with the smoothing exponent it is
// expected to match: -(N/d)(1/r - 1/q) - |a|/d, where r is the norm the
// data is measured in.
struct SmoothingFit {
  double slope = 0.0;
  double expected = 0.0;
};
SmoothingFit verify_smoothing(const SemigroupOperator& op, const Field& phi,
                              double q, double r,
                              const std::vector<double>& times,
                              const MultiIndex& a);

}  // namespace gka

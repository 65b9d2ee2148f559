#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "gka/fft.hpp"
#include "gka/grid.hpp"
#include "gka/kernel.hpp"
#include "gka/multiindex.hpp"

namespace gka {

// Transform plans plus the symbol table for one (kernel, grid) pair. All
// spectral machinery funnels through here so kernel sampling, semigroup
// application, and derivative multipliers stay mutually consistent.
class SpectralWorkspace {
 public:
  SpectralWorkspace(const KernelSpec& spec, const Grid& grid);

  const Grid& grid() const { return grid_; }
  const KernelSpec& spec() const { return spec_; }

  // psi evaluated over all grid bins (flat layout, wrap frequencies).
  const std::vector<double>& symbol() const { return psi_; }

  // exp(-t psi) over all bins.
  std::vector<double> semigroup_multiplier(double t) const;

  // (i xi)^a over all bins, with the unpaired half-spectrum bin (axis index
  // n/2) zeroed on every axis where a is odd; leaving it in place would put
  // a spurious imaginary ripple into the spatial samples.
  std::vector<std::complex<double>> derivative_multiplier(const MultiIndex& a) const;

  // In-place unnormalized forward / normalized inverse transforms on
  // grid-size complex buffers (rows then columns in 2D).
  void forward(std::complex<double>* data) const;
  void inverse(std::complex<double>* data) const;

  // Sample the function whose continuous transform is the given bin values:
  // applies the centered-grid phase (-1)^(sum of axis indices) and the
  // h^-dim scaling, returning real parts.
  Field sample_from_multiplier(const std::vector<std::complex<double>>& mult,
                               double time_stamp) const;
  Field sample_from_multiplier(const std::vector<double>& mult,
                               double time_stamp) const;

 private:
  KernelSpec spec_;
  Grid grid_;
  Fft fft_;
  std::vector<double> psi_;
  mutable std::vector<std::complex<double>> col_scratch_;
};

}  // namespace gka

#include "gka/spectral.hpp"

#include <cmath>

#include "gka/error.hpp"
#include "gka/vecops.hpp"

namespace gka {

SpectralWorkspace::SpectralWorkspace(const KernelSpec& spec, const Grid& grid)
    : spec_(spec), grid_(grid), fft_(grid.n), col_scratch_(grid.n) {
  if (spec.dim != grid.dim) {
    throw Error(ErrorKind::mismatch, "kernel/grid dimension mismatch");
  }
  psi_.resize(grid.size());
  double xi[2];
  if (grid.dim == 1) {
    for (std::size_t m = 0; m < grid.n; ++m) {
      xi[0] = grid.freq(m);
      psi_[m] = spec.psi(xi);
    }
  } else {
    for (std::size_t m0 = 0; m0 < grid.n; ++m0) {
      xi[0] = grid.freq(m0);
      for (std::size_t m1 = 0; m1 < grid.n; ++m1) {
        xi[1] = grid.freq(m1);
        psi_[m0 * grid.n + m1] = spec.psi(xi);
      }
    }
  }
  if (psi_[0] != 0.0) {
    throw Error(ErrorKind::numeric, "kernel symbol does not vanish at zero frequency");
  }
}

std::vector<double> SpectralWorkspace::semigroup_multiplier(double t) const {
  std::vector<double> out(psi_.size());
  for (std::size_t i = 0; i < psi_.size(); ++i) out[i] = std::exp(-t * psi_[i]);
  return out;
}

std::vector<std::complex<double>> SpectralWorkspace::derivative_multiplier(
    const MultiIndex& a) const {
  if (a.dim() != grid_.dim) {
    throw Error(ErrorKind::mismatch, "derivative index dimension mismatch");
  }
  // (i xi)^a = i^|a| xi^a; i^|a| cycles through {1, i, -1, -i}.
  static const std::complex<double> unit_powers[4] = {
      {1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}};
  std::complex<double> rot = unit_powers[a.order() % 4];

  std::vector<std::complex<double>> out(grid_.size());
  std::size_t half = grid_.n / 2;
  double xi[2];
  if (grid_.dim == 1) {
    for (std::size_t m = 0; m < grid_.n; ++m) {
      xi[0] = grid_.freq(m);
      out[m] = rot * monomial(a, xi);
      if (a[0] % 2 == 1 && m == half) out[m] = 0.0;
    }
  } else {
    for (std::size_t m0 = 0; m0 < grid_.n; ++m0) {
      xi[0] = grid_.freq(m0);
      bool kill0 = a[0] % 2 == 1 && m0 == half;
      for (std::size_t m1 = 0; m1 < grid_.n; ++m1) {
        xi[1] = grid_.freq(m1);
        bool kill1 = a[1] % 2 == 1 && m1 == half;
        out[m0 * grid_.n + m1] =
            (kill0 || kill1) ? 0.0 : rot * monomial(a, xi);
      }
    }
  }
  return out;
}

void SpectralWorkspace::forward(std::complex<double>* data) const {
  if (grid_.dim == 1) {
    fft_.forward(data);
    return;
  }
  std::size_t n = grid_.n;
  for (std::size_t r = 0; r < n; ++r) fft_.forward(data + r * n);
  for (std::size_t c = 0; c < n; ++c) {
    for (std::size_t r = 0; r < n; ++r) col_scratch_[r] = data[r * n + c];
    fft_.forward(col_scratch_.data());
    for (std::size_t r = 0; r < n; ++r) data[r * n + c] = col_scratch_[r];
  }
}

void SpectralWorkspace::inverse(std::complex<double>* data) const {
  if (grid_.dim == 1) {
    fft_.inverse(data);
    return;
  }
  std::size_t n = grid_.n;
  for (std::size_t r = 0; r < n; ++r) fft_.inverse(data + r * n);
  for (std::size_t c = 0; c < n; ++c) {
    for (std::size_t r = 0; r < n; ++r) col_scratch_[r] = data[r * n + c];
    fft_.inverse(col_scratch_.data());
    for (std::size_t r = 0; r < n; ++r) data[r * n + c] = col_scratch_[r];
  }
}

namespace {

// Alternating sign over frequency bins: the grid is centered at -R, so the
// plain transform picks up a phase e^{-i pi (m0 + m1)} = (-1)^(m0 + m1).
inline double bin_sign(std::size_t flat, const Grid& g) {
  std::size_t s = g.dim == 1 ? flat : (flat / g.n) + (flat % g.n);
  return (s & 1) ? -1.0 : 1.0;
}

}  // namespace

Field SpectralWorkspace::sample_from_multiplier(
    const std::vector<std::complex<double>>& mult, double time_stamp) const {
  std::vector<std::complex<double>> buf(mult.size());
  for (std::size_t i = 0; i < mult.size(); ++i) buf[i] = bin_sign(i, grid_) * mult[i];
  inverse(buf.data());
  Field out(grid_, time_stamp);
  double scale = 1.0 / grid_.cell_volume();
  for (std::size_t i = 0; i < buf.size(); ++i) out.values[i] = buf[i].real() * scale;
  return out;
}

Field SpectralWorkspace::sample_from_multiplier(const std::vector<double>& mult,
                                                double time_stamp) const {
  std::vector<std::complex<double>> cm(mult.size());
  for (std::size_t i = 0; i < mult.size(); ++i) cm[i] = mult[i];
  return sample_from_multiplier(cm, time_stamp);
}

}  // namespace gka

#pragma once

// Backend plumbing shared by the vecops translation units. Not installed.

#include <cmath>
#include <complex>
#include <cstddef>

namespace gka::vecops::detail {

// Leaf size for the blocked-pairwise reductions. Both backends must chunk
// identically or the results stop being bit-comparable.
inline constexpr std::size_t kReduceLeaf = 256;

struct OpsTable {
  double (*sum_leaf)(const double*, std::size_t);
  double (*dot_leaf)(const double*, const double*, std::size_t);
  double (*max_abs)(const double*, std::size_t);
  void (*scale)(double*, std::size_t, double);
  void (*axpy)(double*, const double*, std::size_t, double);
  void (*mul)(double*, const double*, std::size_t);
  void (*cmul)(std::complex<double>*, const std::complex<double>*, std::size_t);
  void (*cmul_real)(std::complex<double>*, const double*, std::size_t);
  void (*abs_pow)(double*, const double*, std::size_t, double);
  void (*signed_pow)(double*, const double*, std::size_t, double);
};

const OpsTable& scalar_table();
#if GKA_HAVE_AVX2
const OpsTable& avx2_table();
#endif

// Square-and-multiply with a fixed operation order. The AVX2 powers mirror
// this sequence exactly, multiply for multiply.
inline double powi(double x, int e) {
  double r = 1.0;
  double b = x;
  while (e > 0) {
    if (e & 1) r *= b;
    e >>= 1;
    if (e) b *= b;
  }
  return r;
}

inline bool integer_exponent(double p, int* out) {
  if (p < 0.0 || p > 64.0 || p != std::floor(p)) return false;
  *out = static_cast<int>(p);
  return true;
}

}  // namespace gka::vecops::detail

#include <cmath>
#include <complex>
#include <cstddef>

#include "vecops_internal.hpp"

namespace gka::vecops::detail {
namespace {

double sum_leaf(const double* x, std::size_t n) {
  double acc[4] = {0.0, 0.0, 0.0, 0.0};
  std::size_t n4 = n / 4 * 4;
  for (std::size_t i = 0; i < n4; i += 4) {
    acc[0] += x[i];
    acc[1] += x[i + 1];
    acc[2] += x[i + 2];
    acc[3] += x[i + 3];
  }
  for (std::size_t l = 0; n4 + l < n; ++l) acc[l] += x[n4 + l];
  return (acc[0] + acc[1]) + (acc[2] + acc[3]);
}

double dot_leaf(const double* x, const double* y, std::size_t n) {
  double acc[4] = {0.0, 0.0, 0.0, 0.0};
  std::size_t n4 = n / 4 * 4;
  for (std::size_t i = 0; i < n4; i += 4) {
    acc[0] += x[i] * y[i];
    acc[1] += x[i + 1] * y[i + 1];
    acc[2] += x[i + 2] * y[i + 2];
    acc[3] += x[i + 3] * y[i + 3];
  }
  for (std::size_t l = 0; n4 + l < n; ++l) acc[l] += x[n4 + l] * y[n4 + l];
  return (acc[0] + acc[1]) + (acc[2] + acc[3]);
}

double max_abs(const double* x, std::size_t n) {
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double a = std::fabs(x[i]);
    if (a > m) m = a;
  }
  return m;
}

void scale(double* x, std::size_t n, double a) {
  for (std::size_t i = 0; i < n; ++i) x[i] *= a;
}

void axpy(double* y, const double* x, std::size_t n, double a) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void mul(double* y, const double* x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] *= x[i];
}

void cmul(std::complex<double>* y, const std::complex<double>* x,
          std::size_t n) {
  // Spelled out so the rounding sequence (two products, one add/sub per
  // component) matches the AVX2 hsub/hadd version.
  for (std::size_t i = 0; i < n; ++i) {
    double a = y[i].real(), b = y[i].imag();
    double c = x[i].real(), d = x[i].imag();
    y[i] = {a * c - b * d, b * c + a * d};
  }
}

void cmul_real(std::complex<double>* y, const double* m, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    y[i] = {y[i].real() * m[i], y[i].imag() * m[i]};
  }
}

void abs_pow(double* y, const double* x, std::size_t n, double p) {
  int e;
  if (integer_exponent(p, &e)) {
    for (std::size_t i = 0; i < n; ++i) y[i] = powi(std::fabs(x[i]), e);
  } else {
    for (std::size_t i = 0; i < n; ++i) y[i] = std::pow(std::fabs(x[i]), p);
  }
}

void signed_pow(double* y, const double* x, std::size_t n, double p) {
  int e;
  if (integer_exponent(p, &e)) {
    for (std::size_t i = 0; i < n; ++i)
      y[i] = std::copysign(powi(std::fabs(x[i]), e), x[i]);
  } else {
    for (std::size_t i = 0; i < n; ++i)
      y[i] = std::copysign(std::pow(std::fabs(x[i]), p), x[i]);
  }
}

}  // namespace

const OpsTable& scalar_table() {
  static const OpsTable t = {sum_leaf, dot_leaf, max_abs, scale,   axpy,
                             mul,      cmul,     cmul_real, abs_pow, signed_pow};
  return t;
}

}  // namespace gka::vecops::detail

// AVX2 backend. Compiled with -mavx2 only; never executed unless cpuid says
// the instructions exist. Every operation keeps the same rounding sequence
// as the scalar backend: vector lanes stand in for the four strided scalar
// accumulators, multiplies and adds stay separate (no FMA), and fractional
// exponents reuse the scalar std::pow loop outright.

#include <immintrin.h>

#include <cmath>
#include <complex>
#include <cstddef>

#include "vecops_internal.hpp"

namespace gka::vecops::detail {
namespace {

double sum_leaf(const double* x, std::size_t n) {
  __m256d vacc = _mm256_setzero_pd();
  std::size_t n4 = n / 4 * 4;
  for (std::size_t i = 0; i < n4; i += 4)
    vacc = _mm256_add_pd(vacc, _mm256_loadu_pd(x + i));
  alignas(32) double acc[4];
  _mm256_store_pd(acc, vacc);
  for (std::size_t l = 0; n4 + l < n; ++l) acc[l] += x[n4 + l];
  return (acc[0] + acc[1]) + (acc[2] + acc[3]);
}

double dot_leaf(const double* x, const double* y, std::size_t n) {
  __m256d vacc = _mm256_setzero_pd();
  std::size_t n4 = n / 4 * 4;
  for (std::size_t i = 0; i < n4; i += 4) {
    __m256d prod = _mm256_mul_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i));
    vacc = _mm256_add_pd(vacc, prod);
  }
  alignas(32) double acc[4];
  _mm256_store_pd(acc, vacc);
  for (std::size_t l = 0; n4 + l < n; ++l) acc[l] += x[n4 + l] * y[n4 + l];
  return (acc[0] + acc[1]) + (acc[2] + acc[3]);
}

double max_abs(const double* x, std::size_t n) {
  const __m256d absmask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffLL));
  __m256d vmax = _mm256_setzero_pd();
  std::size_t n4 = n / 4 * 4;
  for (std::size_t i = 0; i < n4; i += 4)
    vmax = _mm256_max_pd(vmax, _mm256_and_pd(absmask, _mm256_loadu_pd(x + i)));
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, vmax);
  double m = lanes[0];
  if (lanes[1] > m) m = lanes[1];
  if (lanes[2] > m) m = lanes[2];
  if (lanes[3] > m) m = lanes[3];
  for (std::size_t i = n4; i < n; ++i) {
    double a = std::fabs(x[i]);
    if (a > m) m = a;
  }
  return m;
}

void scale(double* x, std::size_t n, double a) {
  const __m256d va = _mm256_set1_pd(a);
  std::size_t n4 = n / 4 * 4;
  for (std::size_t i = 0; i < n4; i += 4)
    _mm256_storeu_pd(x + i, _mm256_mul_pd(_mm256_loadu_pd(x + i), va));
  for (std::size_t i = n4; i < n; ++i) x[i] *= a;
}

void axpy(double* y, const double* x, std::size_t n, double a) {
  const __m256d va = _mm256_set1_pd(a);
  std::size_t n4 = n / 4 * 4;
  for (std::size_t i = 0; i < n4; i += 4) {
    __m256d prod = _mm256_mul_pd(va, _mm256_loadu_pd(x + i));
    _mm256_storeu_pd(y + i, _mm256_add_pd(_mm256_loadu_pd(y + i), prod));
  }
  for (std::size_t i = n4; i < n; ++i) y[i] += a * x[i];
}

void mul(double* y, const double* x, std::size_t n) {
  std::size_t n4 = n / 4 * 4;
  for (std::size_t i = 0; i < n4; i += 4)
    _mm256_storeu_pd(y + i, _mm256_mul_pd(_mm256_loadu_pd(y + i), _mm256_loadu_pd(x + i)));
  for (std::size_t i = n4; i < n; ++i) y[i] *= x[i];
}

void cmul(std::complex<double>* y, const std::complex<double>* x,
          std::size_t n) {
  // Two complexes per register: [a0,b0,a1,b1] * [c0,d0,c1,d1].
  // re = a*c - b*d via hsub of [ac,bd]; im = b*c + a*d via hadd of [bc,ad].
  auto* yd = reinterpret_cast<double*>(y);
  const auto* xd = reinterpret_cast<const double*>(x);
  std::size_t n2 = n / 2 * 2;
  for (std::size_t i = 0; i < n2; i += 2) {
    __m256d vy = _mm256_loadu_pd(yd + 2 * i);
    __m256d vx = _mm256_loadu_pd(xd + 2 * i);
    __m256d t1 = _mm256_mul_pd(vy, vx);                       // ac, bd
    __m256d yswap = _mm256_shuffle_pd(vy, vy, 0x5);           // b,a per pair
    __m256d t2 = _mm256_mul_pd(yswap, vx);                    // bc, ad
    __m256d re = _mm256_hsub_pd(t1, t1);                      // ac-bd dup
    __m256d im = _mm256_hadd_pd(t2, t2);                      // bc+ad dup
    _mm256_storeu_pd(yd + 2 * i, _mm256_blend_pd(re, im, 0xA));
  }
  for (std::size_t i = n2; i < n; ++i) {
    double a = y[i].real(), b = y[i].imag();
    double c = x[i].real(), d = x[i].imag();
    y[i] = {a * c - b * d, b * c + a * d};
  }
}

void cmul_real(std::complex<double>* y, const double* m, std::size_t n) {
  auto* yd = reinterpret_cast<double*>(y);
  std::size_t n2 = n / 2 * 2;
  for (std::size_t i = 0; i < n2; i += 2) {
    __m128d ml = _mm_loadu_pd(m + i);
    __m256d md = _mm256_insertf128_pd(
        _mm256_castpd128_pd256(_mm_unpacklo_pd(ml, ml)),
        _mm_unpackhi_pd(ml, ml), 1);                          // m0,m0,m1,m1
    _mm256_storeu_pd(yd + 2 * i, _mm256_mul_pd(_mm256_loadu_pd(yd + 2 * i), md));
  }
  for (std::size_t i = n2; i < n; ++i) {
    y[i] = {y[i].real() * m[i], y[i].imag() * m[i]};
  }
}

// Vector square-and-multiply, same operation order as detail::powi.
__m256d powi_vec(__m256d x, int e) {
  __m256d r = _mm256_set1_pd(1.0);
  __m256d b = x;
  while (e > 0) {
    if (e & 1) r = _mm256_mul_pd(r, b);
    e >>= 1;
    if (e) b = _mm256_mul_pd(b, b);
  }
  return r;
}

void abs_pow(double* y, const double* x, std::size_t n, double p) {
  int e;
  if (!integer_exponent(p, &e)) {
    scalar_table().abs_pow(y, x, n, p);  // std::pow path stays scalar
    return;
  }
  const __m256d absmask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffLL));
  std::size_t n4 = n / 4 * 4;
  for (std::size_t i = 0; i < n4; i += 4) {
    __m256d ax = _mm256_and_pd(absmask, _mm256_loadu_pd(x + i));
    _mm256_storeu_pd(y + i, powi_vec(ax, e));
  }
  for (std::size_t i = n4; i < n; ++i) y[i] = powi(std::fabs(x[i]), e);
}

void signed_pow(double* y, const double* x, std::size_t n, double p) {
  int e;
  if (!integer_exponent(p, &e)) {
    scalar_table().signed_pow(y, x, n, p);
    return;
  }
  const __m256d absmask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffLL));
  const __m256d signmask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x8000000000000000LL));
  std::size_t n4 = n / 4 * 4;
  for (std::size_t i = 0; i < n4; i += 4) {
    __m256d vx = _mm256_loadu_pd(x + i);
    __m256d r = powi_vec(_mm256_and_pd(absmask, vx), e);
    // powi of |x| is non-negative, so or-ing the sign bit == copysign.
    _mm256_storeu_pd(y + i, _mm256_or_pd(r, _mm256_and_pd(signmask, vx)));
  }
  for (std::size_t i = n4; i < n; ++i)
    y[i] = std::copysign(powi(std::fabs(x[i]), e), x[i]);
}

}  // namespace

const OpsTable& avx2_table() {
  static const OpsTable t = {sum_leaf, dot_leaf, max_abs, scale,   axpy,
                             mul,      cmul,     cmul_real, abs_pow, signed_pow};
  return t;
}

}  // namespace gka::vecops::detail

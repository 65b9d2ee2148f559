#pragma once

// Elementwise and reduction primitives over contiguous double / complex
// buffers. Two backends, scalar and AVX2, selected at runtime; both are
// required to produce bit-identical results, which the equivalence tests
// check with plain ==. To make that hold the backends share one reduction tree
// (fixed leaf size, four strided accumulators, pairwise combine) and never
// use FMA; non-integer exponents fall back to scalar std::pow on both.

#include <complex>
#include <cstddef>

namespace gka::vecops {

enum class Backend { scalar, avx2 };

// Backend in effect for subsequent calls. Resolution order: explicit
// set_backend() wins, then the GKA_KERNEL_BACKEND environment variable
// ("scalar" or "avx2"), then AVX2 if the CPU supports it, else scalar.
Backend active_backend();
void set_backend(Backend b);  // throws Error(config) if b is unavailable
const char* backend_name(Backend b);
bool avx2_available();

// Reductions. sum and dot use the shared blocked-pairwise tree; max_abs is
// order-independent (max never rounds).
double sum(const double* x, std::size_t n);
double dot(const double* x, const double* y, std::size_t n);
double max_abs(const double* x, std::size_t n);

// Elementwise, in place on the first argument.
void scale(double* x, std::size_t n, double a);                 // x *= a
void axpy(double* y, const double* x, std::size_t n, double a); // y += a*x
void mul(double* y, const double* x, std::size_t n);            // y *= x
void cmul(std::complex<double>* y, const std::complex<double>* x,
          std::size_t n);                                       // y *= x
void cmul_real(std::complex<double>* y, const double* m, std::size_t n);

// y[i] = |x[i]|^p and sign(x[i])*|x[i]|^p (odd extension for fractional p).
// Integer p in [0,64] uses a fixed square-and-multiply tree on both backends.
void abs_pow(double* y, const double* x, std::size_t n, double p);
void signed_pow(double* y, const double* x, std::size_t n, double p);

}  // namespace gka::vecops

#include "gka/vecops.hpp"

#include <cstdlib>
#include <string>

#include "gka/error.hpp"
#include "vecops_internal.hpp"

namespace gka::vecops {

namespace {

using detail::OpsTable;

bool cpu_has_avx2() {
#if GKA_HAVE_AVX2
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

const OpsTable* table_for(Backend b) {
#if GKA_HAVE_AVX2
  if (b == Backend::avx2) return &detail::avx2_table();
#endif
  (void)b;
  return &detail::scalar_table();
}

Backend resolve_default() {
  if (const char* env = std::getenv("GKA_KERNEL_BACKEND")) {
    std::string v(env);
    if (v == "scalar") return Backend::scalar;
    if (v == "avx2") {
      if (!avx2_available()) {
        throw Error(ErrorKind::config,
                    "GKA_KERNEL_BACKEND=avx2 but AVX2 is unavailable here");
      }
      return Backend::avx2;
    }
    throw Error(ErrorKind::config,
                "GKA_KERNEL_BACKEND must be \"scalar\" or \"avx2\", got \"" + v + "\"");
  }
  return cpu_has_avx2() ? Backend::avx2 : Backend::scalar;
}

struct State {
  Backend backend;
  const OpsTable* ops;
  State() : backend(resolve_default()), ops(table_for(backend)) {}
};

State& state() {
  static State s;
  return s;
}

}  // namespace

bool avx2_available() { return cpu_has_avx2(); }

Backend active_backend() { return state().backend; }

void set_backend(Backend b) {
  if (b == Backend::avx2 && !avx2_available()) {
    throw Error(ErrorKind::config, "AVX2 backend unavailable on this machine");
  }
  state().backend = b;
  state().ops = table_for(b);
}

const char* backend_name(Backend b) {
  return b == Backend::avx2 ? "avx2" : "scalar";
}

namespace {

// Pairwise split above the leaf. The midpoint is rounded up to a multiple of
// 8 so leaf main loops see the same 4-stride phase on every backend.
double sum_rec(const double* x, std::size_t n, const OpsTable* ops) {
  if (n <= detail::kReduceLeaf) return ops->sum_leaf(x, n);
  std::size_t half = (n / 2 + 7) / 8 * 8;
  return sum_rec(x, half, ops) + sum_rec(x + half, n - half, ops);
}

double dot_rec(const double* x, const double* y, std::size_t n,
               const OpsTable* ops) {
  if (n <= detail::kReduceLeaf) return ops->dot_leaf(x, y, n);
  std::size_t half = (n / 2 + 7) / 8 * 8;
  return dot_rec(x, y, half, ops) + dot_rec(x + half, y + half, n - half, ops);
}

}  // namespace

double sum(const double* x, std::size_t n) { return sum_rec(x, n, state().ops); }

double dot(const double* x, const double* y, std::size_t n) {
  return dot_rec(x, y, n, state().ops);
}

double max_abs(const double* x, std::size_t n) { return state().ops->max_abs(x, n); }

void scale(double* x, std::size_t n, double a) { state().ops->scale(x, n, a); }

void axpy(double* y, const double* x, std::size_t n, double a) {
  state().ops->axpy(y, x, n, a);
}

void mul(double* y, const double* x, std::size_t n) { state().ops->mul(y, x, n); }

void cmul(std::complex<double>* y, const std::complex<double>* x, std::size_t n) {
  state().ops->cmul(y, x, n);
}

void cmul_real(std::complex<double>* y, const double* m, std::size_t n) {
  state().ops->cmul_real(y, m, n);
}

void abs_pow(double* y, const double* x, std::size_t n, double p) {
  state().ops->abs_pow(y, x, n, p);
}

void signed_pow(double* y, const double* x, std::size_t n, double p) {
  state().ops->signed_pow(y, x, n, p);
}

}  // namespace gka::vecops

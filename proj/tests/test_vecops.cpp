#include "doctest.h"

#include <complex>
#include <random>
#include <vector>

#include "gka/error.hpp"
#include "gka/vecops.hpp"

using namespace gka;

namespace {

std::vector<double> random_buffer(std::size_t n, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> dist(-2.0, 2.0);
  std::vector<double> out(n);
  for (auto& v : out) v = dist(rng);
  return out;
}

// Runs fn under both backends and checks the results are bit-identical.
// Lengths straddle the vector width so remainder handling is exercised.
template <typename Fn>
void check_backend_equivalence(Fn&& fn) {
  if (!vecops::avx2_available()) return;  // nothing to compare against
  vecops::Backend saved = vecops::active_backend();
  for (std::size_t n : {std::size_t{1}, std::size_t{3}, std::size_t{4},
                        std::size_t{7}, std::size_t{8}, std::size_t{67},
                        std::size_t{1024}, std::size_t{1029}}) {
    vecops::set_backend(vecops::Backend::scalar);
    auto a = fn(n);
    vecops::set_backend(vecops::Backend::avx2);
    auto b = fn(n);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      CHECK(a[i] == b[i]);  // bit-identical, not approximately equal
    }
  }
  vecops::set_backend(saved);
}

}  // namespace

TEST_CASE("backend selection") {
  CHECK(std::string(vecops::backend_name(vecops::Backend::scalar)) == "scalar");
  CHECK(std::string(vecops::backend_name(vecops::Backend::avx2)) == "avx2");
  vecops::Backend saved = vecops::active_backend();
  vecops::set_backend(vecops::Backend::scalar);
  CHECK(vecops::active_backend() == vecops::Backend::scalar);
  if (vecops::avx2_available()) {
    vecops::set_backend(vecops::Backend::avx2);
    CHECK(vecops::active_backend() == vecops::Backend::avx2);
  }
  vecops::set_backend(saved);
}

TEST_CASE("reductions agree bit for bit across backends") {
  check_backend_equivalence([](std::size_t n) {
    auto x = random_buffer(n, 11);
    auto y = random_buffer(n, 12);
    return std::vector<double>{vecops::sum(x.data(), n),
                               vecops::dot(x.data(), y.data(), n),
                               vecops::max_abs(x.data(), n)};
  });
}

TEST_CASE("reductions match hand-computed reference values") {
  // Small cases where the exact result is unambiguous in floating point.
  std::vector<double> x = {1.0, 2.0, 3.0, 4.0};
  std::vector<double> y = {2.0, 2.0, 2.0, 2.0};
  CHECK(vecops::sum(x.data(), 4) == 10.0);
  CHECK(vecops::dot(x.data(), y.data(), 4) == 20.0);
  std::vector<double> z = {-5.0, 3.0, 4.5};
  CHECK(vecops::max_abs(z.data(), 3) == 5.0);
  CHECK(vecops::sum(x.data(), 0) == 0.0);
}

TEST_CASE("elementwise kernels agree bit for bit across backends") {
  check_backend_equivalence([](std::size_t n) {
    auto x = random_buffer(n, 21);
    auto y = random_buffer(n, 22);
    std::vector<double> out;
    auto push = [&](const std::vector<double>& v) {
      out.insert(out.end(), v.begin(), v.end());
    };
    auto a = y;
    vecops::scale(a.data(), n, 1.7);
    push(a);
    a = y;
    vecops::axpy(a.data(), x.data(), n, -0.3);
    push(a);
    a = y;
    vecops::mul(a.data(), x.data(), n);
    push(a);
    return out;
  });
}

TEST_CASE("complex products agree bit for bit across backends") {
  check_backend_equivalence([](std::size_t n) {
    auto re = random_buffer(n, 31);
    auto im = random_buffer(n, 32);
    auto mre = random_buffer(n, 33);
    auto mim = random_buffer(n, 34);
    std::vector<std::complex<double>> a(n), b(n);
    for (std::size_t i = 0; i < n; ++i) {
      a[i] = {re[i], im[i]};
      b[i] = {mim[i], mre[i]};
    }
    vecops::cmul(a.data(), b.data(), n);
    std::vector<std::complex<double>> c(n);
    for (std::size_t i = 0; i < n; ++i) c[i] = {re[i], im[i]};
    vecops::cmul_real(c.data(), mre.data(), n);
    std::vector<double> out;
    for (std::size_t i = 0; i < n; ++i) {
      out.push_back(a[i].real());
      out.push_back(a[i].imag());
      out.push_back(c[i].real());
      out.push_back(c[i].imag());
    }
    return out;
  });
}

TEST_CASE("power kernels agree across backends and keep sign semantics") {
  check_backend_equivalence([](std::size_t n) {
    auto x = random_buffer(n, 41);
    std::vector<double> out(n), tmp(n);
    vecops::abs_pow(out.data(), x.data(), n, 3.0);
    vecops::signed_pow(tmp.data(), x.data(), n, 2.5);
    out.insert(out.end(), tmp.begin(), tmp.end());
    vecops::abs_pow(tmp.data(), x.data(), n, 0.0);
    out.insert(out.end(), tmp.begin(), tmp.end());
    return out;
  });

  // Semantics: |x|^p and sign(x) |x|^p.
  double x[3] = {-2.0, 0.0, 3.0};
  double y[3];
  vecops::abs_pow(y, x, 3, 2.0);
  CHECK(y[0] == 4.0);
  CHECK(y[1] == 0.0);
  CHECK(y[2] == 9.0);
  vecops::signed_pow(y, x, 3, 3.0);
  CHECK(y[0] == -8.0);
  CHECK(y[1] == 0.0);
  CHECK(y[2] == 27.0);
  vecops::signed_pow(y, x, 3, 0.5);
  CHECK(y[0] == doctest::Approx(-std::sqrt(2.0)).epsilon(1e-15));
}

#include "doctest.h"

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "gka/error.hpp"
#include "gka/fft.hpp"

using namespace gka;

namespace {

// O(n^2) reference transform: the literal definition, written independently
// of the radix-2 code path.
std::vector<std::complex<double>> naive_dft(
    const std::vector<std::complex<double>>& x) {
  const std::size_t n = x.size();
  const double two_pi = 6.283185307179586476925286766559;
  std::vector<std::complex<double>> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::complex<double> acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      double ang = -two_pi * static_cast<double>(j * k % n) / static_cast<double>(n);
      acc += x[j] * std::complex<double>(std::cos(ang), std::sin(ang));
    }
    out[k] = acc;
  }
  return out;
}

std::vector<std::complex<double>> random_signal(std::size_t n, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<std::complex<double>> x(n);
  for (auto& v : x) v = {dist(rng), dist(rng)};
  return x;
}

}  // namespace

TEST_CASE("forward transform matches the naive definition") {
  for (std::size_t n : {std::size_t{8}, std::size_t{16}, std::size_t{64}}) {
    Fft fft(n);
    auto x = random_signal(n, 7 + static_cast<unsigned>(n));
    auto want = naive_dft(x);
    auto got = x;
    fft.forward(got.data());
    for (std::size_t k = 0; k < n; ++k) {
      CHECK(std::abs(got[k] - want[k]) <=
            1e-12 * static_cast<double>(n));
    }
  }
}

TEST_CASE("inverse undoes forward to rounding") {
  Fft fft(256);
  auto x = random_signal(256, 99);
  auto y = x;
  fft.forward(y.data());
  fft.inverse(y.data());
  for (std::size_t i = 0; i < x.size(); ++i) {
    CHECK(std::abs(y[i] - x[i]) <= 1e-13);
  }
}

TEST_CASE("linearity and known spectra") {
  Fft fft(8);
  // A pure bin-2 exponential transforms to a single spike of weight n.
  std::vector<std::complex<double>> x(8);
  const double two_pi = 6.283185307179586476925286766559;
  for (std::size_t j = 0; j < 8; ++j) {
    double ang = two_pi * 2.0 * static_cast<double>(j) / 8.0;
    x[j] = {std::cos(ang), std::sin(ang)};
  }
  fft.forward(x.data());
  for (std::size_t k = 0; k < 8; ++k) {
    double want = k == 2 ? 8.0 : 0.0;
    CHECK(std::abs(x[k] - std::complex<double>(want, 0.0)) <= 1e-13);
  }

  // The DC bin of a constant signal carries n times the constant.
  std::vector<std::complex<double>> c(8, {1.5, 0.0});
  fft.forward(c.data());
  CHECK(std::abs(c[0] - std::complex<double>(12.0, 0.0)) <= 1e-13);
}

TEST_CASE("transform size must be a power of two") {
  CHECK_THROWS_AS(Fft(12), Error);
  CHECK_THROWS_AS(Fft(0), Error);
  CHECK_NOTHROW(Fft(2));
}

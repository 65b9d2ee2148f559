#include "gka/fft.hpp"

#include <cmath>

#include "gka/error.hpp"

namespace gka {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
}

Fft::Fft(std::size_t n) : n_(n) {
  if (n == 0 || (n & (n - 1)) != 0) {
    throw Error(ErrorKind::config, "fft size must be a power of two, got " +
                                       std::to_string(n));
  }
  rev_.resize(n);
  std::size_t bits = 0;
  while ((std::size_t{1} << bits) < n) ++bits;
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t r = 0;
    for (std::size_t b = 0; b < bits; ++b) {
      if (i & (std::size_t{1} << b)) r |= std::size_t{1} << (bits - 1 - b);
    }
    rev_[i] = r;
  }
  tw_fwd_.resize(n / 2);
  tw_inv_.resize(n / 2);
  for (std::size_t k = 0; k < n / 2; ++k) {
    double ang = kTwoPi * static_cast<double>(k) / static_cast<double>(n);
    tw_fwd_[k] = {std::cos(ang), -std::sin(ang)};
    tw_inv_[k] = {std::cos(ang), std::sin(ang)};
  }
}

void Fft::transform(std::complex<double>* a,
                    const std::vector<std::complex<double>>& tw) const {
  for (std::size_t i = 0; i < n_; ++i) {
    std::size_t j = rev_[i];
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n_; len <<= 1) {
    std::size_t half = len / 2;
    std::size_t stride = n_ / len;
    for (std::size_t base = 0; base < n_; base += len) {
      for (std::size_t j = 0; j < half; ++j) {
        std::complex<double> u = a[base + j];
        std::complex<double> v = a[base + j + half] * tw[j * stride];
        a[base + j] = u + v;
        a[base + j + half] = u - v;
      }
    }
  }
}

void Fft::forward(std::complex<double>* data) const { transform(data, tw_fwd_); }

void Fft::inverse(std::complex<double>* data) const {
  transform(data, tw_inv_);
  double inv_n = 1.0 / static_cast<double>(n_);
  for (std::size_t i = 0; i < n_; ++i) data[i] *= inv_n;
}

}  // namespace gka

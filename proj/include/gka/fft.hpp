#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace gka {

// Iterative radix-2 decimation-in-time transform with precomputed twiddle
// and bit-reversal tables. Size must be a power of two. forward() applies
// the unscaled sum with e^{-2 pi i jk/n} weights; inverse() uses conjugate
// twiddles and folds in the 1/n factor, so inverse(forward(x)) returns x up
// to rounding.
class Fft {
 public:
  explicit Fft(std::size_t n);

  std::size_t size() const { return n_; }
  void forward(std::complex<double>* data) const;
  void inverse(std::complex<double>* data) const;

 private:
  void transform(std::complex<double>* data,
                 const std::vector<std::complex<double>>& tw) const;

  std::size_t n_;
  std::vector<std::size_t> rev_;
  std::vector<std::complex<double>> tw_fwd_;
  std::vector<std::complex<double>> tw_inv_;
};

}  // namespace gka

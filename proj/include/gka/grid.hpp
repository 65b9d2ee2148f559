#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace gka {

// Uniform periodic grid on [-R, R)^dim with n points per axis, n a power of
// two (so the origin is a node and the transform sizes are FFT-friendly).
// Node j on an axis sits at -R + j*h with h = 2R/n. Flat indexing is
// row-major with axis 0 slowest: flat = i0 * n + i1 in 2D.
struct Grid {
  int dim;
  std::size_t n;
  double R;

  Grid(int dim, std::size_t n, double R);

  double h() const { return 2.0 * R / static_cast<double>(n); }
  std::size_t size() const { return dim == 1 ? n : n * n; }
  double cell_volume() const;  // h^dim

  double coord(std::size_t j) const { return -R + h() * static_cast<double>(j); }

  // Signed frequency index: m for m < n/2, m - n otherwise (standard DFT
  // wrap layout). The continuous frequency of bin m is pi*signed(m)/R.
  std::int64_t signed_index(std::size_t m) const {
    return m < n / 2 ? static_cast<std::int64_t>(m)
                     : static_cast<std::int64_t>(m) - static_cast<std::int64_t>(n);
  }
  double freq(std::size_t m) const;

  void node_coords(std::size_t flat, double* out) const;
  void node_axis_indices(std::size_t flat, std::size_t* out) const;

  bool operator==(const Grid& o) const {
    return dim == o.dim && n == o.n && R == o.R;
  }
  bool operator!=(const Grid& o) const { return !(*this == o); }
};

// A sampled real-valued function on a grid at a time stamp. Values are
// row-major per Grid's flat indexing.
struct Field {
  Grid grid;
  double time;
  std::vector<double> values;

  explicit Field(const Grid& g, double t = 0.0)
      : grid(g), time(t), values(g.size(), 0.0) {}

  // Throws Error(numeric) when any value is NaN or infinite.
  void check_finite() const;
};

}  // namespace gka

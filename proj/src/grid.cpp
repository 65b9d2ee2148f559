#include "gka/grid.hpp"

#include <cmath>

#include "gka/error.hpp"

namespace gka {

namespace {
constexpr double kPi = 3.14159265358979323846264338328;
}

Grid::Grid(int dim_, std::size_t n_, double R_) : dim(dim_), n(n_), R(R_) {
  if (dim != 1 && dim != 2) {
    throw Error(ErrorKind::config, "grid dimension must be 1 or 2");
  }
  if (n < 8 || (n & (n - 1)) != 0) {
    throw Error(ErrorKind::config,
                "grid needs a power-of-two point count >= 8, got " +
                    std::to_string(n));
  }
  if (!(R > 0.0)) {
    throw Error(ErrorKind::config, "grid half-extent must be positive");
  }
}

double Grid::cell_volume() const {
  double hv = h();
  return dim == 1 ? hv : hv * hv;
}

double Grid::freq(std::size_t m) const {
  return kPi * static_cast<double>(signed_index(m)) / R;
}

void Grid::node_coords(std::size_t flat, double* out) const {
  if (dim == 1) {
    out[0] = coord(flat);
  } else {
    out[0] = coord(flat / n);
    out[1] = coord(flat % n);
  }
}

void Grid::node_axis_indices(std::size_t flat, std::size_t* out) const {
  if (dim == 1) {
    out[0] = flat;
  } else {
    out[0] = flat / n;
    out[1] = flat % n;
  }
}

void Field::check_finite() const {
  for (double v : values) {
    if (!std::isfinite(v)) {
      throw Error(ErrorKind::numeric, "field contains a non-finite value");
    }
  }
}

}  // namespace gka

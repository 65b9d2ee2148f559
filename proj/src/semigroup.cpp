#include "gka/semigroup.hpp"

#include <cmath>
#include <cstring>
#include <vector>

#include "gka/error.hpp"
#include "gka/field_ops.hpp"
#include "gka/vecops.hpp"

namespace gka {

namespace {

std::uint64_t bit_key(double t) {
  std::uint64_t k;
  std::memcpy(&k, &t, sizeof(k));
  return k;
}

void require_same_grid(const Grid& a, const Grid& b) {
  if (a != b) throw Error(ErrorKind::mismatch, "field grid does not match operator grid");
}

}  // namespace

SemigroupOperator::SemigroupOperator(const KernelSpec& spec, const Grid& grid,
                                     const ResolutionPolicy& policy)
    : ws_(spec, grid), policy_(policy) {}

const std::vector<double>& SemigroupOperator::multiplier(double t) const {
  auto it = cache_.find(bit_key(t));
  if (it == cache_.end()) {
    it = cache_.emplace(bit_key(t), ws_.semigroup_multiplier(t)).first;
  }
  return it->second;
}

Field SemigroupOperator::apply(const Field& phi, double t) const {
  require_same_grid(phi.grid, ws_.grid());
  if (t < 0.0) throw Error(ErrorKind::config, "semigroup time must be >= 0");
  if (t == 0.0) return phi;

  std::size_t sz = phi.values.size();
  std::vector<std::complex<double>> buf(sz);
  for (std::size_t i = 0; i < sz; ++i) buf[i] = phi.values[i];
  ws_.forward(buf.data());
  vecops::cmul_real(buf.data(), multiplier(t).data(), sz);
  ws_.inverse(buf.data());

  Field out(phi.grid, phi.time + t);
  for (std::size_t i = 0; i < sz; ++i) out.values[i] = buf[i].real();
  return out;
}

Field SemigroupOperator::apply_derivative(const Field& phi, double t,
                                          const MultiIndex& a) const {
  require_same_grid(phi.grid, ws_.grid());
  if (!(t > 0.0)) {
    throw Error(ErrorKind::config, "derivative of the evolution needs t > 0");
  }
  std::size_t sz = phi.values.size();
  std::vector<std::complex<double>> mult = ws_.derivative_multiplier(a);
  vecops::cmul_real(mult.data(), multiplier(t).data(), sz);

  std::vector<std::complex<double>> buf(sz);
  for (std::size_t i = 0; i < sz; ++i) buf[i] = phi.values[i];
  ws_.forward(buf.data());
  vecops::cmul(buf.data(), mult.data(), sz);
  ws_.inverse(buf.data());

  Field out(phi.grid, phi.time + t);
  for (std::size_t i = 0; i < sz; ++i) out.values[i] = buf[i].real();
  return out;
}

Field SemigroupOperator::kernel_snapshot(double t) const {
  if (!(t > 0.0)) throw Error(ErrorKind::config, "kernel time must be positive");
  require_resolved(ws_.spec(), ws_.grid(), t, policy_);
  return ws_.sample_from_multiplier(multiplier(t), t);
}

Field SemigroupOperator::g_alpha(const MultiIndex& a, double t) const {
  if (t < 0.0) throw Error(ErrorKind::config, "g_alpha time must be >= 0");
  if (a.order() > ws_.spec().gamma()) {
    throw Error(ErrorKind::hypothesis,
                "requires |alpha| <= gamma: order " + std::to_string(a.order()) +
                    " exceeds smoothness " + std::to_string(ws_.spec().gamma()));
  }
  require_resolved(ws_.spec(), ws_.grid(), t + 1.0, policy_);
  std::vector<std::complex<double>> mult = ws_.derivative_multiplier(a);
  double scale = (a.order() % 2 == 0 ? 1.0 : -1.0) /
                 static_cast<double>(factorial(a));
  const std::vector<double>& semi = multiplier(t + 1.0);
  for (std::size_t i = 0; i < mult.size(); ++i) mult[i] *= scale * semi[i];
  return ws_.sample_from_multiplier(mult, t);
}

Field SemigroupOperator::apply_direct(const Field& phi, double t) const {
  require_same_grid(phi.grid, ws_.grid());
  Field ker = kernel_snapshot(t);
  const Grid& gr = ws_.grid();
  Field out(gr, phi.time + t);
  std::size_t n = gr.n;
  if (gr.dim == 1) {
    for (std::size_t j = 0; j < n; ++j) {
      double acc = 0.0;
      // x_j - x_k sits on periodic node (j - k + n/2) mod n.
      for (std::size_t k = 0; k < n; ++k) {
        acc += ker.values[(j - k + n + n / 2) % n] * phi.values[k];
      }
      out.values[j] = acc * gr.h();
    }
  } else {
    double h2 = gr.h() * gr.h();
    for (std::size_t j0 = 0; j0 < n; ++j0) {
      for (std::size_t j1 = 0; j1 < n; ++j1) {
        double acc = 0.0;
        for (std::size_t k0 = 0; k0 < n; ++k0) {
          std::size_t i0 = (j0 - k0 + n + n / 2) % n;
          for (std::size_t k1 = 0; k1 < n; ++k1) {
            acc += ker.values[i0 * n + (j1 - k1 + n + n / 2) % n] *
                   phi.values[k0 * n + k1];
          }
        }
        out.values[j0 * n + j1] = acc * h2;
      }
    }
  }
  return out;
}

SmoothingFit verify_smoothing(const SemigroupOperator& op, const Field& phi,
                              double q, double r,
                              const std::vector<double>& times,
                              const MultiIndex& a) {
  if (times.size() < 4) {
    throw Error(ErrorKind::config, "smoothing fit needs at least 4 times");
  }
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (double t : times) {
    Field v = a.order() == 0 ? op.apply(phi, t) : op.apply_derivative(phi, t, a);
    double norm = lq_norm(v, q);
    double x = std::log(t);
    double y = std::log(norm);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  double n = static_cast<double>(times.size());
  SmoothingFit fit;
  fit.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  const KernelSpec& spec = op.spec();
  double N = spec.dim;
  fit.expected = -(N / spec.d()) * (1.0 / r - 1.0 / q) - a.order() / spec.d();
  return fit;
}

}  // namespace gka

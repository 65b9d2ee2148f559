#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "gka/field_ops.hpp"
#include "gka/grid.hpp"
#include "gka/moments.hpp"
#include "gka/multiindex.hpp"
#include "gka/semigroup.hpp"

namespace gka {

enum class Scheme { exponential_euler, exponential_trapezoid };

// F(x,t,u) = lambda (1+t)^A a0(x) |u|^{p-1} u   (signed_power = true)
//          = lambda (1+t)^A a0(x) |u|^p         (signed_power = false)
// a0 defaults to 1. F(x,t,0) = 0 holds structurally for p >= 1.
struct NonlinearitySpec {
  double p = 1.0;
  double A = 0.0;
  double lambda = 0.0;
  bool signed_power = true;
  std::optional<std::vector<double>> a0;  // sampled on the solver grid
  double c_star = 1.0;                    // Lipschitz scale, diagnostic only

  bool enabled() const { return lambda != 0.0; }
  double a_p(int dim, double d) const {
    return -A + static_cast<double>(dim) * (p - 1.0) / d - 1.0;
  }
  Field evaluate(const Field& u, double t) const;
};

struct SolverControls {
  Scheme scheme = Scheme::exponential_trapezoid;
  int steps_per_unit = 32;     // uniform step count on [0, min(1, t_end)]
  double growth = 1.1;         // geometric step growth after t = 1 (<= 1.2)
  double blowup_factor = 1e3;  // abort when ||u||_inf exceeds this times ||phi||_inf
};

// Strictly increasing step nodes from 0 to t_end: uniform through t = 1,
// then geometrically growing, with every requested output time inserted as
// a node so snapshots never interpolate.
struct TimeMesh {
  std::vector<double> nodes;
  static TimeMesh build(double t_end, const SolverControls& controls,
                        const std::vector<double>& required_times);
};

// One source-field evaluation actually fed into the discrete Duhamel sum:
// its time, its quadrature weight, and the raw monomial moments of that
// exact field. Recording these lets the expansion integrate coefficient
// trajectories with the solver's own quadrature, which is what makes the
// moment identities hold to quadrature precision instead of step order.
struct DuhamelSample {
  double s = 0.0;
  double weight = 0.0;
  std::vector<double> raw_moments;
};

struct Trajectory {
  std::vector<Field> snapshots;          // at the requested output times
  Scheme scheme = Scheme::exponential_trapezoid;
  std::vector<double> mesh_nodes;
  // samples_per_step[j] lists the samples contributed by step j
  // (nodes[j] -> nodes[j+1]); empty when the nonlinearity is disabled.
  std::vector<std::vector<DuhamelSample>> samples_per_step;
  std::vector<MultiIndex> record_indices;
  double mass_phi = 0.0;

  const Field& at_time(double t) const;  // exact match lookup
};

// March the discrete Duhamel recursion for
//   u(t) = e^{tL} phi + integral_0^t e^{(t-s)L} F(s, u(s)) ds.
// record_K >= 0 requests raw-moment recording for all indices |a| <= record_K.
Trajectory solve(const SemigroupOperator& op, const Field& phi,
                 const NonlinearitySpec& F, double t_end,
                 const SolverControls& controls,
                 const std::vector<double>& snapshot_times,
                 double record_K = -1.0,
                 const QuadratureGuard& guard = {});

// Quadrature of integral_0^t e^{(t-s)L} f(s) ds for a known source, marched
// with the scheme's rule over the mesh; outputs at the requested times
// (each must be a mesh node).
using SourceFn = std::function<Field(double)>;
std::vector<Field> duhamel_accumulate(const SemigroupOperator& op,
                                      const SourceFn& f, const TimeMesh& mesh,
                                      const std::vector<double>& out_times,
                                      Scheme scheme);

// Projected remainder: integral_0^t e^{(t-s)L} P_K(s) f(s) ds. The cache
// store argument lets repeated calls share the per-time pairing tables.
class CacheStore {
 public:
  CacheStore(const SemigroupOperator& op, double K,
             const QuadratureGuard& guard = {});
  const KernelMomentCache& at(double t) const;
  const SemigroupOperator& op() const { return op_; }
  double K() const { return K_; }
  const QuadratureGuard& guard() const { return guard_; }

 private:
  const SemigroupOperator& op_;
  double K_;
  QuadratureGuard guard_;
  mutable std::map<std::uint64_t, KernelMomentCache> store_;
};

std::vector<Field> remainder_RK(const CacheStore& caches, const SourceFn& f,
                                const TimeMesh& mesh,
                                const std::vector<double>& out_times,
                                Scheme scheme);

// The equivalent moment-corrected form of the projected remainder:
// plain Duhamel minus sum_a [integral of M_a(f(s),s) ds] g_a(.,t).
// Computed independently of remainder_RK for identity checks.
std::vector<Field> remainder_RK_via_moments(const CacheStore& caches,
                                            const SourceFn& f,
                                            const TimeMesh& mesh,
                                            const std::vector<double>& out_times,
                                            Scheme scheme);

}  // namespace gka

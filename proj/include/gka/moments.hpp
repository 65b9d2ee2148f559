#pragma once

#include <vector>

#include "gka/field_ops.hpp"
#include "gka/grid.hpp"
#include "gka/multiindex.hpp"
#include "gka/semigroup.hpp"

namespace gka {

// Expansion coefficients M_a(f,t) for all a with |a| <= K, in canonical
// enumeration order.
struct MomentTable {
  double time = 0.0;
  double K = 0.0;
  std::vector<MultiIndex> indices;
  std::vector<double> values;

  double at(const MultiIndex& a) const;  // throws Error(mismatch) if absent
};

// The pairing integrals A(a,b;t) = integral of x^a g_b(x,t) dx for
// a, b in the index set, b <= a, plus the sampled g_b fields themselves
// (they are needed again by the projection). Entries with b not <= a are
// identically zero: the continuous integral vanishes, and storing the
// quadrature residue instead would leak tail noise into the recursion.
class KernelMomentCache {
 public:
  KernelMomentCache(const SemigroupOperator& op, double K, double t,
                    const QuadratureGuard& guard = {});

  double time() const { return time_; }
  double K() const { return K_; }
  const std::vector<MultiIndex>& indices() const { return indices_; }
  std::size_t index_count() const { return indices_.size(); }

  double entry(std::size_t ai, std::size_t bi) const;
  const Field& g_field(std::size_t bi) const { return g_fields_[bi]; }

  // Diagonal entries must sit near 1 (they are quadratures of the exact
  // value 1); worst deviation over the diagonal.
  double diagonal_defect() const;

 private:
  double time_;
  double K_;
  std::vector<MultiIndex> indices_;
  std::vector<Field> g_fields_;
  std::vector<double> entries_;  // dense index_count^2, zeros where b !<= a
};

// Triangular solve of the moment recursion: in enumeration order,
// M_a = (x^a-moment of f - sum over b < a of M_b A(a,b)) / A(a,a).
// Dividing by the measured diagonal instead of assuming its continuum
// value 1 makes the projection annihilate measured moments to rounding.
MomentTable compute_moments(const Field& f, const KernelMomentCache& cache,
                            const QuadratureGuard& guard = {});

// Same recursion starting from already-measured raw moments (aligned with
// cache.indices()); used on recorded solver samples.
MomentTable moments_from_raw(const std::vector<double>& raw,
                             const KernelMomentCache& cache);

// P_K(t) f = f - sum_a M_a(f,t) g_a(.,t).
Field project(const Field& f, const MomentTable& table,
              const KernelMomentCache& cache);

// E_{K,q}[f](t) = (1+t)^{K/d} [ t^{(N/d)(1-1/q)} ||f||_q + ||f||_1 ]
//                + |||f|||_K, with t = f.time.
double e_functional(const Field& f, double q, double K, const KernelSpec& spec);

// Conservation checks: max over times and indices of
// |M_a(e^{tL} f, t) - M_a(f, 0)|, and (when requested) the worst raw
// moment of e^{tL} f for data whose moments all vanish at t = 0.
struct Lemma21Report {
  double max_conservation_gap = 0.0;
  double max_vanishing_moment = 0.0;
  bool vanishing_checked = false;
};

Lemma21Report verify_moment_conservation(const SemigroupOperator& op,
                                         const Field& f, double K,
                                         const std::vector<double>& times,
                                         bool check_vanishing,
                                         const QuadratureGuard& guard = {});

// Ratio statistics for the weighted-norm bounds: each field of the report
// is the max over the trajectory of the measured quantity divided by the
// E-functional at the same time.
struct NormBoundReport {
  double lq_ratio = 0.0;        // t^{(N/d)(1-1/q)} (1+t)^{K/d} ||f||_q / E
  double weighted_ratio = 0.0;  // (1+t)^{(K-ell)/d} |||f|||_ell / E
  double moment_ratio = 0.0;    // max_a (1+t)^{(K-|a|)/d} |M_a| / E
  double projected_ratio = 0.0; // (1+t)^{K/d} [t^{(N/d)(1-1/q)} ||P_K f||_q
                                //              + (1+t)^{-ell/d} |||P_K f|||_ell] / E
};

NormBoundReport verify_norm_bounds(const SemigroupOperator& op,
                                   const std::vector<Field>& trajectory,
                                   double q, double K, double ell,
                                   const QuadratureGuard& guard = {});

}  // namespace gka

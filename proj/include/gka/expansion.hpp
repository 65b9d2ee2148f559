#pragma once

#include <vector>

#include "gka/duhamel.hpp"
#include "gka/field_ops.hpp"
#include "gka/grid.hpp"
#include "gka/moments.hpp"
#include "gka/multiindex.hpp"
#include "gka/rates.hpp"
#include "gka/semigroup.hpp"

namespace gka {

// One coefficient trajectory c_a(t) = M_a(phi,0) + integral_0^t M_a(F(s),s) ds,
// sampled at every mesh node, with its limit estimate.
struct CoefficientTrack {
  MultiIndex alpha;
  std::vector<double> t;
  std::vector<double> c;
  double limit = 0.0;
  bool limit_valid = false;  // only when A_p > |alpha|/d
  bool converged = false;    // dyadic-increment test passed
};

struct ExpansionState {
  double K = 0.0;
  double A_p = 0.0;
  std::vector<CoefficientTrack> tracks;
  double mass_M = 0.0;  // limit of the order-zero track
  bool mass_converged = false;

  double c_at(std::size_t track, double t) const;  // exact node lookup
};

// Integrates the recorded solver samples into coefficient trajectories.
// The integral uses exactly the weights the solver applied, so that the
// moments of u(t) - U_0(t) cancel to quadrature precision.
ExpansionState coefficients(const Trajectory& traj, const Field& phi,
                            const CacheStore& caches, double A_p);

// U_0(., t) = sum_a c_a(t) g_a(., t).
Field profile_U0(const ExpansionState& state, const CacheStore& caches, double t);

// U_n = U_0 + integral_0^t e^{(t-s)L} P_K(s) F(s, U_{n-1}(s)) ds, marched
// level by level over the solver mesh. Returns the profiles at the
// requested output times for every level 0..n_levels.
std::vector<std::vector<Field>> profile_levels(const ExpansionState& state,
                                               const CacheStore& caches,
                                               const NonlinearitySpec& F,
                                               const TimeMesh& mesh,
                                               const std::vector<double>& out_times,
                                               int n_levels);

// Corrected single-term profile (valid for K < 1 only):
//   u~(., t) = M' g(., t) + integral_0^t e^{(t-s)L} f_M(s) ds
// with f_M(s) = F(., s, M g(., s)) and
//   M' = mass(phi) + integral of mass(F(u)) - mass(f_M) over [0, t_end].
struct CorrectedProfile {
  std::vector<Field> profiles;   // at the requested output times
  double mass_M_prime = 0.0;
  double tail_integrand = 0.0;   // |mass(f - f_M)| at the final node
  double tail_exponent = 0.0;    // fitted decay of the integrand's tail
  bool tail_resolved = false;    // integrand decayed enough to trust M'
};

CorrectedProfile profile_tilde_u(const ExpansionState& state,
                                 const CacheStore& caches,
                                 const NonlinearitySpec& F,
                                 const Trajectory& traj,
                                 const std::vector<double>& out_times);

// v(., t) = e^{tL} phi - sum_a M_a(phi, 0) g_a(., t): the remainder after
// removing the finite expansion of linear evolution.
std::vector<Field> linear_remainder(const CacheStore& caches, const Field& phi,
                                    const std::vector<double>& times);

// Which asymptotic statement a prediction should come from.
enum class RateCase {
  expansion_distance,     // u - U_n
  single_term_distance,   // u - M g, generic
  single_term_symmetric,  // u - M g with first-order source moments integrable
  corrected_distance,     // u - u~
};

struct RateQuery {
  RateCase kind = RateCase::expansion_distance;
  double K = 0.0;
  double d = 2.0;
  double A_p = 0.0;
  int n = 0;  // expansion level for expansion_distance
};

// Implements the full case tables. Every query with A_p > 0 maps to exactly
// one case; A_p <= 0 (and corrected_distance with K >= 1) throws
// Error(hypothesis).
RatePrediction predict_rate(const RateQuery& query);

}  // namespace gka

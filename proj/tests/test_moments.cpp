#include "doctest.h"

#include <cmath>
#include <vector>

#include "gka/error.hpp"
#include "gka/field_ops.hpp"
#include "gka/initial_data.hpp"
#include "gka/kernel.hpp"
#include "gka/moments.hpp"
#include "gka/semigroup.hpp"

using namespace gka;

namespace {

SemigroupOperator make_heat_op() {
  return SemigroupOperator(KernelSpec::heat(1), Grid(1, 4096, 100.0));
}

}  // namespace

TEST_CASE("pairing table has unit diagonal and triangular support") {
  SemigroupOperator op = make_heat_op();
  KernelMomentCache cache(op, 2.0, 0.0);
  REQUIRE(cache.index_count() == 3);
  CHECK(cache.diagonal_defect() <= 1e-12);
  // Entries with b not <= a are identically zero by construction.
  CHECK(cache.entry(0, 1) == 0.0);
  CHECK(cache.entry(1, 2) == 0.0);
  // Odd-against-even pairings vanish by symmetry; quadrature keeps them
  // at rounding scale.
  CHECK(std::fabs(cache.entry(1, 0)) <= 1e-12);
  // A(2, 0) is the second moment of G(., 1), which the heat family pins
  // at exactly 2.
  CHECK(cache.entry(2, 0) == doctest::Approx(2.0).epsilon(1e-10));
}

TEST_CASE("expansion coefficients of a unit-width Gaussian, frozen values") {
  // For f = e^{-x^2} at t = 0 with K = 2: the mass is sqrt(pi), the first
  // coefficient vanishes by symmetry, and eliminating the mass term from
  // the raw second moment leaves sqrt(pi)/2 - 2 sqrt(pi) = -1.5 sqrt(pi).
  SemigroupOperator op = make_heat_op();
  KernelMomentCache cache(op, 2.0, 0.0);
  Field f = make_gaussian(op.grid(), 0.0, 1.0, 1.0);
  MomentTable table = compute_moments(f, cache);
  REQUIRE(table.values.size() == 3);
  CHECK(table.at(MultiIndex({0})) ==
        doctest::Approx(1.7724538509055160).epsilon(1e-12));
  CHECK(std::fabs(table.at(MultiIndex({1}))) <= 1e-12);
  CHECK(table.at(MultiIndex({2})) ==
        doctest::Approx(-2.6586807763582740).epsilon(1e-11));
  CHECK_THROWS_AS(table.at(MultiIndex({3})), Error);
}

TEST_CASE("a kernel snapshot is recovered as pure mass") {
  // f = A G(., 1) is exactly the zeroth basis field at t = 0, so its
  // expansion is A times the zero index and nothing else.
  SemigroupOperator op = make_heat_op();
  KernelMomentCache cache(op, 3.0, 0.0);
  Field f = make_kernel_snapshot(op, 1.0, 0.7);
  f.time = 0.0;
  MomentTable table = compute_moments(f, cache);
  CHECK(table.at(MultiIndex({0})) == doctest::Approx(0.7).epsilon(1e-12));
  for (std::size_t i = 1; i < cache.index_count(); ++i) {
    CHECK(std::fabs(table.values[i]) <= 1e-10);
  }
}

TEST_CASE("projection annihilates every measured moment and is idempotent") {
  SemigroupOperator op = make_heat_op();
  KernelMomentCache cache(op, 2.0, 0.5);
  // Deliberately lopsided data: two shifted Gaussians of unequal width.
  Field f = make_gaussian(op.grid(), 1.2, 1.0, 1.0);
  add_scaled(f, make_gaussian(op.grid(), -2.0, 2.0, 0.6), 1.0);
  f.time = 0.5;

  MomentTable table = compute_moments(f, cache);
  Field proj = project(f, table, cache);
  MomentTable after = compute_moments(proj, cache);
  for (double v : after.values) {
    CHECK(std::fabs(v) <= 1e-10);
  }

  MomentTable again_table = compute_moments(proj, cache);
  Field twice = project(proj, again_table, cache);
  CHECK(lq_norm(difference(twice, proj), 1.0) <= 1e-10 * lq_norm(proj, 1.0));
}

TEST_CASE("moments of evolved data are conserved in the expansion sense") {
  SemigroupOperator op = make_heat_op();
  Field f = make_gaussian(op.grid(), 0.8, 1.3, 1.0);
  std::vector<double> times = {1.0, 4.0, 16.0};
  Lemma21Report rep = verify_moment_conservation(op, f, 2.0, times, false);
  CHECK(rep.max_conservation_gap <= 1e-8);
  CHECK_FALSE(rep.vanishing_checked);
}

TEST_CASE("vanishing moments stay vanishing under evolution") {
  SemigroupOperator op = make_heat_op();
  KernelMomentCache cache(op, 2.0, 0.0);
  Field f = make_gaussian(op.grid(), 0.0, 1.0, 1.0);
  MomentTable table = compute_moments(f, cache);
  Field proj = project(f, table, cache);
  proj.time = 0.0;
  Lemma21Report rep =
      verify_moment_conservation(op, proj, 2.0, {1.0, 4.0, 16.0}, true);
  CHECK(rep.vanishing_checked);
  CHECK(rep.max_conservation_gap <= 1e-8);
  CHECK(rep.max_vanishing_moment <= 1e-8);
}

TEST_CASE("scale functional is positive and homogeneous in the field") {
  SemigroupOperator op = make_heat_op();
  Field f = make_gaussian(op.grid(), 0.0, 1.0, 1.0);
  f.time = 4.0;
  double e1 = e_functional(f, 2.0, 1.0, op.spec());
  CHECK(e1 > 0.0);
  Field g2 = scaled_copy(f, 3.0);
  CHECK(e_functional(g2, 2.0, 1.0, op.spec()) ==
        doctest::Approx(3.0 * e1).epsilon(1e-12));
}

TEST_CASE("weighted norm ratios stay bounded along a linear trajectory") {
  SemigroupOperator op = make_heat_op();
  Field phi = make_gaussian(op.grid(), 0.0, 1.0, 1.0);
  phi.time = 0.0;
  std::vector<Field> traj;
  for (double t : {1.0, 2.0, 4.0, 8.0, 16.0}) {
    traj.push_back(op.apply(phi, t));
  }
  NormBoundReport rep = verify_norm_bounds(op, traj, 2.0, 2.0, 2.0);
  CHECK(rep.lq_ratio > 0.0);
  CHECK(rep.lq_ratio <= 8.0);
  CHECK(rep.weighted_ratio <= 8.0);
  CHECK(rep.moment_ratio <= 8.0);
  CHECK(rep.projected_ratio <= 8.0);
}

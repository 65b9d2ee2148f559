#include "doctest.h"

#include <cmath>

#include "gka/error.hpp"
#include "gka/field_ops.hpp"
#include "gka/grid.hpp"
#include "gka/initial_data.hpp"
#include "gka/multiindex.hpp"

using namespace gka;

TEST_CASE("grid geometry") {
  Grid g(1, 16, 4.0);
  CHECK(g.h() == 0.5);
  CHECK(g.size() == 16);
  CHECK(g.coord(0) == -4.0);
  CHECK(g.coord(8) == 0.0);  // the origin is a node
  CHECK(g.cell_volume() == 0.5);
  CHECK(g.signed_index(3) == 3);
  CHECK(g.signed_index(8) == -8);
  CHECK(g.signed_index(15) == -1);
  CHECK(g.freq(1) == doctest::Approx(M_PI / 4.0).epsilon(1e-15));

  Grid g2(2, 8, 2.0);
  CHECK(g2.size() == 64);
  CHECK(g2.cell_volume() == doctest::Approx(0.25).epsilon(1e-15));
  double xy[2];
  g2.node_coords(8 + 3, xy);  // flat = i0 * n + i1 with i0 = 1, i1 = 3
  CHECK(xy[0] == -2.0 + 0.5);
  CHECK(xy[1] == -2.0 + 3 * 0.5);

  CHECK_THROWS_AS(Grid(3, 16, 4.0), Error);
  CHECK_THROWS_AS(Grid(1, 12, 4.0), Error);
  CHECK_THROWS_AS(Grid(1, 16, 0.0), Error);
}

TEST_CASE("quadratures on a Gaussian match the closed forms") {
  // amplitude 2, width 1.5: mass = 2 * 1.5 * sqrt(pi), second moment
  // = 2 * 1.5^3 * sqrt(pi) / 2, l2 = 2 * sqrt(1.5 * sqrt(pi/2)). The box is
  // huge relative to the width, so the periodic trapezoid sum is exact to
  // rounding and the checks can demand near machine precision.
  Grid g(1, 4096, 50.0);
  Field f = make_gaussian(g, 0.0, 1.5, 2.0);

  CHECK(monomial_moment(f, MultiIndex({0})) ==
        doctest::Approx(5.3173615527165481).epsilon(1e-13));
  CHECK(monomial_moment(f, MultiIndex({2})) ==
        doctest::Approx(5.9820317468061166).epsilon(1e-13));
  CHECK(monomial_moment(f, MultiIndex({1})) == doctest::Approx(0.0).scale(1.0));

  CHECK(lq_norm(f, kInfiniteQ) == doctest::Approx(2.0).epsilon(1e-13));
  CHECK(lq_norm(f, 2.0) == doctest::Approx(2.7422408398776723).epsilon(1e-13));
  CHECK(lq_norm(f, 1.0) == doctest::Approx(5.3173615527165481).epsilon(1e-13));
  CHECK_THROWS_AS(lq_norm(f, 0.5), Error);

  // ell = 0 doubles the plain l1 norm by the weight convention 1 + |x|^0.
  CHECK(weighted_l1_norm(f, 0.0) ==
        doctest::Approx(2.0 * 5.3173615527165481).epsilon(1e-13));
  // ell = 2 equals mass + second absolute moment for a positive field.
  CHECK(weighted_l1_norm(f, 2.0) ==
        doctest::Approx(5.3173615527165481 + 5.9820317468061166).epsilon(1e-13));
}

TEST_CASE("off-center moments shift as polynomials") {
  Grid g(1, 4096, 50.0);
  Field f = make_gaussian(g, 3.0, 1.5, 2.0);
  double mass = 5.3173615527165481;
  CHECK(monomial_moment(f, MultiIndex({1})) ==
        doctest::Approx(3.0 * mass).epsilon(1e-12));
  // E[(x)^2] around center c: c^2 * m0 + centered second moment.
  CHECK(monomial_moment(f, MultiIndex({2})) ==
        doctest::Approx(9.0 * mass + 5.9820317468061166).epsilon(1e-12));
}

TEST_CASE("tail guard rejects weighted moments of truncated tails") {
  // Width 30 on a half-extent-50 box: the boundary ring still carries
  // exp(-(50/30)^2) ~ 6e-2, far above any plausible threshold.
  Grid g(1, 1024, 50.0);
  Field f = make_gaussian(g, 0.0, 30.0, 1.0);
  CHECK_THROWS_AS(monomial_moment(f, MultiIndex({2})), Error);
  try {
    monomial_moment(f, MultiIndex({2}));
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::tail_dominance);
  }
  // The unguarded entry point exists precisely for these sums.
  CHECK_NOTHROW(monomial_moment_unguarded(f, MultiIndex({2})));

  // Mass quadrature of the same field must not trip the guard: the plain
  // sum over the periodic box is a trapezoid rule on a periodic function,
  // so the boundary ring is not an error signal for it.
  CHECK_NOTHROW(monomial_moment(f, MultiIndex({0})));

  // Order above the configured cap is refused outright.
  QuadratureGuard tight;
  tight.max_order = 1;
  CHECK_THROWS_AS(monomial_moment(f, MultiIndex({2}), tight), Error);
}

TEST_CASE("noise floor keeps rounding-scale rings from tripping the guard") {
  Grid g(1, 1024, 50.0);
  Field f = make_gaussian(g, 0.0, 2.0, 1.0);
  // Deposit a rounding-scale value on the outermost cells, the size FFT
  // round trips leave behind. The weighted moment must still be accepted.
  f.values.front() = 1e-13;
  f.values.back() = -1e-13;
  CHECK_NOTHROW(monomial_moment(f, MultiIndex({2})));
  // A ring deposit far above the noise floor is a genuine truncated tail.
  Field bad = f;
  bad.values.front() = 1e-3;
  CHECK_THROWS_AS(monomial_moment(bad, MultiIndex({2})), Error);
}

TEST_CASE("field helpers operate elementwise and keep metadata") {
  Grid g(1, 16, 4.0);
  Field a(g, 1.0);
  Field b(g, 2.0);
  for (std::size_t i = 0; i < g.size(); ++i) {
    a.values[i] = static_cast<double>(i);
    b.values[i] = 1.0;
  }
  Field d = difference(a, b);
  CHECK(d.time == 1.0);
  CHECK(d.values[3] == 2.0);
  add_scaled(d, b, 0.5);
  CHECK(d.values[3] == 2.5);
  Field s = scaled_copy(b, -2.0);
  CHECK(s.values[7] == -2.0);

  Field other(Grid(1, 32, 4.0));
  CHECK_THROWS_AS(difference(a, other), Error);

  a.values[5] = std::nan("");
  CHECK_THROWS_AS(a.check_finite(), Error);
}

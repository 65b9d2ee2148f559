#include "doctest.h"

#include <cmath>
#include <vector>

#include "gka/error.hpp"
#include "gka/rates.hpp"

using namespace gka;

namespace {

std::vector<double> log_times(double lo, double hi, int count) {
  std::vector<double> t(count);
  double ratio = std::pow(hi / lo, 1.0 / (count - 1));
  t[0] = lo;
  for (int i = 1; i < count; ++i) t[i] = t[i - 1] * ratio;
  return t;
}

}  // namespace

TEST_CASE("pure power data is fit exactly") {
  auto t = log_times(1.0, 1000.0, 12);
  std::vector<double> v;
  for (double x : t) v.push_back(5.0 * std::pow(x, -2.0));
  RateFit fit = fit_rate(NormTrajectory::make(t, v, "t^-2"));
  CHECK(fit.slope == doctest::Approx(-2.0).epsilon(1e-12));
  CHECK(fit.slope_stderr <= 1e-12);
  CHECK(fit.preferred == RateModel::pure_power);
  CHECK(fit.n_samples == 12);

  std::vector<double> flat(t.size(), 3.0);
  RateFit fit0 = fit_rate(NormTrajectory::make(t, flat, "const"));
  CHECK(fit0.slope == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
}

TEST_CASE("a genuine logarithmic factor flips the model preference") {
  auto t = log_times(10.0, 1e5, 24);
  std::vector<double> v;
  for (double x : t) v.push_back(std::pow(x, -1.0) * std::log(x));
  RateFit fit = fit_rate(NormTrajectory::make(t, v, "t^-1 log t"));
  CHECK(fit.preferred == RateModel::power_log);
  // The two-parameter slope absorbs part of the growing logarithm and sits
  // a bit above the true power; the three-parameter coefficient carries it.
  CHECK(fit.slope >= -1.0);
  CHECK(fit.slope <= -0.75);
  CHECK(fit.log_coefficient > 0.0);
  CHECK(fit.rss_power_log <= 0.9 * fit.rss_power);
}

TEST_CASE("rescaling the data moves only the intercept") {
  auto t = log_times(2.0, 500.0, 10);
  std::vector<double> v, w;
  for (double x : t) {
    double base = std::pow(x, -1.3) * (1.0 + 0.02 * std::sin(3.0 * std::log(x)));
    v.push_back(base);
    w.push_back(10.0 * base);
  }
  RateFit a = fit_rate(NormTrajectory::make(t, v, "a"));
  RateFit b = fit_rate(NormTrajectory::make(t, w, "b"));
  CHECK(std::fabs(a.slope - b.slope) <= 1e-10);
  CHECK(b.intercept - a.intercept == doctest::Approx(std::log(10.0)).epsilon(1e-10));
}

TEST_CASE("window policy trims and validates the sample set") {
  auto t = log_times(0.1, 1000.0, 20);
  std::vector<double> v;
  for (double x : t) v.push_back(std::pow(x, -1.0));
  WindowPolicy policy;
  policy.t_lo = 1.0;
  RateFit fit = fit_rate(NormTrajectory::make(t, v, "w"), policy);
  CHECK(fit.t_lo >= 1.0);
  CHECK(fit.n_samples < 20);

  // A window too narrow to span the required decades is refused.
  WindowPolicy narrow;
  narrow.t_lo = 100.0;
  narrow.t_hi = 300.0;
  CHECK_THROWS_AS(fit_rate(NormTrajectory::make(t, v, "n"), narrow), Error);

  // Non-positive values are dropped at construction and flagged.
  std::vector<double> with_zero = v;
  with_zero[5] = 0.0;
  NormTrajectory traj = NormTrajectory::make(t, with_zero, "z");
  CHECK(traj.zeros_dropped);
  CHECK(traj.v.size() == 19);
}

TEST_CASE("one-sided comparison against a predicted exponent") {
  auto t = log_times(1.0, 1000.0, 12);
  RatePrediction pred;
  pred.exponent = -1.0;
  pred.log_factor = false;

  std::vector<double> fast, slow;
  for (double x : t) {
    fast.push_back(std::pow(x, -1.02));
    slow.push_back(std::pow(x, -0.7));
  }
  CHECK(compare(fit_rate(NormTrajectory::make(t, fast, "f")), pred, 0.1) ==
        Verdict::PASS);
  CHECK(compare(fit_rate(NormTrajectory::make(t, slow, "s")), pred, 0.1) ==
        Verdict::FAIL);

  // Decaying faster than predicted is acceptable: the bound is one-sided.
  std::vector<double> faster;
  for (double x : t) faster.push_back(std::pow(x, -1.6));
  CHECK(compare(fit_rate(NormTrajectory::make(t, faster, "ff")), pred, 0.1) ==
        Verdict::PASS);

  // Scatter larger than the tolerance gives no verdict either way.
  std::vector<double> noisy;
  for (std::size_t i = 0; i < t.size(); ++i) {
    noisy.push_back(std::pow(t[i], -1.0) * (i % 2 == 0 ? 3.0 : 0.3));
  }
  CHECK(compare(fit_rate(NormTrajectory::make(t, noisy, "nz")), pred, 0.1) ==
        Verdict::INCONCLUSIVE);
}

TEST_CASE("last-decade slope verdicts") {
  auto t = log_times(1.0, 1000.0, 30);
  std::vector<double> decaying, stalled;
  for (double x : t) {
    decaying.push_back(std::pow(x, -0.8));
    stalled.push_back(1.0 + 0.001 * std::cos(std::log(x)));
  }
  CHECK(obound_verdict(NormTrajectory::make(t, decaying, "d"), -0.1) ==
        Verdict::PASS);
  CHECK(obound_verdict(NormTrajectory::make(t, stalled, "s"), -0.1) ==
        Verdict::FAIL);
}

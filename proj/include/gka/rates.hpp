#pragma once

#include <string>
#include <vector>

namespace gka {

// A positive norm trajectory against time, ready for log-log fitting.
// Non-positive values are dropped at construction and flagged.
struct NormTrajectory {
  std::vector<double> t;
  std::vector<double> v;
  std::string label;
  bool zeros_dropped = false;

  static NormTrajectory make(const std::vector<double>& t,
                             const std::vector<double>& v,
                             std::string label);
};

struct WindowPolicy {
  double t_lo = 0.0;
  double t_hi = 0.0;         // 0 means unbounded
  int min_samples = 6;
  double min_decades = 1.5;  // required log10 span of the window
};

enum class RateModel { pure_power, power_log };

struct RateFit {
  double slope = 0.0;
  double slope_stderr = 0.0;
  double intercept = 0.0;
  double log_coefficient = 0.0;  // c in a + b log t + c log log t
  RateModel preferred = RateModel::pure_power;
  double t_lo = 0.0, t_hi = 0.0;
  int n_samples = 0;
  double rss_power = 0.0;     // on the model-comparison subset (t > e)
  double rss_power_log = 0.0;
};

// Least squares of log v = a + b log t on the window; the three-parameter
// model with a log log t term is fit on the t > e subset and preferred only
// when it cuts the residual sum there by at least 10% (parsimony rule).
// Throws Error(config) when the window cannot satisfy the policy.
RateFit fit_rate(const NormTrajectory& traj, const WindowPolicy& policy = {});

struct RatePrediction {
  double exponent = 0.0;
  bool log_factor = false;
  std::string source_case;
};

enum class Verdict { PASS, FAIL, INCONCLUSIVE };

const char* verdict_name(Verdict v);

// One-sided comparison: measured decay at least as fast as predicted.
// INCONCLUSIVE when the slope uncertainty exceeds tol; PASS requires
// slope <= exponent + tol and, when a log factor is predicted, that the
// power-log model was preferred.
Verdict compare(const RateFit& fit, const RatePrediction& pred, double tol);

// Little-o verdict: over the last decade of the trajectory the fitted
// slope must sit below `threshold` by at least its own standard error.
Verdict obound_verdict(const NormTrajectory& traj, double threshold);

}  // namespace gka

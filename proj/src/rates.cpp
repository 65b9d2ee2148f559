#include "gka/rates.hpp"

#include <cmath>

#include "gka/error.hpp"

namespace gka {

NormTrajectory NormTrajectory::make(const std::vector<double>& t,
                                    const std::vector<double>& v,
                                    std::string label) {
  if (t.size() != v.size()) {
    throw Error(ErrorKind::mismatch, "trajectory time/value length mismatch");
  }
  NormTrajectory out;
  out.label = std::move(label);
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (v[i] > 0.0 && std::isfinite(v[i]) && t[i] > 0.0) {
      out.t.push_back(t[i]);
      out.v.push_back(v[i]);
    } else {
      out.zeros_dropped = true;
    }
  }
  return out;
}

namespace {

struct Ols2 {
  double slope = 0.0;
  double intercept = 0.0;
  double stderr_slope = 0.0;
  double rss = 0.0;
  int n = 0;
};

Ols2 fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  Ols2 f;
  f.n = static_cast<int>(x.size());
  double n = static_cast<double>(f.n);
  double sx = 0.0, sy = 0.0;
  for (int i = 0; i < f.n; ++i) {
    sx += x[i];
    sy += y[i];
  }
  double mx = sx / n, my = sy / n;
  double sxx = 0.0, sxy = 0.0;
  for (int i = 0; i < f.n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  for (int i = 0; i < f.n; ++i) {
    double r = y[i] - (f.intercept + f.slope * x[i]);
    f.rss += r * r;
  }
  if (f.n > 2) {
    f.stderr_slope = std::sqrt(f.rss / (n - 2.0) / sxx);
  }
  return f;
}

// Least squares with regressors (1, x, w); plain 3x3 normal equations.
struct Ols3 {
  double a = 0.0, b = 0.0, c = 0.0;
  double rss = 0.0;
  bool ok = false;
};

Ols3 fit_plane(const std::vector<double>& x, const std::vector<double>& w,
               const std::vector<double>& y) {
  Ols3 f;
  std::size_t n = x.size();
  double m[3][4] = {};
  for (std::size_t i = 0; i < n; ++i) {
    double r[3] = {1.0, x[i], w[i]};
    for (int p = 0; p < 3; ++p) {
      for (int q = 0; q < 3; ++q) m[p][q] += r[p] * r[q];
      m[p][3] += r[p] * y[i];
    }
  }
  for (int col = 0; col < 3; ++col) {
    int piv = col;
    for (int row = col + 1; row < 3; ++row) {
      if (std::fabs(m[row][col]) > std::fabs(m[piv][col])) piv = row;
    }
    if (std::fabs(m[piv][col]) < 1e-12) return f;
    for (int q = 0; q < 4; ++q) std::swap(m[piv][q], m[col][q]);
    for (int row = 0; row < 3; ++row) {
      if (row == col) continue;
      double factor = m[row][col] / m[col][col];
      for (int q = col; q < 4; ++q) m[row][q] -= factor * m[col][q];
    }
  }
  f.a = m[0][3] / m[0][0];
  f.b = m[1][3] / m[1][1];
  f.c = m[2][3] / m[2][2];
  for (std::size_t i = 0; i < n; ++i) {
    double r = y[i] - (f.a + f.b * x[i] + f.c * w[i]);
    f.rss += r * r;
  }
  f.ok = true;
  return f;
}

}  // namespace

RateFit fit_rate(const NormTrajectory& traj, const WindowPolicy& policy) {
  std::vector<double> lt, lv;
  double t_lo = 0.0, t_hi = 0.0;
  for (std::size_t i = 0; i < traj.t.size(); ++i) {
    double t = traj.t[i];
    if (t < policy.t_lo) continue;
    if (policy.t_hi > 0.0 && t > policy.t_hi) continue;
    if (lt.empty()) t_lo = t;
    t_hi = t;
    lt.push_back(std::log(t));
    lv.push_back(std::log(traj.v[i]));
  }
  if (static_cast<int>(lt.size()) < policy.min_samples) {
    throw Error(ErrorKind::config,
                "fit window for '" + traj.label + "' has fewer than " +
                    std::to_string(policy.min_samples) + " samples");
  }
  if (std::log10(t_hi / t_lo) < policy.min_decades) {
    throw Error(ErrorKind::config,
                "fit window for '" + traj.label + "' spans under " +
                    std::to_string(policy.min_decades) + " decades");
  }

  Ols2 line = fit_line(lt, lv);
  RateFit fit;
  fit.slope = line.slope;
  fit.slope_stderr = line.stderr_slope;
  fit.intercept = line.intercept;
  fit.t_lo = t_lo;
  fit.t_hi = t_hi;
  fit.n_samples = line.n;

  // Model comparison lives on the t > e subset, where log log t is defined
  // and positive; both models are refit there so the residual comparison is
  // on equal footing.
  std::vector<double> sx, sw, sy;
  for (std::size_t i = 0; i < lt.size(); ++i) {
    if (lt[i] > 1.0) {
      sx.push_back(lt[i]);
      sw.push_back(std::log(lt[i]));
      sy.push_back(lv[i]);
    }
  }
  if (sx.size() >= 5) {
    Ols2 sub = fit_line(sx, sy);
    Ols3 plane = fit_plane(sx, sw, sy);
    if (plane.ok) {
      fit.rss_power = sub.rss;
      fit.rss_power_log = plane.rss;
      fit.log_coefficient = plane.c;
      if (plane.rss <= 0.9 * sub.rss) fit.preferred = RateModel::power_log;
    }
  }
  return fit;
}

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::PASS: return "PASS";
    case Verdict::FAIL: return "FAIL";
    case Verdict::INCONCLUSIVE: return "INCONCLUSIVE";
  }
  return "?";
}

Verdict compare(const RateFit& fit, const RatePrediction& pred, double tol) {
  if (fit.slope_stderr > tol) return Verdict::INCONCLUSIVE;
  bool fast_enough = fit.slope <= pred.exponent + tol;
  bool log_ok = !pred.log_factor || fit.preferred == RateModel::power_log;
  return (fast_enough && log_ok) ? Verdict::PASS : Verdict::FAIL;
}

Verdict obound_verdict(const NormTrajectory& traj, double threshold) {
  if (traj.t.empty()) return Verdict::INCONCLUSIVE;
  double t_max = traj.t.back();
  std::vector<double> lt, lv;
  for (std::size_t i = 0; i < traj.t.size(); ++i) {
    if (traj.t[i] >= t_max / 10.0) {
      lt.push_back(std::log(traj.t[i]));
      lv.push_back(std::log(traj.v[i]));
    }
  }
  if (lt.size() < 4) return Verdict::INCONCLUSIVE;
  Ols2 line = fit_line(lt, lv);
  if (!std::isfinite(line.stderr_slope)) return Verdict::INCONCLUSIVE;
  return line.slope <= threshold - line.stderr_slope ? Verdict::PASS
                                                     : Verdict::FAIL;
}

}  // namespace gka

#include "gka/moments.hpp"

#include <cmath>

#include "gka/error.hpp"

namespace gka {

double MomentTable::at(const MultiIndex& a) const {
  for (std::size_t i = 0; i < indices.size(); ++i) {
    if (indices[i] == a) return values[i];
  }
  throw Error(ErrorKind::mismatch, "moment table has no entry " + a.to_string());
}

KernelMomentCache::KernelMomentCache(const SemigroupOperator& op, double K,
                                     double t, const QuadratureGuard& guard)
    : time_(t), K_(K), indices_(enumerate_indices(op.grid().dim, K)) {
  std::size_t count = indices_.size();
  g_fields_.reserve(count);
  for (const MultiIndex& b : indices_) g_fields_.push_back(op.g_alpha(b, t));
  entries_.assign(count * count, 0.0);
  for (std::size_t ai = 0; ai < count; ++ai) {
    for (std::size_t bi = 0; bi < count; ++bi) {
      if (!leq(indices_[bi], indices_[ai])) continue;
      entries_[ai * count + bi] =
          monomial_moment(g_fields_[bi], indices_[ai], guard);
    }
  }
}

double KernelMomentCache::entry(std::size_t ai, std::size_t bi) const {
  return entries_[ai * indices_.size() + bi];
}

double KernelMomentCache::diagonal_defect() const {
  double worst = 0.0;
  for (std::size_t i = 0; i < indices_.size(); ++i) {
    worst = std::max(worst, std::fabs(entry(i, i) - 1.0));
  }
  return worst;
}

MomentTable moments_from_raw(const std::vector<double>& raw,
                             const KernelMomentCache& cache) {
  if (raw.size() != cache.index_count()) {
    throw Error(ErrorKind::mismatch, "raw moment count does not match cache layout");
  }
  MomentTable table;
  table.time = cache.time();
  table.K = cache.K();
  table.indices = cache.indices();
  table.values.resize(raw.size());
  for (std::size_t ai = 0; ai < raw.size(); ++ai) {
    double acc = raw[ai];
    for (std::size_t bi = 0; bi < ai; ++bi) {
      acc -= table.values[bi] * cache.entry(ai, bi);
    }
    table.values[ai] = acc / cache.entry(ai, ai);
  }
  return table;
}

MomentTable compute_moments(const Field& f, const KernelMomentCache& cache,
                            const QuadratureGuard& guard) {
  std::vector<double> raw(cache.index_count());
  for (std::size_t i = 0; i < raw.size(); ++i) {
    raw[i] = monomial_moment(f, cache.indices()[i], guard);
  }
  return moments_from_raw(raw, cache);
}

Field project(const Field& f, const MomentTable& table,
              const KernelMomentCache& cache) {
  if (table.indices.size() != cache.index_count()) {
    throw Error(ErrorKind::mismatch, "moment table does not match cache layout");
  }
  Field out = f;
  for (std::size_t bi = 0; bi < cache.index_count(); ++bi) {
    add_scaled(out, cache.g_field(bi), -table.values[bi]);
  }
  return out;
}

double e_functional(const Field& f, double q, double K, const KernelSpec& spec) {
  double t = f.time;
  double d = spec.d();
  double N = spec.dim;
  double lq = lq_norm(f, q);
  double l1 = lq_norm(f, 1.0);
  double smoothing = std::pow(t, (N / d) * (1.0 - 1.0 / q));
  return std::pow(1.0 + t, K / d) * (smoothing * lq + l1) +
         weighted_l1_norm(f, K);
}

Lemma21Report verify_moment_conservation(const SemigroupOperator& op,
                                         const Field& f, double K,
                                         const std::vector<double>& times,
                                         bool check_vanishing,
                                         const QuadratureGuard& guard) {
  Lemma21Report rep;
  rep.vanishing_checked = check_vanishing;
  KernelMomentCache base_cache(op, K, 0.0, guard);
  MomentTable base = compute_moments(f, base_cache, guard);
  for (double t : times) {
    Field u = op.apply(f, t);
    KernelMomentCache cache(op, K, t, guard);
    MomentTable m = compute_moments(u, cache, guard);
    for (std::size_t i = 0; i < m.values.size(); ++i) {
      rep.max_conservation_gap = std::max(
          rep.max_conservation_gap, std::fabs(m.values[i] - base.values[i]));
    }
    if (check_vanishing) {
      for (const MultiIndex& a : base_cache.indices()) {
        rep.max_vanishing_moment = std::max(
            rep.max_vanishing_moment, std::fabs(monomial_moment(u, a, guard)));
      }
    }
  }
  return rep;
}

NormBoundReport verify_norm_bounds(const SemigroupOperator& op,
                                   const std::vector<Field>& trajectory,
                                   double q, double K, double ell,
                                   const QuadratureGuard& guard) {
  NormBoundReport rep;
  const KernelSpec& spec = op.spec();
  double d = spec.d();
  double N = spec.dim;
  for (const Field& f : trajectory) {
    double t = f.time;
    double E = e_functional(f, q, K, spec);
    double smoothing = std::pow(t, (N / d) * (1.0 - 1.0 / q));
    double growth_K = std::pow(1.0 + t, K / d);

    rep.lq_ratio = std::max(rep.lq_ratio, smoothing * growth_K * lq_norm(f, q) / E);
    rep.weighted_ratio =
        std::max(rep.weighted_ratio, std::pow(1.0 + t, (K - ell) / d) *
                                         weighted_l1_norm(f, ell) / E);

    KernelMomentCache cache(op, K, t, guard);
    MomentTable m = compute_moments(f, cache, guard);
    for (std::size_t i = 0; i < m.values.size(); ++i) {
      double order = m.indices[i].order();
      rep.moment_ratio =
          std::max(rep.moment_ratio, std::pow(1.0 + t, (K - order) / d) *
                                         std::fabs(m.values[i]) / E);
    }

    Field pf = project(f, m, cache);
    double proj = growth_K * (smoothing * lq_norm(pf, q) +
                              std::pow(1.0 + t, -ell / d) *
                                  weighted_l1_norm(pf, ell));
    rep.projected_ratio = std::max(rep.projected_ratio, proj / E);
  }
  return rep;
}

}  // namespace gka

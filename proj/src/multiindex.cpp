#include "gka/multiindex.hpp"

#include <cmath>
#include <limits>

#include "gka/error.hpp"

namespace gka {

MultiIndex::MultiIndex(std::vector<int> entries) : entries_(std::move(entries)) {
  if (entries_.empty()) {
    throw Error(ErrorKind::mismatch, "multi-index needs dimension >= 1");
  }
  for (int e : entries_) {
    if (e < 0) {
      throw Error(ErrorKind::mismatch, "multi-index entries must be non-negative");
    }
  }
}

MultiIndex MultiIndex::zero(int dim) {
  if (dim < 1) {
    throw Error(ErrorKind::mismatch, "multi-index needs dimension >= 1");
  }
  return MultiIndex(std::vector<int>(static_cast<std::size_t>(dim), 0));
}

int MultiIndex::order() const {
  int s = 0;
  for (int e : entries_) s += e;
  return s;
}

std::string MultiIndex::to_string() const {
  std::string out = "(";
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(entries_[i]);
  }
  out += ")";
  return out;
}

bool leq(const MultiIndex& a, const MultiIndex& b) {
  if (a.dim() != b.dim()) {
    throw Error(ErrorKind::mismatch, "leq: dimension mismatch " + a.to_string() +
                                         " vs " + b.to_string());
  }
  for (int i = 0; i < a.dim(); ++i) {
    if (a[i] > b[i]) return false;
  }
  return true;
}

MultiIndex subtract(const MultiIndex& a, const MultiIndex& b) {
  if (!leq(b, a)) {
    throw Error(ErrorKind::mismatch, "subtract: need " + b.to_string() +
                                         " <= " + a.to_string());
  }
  std::vector<int> e(static_cast<std::size_t>(a.dim()));
  for (int i = 0; i < a.dim(); ++i) e[static_cast<std::size_t>(i)] = a[i] - b[i];
  return MultiIndex(std::move(e));
}

namespace {

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  if (a != 0 && b > std::numeric_limits<std::int64_t>::max() / a) {
    throw Error(ErrorKind::numeric, "multi-index factorial overflow");
  }
  return a * b;
}

}  // namespace

std::int64_t factorial(const MultiIndex& a) {
  std::int64_t result = 1;
  for (int i = 0; i < a.dim(); ++i) {
    for (int k = 2; k <= a[i]; ++k) {
      result = checked_mul(result, k);
    }
  }
  return result;
}

std::int64_t binomial(const MultiIndex& a, const MultiIndex& b) {
  // C(alpha,beta) = alpha! / (beta! (alpha-beta)!), componentwise. Computed
  // per component to keep intermediates small.
  if (!leq(b, a)) return 0;
  std::int64_t result = 1;
  for (int i = 0; i < a.dim(); ++i) {
    std::int64_t c = 1;
    int n = a[i];
    int k = b[i];
    if (k > n - k) k = n - k;
    for (int j = 1; j <= k; ++j) {
      c = checked_mul(c, n - k + j) / j;
    }
    result = checked_mul(result, c);
  }
  return result;
}

double monomial(const MultiIndex& a, const double* x) {
  double result = 1.0;
  for (int i = 0; i < a.dim(); ++i) {
    for (int k = 0; k < a[i]; ++k) result *= x[i];
  }
  return result;
}

double monomial(const MultiIndex& a, const std::vector<double>& x) {
  if (static_cast<int>(x.size()) != a.dim()) {
    throw Error(ErrorKind::mismatch, "monomial: point dimension mismatch");
  }
  return monomial(a, x.data());
}

int bracket(double k) {
  if (!(k >= 0.0)) {
    throw Error(ErrorKind::mismatch, "bracket: k must be non-negative");
  }
  // floor(k) is the unique integer in (k-1, k].
  return static_cast<int>(std::floor(k));
}

namespace {

void emit_level(int dim, int level, std::vector<int>& prefix,
                std::vector<MultiIndex>& out) {
  if (dim == 1) {
    prefix.push_back(level);
    out.push_back(MultiIndex(prefix));
    prefix.pop_back();
    return;
  }
  for (int v = level; v >= 0; --v) {
    prefix.push_back(v);
    emit_level(dim - 1, level - v, prefix, out);
    prefix.pop_back();
  }
}

}  // namespace

std::vector<MultiIndex> enumerate_indices(int dim, double k) {
  if (dim < 1) {
    throw Error(ErrorKind::mismatch, "enumerate_indices: dimension must be >= 1");
  }
  int kmax = bracket(k);
  std::vector<MultiIndex> out;
  std::vector<int> prefix;
  for (int level = 0; level <= kmax; ++level) {
    emit_level(dim, level, prefix, out);
  }
  return out;
}

}  // namespace gka

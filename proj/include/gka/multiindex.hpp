#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace gka {

// A multi-index alpha in (Z>=0)^N. Dimension is small (1 or 2 in practice)
// but nothing here assumes that.
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::vector<int> entries);
  static MultiIndex zero(int dim);

  int dim() const { return static_cast<int>(entries_.size()); }
  int order() const;  // |alpha|
  int operator[](int i) const { return entries_[static_cast<std::size_t>(i)]; }
  const std::vector<int>& entries() const { return entries_; }

  bool operator==(const MultiIndex& other) const { return entries_ == other.entries_; }
  bool operator!=(const MultiIndex& other) const { return entries_ != other.entries_; }

  std::string to_string() const;  // "(a1,a2)"

 private:
  std::vector<int> entries_;
};

// Componentwise partial order alpha <= beta. Throws on dimension mismatch.
bool leq(const MultiIndex& a, const MultiIndex& b);

// alpha - beta, requires beta <= alpha.
MultiIndex subtract(const MultiIndex& a, const MultiIndex& b);

// alpha! = prod alpha_i!. Overflow is reported, never wrapped.
std::int64_t factorial(const MultiIndex& a);

// Componentwise binomial coefficient C(alpha, beta) for beta <= alpha.
std::int64_t binomial(const MultiIndex& a, const MultiIndex& b);

// x^alpha with the convention 0^0 = 1. x must have a.dim() entries.
double monomial(const MultiIndex& a, const double* x);
double monomial(const MultiIndex& a, const std::vector<double>& x);

// The integer in (k-1, k], defined for k >= 0. Integer k maps to itself.
int bracket(double k);

// Every alpha with |alpha| <= bracket(k), ordered by ascending |alpha| and,
// within a level, by descending first entry (so (1,0) precedes (0,1)). The
// order is part of the contract: moment tables use it as their layout.
std::vector<MultiIndex> enumerate_indices(int dim, double k);

}  // namespace gka

#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace fgl {

/// Pairwise (tree) summation. Error grows like O(log n) instead of O(n) and
/// the association order is a pure function of the term count, so totals are
/// reproducible run to run for the same term sequence.
inline double pairwise_sum(std::span<const double> terms) {
  if (terms.size() <= 32) {
    double s = 0.0;
    for (double x : terms) s += x;
    return s;
  }
  const std::size_t half = terms.size() / 2;
  return pairwise_sum(terms.first(half)) + pairwise_sum(terms.subspan(half));
}

inline double pairwise_sum(const std::vector<double>& terms) {
  return pairwise_sum(std::span<const double>(terms));
}

/// Scratch buffer for accumulating summands before a tree reduction.
class SumBuffer {
 public:
  explicit SumBuffer(std::size_t expected = 0) { terms_.reserve(expected); }

  void push(double x) { terms_.push_back(x); }
  double total() const { return pairwise_sum(terms_); }
  void clear() { terms_.clear(); }
  std::size_t size() const { return terms_.size(); }

 private:
  std::vector<double> terms_;
};

/// Deterministic dot product of two equal-length vectors.
inline double pairwise_dot(std::span<const double> a,
                           std::span<const double> b) {
  std::vector<double> prod(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) prod[i] = a[i] * b[i];
  return pairwise_sum(prod);
}

}  // namespace fgl

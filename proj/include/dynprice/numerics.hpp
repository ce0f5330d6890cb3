#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>

namespace dynprice::numerics {

inline constexpr double kPriceTolerance = 1e-10;
inline constexpr int kMaxIterations = 200;

struct SearchResult {
  double argument;
  int iterations;
};

/// Golden-section search for the maximiser of a unimodal function on [lo, hi].
template <class F>
SearchResult golden_section_max(F&& f, double lo, double hi,
                                double tolerance = kPriceTolerance,
                                int max_iterations = kMaxIterations) {
  if (!(lo <= hi)) throw std::invalid_argument("golden_section_max: lo > hi");
  constexpr double kInvPhi = 0.6180339887498948482;
  double a = lo;
  double b = hi;
  double x1 = b - kInvPhi * (b - a);
  double x2 = a + kInvPhi * (b - a);
  double f1 = f(x1);
  double f2 = f(x2);
  int it = 0;
  while (b - a > tolerance && it < max_iterations) {
    ++it;
    // ties move right so that a plateau converges to a single side
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kInvPhi * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kInvPhi * (b - a);
      f1 = f(x1);
    }
  }
  return {0.5 * (a + b), it};
}

/// Bisection for the crossing of a decreasing function with `target` on
/// [lo, hi]. Returns lo (hi) when the function is already below (above) the
/// target over the whole interval.
template <class F>
SearchResult bisect_decreasing(F&& f, double target, double lo, double hi,
                               double tolerance = kPriceTolerance,
                               int max_iterations = kMaxIterations) {
  if (!(lo <= hi)) throw std::invalid_argument("bisect_decreasing: lo > hi");
  if (f(lo) <= target) return {lo, 0};
  if (f(hi) >= target) return {hi, 0};
  double a = lo;
  double b = hi;
  int it = 0;
  while (b - a > tolerance && it < max_iterations) {
    ++it;
    const double mid = 0.5 * (a + b);
    if (mid <= a || mid >= b) break;
    if (f(mid) > target) {
      a = mid;
    } else {
      b = mid;
    }
  }
  return {0.5 * (a + b), it};
}

/// Index of the first maximum; ties resolve to the smallest index.
inline std::size_t argmax_first(std::span<const double> values) {
  if (values.empty()) throw std::invalid_argument("argmax_first: empty input");
  std::size_t best = 0;
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] > values[best]) best = i;
  }
  return best;
}

/// Index of the first minimum; ties resolve to the smallest index.
inline std::size_t argmin_first(std::span<const double> values) {
  if (values.empty()) throw std::invalid_argument("argmin_first: empty input");
  std::size_t best = 0;
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] < values[best]) best = i;
  }
  return best;
}

}  // namespace dynprice::numerics

#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace ervl {

inline constexpr double two_pi = 6.283185307179586476925286766559;

// Cascade summation over a fixed binary tree; deterministic for a given
// input order and less prone to cancellation than a running sum.
inline double pairwise_sum(std::span<const double> v) {
  if (v.size() <= 8) {
    double s = 0.0;
    for (double x : v) s += x;
    return s;
  }
  const std::size_t half = v.size() / 2;
  return pairwise_sum(v.subspan(0, half)) + pairwise_sum(v.subspan(half));
}

// Trapezoid rule on the circle (equispaced nodes, equal weights):
// integral over [0, 2pi) of f, spectrally accurate for smooth periodic f.
template <class F>
double integrate_circle(F&& f, unsigned nodes) {
  std::vector<double> vals(nodes);
  for (unsigned i = 0; i < nodes; ++i) vals[i] = f(two_pi * double(i) / double(nodes));
  return pairwise_sum(vals) * (two_pi / double(nodes));
}

}  // namespace ervl

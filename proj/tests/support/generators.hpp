#pragma once

// Hand-rolled random data for the property tests. Everything is driven by a
// caller-owned std::mt19937 so failures reproduce from the seed.

#include <algorithm>
#include <random>
#include <vector>

#include "hughes/density.hpp"

namespace hughes::testing {

inline double uniform(std::mt19937& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline int uniform_int(std::mt19937& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

/// Sorted, distinct points in (lo, hi) at least min_sep apart.
inline std::vector<double> sorted_points(std::mt19937& rng, int count, double lo, double hi, double min_sep = 1e-3) {
  std::vector<double> pts;
  while (static_cast<int>(pts.size()) < count) {
    const double x = uniform(rng, lo, hi);
    const bool far = std::all_of(pts.begin(), pts.end(), [&](double p) { return std::abs(p - x) > min_sep; }) &&
                     x - lo > min_sep && hi - x > min_sep;
    if (far) pts.push_back(x);
  }
  std::sort(pts.begin(), pts.end());
  return pts;
}

/// Piecewise-constant datum on [-1, 1] with 1..max_pieces pieces; values in
/// [0, max_value], some pieces left empty (vacuum) when allow_vacuum is set.
inline PiecewiseConstantDensity random_density(std::mt19937& rng, double max_value, int max_pieces = 5,
                                               bool allow_vacuum = true) {
  const int pieces = uniform_int(rng, 1, max_pieces);
  std::vector<double> breaks{-1.0};
  for (double x : sorted_points(rng, pieces - 1, -1.0, 1.0, 0.02)) breaks.push_back(x);
  breaks.push_back(1.0);
  std::vector<double> values(pieces);
  for (auto& v : values) v = (allow_vacuum && uniform(rng, 0, 1) < 0.2) ? 0.0 : uniform(rng, 0.05 * max_value, max_value);
  if (std::all_of(values.begin(), values.end(), [](double v) { return v == 0.0; })) values.front() = max_value;
  return PiecewiseConstantDensity(breaks, values);
}

/// Even datum: a random density on [0, 1] mirrored to [-1, 0].
inline PiecewiseConstantDensity random_even_density(std::mt19937& rng, double max_value, int half_pieces = 3) {
  const auto inner = sorted_points(rng, half_pieces - 1, 0.0, 1.0, 0.03);
  std::vector<double> half_breaks{0.0};
  half_breaks.insert(half_breaks.end(), inner.begin(), inner.end());
  half_breaks.push_back(1.0);
  std::vector<double> half_values(half_pieces);
  for (auto& v : half_values) v = uniform(rng, 0.1 * max_value, max_value);

  std::vector<double> breaks;
  std::vector<double> values;
  for (int i = half_pieces; i >= 1; --i) breaks.push_back(-half_breaks[i]);
  breaks.push_back(0.0);
  for (int i = half_pieces - 1; i >= 0; --i) values.push_back(half_values[i]);
  for (int i = 1; i <= half_pieces; ++i) breaks.push_back(half_breaks[i]);
  values.insert(values.end(), half_values.begin(), half_values.end());
  return PiecewiseConstantDensity(breaks, values);
}

}  // namespace hughes::testing

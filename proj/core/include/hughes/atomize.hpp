#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "hughes/density.hpp"

namespace hughes {

/// Ordered particle positions with a common mass per inter-particle gap.
struct ParticleConfiguration {
  std::vector<double> positions;
  double mass = 0.0;
  // n with positions.size() - 1 == 2^n, or 0 for non-dyadic counts.
  int n_dyadic = 0;

  std::size_t num_gaps() const { return positions.empty() ? 0 : positions.size() - 1; }
};

/// Places 2^n + 1 particles so that consecutive particles bracket mass M / 2^n
/// of `initial`, from min spt to max spt. Throws DomainError for zero mass or n < 1.
ParticleConfiguration atomize(const PiecewiseConstantDensity& initial, int n);

/// Same construction with an arbitrary number of gaps.
ParticleConfiguration atomize_count(const PiecewiseConstantDensity& initial, std::size_t num_gaps);

/// Uniform placement for the two-state datum rho_minus on [-1, 0], rho_plus on (0, 1]:
/// n_minus gaps of width 1/n_minus left of 0 and n_plus gaps of width 1/n_plus
/// right of it, with common mass m = rho_plus / n_plus = rho_minus / n_minus.
ParticleConfiguration atomize_riemann(double rho_minus, double rho_plus, std::size_t n_minus, std::size_t n_plus);

/// Gap densities mass / (x[i+1] - x[i]); the gap `zero_gap`, when given, is set to zero.
PiecewiseConstantDensity discrete_density(std::span<const double> positions, double mass,
                                          std::optional<std::size_t> zero_gap = std::nullopt);

inline PiecewiseConstantDensity discrete_density(const ParticleConfiguration& config,
                                                 std::optional<std::size_t> zero_gap = std::nullopt) {
  return discrete_density(config.positions, config.mass, zero_gap);
}

}  // namespace hughes

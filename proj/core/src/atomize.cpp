#include "hughes/atomize.hpp"

#include <algorithm>
#include <cmath>

#include "hughes/errors.hpp"

namespace hughes {

namespace {

constexpr double kRiemannCompatibility = 1e-12;

}  // namespace

ParticleConfiguration atomize_count(const PiecewiseConstantDensity& initial, std::size_t num_gaps) {
  if (num_gaps < 1) throw DomainError("atomization needs at least one gap");
  const double total = initial.mass();
  if (!(total > 0.0)) throw DomainError("cannot atomize a density with zero mass");

  const auto& breaks = initial.breakpoints();
  const auto& values = initial.values();
  std::size_t first = 0;
  while (values[first] == 0.0) ++first;
  std::size_t last = values.size() - 1;
  while (values[last] == 0.0) --last;

  ParticleConfiguration out;
  out.mass = total / static_cast<double>(num_gaps);
  out.positions.reserve(num_gaps + 1);
  out.positions.push_back(breaks[first]);

  // Exact inversion of the piecewise-linear cumulative mass. A target that
  // ends exactly on a piece boundary resolves to the smallest admissible x.
  const double snap = 1e-14 * total;
  std::size_t piece = first;
  double mass_before = 0.0;
  for (std::size_t i = 1; i < num_gaps; ++i) {
    const double target = total * static_cast<double>(i) / static_cast<double>(num_gaps);
    while (true) {
      const double len = breaks[piece + 1] - breaks[piece];
      const double mass_after = mass_before + values[piece] * len;
      if (values[piece] > 0.0 && target <= mass_after + snap) {
        const double x = breaks[piece] + (target - mass_before) / values[piece];
        out.positions.push_back(std::min(x, breaks[piece + 1]));
        break;
      }
      mass_before = mass_after;
      ++piece;
    }
  }
  out.positions.push_back(breaks[last + 1]);
  return out;
}

ParticleConfiguration atomize(const PiecewiseConstantDensity& initial, int n) {
  if (n < 1 || n > 30) throw DomainError("dyadic refinement level must be in [1, 30]");
  auto out = atomize_count(initial, std::size_t{1} << n);
  out.n_dyadic = n;
  return out;
}

ParticleConfiguration atomize_riemann(double rho_minus, double rho_plus, std::size_t n_minus, std::size_t n_plus) {
  if (!(rho_minus >= 0.0 && rho_minus < rho_plus)) throw DomainError("Riemann atomization needs 0 <= rho- < rho+");
  if (!(rho_plus < 1.0)) throw DomainError("Riemann atomization needs rho+ < 1");
  if (n_plus == 0) throw DomainError("Riemann atomization needs at least one gap on (0, 1]");
  const double mass = rho_plus / static_cast<double>(n_plus);
  if (std::abs(mass * static_cast<double>(n_minus) - rho_minus) > kRiemannCompatibility)
    throw DomainError("incompatible Riemann atomization: rho-/N- differs from rho+/N+");

  ParticleConfiguration out;
  out.mass = mass;
  const std::size_t total = n_minus + n_plus;
  out.positions.resize(total + 1);
  for (std::size_t i = 0; i < n_minus; ++i)
    out.positions[i] = -1.0 + static_cast<double>(i) / static_cast<double>(n_minus);
  out.positions[n_minus] = 0.0;
  for (std::size_t i = n_minus + 1; i <= total; ++i)
    out.positions[i] = 1.0 - static_cast<double>(total - i) / static_cast<double>(n_plus);
  return out;
}

PiecewiseConstantDensity discrete_density(std::span<const double> positions, double mass,
                                          std::optional<std::size_t> zero_gap) {
  if (positions.size() < 2) return {};
  std::vector<double> breaks(positions.begin(), positions.end());
  std::vector<double> values(positions.size() - 1);
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double gap = positions[i + 1] - positions[i];
    if (!(gap > 0.0)) throw NumericalError("particle ordering violated");
    values[i] = (zero_gap && *zero_gap == i) ? 0.0 : mass / gap;
  }
  return PiecewiseConstantDensity(std::move(breaks), std::move(values));
}

}  // namespace hughes

#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace hughes {

/// One constant piece [left, right) of an initial datum.
struct DensityPiece {
  double left = 0.0;
  double right = 0.0;
  double value = 0.0;
};

/// Right-continuous piecewise-constant density: value()[i] on
/// [breakpoints()[i], breakpoints()[i+1]), zero outside the breakpoint range.
class PiecewiseConstantDensity {
 public:
  PiecewiseConstantDensity() = default;
  /// Throws DomainError unless breakpoints are strictly increasing,
  /// values.size() + 1 == breakpoints.size() and all values are >= 0.
  PiecewiseConstantDensity(std::vector<double> breakpoints, std::vector<double> values);

  /// Sorted, non-overlapping pieces; gaps between them become zero-valued intervals.
  static PiecewiseConstantDensity from_pieces(std::span<const DensityPiece> pieces);

  const std::vector<double>& breakpoints() const { return breaks_; }
  const std::vector<double>& values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  bool empty() const { return values_.empty(); }

  double operator()(double x) const;
  double mass() const;
  /// Integral of the density over (-inf, x].
  double cumulative_mass(double x) const;
  double max_value() const;

  /// Restriction to [lo, hi]; pieces outside vanish, pieces straddling the ends are cut.
  PiecewiseConstantDensity clipped(double lo, double hi) const;

 private:
  std::vector<double> breaks_;
  std::vector<double> values_;
};

}  // namespace hughes

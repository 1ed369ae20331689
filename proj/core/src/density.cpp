#include "hughes/density.hpp"

#include <algorithm>
#include <cmath>

#include "hughes/errors.hpp"

namespace hughes {

PiecewiseConstantDensity::PiecewiseConstantDensity(std::vector<double> breakpoints, std::vector<double> values)
    : breaks_(std::move(breakpoints)), values_(std::move(values)) {
  if (values_.empty() && breaks_.empty()) return;
  if (breaks_.size() != values_.size() + 1) throw DomainError("density needs one more breakpoint than values");
  for (std::size_t i = 0; i + 1 < breaks_.size(); ++i) {
    if (!(breaks_[i] < breaks_[i + 1])) throw DomainError("density breakpoints must be strictly increasing");
  }
  for (double v : values_) {
    if (!(v >= 0.0) || !std::isfinite(v)) throw DomainError("density values must be finite and non-negative");
  }
}

PiecewiseConstantDensity PiecewiseConstantDensity::from_pieces(std::span<const DensityPiece> pieces) {
  std::vector<DensityPiece> sorted(pieces.begin(), pieces.end());
  std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) { return a.left < b.left; });
  std::vector<double> breaks;
  std::vector<double> values;
  for (const auto& p : sorted) {
    if (!(p.left < p.right)) throw DomainError("density piece must have left < right");
    if (!breaks.empty()) {
      if (p.left < breaks.back()) throw DomainError("density pieces overlap");
      if (p.left > breaks.back()) {
        values.push_back(0.0);
        breaks.push_back(p.left);
      }
    } else {
      breaks.push_back(p.left);
    }
    values.push_back(p.value);
    breaks.push_back(p.right);
  }
  return PiecewiseConstantDensity(std::move(breaks), std::move(values));
}

double PiecewiseConstantDensity::operator()(double x) const {
  if (empty() || x < breaks_.front() || x >= breaks_.back()) return 0.0;
  const auto it = std::upper_bound(breaks_.begin(), breaks_.end(), x);
  return values_[static_cast<std::size_t>(it - breaks_.begin()) - 1];
}

double PiecewiseConstantDensity::mass() const {
  double total = 0.0;
  for (std::size_t i = 0; i < values_.size(); ++i) total += values_[i] * (breaks_[i + 1] - breaks_[i]);
  return total;
}

double PiecewiseConstantDensity::cumulative_mass(double x) const {
  double total = 0.0;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (x <= breaks_[i]) break;
    total += values_[i] * (std::min(x, breaks_[i + 1]) - breaks_[i]);
  }
  return total;
}

double PiecewiseConstantDensity::max_value() const {
  return values_.empty() ? 0.0 : *std::max_element(values_.begin(), values_.end());
}

PiecewiseConstantDensity PiecewiseConstantDensity::clipped(double lo, double hi) const {
  std::vector<double> breaks;
  std::vector<double> values;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    const double a = std::max(breaks_[i], lo);
    const double b = std::min(breaks_[i + 1], hi);
    if (!(a < b)) continue;
    if (breaks.empty()) breaks.push_back(a);
    values.push_back(values_[i]);
    breaks.push_back(b);
  }
  return PiecewiseConstantDensity(std::move(breaks), std::move(values));
}

}  // namespace hughes

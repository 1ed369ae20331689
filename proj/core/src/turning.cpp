#include "hughes/turning.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "hughes/errors.hpp"

namespace hughes {

namespace {

struct CostSegment {
  double left;
  double right;
  double cost;
  std::optional<std::size_t> piece;
};

std::vector<CostSegment> cost_segments(const ModelFunctions& model, const PiecewiseConstantDensity& density) {
  std::vector<CostSegment> segments;
  segments.reserve(density.size() + 2);
  const auto& breaks = density.breakpoints();
  const auto& values = density.values();
  double cursor = -1.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double a = std::max(breaks[i], -1.0);
    const double b = std::min(breaks[i + 1], 1.0);
    if (!(a < b)) continue;
    if (a > cursor) segments.push_back({cursor, a, 1.0, std::nullopt});
    segments.push_back({a, b, model.cost(values[i]), i});
    cursor = b;
  }
  if (cursor < 1.0) segments.push_back({cursor, 1.0, 1.0, std::nullopt});
  return segments;
}

}  // namespace

TurningPointSolution solve_turning_point(const ModelFunctions& model, const PiecewiseConstantDensity& density) {
  const auto segments = cost_segments(model, density);
  double total = 0.0;
  for (const auto& s : segments) total += (s.right - s.left) * s.cost;
  const double half = 0.5 * total;

  TurningPointSolution out;
  double before = 0.0;
  std::size_t host = segments.size() - 1;
  for (std::size_t k = 0; k < segments.size(); ++k) {
    const double w = (segments[k].right - segments[k].left) * segments[k].cost;
    if (before + w >= half || k + 1 == segments.size()) {
      host = k;
      break;
    }
    before += w;
  }
  const auto& seg = segments[host];
  out.xi = std::clamp(seg.left + (half - before) / seg.cost, seg.left, seg.right);
  out.host_piece = seg.piece;

  double left = before + (out.xi - seg.left) * seg.cost;
  double right = (seg.right - out.xi) * seg.cost;
  for (std::size_t k = host + 1; k < segments.size(); ++k)
    right += (segments[k].right - segments[k].left) * segments[k].cost;
  out.residual = std::abs(left - right);

  const auto& breaks = density.breakpoints();
  if (!breaks.empty()) {
    const auto it = std::lower_bound(breaks.begin(), breaks.end(), out.xi);
    auto check = [&](std::vector<double>::const_iterator candidate) {
      if (candidate != breaks.end() && std::abs(*candidate - out.xi) <= kCoincidenceTolerance)
        out.coincident_breakpoint = static_cast<std::size_t>(candidate - breaks.begin());
    };
    check(it);
    if (!out.coincident_breakpoint && it != breaks.begin()) check(std::prev(it));
  }
  return out;
}

double turning_point_velocity(const ModelFunctions& model, const ParticleState& state) {
  const auto& x = state.positions;
  if (x.size() < 2) throw NumericalError("turning point velocity needs at least two particles");
  const long n = static_cast<long>(x.size()) - 1;
  const long split = state.split_index;
  if (split < 0 || split >= n) throw NumericalError("turning point velocity needs particles on both sides of xi");
  if (!(x[split] < state.xi && state.xi < x[split + 1]))
    throw NumericalError("turning point is not strictly inside the zero gap");

  // R(k) is the density of gap k, zero beyond the particle range and on the split gap.
  auto R = [&](long k) -> double {
    if (k < 0 || k >= n || k == split) return 0.0;
    return state.mass / (x[k + 1] - x[k]);
  };

  long lower = 0;
  while (lower <= n && x[lower] <= -1.0) ++lower;
  long upper = n;
  while (upper >= 0 && x[upper] >= 1.0) --upper;
  if (lower > split || split + 1 > upper)
    throw NumericalError("boundary brackets do not enclose the turning point");

  auto v = [&](double r) { return model.velocity(r); };
  auto ups = [&](double r) { return model.upsilon(r); };
  auto cp_rho = [&](double r) { return model.cost_prime(r) * r; };

  double twice = 0.0;
  if (lower > 0) {
    const double rs = R(lower - 1);
    const double weight = (x[lower] + 1.0) / (x[lower] - x[lower - 1]);
    twice += ((v(R(lower - 2)) - v(rs)) * weight + v(rs)) * cp_rho(rs);
  }
  twice -= v(R(split - 1)) * (1.0 - ups(R(split - 1)));
  for (long i = lower; i <= split - 1; ++i) twice += v(R(i - 1)) * (ups(R(i - 1)) - ups(R(i)));
  twice += v(R(split + 1)) * (1.0 - ups(R(split + 1)));
  for (long i = split + 2; i <= upper; ++i) twice += v(R(i)) * (ups(R(i - 1)) - ups(R(i)));
  if (upper < n) {
    const double rs = R(upper);
    const double weight = (1.0 - x[upper]) / (x[upper + 1] - x[upper]);
    twice -= (v(rs) + (v(R(upper + 1)) - v(rs)) * weight) * cp_rho(rs);
  }
  return 0.5 * twice;
}

double riemann_initial_xi(const ModelFunctions& model, double rho_minus, double rho_plus) {
  const double cp = model.cost(rho_plus);
  return (cp - model.cost(rho_minus)) / (2.0 * cp);
}

double riemann_initial_xi_velocity(const ModelFunctions& model, double rho_minus, double rho_plus) {
  const double lhs = model.v_max() * (model.cost_prime(rho_minus) * rho_minus - model.cost_prime(rho_plus) * rho_plus);
  const double rhs = model.velocity(rho_minus) * (model.upsilon(rho_minus) - model.upsilon(rho_plus));
  return 0.5 * (lhs + rhs);
}

double riemann_collision_indicator(const ModelFunctions& model, double rho_minus, double rho_plus) {
  if (rho_minus > rho_plus) throw DomainError("collision indicator needs rho- <= rho+");
  return 2.0 * riemann_initial_xi_velocity(model, rho_minus, rho_plus) + 2.0 * model.velocity(rho_plus);
}

double cone_speed(const ModelFunctions& model, double total_variation) {
  if (total_variation < 0.0) throw DomainError("total variation must be non-negative");
  const auto k = derived_constants(model);
  return 0.5 * model.v_max() * (k.lipschitz_L * total_variation + 3.0 * k.big_C);
}

SmallDataVerdict check_small_data_condition(const ModelFunctions& model, double total_variation) {
  if (!(model.rho_max() < 1.0)) throw DomainError("small-data condition needs rho_max < 1");
  SmallDataVerdict out;
  out.cone_speed = cone_speed(model, total_variation);
  out.margin = model.velocity(model.rho_max()) - out.cone_speed;
  out.holds = out.margin > 0.0;
  return out;
}

std::optional<double> critical_rho_max(const ModelFunctions& model) {
  if (model.cost_kind() == CostKind::constant) return std::nullopt;
  auto excess = [&model](double r) {
    const auto restricted = model.with_rho_max(r);
    return 1.5 * restricted.v_max() * restricted.cost_prime(r) * r - restricted.velocity(r);
  };
  double lo = 1e-12;
  double hi = model.cost_kind() == CostKind::reciprocal ? 1.0 - 1e-9 : 1.0;
  if (!(excess(lo) < 0.0 && excess(hi) > 0.0)) return std::nullopt;
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    (excess(mid) < 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace hughes

#include "hughes/model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hughes/errors.hpp"

namespace hughes {

namespace {

constexpr int kValidationSamples = 1000;
constexpr double kRhoHatTolerance = 1e-12;

std::string fmt_rho(double rho) { return std::to_string(rho); }

}  // namespace

Polynomial::Polynomial(std::vector<double> coefficients) : coeffs_(std::move(coefficients)) {}

double Polynomial::operator()(double x) const {
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Polynomial Polynomial::derivative() const {
  if (coeffs_.size() <= 1) return Polynomial{};
  std::vector<double> d(coeffs_.size() - 1);
  for (std::size_t k = 1; k < coeffs_.size(); ++k) d[k - 1] = static_cast<double>(k) * coeffs_[k];
  return Polynomial(std::move(d));
}

std::string_view to_string(VelocityKind kind) {
  switch (kind) {
    case VelocityKind::linear: return "linear";
    case VelocityKind::polynomial: return "polynomial";
  }
  return "unknown";
}

std::string_view to_string(CostKind kind) {
  switch (kind) {
    case CostKind::reciprocal: return "reciprocal";
    case CostKind::constant: return "constant";
    case CostKind::polynomial: return "polynomial";
  }
  return "unknown";
}

ModelFunctions::ModelFunctions(ModelSpec spec) : spec_(std::move(spec)) {
  if (spec_.velocity == VelocityKind::linear) spec_.velocity_coefficients = {1.0, -1.0};
  if (spec_.velocity_coefficients.empty()) throw DomainError("velocity polynomial has no coefficients");
  v_ = Polynomial(spec_.velocity_coefficients);
  dv_ = v_.derivative();
  d2v_ = dv_.derivative();

  switch (spec_.cost) {
    case CostKind::constant:
      spec_.cost_coefficients = {1.0};
      break;
    case CostKind::polynomial:
      if (spec_.cost_coefficients.empty()) throw DomainError("cost polynomial has no coefficients");
      break;
    case CostKind::reciprocal:
      spec_.cost_coefficients.clear();
      break;
  }
  c_ = Polynomial(spec_.cost_coefficients);
  dc_ = c_.derivative();
  d2c_ = dc_.derivative();
  validate();
}

ModelFunctions ModelFunctions::linear_reciprocal(double rho_max) {
  return ModelFunctions(ModelSpec{VelocityKind::linear, {}, CostKind::reciprocal, {}, rho_max});
}

ModelFunctions ModelFunctions::linear_constant(double rho_max) {
  return ModelFunctions(ModelSpec{VelocityKind::linear, {}, CostKind::constant, {}, rho_max});
}

ModelFunctions ModelFunctions::with_rho_max(double rho_max) const {
  ModelSpec copy = spec_;
  copy.rho_max = rho_max;
  return ModelFunctions(std::move(copy));
}

void ModelFunctions::validate() {
  const double rho_max = spec_.rho_max;
  if (!(rho_max > 0.0 && rho_max <= 1.0)) throw DomainError("rho_max must lie in (0, 1]");
  if (spec_.cost == CostKind::reciprocal && !(rho_max < 1.0))
    throw DomainError("reciprocal cost requires rho_max < 1");

  v_max_ = raw_velocity(0.0);
  if (!(v_max_ > 0.0)) throw DomainError("velocity must satisfy v(0) > 0");
  if (std::abs(raw_velocity(1.0)) > kDensityTolerance) throw DomainError("velocity must satisfy v(1) = 0");

  double prev = v_max_;
  for (int k = 1; k <= kValidationSamples; ++k) {
    const double rho = static_cast<double>(k) / kValidationSamples;
    const double v = raw_velocity(rho);
    if (!(v < prev)) throw DomainError("velocity is not strictly decreasing near rho = " + fmt_rho(rho));
    prev = v;
  }

  if (spec_.velocity == VelocityKind::linear) {
    rho_hat_ = 0.5;
  } else {
    auto fprime = [this](double r) { return raw_velocity(r) + r * raw_velocity_prime(r); };
    double lo = 0.0;
    double hi = 1.0;
    if (fprime(hi) > 0.0) throw DomainError("flux has no stagnation point in (0, 1)");
    while (hi - lo > kRhoHatTolerance) {
      const double mid = 0.5 * (lo + hi);
      (fprime(mid) > 0.0 ? lo : hi) = mid;
    }
    rho_hat_ = 0.5 * (lo + hi);
    for (int k = 1; k < kValidationSamples; ++k) {
      const double rho = static_cast<double>(k) / kValidationSamples;
      if (std::abs(rho - rho_hat_) < 1e-9) continue;
      if (!(fprime(rho) * (rho_hat_ - rho) > 0.0))
        throw DomainError("flux derivative changes sign more than once (near rho = " + fmt_rho(rho) + ")");
    }
  }

  max_wave_speed_ = 0.0;
  for (int k = 0; k <= kValidationSamples; ++k) {
    const double rho = static_cast<double>(k) / kValidationSamples;
    max_wave_speed_ = std::max(max_wave_speed_, std::abs(raw_velocity(rho) + rho * raw_velocity_prime(rho)));
  }

  if (spec_.cost == CostKind::reciprocal && std::abs(v_max_ - 1.0) > kDensityTolerance)
    throw DomainError("reciprocal cost requires v(0) = 1 so that c(0) = 1");
  if (std::abs(cost(0.0) - 1.0) > kDensityTolerance) throw DomainError("cost must satisfy c(0) = 1");
  if (spec_.cost != CostKind::constant) {
    for (int k = 0; k <= kValidationSamples; ++k) {
      const double rho = rho_max * static_cast<double>(k) / kValidationSamples;
      if (cost_prime(rho) < 0.0) throw DomainError("cost is not increasing near rho = " + fmt_rho(rho));
      if (!(cost_second(rho) > 0.0)) throw DomainError("cost is not strictly convex near rho = " + fmt_rho(rho));
    }
  }
}

double ModelFunctions::raw_velocity(double rho) const { return v_(rho); }
double ModelFunctions::raw_velocity_prime(double rho) const { return dv_(rho); }
double ModelFunctions::raw_velocity_second(double rho) const { return d2v_(rho); }

double ModelFunctions::checked_velocity_arg(double rho) const {
  if (!(rho >= -kDensityTolerance && rho <= 1.0 + kDensityTolerance))
    throw DomainError("density " + fmt_rho(rho) + " outside [0, 1]");
  return std::clamp(rho, 0.0, 1.0);
}

double ModelFunctions::checked_cost_arg(double rho) const {
  if (!(rho >= -kDensityTolerance && rho <= spec_.rho_max + kDensityTolerance))
    throw DomainError("density " + fmt_rho(rho) + " outside [0, rho_max]");
  return std::clamp(rho, 0.0, spec_.rho_max);
}

double ModelFunctions::velocity(double rho) const { return raw_velocity(checked_velocity_arg(rho)); }

double ModelFunctions::velocity_prime(double rho) const { return raw_velocity_prime(checked_velocity_arg(rho)); }

double ModelFunctions::flux(double rho) const {
  const double r = checked_velocity_arg(rho);
  return r * raw_velocity(r);
}

double ModelFunctions::flux_prime(double rho) const {
  const double r = checked_velocity_arg(rho);
  return raw_velocity(r) + r * raw_velocity_prime(r);
}

double ModelFunctions::cost(double rho) const {
  const double r = checked_cost_arg(rho);
  if (spec_.cost == CostKind::reciprocal) return 1.0 / raw_velocity(r);
  return c_(r);
}

double ModelFunctions::cost_prime(double rho) const {
  const double r = checked_cost_arg(rho);
  if (spec_.cost == CostKind::reciprocal) {
    const double v = raw_velocity(r);
    return -raw_velocity_prime(r) / (v * v);
  }
  return dc_(r);
}

double ModelFunctions::cost_second(double rho) const {
  const double r = checked_cost_arg(rho);
  if (spec_.cost == CostKind::reciprocal) {
    const double v = raw_velocity(r);
    const double dv = raw_velocity_prime(r);
    return (2.0 * dv * dv - v * raw_velocity_second(r)) / (v * v * v);
  }
  return d2c_(r);
}

double ModelFunctions::upsilon(double rho) const { return cost(rho) - cost_prime(rho) * rho; }

DerivedConstants derived_constants(const ModelFunctions& model) {
  if (model.cost_kind() == CostKind::constant) return {};

  const double rho_max = model.rho_max();
  DerivedConstants out;
  out.big_C = model.cost_prime(rho_max) * rho_max;

  if (model.cost_kind() == CostKind::reciprocal && model.velocity_kind() == VelocityKind::linear) {
    // c''(rho) rho = 2 rho / (1 - rho)^3 is increasing.
    out.lipschitz_L = model.cost_second(rho_max) * rho_max;
    return out;
  }

  auto g = [&model](double r) { return model.cost_second(r) * r; };
  constexpr int samples = 2000;
  int best = 0;
  double best_value = g(0.0);
  for (int k = 1; k <= samples; ++k) {
    const double value = g(rho_max * k / samples);
    if (value > best_value) {
      best_value = value;
      best = k;
    }
  }
  // Golden-section refinement on the bracketing sample cell.
  double a = rho_max * std::max(best - 1, 0) / samples;
  double b = rho_max * std::min(best + 1, samples) / samples;
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double g1 = g(x1);
  double g2 = g(x2);
  while (b - a > 1e-13) {
    if (g1 < g2) {
      a = x1;
      x1 = x2;
      g1 = g2;
      x2 = a + inv_phi * (b - a);
      g2 = g(x2);
    } else {
      b = x2;
      x2 = x1;
      g2 = g1;
      x1 = b - inv_phi * (b - a);
      g1 = g(x1);
    }
  }
  out.lipschitz_L = std::max({best_value, g1, g2});
  return out;
}

}  // namespace hughes

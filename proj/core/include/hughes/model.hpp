#pragma once

#include <string_view>
#include <vector>

namespace hughes {

/// Dense polynomial with coefficients in increasing degree.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<double> coefficients);

  double operator()(double x) const;
  Polynomial derivative() const;
  const std::vector<double>& coefficients() const { return coeffs_; }

 private:
  std::vector<double> coeffs_;
};

enum class VelocityKind { linear, polynomial };
enum class CostKind { reciprocal, constant, polynomial };

std::string_view to_string(VelocityKind kind);
std::string_view to_string(CostKind kind);

struct ModelSpec {
  VelocityKind velocity = VelocityKind::linear;
  std::vector<double> velocity_coefficients;  // only for VelocityKind::polynomial
  CostKind cost = CostKind::reciprocal;
  std::vector<double> cost_coefficients;  // only for CostKind::polynomial
  double rho_max = 0.99;
};

/// Velocity map v and running cost c of the one-dimensional Hughes model,
/// with the derived flux f(rho) = rho v(rho).
///
/// Construction validates the structural assumptions on a sampling grid:
/// v is strictly decreasing with v(1) = 0 and v(0) > 0; f' changes sign
/// exactly once at the stagnation density rho_hat; c(0) = 1 and, unless the
/// cost is constant, c is increasing and strictly convex on [0, rho_max].
/// Invalid specifications throw DomainError. Instances are immutable.
class ModelFunctions {
 public:
  explicit ModelFunctions(ModelSpec spec);

  /// v(rho) = 1 - rho, c(rho) = 1 / v(rho).
  static ModelFunctions linear_reciprocal(double rho_max);
  /// v(rho) = 1 - rho, c(rho) = 1.
  static ModelFunctions linear_constant(double rho_max);

  double velocity(double rho) const;
  double velocity_prime(double rho) const;
  double flux(double rho) const;
  double flux_prime(double rho) const;

  // Cost evaluations reject rho > rho_max (beyond kDensityTolerance).
  double cost(double rho) const;
  double cost_prime(double rho) const;
  double cost_second(double rho) const;
  /// c(rho) - c'(rho) rho
  double upsilon(double rho) const;

  double v_max() const { return v_max_; }
  double rho_max() const { return spec_.rho_max; }
  double rho_hat() const { return rho_hat_; }
  /// max |f'| over [0, 1]; bounds the characteristic speeds for the CFL limit.
  double max_wave_speed() const { return max_wave_speed_; }

  VelocityKind velocity_kind() const { return spec_.velocity; }
  CostKind cost_kind() const { return spec_.cost; }
  const ModelSpec& spec() const { return spec_; }

  /// Same v and c restricted to a different maximal density.
  ModelFunctions with_rho_max(double rho_max) const;

 private:
  double checked_velocity_arg(double rho) const;
  double checked_cost_arg(double rho) const;
  double raw_velocity(double rho) const;
  double raw_velocity_prime(double rho) const;
  double raw_velocity_second(double rho) const;
  void validate();

  ModelSpec spec_;
  Polynomial v_, dv_, d2v_;
  Polynomial c_, dc_, d2c_;
  double v_max_ = 1.0;
  double rho_hat_ = 0.5;
  double max_wave_speed_ = 1.0;
};

struct DerivedConstants {
  double lipschitz_L = 0.0;  // max { c''(rho) rho : rho in [0, rho_max] }
  double big_C = 0.0;        // c'(rho_max) rho_max
};

DerivedConstants derived_constants(const ModelFunctions& model);

}  // namespace hughes

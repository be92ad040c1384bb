#pragma once

#include "gkr/polynomial.hpp"

namespace gkr {

/// Scalar DDE
///   x' = a x(t) + b x(t - tau) + c int_{t-tau}^t x + F(x(t), x(t - tau), int x).
/// F carries no constant or linear part.
struct DdeSpec {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double tau = 1.0;
  Poly3 nonlinearity;

  /// Throws ConfigError if tau <= 0 or F is not tangent at the origin.
  void validate() const;

  /// Right-hand side given the three formal arguments.
  double rhs(double x, double x_delayed, double integral) const {
    return a * x + b * x_delayed + c * integral + nonlinearity(x, x_delayed, integral);
  }

  DdeSpec with_tau(double new_tau) const {
    DdeSpec s = *this;
    s.tau = new_tau;
    return s;
  }
};

/// Suarez-Schopf model T' = T - alpha T(t - tau) - T^3, perturbed about
/// T+ = sqrt(1 - alpha):  a = 1 - 3 T+^2, b = -alpha, c = 0,
/// F(u) = -3 T+ u^2 - u^3.
DdeSpec suarez_schopf_perturbed(double alpha, double tau);

/// Same model perturbed about T- = -sqrt(1 - alpha) (mirror image).
DdeSpec suarez_schopf_perturbed_minus(double alpha, double tau);

/// T+ for alpha in (0, 1).
double suarez_schopf_t_plus(double alpha);

}  // namespace gkr

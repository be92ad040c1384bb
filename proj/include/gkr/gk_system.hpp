#pragma once

#include <Eigen/Dense>
#include <array>
#include <iosfwd>
#include <vector>

#include "gkr/dde_spec.hpp"

namespace gkr {

/// N-dimensional Galerkin-Koornwinder ODE y' = A y + G(y) for a scalar DDE.
///
/// A = (2/tau) P + Q where P only depends on the Koornwinder derivative
/// coefficients and Q collects the model coefficients (a, b, c).  The
/// nonlinearity has rank one: G(y) = F(u.y, v.y, w.y) nu with
/// u = (1, ..., 1), v_n = K_n(-1), w = (tau, -tau, ..., -tau) and
/// nu_j = 1 / ||K_j||^2.
struct GkSystem {
  int n = 0;
  double tau = 0.0;
  Eigen::MatrixXd A;
  Eigen::MatrixXd P;
  Eigen::MatrixXd Q;
  Eigen::VectorXd nu;
  /// Rows: u (current state), v (delayed state), w (delay integral).
  std::array<Eigen::VectorXd, 3> functionals;
  Poly3 nonlinearity;

  /// Values (u.y, v.y, w.y) fed to F.
  template <typename Vec>
  auto arguments(const Vec& y) const {
    using S = typename Vec::Scalar;
    return std::array<S, 3>{functionals[0].cast<S>().dot(y), functionals[1].cast<S>().dot(y),
                            functionals[2].cast<S>().dot(y)};
  }

  Eigen::VectorXd rhs(const Eigen::VectorXd& y) const;
};

/// Assembles A, P, Q, nu and the functionals.  Requires N >= 1 (the
/// spectral and reduction modules need N >= 2).
GkSystem assemble_linear(const DdeSpec& spec, int n);

/// G(y) = F(u.y, v.y, w.y) nu.
Eigen::VectorXd gk_nonlinear(const GkSystem& system, const Eigen::VectorXd& y);

/// x_N = sum_j y_j (every rescaled Koornwinder polynomial equals 1 at 0).
double reconstruct_endpoint(const Eigen::VectorXd& y);

struct GkTrajectory {
  std::vector<double> times;
  std::vector<Eigen::VectorXd> states;

  std::vector<double> endpoint_series() const;
  void write_csv(std::ostream& os) const;
};

/// Fixed-step classical RK4.  Samples every `stride` steps (the initial
/// state and the final state are always included).  Throws BlowUpError if
/// the state becomes non-finite.
GkTrajectory integrate_gk(const GkSystem& system, const Eigen::VectorXd& y0, double t_end,
                          double dt, int stride = 1);

}  // namespace gkr

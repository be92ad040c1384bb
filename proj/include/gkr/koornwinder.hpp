#pragma once

#include <functional>
#include <vector>

namespace gkr {

// Koornwinder polynomials on [-1, 1] and their rescaled versions on [-tau, 0].
//
// Degrees are 0-based throughout: K_0 = 1, K_1(s) = 2s - 1, ...  The
// rescaled polynomial is K_n^tau(theta) = K_n(1 + 2 theta / tau), and the
// augmented basis element is (K_n^tau, K_n^tau(0)) = (K_n^tau, 1).

/// Legendre polynomial L_n(s) by the three-term recurrence.
double legendre_eval(int n, double s);

/// Derivative L_n'(s), from the recurrence for (L_n, L_n').
double legendre_deriv(int n, double s);

/// K_n(s) = -(1 + s) L_n'(s) + (n^2 + n + 1) L_n(s), s in [-1, 1].
double koornwinder_eval(int n, double s);

/// K_n'(s), by differentiating the defining formula.
double koornwinder_deriv(int n, double s);

/// K_n(-1) = (n^2 + n + 1)(-1)^n.
double koornwinder_at_minus_one(int n);

/// Squared norm (n^2 + 1)((n + 1)^2 + 1) / (2n + 1) under the
/// half-Lebesgue plus right-endpoint Dirac measure.
double koornwinder_norm_sq(int n);

/// Coefficients (a_{n,0}, ..., a_{n,n-1}) with K_n' = sum_k a_{n,k} K_k,
/// from back-substitution on the upper-triangular system T a = b.
std::vector<double> derivative_coeffs(int n);

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussLegendre {
  std::vector<double> nodes;
  std::vector<double> weights;

  explicit GaussLegendre(int order);
  int order() const { return static_cast<int>(nodes.size()); }
};

/// Element of H = L^2([-tau, 0)) x R: a history segment plus its endpoint.
struct HistoryElement {
  std::function<double(double)> segment;  // theta in [-tau, 0)
  double endpoint = 0.0;                  // value at theta = 0

  /// Continuous history: endpoint taken as segment(0).
  static HistoryElement continuous(std::function<double(double)> f);
};

/// Default quadrature order for H inner products at basis size n.
int default_quad_order(int n);

/// <f, g>_H = (1/tau) int_{-tau}^0 f g dtheta + f_end g_end.
double inner_product_H(const HistoryElement& f, const HistoryElement& g, double tau,
                       int quad_order);

/// Table of Koornwinder data up to degree max_degree - 1 on the delay
/// interval [-tau, 0].
class KoornwinderBasis {
 public:
  KoornwinderBasis(int max_degree, double tau);

  int size() const { return max_degree_; }
  double tau() const { return tau_; }

  /// a_{n,k}, 0 <= k < n < size().
  double deriv_coeff(int n, int k) const { return deriv_coeffs_[n][k]; }
  const std::vector<double>& deriv_coeffs(int n) const { return deriv_coeffs_[n]; }

  double norm_sq(int n) const { return norm_sq_[n]; }

  /// K_n^tau(theta), theta in [-tau, 0].
  double eval(int n, double theta) const;
  /// d/dtheta K_n^tau(theta).
  double deriv(int n, double theta) const;

  /// Basis element (K_n^tau, 1) as an H element.
  HistoryElement element(int n) const;

 private:
  int max_degree_;
  double tau_;
  std::vector<std::vector<double>> deriv_coeffs_;
  std::vector<double> norm_sq_;
};

/// y_n = <history, K_n^tau>_H / ||K_n||^2, n = 0..n_modes-1.
std::vector<double> project_history(const HistoryElement& history, int n_modes, double tau,
                                    int quad_order = 0);

}  // namespace gkr

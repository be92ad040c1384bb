#include "gkr/koornwinder.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>

#include "gkr/errors.hpp"

namespace gkr {

namespace {

// Returns (L_n(s), L_n'(s)).
std::pair<double, double> legendre_pair(int n, double s) {
  if (n < 0) throw ConfigError("legendre: negative degree");
  double p0 = 1.0, d0 = 0.0;
  if (n == 0) return {p0, d0};
  double p1 = s, d1 = 1.0;
  for (int k = 2; k <= n; ++k) {
    const double p2 = ((2 * k - 1) * s * p1 - (k - 1) * p0) / k;
    // (L_k)' = (L_{k-2})' + (2k - 1) L_{k-1}
    const double d2 = d0 + (2 * k - 1) * p1;
    p0 = p1;
    p1 = p2;
    d0 = d1;
    d1 = d2;
  }
  return {p1, d1};
}

void check_unit_interval(double s) {
  // NaN passes through so it propagates to the caller.
  if (s < -1.0 - 1e-12 || s > 1.0 + 1e-12) {
    throw ConfigError("koornwinder: argument outside [-1, 1]");
  }
}

}  // namespace

double legendre_eval(int n, double s) { return legendre_pair(n, s).first; }

double legendre_deriv(int n, double s) { return legendre_pair(n, s).second; }

double koornwinder_eval(int n, double s) {
  check_unit_interval(s);
  const auto [l, dl] = legendre_pair(n, s);
  const double c = static_cast<double>(n) * n + n + 1;
  return -(1.0 + s) * dl + c * l;
}

double koornwinder_deriv(int n, double s) {
  check_unit_interval(s);
  // L_n'' from the Legendre ODE is singular at the endpoints, so use the
  // derivative recurrence one more time instead: differentiate
  // (L_k)' = (L_{k-2})' + (2k - 1) L_{k-1}.
  if (n < 0) throw ConfigError("koornwinder: negative degree");
  if (n == 0) return 0.0;
  std::vector<double> d2(n + 1, 0.0);
  for (int k = 2; k <= n; ++k) d2[k] = d2[k - 2] + (2 * k - 1) * legendre_deriv(k - 1, s);
  const double dl = legendre_deriv(n, s);
  const double c = static_cast<double>(n) * n + n + 1;
  return -dl - (1.0 + s) * d2[n] + c * dl;
}

double koornwinder_at_minus_one(int n) {
  const double c = static_cast<double>(n) * n + n + 1;
  return (n % 2 == 0) ? c : -c;
}

double koornwinder_norm_sq(int n) {
  if (n < 0) throw ConfigError("koornwinder_norm_sq: negative degree");
  const double nn = n;
  return (nn * nn + 1.0) * ((nn + 1.0) * (nn + 1.0) + 1.0) / (2.0 * nn + 1.0);
}

std::vector<double> derivative_coeffs(int n) {
  if (n < 1) throw ConfigError("derivative_coeffs: n must be >= 1");
  const double nd = n;
  std::vector<double> b(n);
  for (int i = 0; i < n; ++i) {
    const double id = i;
    if ((n + i) % 2 == 0) {
      b[i] = -0.5 * (2 * id + 1) * (nd + id + 1) * (nd - id);
    } else {
      b[i] = (nd * nd + nd) * (2 * id + 1) - 0.5 * id * (nd + id) * (nd - id + 1) -
             0.5 * (id + 1) * (nd - id - 1) * (nd + id + 2);
    }
  }
  // T_ii = i^2 + 1, T_ij = -(2i + 1) for j > i.
  std::vector<double> a(n);
  double tail = 0.0;  // sum_{j > i} a_j
  for (int i = n - 1; i >= 0; --i) {
    const double id = i;
    a[i] = (b[i] + (2 * id + 1) * tail) / (id * id + 1);
    tail += a[i];
  }
  return a;
}

GaussLegendre::GaussLegendre(int order) {
  if (order < 1) throw ConfigError("GaussLegendre: order must be >= 1");
  nodes.resize(order);
  weights.resize(order);
  const int half = (order + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (order + 0.5));
    double dp = 1.0;
    for (int it = 0; it < 100; ++it) {
      const auto [p, d] = legendre_pair(order, x);
      dp = d;
      const double dx = p / d;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    dp = legendre_pair(order, x).second;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    nodes[i] = -x;
    nodes[order - 1 - i] = x;
    weights[i] = w;
    weights[order - 1 - i] = w;
  }
}

HistoryElement HistoryElement::continuous(std::function<double(double)> f) {
  HistoryElement h;
  h.endpoint = f(0.0);
  h.segment = std::move(f);
  return h;
}

int default_quad_order(int n) { return std::max(64, 2 * n); }

double inner_product_H(const HistoryElement& f, const HistoryElement& g, double tau,
                       int quad_order) {
  if (quad_order < 2) throw ConfigError("inner_product_H: quad_order must be >= 2");
  if (!(tau > 0.0)) throw ConfigError("inner_product_H: tau must be positive");
  const GaussLegendre rule(quad_order);
  double integral = 0.0;
  for (int q = 0; q < rule.order(); ++q) {
    // theta = tau (s - 1) / 2 maps [-1, 1] onto [-tau, 0]; dtheta / tau = ds / 2.
    const double theta = 0.5 * tau * (rule.nodes[q] - 1.0);
    integral += rule.weights[q] * f.segment(theta) * g.segment(theta);
  }
  return 0.5 * integral + f.endpoint * g.endpoint;
}

KoornwinderBasis::KoornwinderBasis(int max_degree, double tau)
    : max_degree_(max_degree), tau_(tau) {
  if (max_degree < 1) throw ConfigError("KoornwinderBasis: max_degree must be >= 1");
  if (!(tau > 0.0)) throw ConfigError("KoornwinderBasis: tau must be positive");
  deriv_coeffs_.resize(max_degree);
  norm_sq_.resize(max_degree);
  for (int n = 0; n < max_degree; ++n) {
    if (n > 0) deriv_coeffs_[n] = derivative_coeffs(n);
    norm_sq_[n] = koornwinder_norm_sq(n);
  }
}

double KoornwinderBasis::eval(int n, double theta) const {
  return koornwinder_eval(n, std::clamp(1.0 + 2.0 * theta / tau_, -1.0, 1.0));
}

double KoornwinderBasis::deriv(int n, double theta) const {
  return 2.0 / tau_ * koornwinder_deriv(n, std::clamp(1.0 + 2.0 * theta / tau_, -1.0, 1.0));
}

HistoryElement KoornwinderBasis::element(int n) const {
  const double tau = tau_;
  return {[n, tau](double theta) {
            return koornwinder_eval(n, std::clamp(1.0 + 2.0 * theta / tau, -1.0, 1.0));
          },
          1.0};
}

std::vector<double> project_history(const HistoryElement& history, int n_modes, double tau,
                                    int quad_order) {
  if (n_modes < 1) throw ConfigError("project_history: need at least one mode");
  if (!(tau > 0.0)) throw ConfigError("project_history: tau must be positive");
  if (quad_order <= 0) quad_order = default_quad_order(n_modes);
  const GaussLegendre rule(quad_order);

  // Sample the history once, then accumulate against every K_n.
  std::vector<double> weighted(rule.order());
  std::vector<double> s_nodes(rule.order());
  for (int q = 0; q < rule.order(); ++q) {
    const double theta = 0.5 * tau * (rule.nodes[q] - 1.0);
    weighted[q] = rule.weights[q] * history.segment(theta);
    s_nodes[q] = rule.nodes[q];
  }
  std::vector<double> y(n_modes);
  for (int n = 0; n < n_modes; ++n) {
    double integral = 0.0;
    for (int q = 0; q < rule.order(); ++q) integral += weighted[q] * koornwinder_eval(n, s_nodes[q]);
    y[n] = (0.5 * integral + history.endpoint) / koornwinder_norm_sq(n);
  }
  return y;
}

}  // namespace gkr

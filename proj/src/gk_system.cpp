#include "gkr/gk_system.hpp"

#include <cmath>
#include <ostream>

#include "gkr/errors.hpp"
#include "gkr/koornwinder.hpp"

namespace gkr {

GkSystem assemble_linear(const DdeSpec& spec, int n) {
  spec.validate();
  if (n < 1) throw ConfigError("assemble_linear: N must be >= 1");
  const KoornwinderBasis basis(n, spec.tau);

  GkSystem sys;
  sys.n = n;
  sys.tau = spec.tau;
  sys.nonlinearity = spec.nonlinearity;
  sys.P = Eigen::MatrixXd::Zero(n, n);
  sys.Q = Eigen::MatrixXd::Zero(n, n);
  sys.nu.resize(n);
  for (auto& f : sys.functionals) f.resize(n);

  for (int j = 0; j < n; ++j) {
    sys.nu[j] = 1.0 / basis.norm_sq(j);
    sys.functionals[0][j] = 1.0;
    sys.functionals[1][j] = koornwinder_at_minus_one(j);
    sys.functionals[2][j] = j == 0 ? spec.tau : -spec.tau;
  }

  for (int i = 0; i < n; ++i) {
    const double ni = basis.norm_sq(i);
    for (int j = 0; j < n; ++j) {
      const double model = spec.a + spec.b * koornwinder_at_minus_one(j) +
                           spec.c * spec.tau * (j == 0 ? 1.0 : -1.0);
      double transport = 0.0;
      for (int k = 0; k < j; ++k) transport += basis.deriv_coeff(j, k) * ((i == k ? ni : 0.0) - 1.0);
      sys.Q(i, j) = model / ni;
      sys.P(i, j) = transport / ni;
    }
  }
  sys.A = (2.0 / spec.tau) * sys.P + sys.Q;
  return sys;
}

Eigen::VectorXd gk_nonlinear(const GkSystem& system, const Eigen::VectorXd& y) {
  const auto [u, v, w] = system.arguments(y);
  return system.nonlinearity(u, v, w) * system.nu;
}

Eigen::VectorXd GkSystem::rhs(const Eigen::VectorXd& y) const { return A * y + gk_nonlinear(*this, y); }

double reconstruct_endpoint(const Eigen::VectorXd& y) { return y.sum(); }

std::vector<double> GkTrajectory::endpoint_series() const {
  std::vector<double> out;
  out.reserve(states.size());
  for (const auto& s : states) out.push_back(reconstruct_endpoint(s));
  return out;
}

void GkTrajectory::write_csv(std::ostream& os) const {
  const int n = states.empty() ? 0 : static_cast<int>(states.front().size());
  os << "t";
  for (int j = 0; j < n; ++j) os << ",y" << j;
  os << ",xN\n";
  os.precision(17);
  for (std::size_t k = 0; k < states.size(); ++k) {
    os << times[k];
    for (int j = 0; j < n; ++j) os << ',' << states[k][j];
    os << ',' << reconstruct_endpoint(states[k]) << '\n';
  }
}

GkTrajectory integrate_gk(const GkSystem& system, const Eigen::VectorXd& y0, double t_end,
                          double dt, int stride) {
  if (!(dt > 0.0) || !(t_end > 0.0) || dt > t_end) {
    throw ConfigError("integrate_gk: need 0 < dt <= t_end");
  }
  if (y0.size() != system.n) throw ConfigError("integrate_gk: initial state has wrong size");
  if (stride < 1) stride = 1;

  const auto steps = static_cast<long>(std::llround(t_end / dt));
  GkTrajectory traj;
  traj.times.reserve(steps / stride + 2);
  traj.states.reserve(steps / stride + 2);
  traj.times.push_back(0.0);
  traj.states.push_back(y0);

  Eigen::VectorXd y = y0, k1, k2, k3, k4;
  for (long s = 1; s <= steps; ++s) {
    k1 = system.rhs(y);
    k2 = system.rhs(y + 0.5 * dt * k1);
    k3 = system.rhs(y + 0.5 * dt * k2);
    k4 = system.rhs(y + dt * k3);
    y += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (!y.allFinite()) throw BlowUpError("integrate_gk: non-finite state", s * dt);
    if (s % stride == 0 || s == steps) {
      traj.times.push_back(s * dt);
      traj.states.push_back(y);
    }
  }
  return traj;
}

}  // namespace gkr

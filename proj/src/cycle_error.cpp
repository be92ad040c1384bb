#include "gkr/cycle_error.hpp"

#include <algorithm>
#include <cmath>

#include "gkr/dde_oracle.hpp"
#include "gkr/errors.hpp"
#include "gkr/gk_system.hpp"
#include "gkr/koornwinder.hpp"

namespace gkr {

CycleErrorResult gk_cycle_errors(const DdeSpec& spec, const std::vector<int>& modes,
                                 const CycleErrorProtocol& protocol) {
  spec.validate();
  if (protocol.coarse_divisions < 1 || protocol.fine_divisions < 1 || protocol.stride < 1)
    throw ConfigError("gk_cycle_errors: step divisions and stride must be positive");
  if (!(protocol.settle_time > protocol.transient_skip))
    throw ConfigError("gk_cycle_errors: settle time must exceed the transient skip");

  const double tau = spec.tau;
  const double h0 = protocol.history_value;
  const TimeSeries coarse =
      integrate_dde(spec, [h0](double) { return h0; }, protocol.settle_time, tau / protocol.coarse_divisions);
  const Orbit orbit = extract_periodic_orbit(coarse, protocol.transient_skip);
  const HistoryElement hist = coarse.history_at(coarse.back_time(), tau);

  const double dt = tau / protocol.fine_divisions;
  const TimeSeries fine = integrate_dde(spec, hist.segment, orbit.period, dt, protocol.stride);

  CycleErrorResult out;
  out.tau = tau;
  out.period = orbit.period;
  out.modes = modes;
  for (int n : modes) {
    const GkSystem sys = assemble_linear(spec, n);
    const std::vector<double> y = project_history(hist, n, tau);
    const Eigen::VectorXd y0 = Eigen::Map<const Eigen::VectorXd>(y.data(), n);
    const GkTrajectory tr = integrate_gk(sys, y0, orbit.period, dt, protocol.stride);
    const std::vector<double> xs = tr.endpoint_series();
    double err = 0.0;
    const std::size_t m = std::min(xs.size(), fine.size());
    for (std::size_t k = 0; k < m; ++k) err = std::max(err, std::abs(xs[k] - fine.values[k]));
    out.errors.push_back(err);
  }
  return out;
}

}  // namespace gkr

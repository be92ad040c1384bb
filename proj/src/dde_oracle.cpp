#include "gkr/dde_oracle.hpp"

#include <algorithm>
#include <cmath>

#include "gkr/errors.hpp"

namespace gkr {

namespace {

double hermite(double x0, double x1, double f0, double f1, double h, double s) {
  const double s2 = s * s, s3 = s2 * s;
  return (2 * s3 - 3 * s2 + 1) * x0 + (s3 - 2 * s2 + s) * h * f0 + (-2 * s3 + 3 * s2) * x1 +
         (s3 - s2) * h * f1;
}

std::size_t locate(const std::vector<double>& times, double t) {
  auto it = std::upper_bound(times.begin(), times.end(), t);
  std::size_t k = (it == times.begin()) ? 0 : static_cast<std::size_t>(it - times.begin()) - 1;
  return std::min(k, times.size() - 2);
}

}  // namespace

double TimeSeries::at(double t) const {
  if (times.size() < 2) throw NumericError("TimeSeries: need at least two samples");
  const double span = times.back() - times.front();
  if (t < times.front() - 1e-9 * span - 1e-12 || t > times.back() + 1e-9 * span + 1e-12) {
    throw NumericError("TimeSeries: time outside the sampled range");
  }
  const std::size_t k = locate(times, t);
  const double h = times[k + 1] - times[k];
  const double s = std::clamp((t - times[k]) / h, 0.0, 1.0);
  if (slopes.size() == values.size()) return hermite(values[k], values[k + 1], slopes[k], slopes[k + 1], h, s);
  return values[k] + s * (values[k + 1] - values[k]);
}

HistoryElement TimeSeries::history_at(double t, double tau) const {
  if (t - tau < times.front() - 1e-9 * tau) throw NumericError("history_at: window starts before the series");
  const TimeSeries* self = this;
  return {[self, t](double theta) { return self->at(t + theta); }, at(t)};
}

TimeSeries TimeSeries::tail_from(double t0) const {
  TimeSeries out;
  const auto first = static_cast<std::size_t>(std::lower_bound(times.begin(), times.end(), t0) - times.begin());
  out.times.assign(times.begin() + first, times.end());
  out.values.assign(values.begin() + first, values.end());
  if (slopes.size() == values.size()) out.slopes.assign(slopes.begin() + first, slopes.end());
  return out;
}

std::string to_string(Stability s) {
  switch (s) {
    case Stability::stable: return "stable";
    case Stability::unstable: return "unstable";
    case Stability::mixed: return "mixed";
  }
  return "stable";
}

Stability stability_from_string(const std::string& s) {
  if (s == "stable") return Stability::stable;
  if (s == "unstable") return Stability::unstable;
  if (s == "mixed") return Stability::mixed;
  throw ConfigError("unknown stability flag: " + s);
}

TimeSeries integrate_dde(const DdeSpec& spec, const std::function<double(double)>& history,
                         double t_end, double dt, int stride) {
  spec.validate();
  const double tau = spec.tau;
  if (!(dt > 0.0) || dt > tau) throw ConfigError("integrate_dde: need 0 < dt <= tau");
  if (!(t_end > 0.0)) throw ConfigError("integrate_dde: t_end must be positive");
  if (stride < 1) stride = 1;

  const auto steps = static_cast<long>(std::llround(t_end / dt));
  const long window = static_cast<long>(std::ceil(tau / dt)) + 3;
  // Ring buffer of (x_k, f_k) for the last `window` grid points.
  std::vector<double> ring_x(window), ring_f(window);

  auto delayed = [&](double s, long current) -> double {
    if (s <= 0.0) return history(std::max(s, -tau));
    double pos = s / dt;
    long k = static_cast<long>(std::floor(pos));
    if (k >= current) k = current - 1;  // s within round-off of t_current
    if (k < 0) k = 0;
    if (current - k >= window - 1) throw NumericError("integrate_dde: history buffer underrun");
    const double frac = std::clamp(pos - static_cast<double>(k), 0.0, 1.0);
    const long i0 = k % window, i1 = (k + 1) % window;
    return hermite(ring_x[i0], ring_x[i1], ring_f[i0], ring_f[i1], dt, frac);
  };

  // Distributed-delay integral at t = 0.
  double integral = 0.0;
  {
    const GaussLegendre rule(64);
    for (int q = 0; q < rule.order(); ++q) {
      integral += rule.weights[q] * history(0.5 * tau * (rule.nodes[q] - 1.0));
    }
    integral *= 0.5 * tau;
  }

  TimeSeries out;
  out.times.reserve(steps / stride + 2);
  out.values.reserve(steps / stride + 2);
  out.slopes.reserve(steps / stride + 2);

  double x = history(0.0);
  for (long n = 0; n <= steps; ++n) {
    const double t = n * dt;
    const double xd0 = delayed(t - tau, n);
    const double f0 = spec.rhs(x, xd0, integral);
    ring_x[n % window] = x;
    ring_f[n % window] = f0;
    if (n % stride == 0 || n == steps) {
      out.times.push_back(t);
      out.values.push_back(x);
      out.slopes.push_back(f0);
    }
    if (n == steps) break;

    const double xd_half = delayed(t + 0.5 * dt - tau, n);
    const double xd1 = delayed(t + dt - tau, n);
    // State (x, I); I' = x - x(t - tau).
    const double kx1 = f0, ki1 = x - xd0;
    const double x2 = x + 0.5 * dt * kx1, i2 = integral + 0.5 * dt * ki1;
    const double kx2 = spec.rhs(x2, xd_half, i2), ki2 = x2 - xd_half;
    const double x3 = x + 0.5 * dt * kx2, i3 = integral + 0.5 * dt * ki2;
    const double kx3 = spec.rhs(x3, xd_half, i3), ki3 = x3 - xd_half;
    const double x4 = x + dt * kx3, i4 = integral + dt * ki3;
    const double kx4 = spec.rhs(x4, xd1, i4), ki4 = x4 - xd1;
    x += dt / 6.0 * (kx1 + 2 * kx2 + 2 * kx3 + kx4);
    integral += dt / 6.0 * (ki1 + 2 * ki2 + 2 * ki3 + ki4);
    if (!std::isfinite(x) || std::abs(x) > 1e8) throw BlowUpError("integrate_dde: blow-up", t + dt);
  }
  return out;
}

TimeSeries continue_dde(const DdeSpec& spec, const TimeSeries& previous, double t_end, double dt,
                        int stride) {
  const double t_last = previous.back_time();
  const auto hist = previous.history_at(t_last, spec.tau);
  return integrate_dde(spec, hist.segment, t_end, dt, stride);
}

std::array<double, 3> steady_states(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw ConfigError("steady_states: alpha must lie in (0, 1)");
  const double tp = std::sqrt(1.0 - alpha);
  return {0.0, tp, -tp};
}

Orbit extract_periodic_orbit(const TimeSeries& series, double transient_skip, Stability stability) {
  const TimeSeries tail = series.tail_from(series.front_time() + transient_skip);
  if (tail.size() < 8) throw NumericError("no periodicity detected: series too short");

  const auto [mn, mx] = std::minmax_element(tail.values.begin(), tail.values.end());
  if (*mx - *mn <= 1e-12 * (1.0 + std::abs(*mx))) throw NumericError("no periodicity detected: constant signal");
  double mean = 0.0;
  for (double v : tail.values) mean += v;
  mean /= static_cast<double>(tail.size());

  // Upward crossings of the mean, located by a parabola through three samples.
  std::vector<double> crossings;
  for (std::size_t k = 1; k + 1 < tail.size(); ++k) {
    const double a = tail.values[k] - mean, b = tail.values[k + 1] - mean;
    if (!(a < 0.0 && b >= 0.0)) continue;
    const double t0 = tail.times[k - 1], t1 = tail.times[k], t2 = tail.times[k + 1];
    const double y0 = tail.values[k - 1] - mean;
    double tc = t1 + (t2 - t1) * a / (a - b);  // linear guess
    // Newton on the Lagrange parabola through the three points.
    for (int it = 0; it < 5; ++it) {
      const double l0 = (tc - t1) * (tc - t2) / ((t0 - t1) * (t0 - t2));
      const double l1 = (tc - t0) * (tc - t2) / ((t1 - t0) * (t1 - t2));
      const double l2 = (tc - t0) * (tc - t1) / ((t2 - t0) * (t2 - t1));
      const double p = y0 * l0 + a * l1 + b * l2;
      const double d0 = ((tc - t1) + (tc - t2)) / ((t0 - t1) * (t0 - t2));
      const double d1 = ((tc - t0) + (tc - t2)) / ((t1 - t0) * (t1 - t2));
      const double d2 = ((tc - t0) + (tc - t1)) / ((t2 - t0) * (t2 - t1));
      const double dp = y0 * d0 + a * d1 + b * d2;
      if (dp == 0.0) break;
      const double next = tc - p / dp;
      if (!(next >= t1 && next <= t2)) break;
      tc = next;
    }
    crossings.push_back(tc);
  }
  if (crossings.size() < 3) throw NumericError("no periodicity detected: fewer than three mean crossings");

  std::vector<double> intervals;
  for (std::size_t i = 1; i < crossings.size(); ++i) intervals.push_back(crossings[i] - crossings[i - 1]);
  const auto [imin, imax] = std::minmax_element(intervals.begin(), intervals.end());
  const double period = (crossings.back() - crossings.front()) / static_cast<double>(intervals.size());
  if ((*imax - *imin) / period > 0.01) throw NumericError("no periodicity detected: crossing intervals vary by more than 1%");

  Orbit orbit;
  orbit.period = period;
  orbit.stability = stability;
  const double t_end = crossings.back();
  const double t_start = t_end - period;
  double lo = tail.at(t_start), hi = lo;
  orbit.samples.push_back({t_start, lo});
  for (std::size_t k = 0; k < tail.size(); ++k) {
    if (tail.times[k] <= t_start || tail.times[k] >= t_end) continue;
    orbit.samples.push_back({tail.times[k], tail.values[k]});
    lo = std::min(lo, tail.values[k]);
    hi = std::max(hi, tail.values[k]);
  }
  const double x_end = tail.at(t_end);
  orbit.samples.push_back({t_end, x_end});
  orbit.amplitude = std::max(hi, x_end) - std::min(lo, x_end);
  orbit.closure_error = std::abs(x_end - orbit.samples.front()[1]) / orbit.amplitude;
  return orbit;
}

double linf_cycle_error(const Orbit& reference, const TimeSeries& approx) {
  if (reference.samples.empty()) throw NumericError("linf_cycle_error: empty reference orbit");
  if (approx.size() < 2) throw NumericError("linf_cycle_error: approximation has fewer than two samples");
  const double t0 = reference.samples.front()[0], t1 = reference.samples.back()[0];
  const double slack = 1e-9 * std::max(1.0, t1 - t0);
  if (approx.front_time() > t0 + slack || approx.back_time() < t1 - slack) {
    throw NumericError("linf_cycle_error: approximation does not cover the reference period");
  }
  double err = 0.0;
  for (const auto& [t, v] : reference.samples) err = std::max(err, std::abs(v - approx.at(t)));
  return err;
}

}  // namespace gkr

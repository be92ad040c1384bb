#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "gkr/dde_spec.hpp"
#include "gkr/koornwinder.hpp"

namespace gkr {

/// Uniformly or non-uniformly sampled scalar signal.  When `slopes` is
/// filled (same length as `values`), interpolation is cubic Hermite,
/// otherwise linear.
struct TimeSeries {
  std::vector<double> times;
  std::vector<double> values;
  std::vector<double> slopes;

  std::size_t size() const { return times.size(); }
  bool empty() const { return times.empty(); }
  double front_time() const { return times.front(); }
  double back_time() const { return times.back(); }

  /// Value at time t inside [front_time, back_time].
  double at(double t) const;

  /// The history element theta -> x(t + theta), theta in [-tau, 0].
  HistoryElement history_at(double t, double tau) const;

  /// Sub-series with front_time >= t0 (times unchanged).
  TimeSeries tail_from(double t0) const;
};

enum class Stability { stable, unstable, mixed };
std::string to_string(Stability s);
Stability stability_from_string(const std::string& s);

struct Orbit {
  double period = 0.0;
  std::vector<std::array<double, 2>> samples;  // (t, value) over one period
  double amplitude = 0.0;                      // max - min over one period
  Stability stability = Stability::stable;
  double closure_error = 0.0;                  // |x(t0 + P) - x(t0)| / amplitude
};

/// Method of steps with RK4.  Delayed values come from the history for
/// t - tau <= 0 and from a cubic Hermite interpolant of the computed
/// solution otherwise; the distributed-delay integral is carried as an
/// extra state I' = x(t) - x(t - tau).  Samples every `stride` steps.
/// Requires dt <= tau; tau/dt need not be an integer.
TimeSeries integrate_dde(const DdeSpec& spec, const std::function<double(double)>& history,
                         double t_end, double dt, int stride = 1);

/// Continue an integration from the last tau-window of a previous run
/// (time origin reset to 0).
TimeSeries continue_dde(const DdeSpec& spec, const TimeSeries& previous, double t_end, double dt,
                        int stride = 1);

/// (0, sqrt(1 - alpha), -sqrt(1 - alpha)) for the unperturbed model.
std::array<double, 3> steady_states(double alpha);

/// Period from upward crossings of the mean after `transient_skip`.
/// Throws NumericError("no periodicity detected") when there are fewer
/// than three crossings or the crossing intervals spread by more than 1%.
Orbit extract_periodic_orbit(const TimeSeries& series, double transient_skip,
                             Stability stability = Stability::stable);

/// sup over the reference period of |reference - approx|, approx being
/// interpolated at the reference sample times.
double linf_cycle_error(const Orbit& reference, const TimeSeries& approx);

/// Default transient skipped before orbit extraction (model time units).
inline constexpr double kDefaultTransientSkip = 50.0;

}  // namespace gkr

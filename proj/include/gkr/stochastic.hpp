#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace gkr {

enum class Schedule { linear, triangle };
std::string to_string(Schedule s);
Schedule schedule_from_string(const std::string& s);

/// Stochastic Suarez-Schopf model in the variable theta = T - T+:
///   d theta = (a theta - alpha theta(t - tau(t)) - 3 T+ theta^2 - theta^3) dt
///             + sigma / (1 + theta^2) dW.
struct StochasticModel {
  double alpha = 0.75;
  double sigma = 0.2;
  double tau0 = 1.45;
  double tau1 = 1.65;
  double epsilon = 8.4e-4;
  Schedule schedule = Schedule::linear;
  bool stratonovich = false;

  double t_plus() const;
  double a() const;       // 1 - 3 T+^2
  double b_quad() const;  // 3 T+
  void validate() const;
};

/// linear: min(tau0 + eps t, tau1); triangle: up-down ramp at slope +-eps with
/// full cycle 2 (tau1 - tau0) / eps.
double tau_schedule(const StochasticModel& model, double t);

struct TspRun {
  double dt = 0.0;
  std::uint64_t seed = 0;
  std::vector<double> times;
  std::vector<double> theta;
  std::vector<double> tau_t;

  void write_csv(std::ostream& os) const;
};

/// Name of the random generator recorded in run metadata.
inline constexpr const char* kRngName = "std::mt19937_64 + std::normal_distribution";

/// Euler-Maruyama with linear interpolation of the delayed value.  `history`
/// covers [-tau1, 0]; an empty function selects theta = -2 T+.  Samples every
/// `stride` steps (step 0 always included).
TspRun simulate_tsp(const StochasticModel& model, const std::function<double(double)>& history, double dt,
                    long steps, std::uint64_t seed, int stride = 1);

/// s = t * 349 / (reference_delay * 365) years.
double to_physical_years(double t, double reference_delay = 1.7);
double from_physical_years(double years, double reference_delay = 1.7);

}  // namespace gkr

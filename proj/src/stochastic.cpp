#include "gkr/stochastic.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <random>

#include "gkr/errors.hpp"

namespace gkr {

namespace {
constexpr double kDelta = 349.0;  // days
constexpr double kYear = 365.0;
}  // namespace

std::string to_string(Schedule s) { return s == Schedule::linear ? "linear" : "triangle"; }

Schedule schedule_from_string(const std::string& s) {
  if (s == "linear") return Schedule::linear;
  if (s == "triangle") return Schedule::triangle;
  throw ConfigError("unknown delay schedule: " + s);
}

double StochasticModel::t_plus() const {
  if (!(alpha > 0.0 && alpha < 1.0)) throw ConfigError("StochasticModel: alpha must lie in (0, 1)");
  return std::sqrt(1.0 - alpha);
}
double StochasticModel::a() const { return 1.0 - 3.0 * (1.0 - alpha); }
double StochasticModel::b_quad() const { return 3.0 * t_plus(); }

void StochasticModel::validate() const {
  t_plus();
  if (!(sigma >= 0.0)) throw ConfigError("StochasticModel: sigma must be nonnegative");
  if (!(tau0 > 0.0) || !(tau1 >= tau0)) throw ConfigError("StochasticModel: need 0 < tau0 <= tau1");
  if (!(epsilon >= 0.0)) throw ConfigError("StochasticModel: epsilon must be nonnegative");
}

double tau_schedule(const StochasticModel& m, double t) {
  if (m.epsilon == 0.0 || m.tau1 == m.tau0) return m.tau0;
  if (m.schedule == Schedule::linear) return std::min(m.tau0 + m.epsilon * t, m.tau1);
  const double half = (m.tau1 - m.tau0) / m.epsilon;
  const double phase = std::fmod(t, 2.0 * half);
  const double tau = phase <= half ? m.tau0 + m.epsilon * phase : m.tau1 - m.epsilon * (phase - half);
  return std::clamp(tau, m.tau0, m.tau1);
}

void TspRun::write_csv(std::ostream& os) const {
  os << "t,theta,tau\n";
  os.precision(17);
  for (std::size_t k = 0; k < times.size(); ++k) os << times[k] << ',' << theta[k] << ',' << tau_t[k] << '\n';
}

TspRun simulate_tsp(const StochasticModel& model, const std::function<double(double)>& history, double dt,
                    long steps, std::uint64_t seed, int stride) {
  model.validate();
  if (!(dt > 0.0) || dt > model.tau0) throw ConfigError("simulate_tsp: need 0 < dt <= tau0");
  if (steps < 1) throw ConfigError("simulate_tsp: steps must be positive");
  if (stride < 1) stride = 1;

  const double tp = model.t_plus();
  const double a = model.a(), b = model.b_quad(), alpha = model.alpha, sigma = model.sigma;
  const double hist_min = -model.tau1;
  auto hist = history ? history : std::function<double(double)>([tp](double) { return -2.0 * tp; });

  const long window = static_cast<long>(std::ceil(model.tau1 / dt)) + 3;
  std::vector<double> ring(window);

  std::mt19937_64 gen(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  const double sq = std::sqrt(dt);

  TspRun run;
  run.dt = dt;
  run.seed = seed;
  const std::size_t n_out = static_cast<std::size_t>(steps / stride + 2);
  run.times.reserve(n_out);
  run.theta.reserve(n_out);
  run.tau_t.reserve(n_out);

  double theta = hist(0.0);
  for (long k = 0; k <= steps; ++k) {
    const double t = static_cast<double>(k) * dt;
    const double tau = tau_schedule(model, t);
    ring[k % window] = theta;
    if (k % stride == 0 || k == steps) {
      run.times.push_back(t);
      run.theta.push_back(theta);
      run.tau_t.push_back(tau);
    }
    if (k == steps) break;

    const double s = t - tau;
    double delayed;
    if (s <= 0.0) {
      if (s < hist_min - 1e-12) throw NumericError("simulate_tsp: history buffer underrun");
      delayed = hist(s);
    } else {
      const double pos = s / dt;
      long j = std::min(static_cast<long>(std::floor(pos)), k - 1);
      if (k - j >= window - 1) throw NumericError("simulate_tsp: history buffer underrun");
      const double frac = std::clamp(pos - static_cast<double>(j), 0.0, 1.0);
      delayed = (1.0 - frac) * ring[j % window] + frac * ring[(j + 1) % window];
    }

    const double th2 = theta * theta;
    double drift = a * theta - alpha * delayed - b * th2 - th2 * theta;
    if (model.stratonovich) drift += sigma * sigma * theta / std::pow(1.0 + th2, 3);
    const double diffusion = sigma / (1.0 + th2);
    theta += drift * dt + diffusion * sq * normal(gen);
    if (!std::isfinite(theta) || std::abs(theta) > 1e6) throw BlowUpError("simulate_tsp: blow-up", t + dt);
  }
  return run;
}

double to_physical_years(double t, double reference_delay) {
  if (!(reference_delay > 0.0)) throw ConfigError("to_physical_years: reference delay must be positive");
  return t * kDelta / (reference_delay * kYear);
}

double from_physical_years(double years, double reference_delay) {
  if (!(reference_delay > 0.0)) throw ConfigError("from_physical_years: reference delay must be positive");
  return years * reference_delay * kYear / kDelta;
}

}  // namespace gkr

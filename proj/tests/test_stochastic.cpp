#include "doctest.h"

#include <cmath>
#include <sstream>

#include "gkr/dde_oracle.hpp"
#include "gkr/errors.hpp"
#include "gkr/stochastic.hpp"

using namespace gkr;

TEST_CASE("delay schedules") {
  StochasticModel m;
  m.tau0 = 1.45;
  m.tau1 = 1.65;
  m.epsilon = 8.4e-4;
  CHECK(tau_schedule(m, 237.8) == doctest::Approx(1.6497).epsilon(1e-4));
  CHECK(tau_schedule(m, 1e4) == 1.65);

  m.schedule = Schedule::triangle;
  const double half = 0.2 / 8.4e-4;
  CHECK(tau_schedule(m, 0.0) == doctest::Approx(1.45));
  CHECK(tau_schedule(m, half) == doctest::Approx(1.65));
  CHECK(tau_schedule(m, 2 * half) == doctest::Approx(1.45));
  for (double t = 0.0; t < 3000.0; t += 7.3) {
    const double v = tau_schedule(m, t);
    CHECK((v >= 1.45 && v <= 1.65));
  }

  m.epsilon = 0.0;
  CHECK(tau_schedule(m, 500.0) == 1.45);

  CHECK(schedule_from_string(to_string(Schedule::triangle)) == Schedule::triangle);
  CHECK_THROWS_AS(schedule_from_string("sine"), ConfigError);
}

TEST_CASE("model coefficients and validation") {
  StochasticModel m;
  CHECK(m.t_plus() == doctest::Approx(0.5));
  CHECK(m.a() == doctest::Approx(0.25));
  CHECK(m.b_quad() == doctest::Approx(1.5));
  m.sigma = -0.1;
  CHECK_THROWS_AS(m.validate(), ConfigError);
  m.sigma = 0.2;
  m.tau1 = 1.0;
  CHECK_THROWS_AS(m.validate(), ConfigError);
}

TEST_CASE("seed determinism") {
  StochasticModel m;
  const auto a = simulate_tsp(m, {}, 2e-3, 20000, 7);
  const auto b = simulate_tsp(m, {}, 2e-3, 20000, 7);
  const auto c = simulate_tsp(m, {}, 2e-3, 20000, 8);
  CHECK(a.theta == b.theta);
  CHECK(a.tau_t == b.tau_t);
  CHECK(a.theta != c.theta);
  CHECK(a.theta.front() == doctest::Approx(-1.0));
  for (double t : a.tau_t) CHECK((t >= m.tau0 && t <= m.tau1));

  std::ostringstream os;
  a.write_csv(os);
  CHECK(os.str().rfind("t,theta,tau\n", 0) == 0);

  const auto sub = simulate_tsp(m, {}, 2e-3, 20000, 7, 100);
  REQUIRE(sub.theta.size() == 201);
  CHECK(sub.theta[37] == a.theta[3700]);

  m.stratonovich = true;
  CHECK(simulate_tsp(m, {}, 2e-3, 20000, 7).theta != a.theta);
}

TEST_CASE("deterministic limit converges at first order") {
  StochasticModel m;
  m.sigma = 0.0;
  m.epsilon = 0.0;
  m.tau1 = m.tau0;
  auto hist = [](double) { return 0.3; };
  const double t_end = 50.0;
  const auto ref = integrate_dde(suarez_schopf_perturbed(m.alpha, m.tau0), hist, t_end, m.tau0 / 2048);
  auto err = [&](double dt) {
    const auto run = simulate_tsp(m, hist, dt, std::lround(t_end / dt), 1);
    double e = 0.0;
    for (std::size_t k = 0; k < run.times.size(); k += 10) e = std::max(e, std::abs(run.theta[k] - ref.at(run.times[k])));
    return e;
  };
  const double e1 = err(2e-3), e2 = err(1e-3);
  CHECK(e1 < 0.05);
  CHECK(e1 / e2 == doctest::Approx(2.0).epsilon(0.15));
}

TEST_CASE("diffusion coefficient is damped away from zero") {
  // One step from theta = 1: the increment's spread is sigma / 2 * sqrt(dt).
  StochasticModel m;
  m.sigma = 0.2;
  const double dt = 1e-3;
  double s1 = 0.0, s2 = 0.0;
  const int n = 4000;
  for (int seed = 0; seed < n; ++seed) {
    const double x = simulate_tsp(m, [](double) { return 1.0; }, dt, 1, seed).theta.back();
    s1 += x;
    s2 += x * x;
  }
  const double sd = std::sqrt(s2 / n - (s1 / n) * (s1 / n));
  CHECK(sd == doctest::Approx(0.1 * std::sqrt(dt)).epsilon(0.05));
  CHECK(sd < m.sigma * std::sqrt(dt));
}

TEST_CASE("time conversion") {
  CHECK(to_physical_years(0.0) == 0.0);
  CHECK(to_physical_years(2000.0) == doctest::Approx(1125.0).epsilon(1e-3));
  CHECK(from_physical_years(5.78) == doctest::Approx(10.27).epsilon(1e-3));
  CHECK(from_physical_years(to_physical_years(3.3, 1.6), 1.6) == doctest::Approx(3.3));
  CHECK_THROWS_AS(to_physical_years(1.0, 0.0), ConfigError);
}

TEST_CASE("invalid runs") {
  StochasticModel m;
  CHECK_THROWS_AS(simulate_tsp(m, {}, 2.0, 10, 1), ConfigError);
  CHECK_THROWS_AS(simulate_tsp(m, {}, 1e-3, 0, 1), ConfigError);
}

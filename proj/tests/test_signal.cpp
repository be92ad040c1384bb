#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "gkr/errors.hpp"
#include "gkr/signal.hpp"
#include "gkr/stochastic.hpp"

using namespace gkr;

namespace {

constexpr double kDt = 0.02;

// Sinusoid with the given period in physical years, sampled in model time.
std::vector<double> sinusoid(double period_years, double years, double amp = 1.0) {
  const double p = from_physical_years(period_years);
  const auto n = static_cast<std::size_t>(from_physical_years(years) / kDt);
  std::vector<double> x(n);
  for (std::size_t k = 0; k < n; ++k) x[k] = amp * std::sin(2 * std::numbers::pi * k * kDt / p);
  return x;
}

double rms(const std::vector<double>& x, std::size_t skip) {
  double s = 0.0;
  for (std::size_t k = skip; k < x.size() - skip; ++k) s += x[k] * x[k];
  return std::sqrt(s / (x.size() - 2 * skip));
}

}  // namespace

TEST_CASE("sinusoid peak") {
  const auto psd = welch_psd(sinusoid(5.5, 1100.0), kDt);
  CHECK(psd.segments > 10);
  const auto it = std::max_element(psd.power.begin() + 1, psd.power.end());
  const auto k = static_cast<std::size_t>(it - psd.power.begin());
  const double df = psd.frequency[1] - psd.frequency[0];
  CHECK(std::abs(psd.frequency[k] - 1.0 / 5.5) <= df);

  std::ostringstream os;
  psd.write_csv(os);
  CHECK(os.str().rfind("period_yr,power\n", 0) == 0);
}

TEST_CASE("white noise is flat") {
  const std::size_t n = 60000;
  std::vector<double> avg;
  for (int seed = 0; seed < 20; ++seed) {
    std::mt19937_64 gen(seed);
    std::normal_distribution<double> nd;
    std::vector<double> x(n);
    for (auto& v : x) v = nd(gen);
    const auto psd = welch_psd(x, kDt, 60.0);
    if (avg.empty()) avg.assign(psd.power.size(), 0.0);
    for (std::size_t k = 0; k < avg.size(); ++k) avg[k] += psd.power[k] / 20;
  }
  // Skip DC and the first bin, which the Hann window mixes with the removed
  // mean, and the Nyquist bin, which is not folded.
  const auto [lo, hi] = std::minmax_element(avg.begin() + 2, avg.end() - 1);
  CHECK(10 * std::log10(*hi / *lo) <= 3.0);
}

TEST_CASE("band-pass filter") {
  const double years = 1100.0;
  const std::size_t edge = static_cast<std::size_t>(from_physical_years(100.0) / kDt);
  const auto inside = sinusoid(21.0, years);
  const auto kept = band_filter(inside, kDt, {15.0, 30.0});
  REQUIRE(kept.size() == inside.size());
  CHECK(rms(kept, edge) == doctest::Approx(rms(inside, edge)).epsilon(0.05));

  for (double p : {5.5, 80.0}) {
    const auto out = sinusoid(p, years);
    const double att = 20 * std::log10(rms(band_filter(out, kDt, {15.0, 30.0}), edge) / rms(out, edge));
    CAPTURE(p);
    CHECK(att <= -20.0);
  }

  CHECK_THROWS_AS(band_filter(inside, kDt, {20.0, 21.0}), ConfigError);
  CHECK_THROWS_AS(band_filter(inside, kDt, {30.0, 15.0}), ConfigError);
}

TEST_CASE("short series rejected") {
  CHECK_THROWS_AS(welch_psd(sinusoid(5.5, 150.0), kDt), ConfigError);
}

#include "gkr/signal.hpp"

#include <fftw3.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <mutex>
#include <numbers>
#include <ostream>

#include "gkr/errors.hpp"
#include "gkr/stochastic.hpp"

namespace gkr {

namespace {
// FFTW planning is not thread-safe; execution is.
std::mutex planner_mutex;
}  // namespace

void Psd::write_csv(std::ostream& os) const {
  os << "period_yr,power\n";
  os.precision(17);
  for (std::size_t k = 0; k < frequency.size(); ++k) {
    if (frequency[k] <= 0.0) continue;
    os << 1.0 / frequency[k] << ',' << power[k] << '\n';
  }
}

Psd welch_psd(const std::vector<double>& series, double dt, double segment_years, double reference_delay) {
  if (!(dt > 0.0) || !(segment_years > 0.0)) throw ConfigError("welch_psd: dt and segment length must be positive");
  const double dy = to_physical_years(dt, reference_delay);
  const double fs = 1.0 / dy;
  const auto len = static_cast<std::size_t>(std::llround(segment_years * fs));
  if (len < 8) throw ConfigError("welch_psd: segment shorter than 8 samples");
  const std::size_t hop = len / 2;
  if (series.size() < len + hop) throw ConfigError("welch_psd: series shorter than two segments");
  const std::size_t n_seg = (series.size() - len) / hop + 1;

  std::vector<double> window(len);
  double wsum = 0.0;
  for (std::size_t i = 0; i < len; ++i) {
    window[i] = 0.5 * (1.0 - std::cos(2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(len)));
    wsum += window[i] * window[i];
  }

  const std::size_t n_bins = len / 2 + 1;
  double* in = fftw_alloc_real(len);
  fftw_complex* out = fftw_alloc_complex(n_bins);
  fftw_plan plan;
  {
    std::lock_guard lock(planner_mutex);
    plan = fftw_plan_dft_r2c_1d(static_cast<int>(len), in, out, FFTW_ESTIMATE);
  }

  Psd psd;
  psd.segments = static_cast<int>(n_seg);
  psd.power.assign(n_bins, 0.0);
  for (std::size_t s = 0; s < n_seg; ++s) {
    const double* seg = series.data() + s * hop;
    double mean = 0.0;
    for (std::size_t i = 0; i < len; ++i) mean += seg[i];
    mean /= static_cast<double>(len);
    for (std::size_t i = 0; i < len; ++i) in[i] = (seg[i] - mean) * window[i];
    fftw_execute(plan);
    for (std::size_t k = 0; k < n_bins; ++k) {
      const double mag2 = out[k][0] * out[k][0] + out[k][1] * out[k][1];
      const bool edge = k == 0 || (len % 2 == 0 && k == n_bins - 1);
      psd.power[k] += (edge ? 1.0 : 2.0) * mag2 / (fs * wsum);
    }
  }
  {
    std::lock_guard lock(planner_mutex);
    fftw_destroy_plan(plan);
    fftw_free(in);
    fftw_free(out);
  }

  psd.frequency.resize(n_bins);
  for (std::size_t k = 0; k < n_bins; ++k) {
    psd.frequency[k] = static_cast<double>(k) * fs / static_cast<double>(len);
    psd.power[k] /= static_cast<double>(n_seg);
  }
  return psd;
}

namespace {

struct Biquad {
  double b0, b1, b2, a1, a2;  // normalized by a0

  void run(std::vector<double>& x) const {
    double z1 = 0.0, z2 = 0.0;  // transposed direct form II
    for (double& v : x) {
      const double y = b0 * v + z1;
      z1 = b1 * v - a1 * y + z2;
      z2 = b2 * v - a2 * y;
      v = y;
    }
  }
};

// Butterworth 4th order as two second-order sections (Q = 1/(2 cos(pi/8)), 1/(2 cos(3 pi/8))).
std::array<Biquad, 2> butterworth4(double f0, double fs, bool highpass) {
  std::array<Biquad, 2> out{};
  const double w0 = 2.0 * std::numbers::pi * f0 / fs;
  const double c = std::cos(w0), s = std::sin(w0);
  const std::array<double, 2> qs{1.0 / (2.0 * std::cos(std::numbers::pi / 8.0)),
                                 1.0 / (2.0 * std::cos(3.0 * std::numbers::pi / 8.0))};
  for (int i = 0; i < 2; ++i) {
    const double al = s / (2.0 * qs[i]);
    const double a0 = 1.0 + al;
    if (highpass) {
      out[i] = {(1.0 + c) / 2.0 / a0, -(1.0 + c) / a0, (1.0 + c) / 2.0 / a0, -2.0 * c / a0, (1.0 - al) / a0};
    } else {
      out[i] = {(1.0 - c) / 2.0 / a0, (1.0 - c) / a0, (1.0 - c) / 2.0 / a0, -2.0 * c / a0, (1.0 - al) / a0};
    }
  }
  return out;
}

}  // namespace

std::vector<double> band_filter(const std::vector<double>& series, double dt, std::pair<double, double> band,
                                double reference_delay) {
  const auto [p_lo, p_hi] = band;
  if (!(p_lo > 0.0) || !(p_hi > p_lo)) throw ConfigError("band_filter: need 0 < period_lo < period_hi");
  if (p_hi / p_lo < 1.1) throw ConfigError("band_filter: band too narrow for a stable design");
  if (!(dt > 0.0)) throw ConfigError("band_filter: dt must be positive");
  const double dy = to_physical_years(dt, reference_delay);
  const double fs = 1.0 / dy;
  const double f_lo = 1.0 / p_hi, f_hi = 1.0 / p_lo;
  if (f_hi >= 0.45 * fs) throw ConfigError("band_filter: band above the resolvable range");
  const std::size_t n = series.size();
  if (static_cast<double>(n) * dy < 2.0 * p_hi) throw ConfigError("band_filter: series shorter than two periods of the band");

  const auto dec = static_cast<std::size_t>(std::max(1.0, std::floor(fs / (20.0 * f_hi))));
  const double fs_d = fs / static_cast<double>(dec);
  std::vector<double> y;
  y.reserve(n / dec + 1);
  for (std::size_t i = 0; i < n; i += dec) {
    const std::size_t e = std::min(n, i + dec);
    double acc = 0.0;
    for (std::size_t k = i; k < e; ++k) acc += series[k];
    y.push_back(acc / static_cast<double>(e - i));
  }

  // Odd extension at both ends to damp start-up transients.
  const std::size_t m = y.size();
  const std::size_t pad = std::min(m - 1, static_cast<std::size_t>(3.0 * std::ceil(fs_d / f_lo)));
  std::vector<double> ext;
  ext.reserve(m + 2 * pad);
  for (std::size_t i = pad; i >= 1; --i) ext.push_back(2.0 * y.front() - y[i]);
  ext.insert(ext.end(), y.begin(), y.end());
  for (std::size_t i = 1; i <= pad; ++i) ext.push_back(2.0 * y.back() - y[m - 1 - i]);

  const auto hp = butterworth4(f_lo, fs_d, true);
  const auto lp = butterworth4(f_hi, fs_d, false);
  for (int pass = 0; pass < 2; ++pass) {
    for (const auto& q : hp) q.run(ext);
    for (const auto& q : lp) q.run(ext);
    std::reverse(ext.begin(), ext.end());
  }
  std::vector<double> filtered(ext.begin() + static_cast<std::ptrdiff_t>(pad),
                               ext.begin() + static_cast<std::ptrdiff_t>(pad + m));

  // Back to the input grid; block k is centred at index k*dec + (dec-1)/2.
  std::vector<double> out(n);
  const double centre = 0.5 * static_cast<double>(dec - 1);
  for (std::size_t i = 0; i < n; ++i) {
    const double pos = std::clamp((static_cast<double>(i) - centre) / static_cast<double>(dec), 0.0,
                                  static_cast<double>(m - 1));
    const auto k = std::min(static_cast<std::size_t>(pos), m > 1 ? m - 2 : 0);
    const double fr = m > 1 ? pos - static_cast<double>(k) : 0.0;
    out[i] = m > 1 ? (1.0 - fr) * filtered[k] + fr * filtered[k + 1] : filtered[0];
  }
  return out;
}

}  // namespace gkr

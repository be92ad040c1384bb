#pragma once

#include <iosfwd>
#include <utility>
#include <vector>

namespace gkr {

struct Psd {
  std::vector<double> frequency;  // cycles per year
  std::vector<double> power;      // one-sided density, units^2 * yr
  int segments = 0;

  /// Rows `period_yr,power`, DC bin omitted.
  void write_csv(std::ostream& os) const;
};

/// Welch estimate: Hann windows of `segment_years`, 50% overlap, mean removed
/// per segment.  `dt` is the model-time sample interval; frequencies are
/// converted to cycles per physical year.  Needs at least two segments.
Psd welch_psd(const std::vector<double>& series, double dt, double segment_years = 120.0,
              double reference_delay = 1.7);

/// Zero-phase band-pass keeping periods in [period_lo, period_hi] years:
/// 4th-order Butterworth high-pass and low-pass sections run forward and
/// backward.  The signal is block-averaged down to a rate suited to the band,
/// filtered, and interpolated back to the input grid.
std::vector<double> band_filter(const std::vector<double>& series, double dt,
                                std::pair<double, double> period_band_years, double reference_delay = 1.7);

}  // namespace gkr

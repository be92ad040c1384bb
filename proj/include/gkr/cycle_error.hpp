#pragma once

#include <vector>

#include "gkr/dde_spec.hpp"

namespace gkr {

/// GK-versus-DDE error over one period of the attracting cycle.  The DDE is
/// run from a constant history until the transient has died out, the period
/// is read off the tail, and both solvers then restart from the same
/// history segment with a fine step.
struct CycleErrorProtocol {
  double history_value = 1.0;
  double settle_time = 3000.0;
  double transient_skip = 2000.0;
  int coarse_divisions = 1024;   // dt = tau / coarse_divisions while settling
  int fine_divisions = 262144;   // dt = tau / fine_divisions on the compared period
  int stride = 16;               // compare every stride-th fine step
};

struct CycleErrorResult {
  double tau = 0.0;
  double period = 0.0;
  std::vector<int> modes;
  std::vector<double> errors;  // sup |x_N(t) - x(t)| over one period, per entry of `modes`
};

CycleErrorResult gk_cycle_errors(const DdeSpec& spec, const std::vector<int>& modes,
                                 const CycleErrorProtocol& protocol = {});

}  // namespace gkr

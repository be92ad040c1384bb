#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "gkr/dde_oracle.hpp"
#include "gkr/manifold.hpp"

namespace gkr {

enum class Family { upo_inner_plus, upo_inner_minus, upo_outer, stable_cycle };
std::string to_string(Family f);
Family family_from_string(const std::string& s);

struct BranchPoint {
  double tau = 0.0;
  double amplitude = 0.0;
  double period = 0.0;
  Family family = Family::stable_cycle;

  bool operator==(const BranchPoint&) const = default;
};

/// Numerical controls for cycle computations on the reduced system.
struct CycleControls {
  double dt = 0.01;
  double max_time = 40000.0;   // integration budget per attempt (model time)
  double conv_tol = 1e-8;      // successive lifted maxima
  double escape_radius = 1e3;  // |x_1| treated as blow-up
  double equilibrium_tol = 1e-6;
  double period_cap = 500.0;
  /// Lifted value of the saddle (the unperturbed zero state), -T+ for the
  /// Suarez-Schopf model perturbed about T+.  Used to tell families apart.
  double saddle_level = -0.5;
};

struct ReducedOrbit {
  Orbit orbit;            // lifted T* over one period, forward time
  cplx on_cycle;          // a point x_1 on the cycle (warm start)
  std::vector<cplx> path; // x_1 samples matching orbit.samples
  double lifted_min = 0.0, lifted_max = 0.0;
};

/// Which family a converged cycle belongs to from its lifted range.
Family classify_upo(double lifted_min, double lifted_max, double saddle_level);

/// Forward integration from `seed` (default x_1 = 1) to the attracting cycle.
/// Throws NumericError("no attracting cycle at this tau") on convergence to
/// an equilibrium or escape.
ReducedOrbit compute_stable_cycle(const ReducedSystem2D& reduced, const CycleControls& controls = {},
                                  std::optional<cplx> seed = std::nullopt);

/// Backward integration from a family seed to a UPO.  Throws
/// NumericError("no UPO of this family at this tau") when the backward flow
/// escapes, settles on an equilibrium, exceeds the period cap or lands on a
/// cycle of a different family.
ReducedOrbit compute_upo(const ReducedSystem2D& reduced, Family family, const CycleControls& controls = {},
                         std::optional<cplx> seed = std::nullopt);

/// Newton solve of the real-form equilibrium equation from `guess`.
cplx find_reduced_equilibrium(const ReducedSystem2D& reduced, cplx guess);

/// Radius sqrt(-Re lambda_1 / Re c_1) of the cycle predicted by the
/// Poincare normal form of the closure (NaN when it does not exist).
double normal_form_radius(const ReducedSystem2D& reduced);

using ReducedFactory = std::function<ReducedSystem2D(double tau)>;

/// Reduced Suarez-Schopf system at delay tau with N modes.
ReducedFactory suarez_schopf_reduced(double alpha, int n);

struct Branch {
  Family family = Family::stable_cycle;
  std::vector<BranchPoint> points;
  std::vector<std::pair<double, std::string>> failures;  // (tau, reason)
};

/// Sweeps tau from lo to hi (inclusive, step > 0) with warm starts; points
/// where the orbit cannot be found are recorded as failures.
Branch continue_branch(const ReducedFactory& factory, double tau_lo, double tau_hi, double step, Family family,
                       const CycleControls& controls = {});

enum class HopfType { subcritical, supercritical };
std::string to_string(HopfType t);

struct HopfResult {
  double tau_c = 0.0;
  double l1 = 0.0;
  HopfType type = HopfType::subcritical;
};

/// Critical delay plus Lyapunov-coefficient classification.  Throws
/// NumericError("degenerate Hopf, undetermined") when |l1| < 1e-6.
HopfResult detect_hopf(const SpecFactory& factory, int n, double tau_lo, double tau_hi);
HopfResult detect_hopf(double alpha, int n, double tau_lo = 1.3, double tau_hi = 2.5);

/// Infimum of the delays where the inner_plus UPO exists with period below
/// the cap, by bisection to `tol`.
double detect_homoclinic(const ReducedFactory& factory, double tau_lo, double tau_hi,
                         const CycleControls& controls = {}, double tol = 1e-4);

/// Infimum of the delays with an attracting cycle, by bisection to `tol`.
double detect_sno(const ReducedFactory& factory, double tau_lo, double tau_hi,
                  const CycleControls& controls = {}, double tol = 1e-4);

/// CSV `family,tau,amplitude,period` sorted by (family, tau).
void emit_diagram(std::vector<BranchPoint> points, std::ostream& os);
std::vector<BranchPoint> read_diagram(std::istream& is);

}  // namespace gkr

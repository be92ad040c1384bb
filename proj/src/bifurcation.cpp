#include "gkr/bifurcation.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "gkr/errors.hpp"

namespace gkr {

namespace {

cplx rk4(const ReducedSystem2D& r, cplx x, double h) {
  const cplx k1 = r.rhs_real_form(x);
  const cplx k2 = r.rhs_real_form(x + 0.5 * h * k1);
  const cplx k3 = r.rhs_real_form(x + 0.5 * h * k2);
  const cplx k4 = r.rhs_real_form(x + h * k3);
  return x + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

double lift_rate(const ReducedSystem2D& r, cplx x) {
  const auto g = r.lift.gradient(x, std::conj(x));
  const cplx v = r.rhs_real_form(x);
  return (g[0] * v + g[1] * std::conj(v)).real();
}

struct Maximum {
  double time;  // elapsed (unsigned) time
  double value;
  cplx state;
  double swing = 0.0;  // value minus the lowest sample since the previous maximum
};

// Refines a grid maximum near state x (elapsed time t) by a secant search on
// dT/dt along the flow; h is the signed step.
Maximum refine_maximum(const ReducedSystem2D& r, cplx x, double t, double h) {
  const double dir = h > 0 ? 1.0 : -1.0;
  // dT/ds along the integration direction, s = elapsed time.
  auto rate = [&](double s) { return dir * lift_rate(r, s == 0.0 ? x : rk4(r, x, dir * s)); };
  double s0 = -0.5 * std::abs(h), s1 = 0.5 * std::abs(h);
  double f0 = rate(s0), f1 = rate(s1);
  for (int it = 0; it < 30 && f1 != f0; ++it) {
    const double s2 = s1 - f1 * (s1 - s0) / (f1 - f0);
    if (!std::isfinite(s2) || std::abs(s2) > 2.0 * std::abs(h)) break;
    s0 = s1;
    f0 = f1;
    s1 = s2;
    f1 = rate(s1);
    if (std::abs(s1 - s0) < 1e-14) break;
  }
  if (std::abs(s1) > 2.0 * std::abs(h)) s1 = 0.0;
  const cplx xs = s1 == 0.0 ? x : rk4(r, x, dir * s1);
  return {t + s1, r.lift_value(xs), xs};
}

struct CycleSearch {
  double period = 0.0;
  cplx on_cycle;
};

enum class Outcome { converged, equilibrium, escape, period_cap, budget };

struct SearchResult {
  Outcome outcome = Outcome::budget;
  CycleSearch cycle;
  std::string detail;
};

SearchResult search_cycle(const ReducedSystem2D& r, cplx x, double h, const CycleControls& c) {
  SearchResult res;
  std::vector<Maximum> maxima;
  double t = 0.0;
  double t_prev = 0.0;
  double v_prev2 = NAN, v_prev = r.lift_value(x);
  double low = v_prev;
  const long max_steps = static_cast<long>(c.max_time / std::abs(h));
  for (long k = 1; k <= max_steps; ++k) {
    const cplx xn = rk4(r, x, h);
    t = k * std::abs(h);
    if (!std::isfinite(xn.real()) || !std::isfinite(xn.imag()) || std::abs(xn) > c.escape_radius) {
      res.outcome = Outcome::escape;
      res.detail = "trajectory escapes";
      return res;
    }
    const double v = r.lift_value(xn);
    low = std::min(low, v);
    if (v_prev > v_prev2 && v_prev >= v) {
      maxima.push_back(refine_maximum(r, x, t_prev, h));
      maxima.back().swing = maxima.back().value - low;
      low = v;
      const std::size_t m = maxima.size();
      if (m >= 2 && maxima[m - 1].time - maxima[m - 2].time > c.period_cap) {
        res.outcome = Outcome::period_cap;
        res.detail = "period exceeds the cap";
        return res;
      }
      for (std::size_t p = 1; p <= 3; ++p) {
        if (m < 2 * p + 1) break;
        // The relative test keeps slowly decaying spirals from passing as cycles.
        const double d1 = std::abs(maxima[m - 1].value - maxima[m - 1 - p].value);
        const double d2 = std::abs(maxima[m - 2].value - maxima[m - 2 - p].value);
        const bool conv = d1 < c.conv_tol && d2 < c.conv_tol && d1 < 1e-6 * maxima[m - 1].swing &&
                          std::abs(maxima[m - 1].state - maxima[m - 1 - p].state) < 1e3 * c.conv_tol;
        if (!conv) continue;
        res.cycle.period = maxima[m - 1].time - maxima[m - 1 - p].time;
        res.cycle.on_cycle = maxima[m - 1].state;
        if (res.cycle.period > c.period_cap) {
          res.outcome = Outcome::period_cap;
          res.detail = "period exceeds the cap";
        } else {
          res.outcome = Outcome::converged;
        }
        return res;
      }
    }
    if (k % 1000 == 0 && std::abs(r.rhs_real_form(xn)) < 1e-10) {
      res.outcome = Outcome::equilibrium;
      res.detail = "flow settles on an equilibrium";
      return res;
    }
    v_prev2 = v_prev;
    v_prev = v;
    x = xn;
    t_prev = t;
  }
  res.outcome = Outcome::budget;
  res.detail = "no convergence within the integration budget";
  return res;
}

ReducedOrbit sample_orbit(const ReducedSystem2D& r, const CycleSearch& cs, double dt, double direction,
                          Stability stability) {
  const long steps = std::max(16L, static_cast<long>(std::ceil(cs.period / dt)));
  const double h = direction * cs.period / static_cast<double>(steps);
  std::vector<cplx> xs;
  xs.reserve(steps + 1);
  cplx x = cs.on_cycle;
  xs.push_back(x);
  for (long k = 0; k < steps; ++k) {
    x = rk4(r, x, h);
    xs.push_back(x);
  }
  if (direction < 0) std::reverse(xs.begin(), xs.end());  // forward-time order

  ReducedOrbit out;
  out.orbit.period = cs.period;
  out.orbit.stability = stability;
  out.on_cycle = cs.on_cycle;
  out.path = xs;
  out.lifted_min = INFINITY;
  out.lifted_max = -INFINITY;
  const double step = cs.period / static_cast<double>(steps);
  for (std::size_t k = 0; k < xs.size(); ++k) {
    const double v = r.lift_value(xs[k]);
    out.orbit.samples.push_back({static_cast<double>(k) * step, v});
    out.lifted_min = std::min(out.lifted_min, v);
    out.lifted_max = std::max(out.lifted_max, v);
  }
  out.orbit.amplitude = out.lifted_max - out.lifted_min;
  out.orbit.closure_error = std::abs(out.orbit.samples.back()[1] - out.orbit.samples.front()[1]) /
                            std::max(out.orbit.amplitude, 1e-300);
  return out;
}

}  // namespace

std::string to_string(Family f) {
  switch (f) {
    case Family::upo_inner_plus: return "upo_inner_plus";
    case Family::upo_inner_minus: return "upo_inner_minus";
    case Family::upo_outer: return "upo_outer";
    case Family::stable_cycle: return "stable_cycle";
  }
  return "stable_cycle";
}

Family family_from_string(const std::string& s) {
  for (Family f : {Family::upo_inner_plus, Family::upo_inner_minus, Family::upo_outer, Family::stable_cycle}) {
    if (s == to_string(f)) return f;
  }
  if (s == "stable") return Family::stable_cycle;
  if (s == "inner_plus") return Family::upo_inner_plus;
  if (s == "inner_minus") return Family::upo_inner_minus;
  if (s == "outer") return Family::upo_outer;
  throw ConfigError("unknown orbit family: " + s);
}

std::string to_string(HopfType t) { return t == HopfType::subcritical ? "subcritical" : "supercritical"; }

Family classify_upo(double lifted_min, double lifted_max, double saddle_level) {
  if (lifted_min > saddle_level) return Family::upo_inner_plus;
  if (lifted_max < saddle_level) return Family::upo_inner_minus;
  return Family::upo_outer;
}

ReducedOrbit compute_stable_cycle(const ReducedSystem2D& reduced, const CycleControls& controls,
                                  std::optional<cplx> seed) {
  const SearchResult res = search_cycle(reduced, seed.value_or(cplx(1.0, 0.0)), controls.dt, controls);
  if (res.outcome != Outcome::converged) throw NumericError("no attracting cycle at this tau: " + res.detail);
  ReducedOrbit orb = sample_orbit(reduced, res.cycle, controls.dt, 1.0, Stability::stable);
  if (orb.orbit.amplitude < controls.equilibrium_tol) {
    throw NumericError("no attracting cycle at this tau: flow settles on an equilibrium");
  }
  return orb;
}

cplx find_reduced_equilibrium(const ReducedSystem2D& reduced, cplx guess) {
  cplx x = guess;
  for (int it = 0; it < 60; ++it) {
    const cplx f = reduced.rhs_real_form(x);
    if (std::abs(f) < 1e-14) return x;
    // f(x + d) ~ f + p d + q conj(d).
    const auto g = reduced.closure1.gradient(x, std::conj(x));
    const cplx p = reduced.lambda1 + g[0], q = g[1];
    Eigen::Matrix2d j;
    j << p.real() + q.real(), -p.imag() + q.imag(), p.imag() + q.imag(), p.real() - q.real();
    const Eigen::Vector2d d = j.fullPivLu().solve(Eigen::Vector2d(-f.real(), -f.imag()));
    if (!d.allFinite()) break;
    x += cplx(d[0], d[1]);
    if (std::abs(x) > 1e3) break;
  }
  if (std::abs(reduced.rhs_real_form(x)) < 1e-10) return x;
  throw NumericError("find_reduced_equilibrium: Newton iteration failed");
}

double normal_form_radius(const ReducedSystem2D& reduced) {
  const double omega = reduced.lambda1.imag();
  const cplx g20 = 2.0 * reduced.closure1.coeff(2, 0), g11 = reduced.closure1.coeff(1, 1);
  const cplx g02 = 2.0 * reduced.closure1.coeff(0, 2), g21 = 2.0 * reduced.closure1.coeff(2, 1);
  const cplx c1 = cplx(0.0, 1.0) / (2.0 * omega) * (g20 * g11 - 2.0 * std::norm(g11) - std::norm(g02) / 3.0) + 0.5 * g21;
  const double r2 = -reduced.lambda1.real() / c1.real();
  return r2 > 0.0 ? std::sqrt(r2) : NAN;
}

ReducedOrbit compute_upo(const ReducedSystem2D& reduced, Family family, const CycleControls& controls,
                         std::optional<cplx> seed) {
  if (family == Family::stable_cycle) throw ConfigError("compute_upo: stable_cycle is not a UPO family");
  cplx x0;
  if (seed) {
    x0 = *seed;
  } else if (family == Family::upo_inner_minus) {
    // Equilibrium whose lift sits near the mirror state, i.e. 2 * saddle.
    const cplx u1 = reduced.lift.coeff(1, 0);
    cplx eq;
    try {
      eq = find_reduced_equilibrium(reduced, controls.saddle_level / u1);
    } catch (const NumericError&) {
      throw NumericError("no UPO of this family at this tau: mirror equilibrium not found");
    }
    x0 = eq + cplx(1e-3, 0.0);
  } else {
    x0 = cplx(1e-3, 0.0);
  }
  const SearchResult res = search_cycle(reduced, x0, -controls.dt, controls);
  if (res.outcome != Outcome::converged) throw NumericError("no UPO of this family at this tau: " + res.detail);
  ReducedOrbit orb = sample_orbit(reduced, res.cycle, controls.dt, -1.0, Stability::unstable);
  if (orb.orbit.amplitude < controls.equilibrium_tol) {
    throw NumericError("no UPO of this family at this tau: flow settles on an equilibrium");
  }
  const Family got = classify_upo(orb.lifted_min, orb.lifted_max, controls.saddle_level);
  if (got != family) {
    throw NumericError("no UPO of this family at this tau: backward flow reaches a " + to_string(got) + " orbit");
  }
  return orb;
}

ReducedFactory suarez_schopf_reduced(double alpha, int n) {
  suarez_schopf_t_plus(alpha);
  return [alpha, n](double tau) { return build_reduced_system(suarez_schopf_perturbed(alpha, tau), n); };
}

Branch continue_branch(const ReducedFactory& factory, double tau_lo, double tau_hi, double step, Family family,
                       const CycleControls& controls) {
  if (!(step > 0.0)) throw ConfigError("continue_branch: step must be positive");
  if (!(tau_lo <= tau_hi)) throw ConfigError("continue_branch: empty delay range");
  Branch br;
  br.family = family;
  std::optional<cplx> warm;
  const long count = static_cast<long>(std::floor((tau_hi - tau_lo) / step + 1e-9)) + 1;
  for (long k = 0; k < count; ++k) {
    const double tau = tau_lo + static_cast<double>(k) * step;
    const ReducedSystem2D red = factory(tau);
    auto attempt = [&](std::optional<cplx> seed) {
      return family == Family::stable_cycle ? compute_stable_cycle(red, controls, seed)
                                            : compute_upo(red, family, controls, seed);
    };
    std::optional<ReducedOrbit> orb;
    std::string reason;
    for (int pass = 0; pass < 2 && !orb; ++pass) {
      if (pass == 0 && !warm) continue;
      try {
        orb = attempt(pass == 0 ? warm : std::nullopt);
      } catch (const NumericError& e) {
        reason = e.what();
      }
    }
    if (orb) {
      br.points.push_back({tau, orb->orbit.amplitude, orb->orbit.period, family});
      warm = orb->on_cycle;
    } else {
      br.failures.emplace_back(tau, reason);
      warm.reset();
    }
  }
  return br;
}

HopfResult detect_hopf(const SpecFactory& factory, int n, double tau_lo, double tau_hi) {
  HopfResult res;
  res.tau_c = find_tau_c(factory, n, tau_lo, tau_hi, 1e-12);
  const GkSystem sys = assemble_linear(factory(res.tau_c), n);
  res.l1 = lyapunov_coefficient(sys, eigendecompose(sys));
  if (std::abs(res.l1) < 1e-6) throw NumericError("degenerate Hopf, undetermined");
  res.type = res.l1 > 0.0 ? HopfType::subcritical : HopfType::supercritical;
  return res;
}

HopfResult detect_hopf(double alpha, int n, double tau_lo, double tau_hi) {
  return detect_hopf([alpha](double tau) { return suarez_schopf_perturbed(alpha, tau); }, n, tau_lo, tau_hi);
}

namespace {

template <typename Pred>
double bisect_existence(Pred exists, double lo, double hi, double tol, const char* what) {
  if (!(lo < hi)) throw ConfigError(std::string(what) + ": need tau_lo < tau_hi");
  if (exists(lo)) throw NumericError(std::string(what) + ": orbit already exists at the lower bracket end");
  if (!exists(hi)) throw NumericError(std::string(what) + ": no orbit at the upper bracket end");
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    (exists(mid) ? hi : lo) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

double detect_homoclinic(const ReducedFactory& factory, double tau_lo, double tau_hi,
                         const CycleControls& controls, double tol) {
  auto exists = [&](double tau) {
    try {
      compute_upo(factory(tau), Family::upo_inner_plus, controls);
      return true;
    } catch (const NumericError&) {
      return false;
    }
  };
  return bisect_existence(exists, tau_lo, tau_hi, tol, "detect_homoclinic");
}

double detect_sno(const ReducedFactory& factory, double tau_lo, double tau_hi, const CycleControls& controls,
                  double tol) {
  auto exists = [&](double tau) {
    try {
      compute_stable_cycle(factory(tau), controls);
      return true;
    } catch (const NumericError&) {
      return false;
    }
  };
  return bisect_existence(exists, tau_lo, tau_hi, tol, "detect_sno");
}

void emit_diagram(std::vector<BranchPoint> points, std::ostream& os) {
  std::sort(points.begin(), points.end(), [](const BranchPoint& a, const BranchPoint& b) {
    const std::string fa = to_string(a.family), fb = to_string(b.family);
    if (fa != fb) return fa < fb;
    return a.tau < b.tau;
  });
  os << "family,tau,amplitude,period\n";
  os.precision(17);
  for (const auto& p : points) os << to_string(p.family) << ',' << p.tau << ',' << p.amplitude << ',' << p.period << '\n';
}

std::vector<BranchPoint> read_diagram(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line != "family,tau,amplitude,period") {
    throw IoError("read_diagram: missing or unexpected header");
  }
  std::vector<BranchPoint> out;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string fam, tau, amp, per;
    if (!std::getline(ls, fam, ',') || !std::getline(ls, tau, ',') || !std::getline(ls, amp, ',') ||
        !std::getline(ls, per)) {
      throw IoError("read_diagram: malformed row: " + line);
    }
    try {
      out.push_back({std::stod(tau), std::stod(amp), std::stod(per), family_from_string(fam)});
    } catch (const std::exception&) {
      throw IoError("read_diagram: malformed row: " + line);
    }
  }
  return out;
}

}  // namespace gkr

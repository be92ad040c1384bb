// Acceptance report: one PASS/FAIL line per criterion.  Pass criterion
// numbers as arguments to run a subset.  The exit status is nonzero only
// when a check could not be carried out at all.

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <future>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "gkr/bifurcation.hpp"
#include "gkr/cycle_error.hpp"
#include "gkr/dde_spec.hpp"
#include "gkr/manifold.hpp"
#include "gkr/signal.hpp"
#include "gkr/spectral.hpp"
#include "gkr/stochastic.hpp"
#include "oracles.hpp"

using namespace gkr;

namespace {

constexpr double kAlpha = 0.75;

struct Verdict {
  bool pass;
  std::string summary;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

Verdict criterion1() {
  const double v = tau_c_analytic(kAlpha);
  const double ref = 1.740839502734206;
  return {std::abs(v - ref) <= 1e-12, fmt("tau_c analytic = %.15f (|diff| = %.1e)", v, std::abs(v - ref))};
}

Verdict criterion2() {
  const std::array<int, 5> ns{4, 6, 8, 10, 12};
  const std::array<double, 5> ref{1.7343471, 1.7408640, 1.7408394, 1.7408395, 1.7408395};
  bool ok = true;
  double worst = 0.0, tc10 = 0.0;
  for (std::size_t i = 0; i < ns.size(); ++i) {
    const double tc = find_tau_c(kAlpha, ns[i]);
    const double d = std::abs(tc - ref[i]);
    std::printf("  N=%-2d tau_c=%.9f ref=%.7f diff=%.1e\n", ns[i], tc, ref[i], d);
    worst = std::max(worst, d);
    ok = ok && d <= 1e-6;
    if (ns[i] == 10) tc10 = tc;
  }
  const double da = std::abs(tc10 - tau_c_analytic(kAlpha));
  ok = ok && da <= 1e-6;
  return {ok, fmt("max |tau_c - ref| = %.1e, |tau_c(10) - analytic| = %.1e", worst, da)};
}

Verdict criterion3() {
  bool ok = true;
  for (int k = 0; k <= 8; ++k) {
    const double alpha = 0.55 + 0.05 * k;
    const double ta = tau_c_analytic(alpha);
    const HopfResult h = detect_hopf(alpha, 20, 0.7 * ta, 1.3 * ta);
    std::printf("  alpha=%.2f N=20 tau_c=%.7f l1=%+.6e %s\n", alpha, h.tau_c, h.l1, to_string(h.type).c_str());
    ok = ok && h.l1 > 0.0;
  }
  std::map<int, double> l1;
  for (int n : {4, 6, 8, 10, 12}) {
    l1[n] = detect_hopf(kAlpha, n).l1;
    std::printf("  alpha=0.75 N=%-2d l1=%.7f\n", n, l1[n]);
  }
  const double conv = std::abs(l1[12] - l1[10]);
  const double ref = 2.2247568;
  const double match = std::abs(l1[10] - ref);
  std::printf("  |l1(12)-l1(10)| = %.1e; N=10 vs ref 2.2247568: diff %.1e, factor %.7f\n", conv, match,
              l1[10] / ref);
  ok = ok && conv <= 1e-4 && l1[12] > 0.0;
  return {ok, fmt("l1 > 0 for alpha in 0.55..0.95; |l1(12)-l1(10)| = %.1e; ref match %s (diff %.1e)", conv,
                  match <= 1e-3 ? "yes" : "no", match)};
}

Verdict criterion4() {
  const auto matrix_at = suarez_schopf_matrix(kAlpha, 50);
  double worst = 0.0, worst_tau = 0.0;
  for (int i = 0; i <= 120; ++i) {
    const double tau = 1.3 + 0.01 * i;
    Eigen::EigenSolver<Eigen::MatrixXd> es(matrix_at(tau), false);
    std::vector<cplx> upper;
    for (int k = 0; k < es.eigenvalues().size(); ++k)
      if (es.eigenvalues()[k].imag() >= 0.0) upper.push_back(es.eigenvalues()[k]);
    std::sort(upper.begin(), upper.end(), [](cplx a, cplx b) { return std::abs(a) < std::abs(b); });
    for (std::size_t k = 0; k < 10 && k < upper.size(); ++k) {
      const double r = characteristic_residual(upper[k], tau, kAlpha);
      if (r > worst) worst = r, worst_tau = tau;
    }
  }
  return {worst <= 1e-4, fmt("max residual over 10 pairs, 121 delays = %.2e (at tau=%.2f)", worst, worst_tau)};
}

Verdict criterion5() {
  const std::array<double, 4> taus{1.562, 1.6, 1.7, 1.9};
  const std::vector<int> ns{4, 6, 8, 10};
  const double ref[4][4] = {{5.66e-2, 1.44e-4, 1.54e-4, 1.31e-4},
                              {3.87e-2, 1.80e-4, 6.95e-5, 5.60e-5},
                              {4.29e-2, 7.75e-4, 2.13e-5, 3.65e-5},
                              {5.71e-2, 3.60e-3, 4.37e-4, 8.13e-5}};
  std::vector<std::future<CycleErrorResult>> jobs;
  for (double tau : taus)
    jobs.push_back(std::async(std::launch::async, [tau, &ns] {
      return gk_cycle_errors(suarez_schopf_perturbed(kAlpha, tau), ns);
    }));
  int within = 0, cells = 0;
  bool monotone = true;
  double worst_factor = 1.0;
  for (std::size_t i = 0; i < taus.size(); ++i) {
    const CycleErrorResult r = jobs[i].get();
    std::printf("  tau=%.3f period=%.5f\n", taus[i], r.period);
    for (std::size_t j = 0; j < ns.size(); ++j) {
      const double f = std::max(r.errors[j] / ref[i][j], ref[i][j] / r.errors[j]);
      worst_factor = std::max(worst_factor, f);
      ++cells;
      within += f <= 3.0;
      std::printf("    N=%-2d err=%.3e ref=%.2e factor=%.2f %s\n", ns[j], r.errors[j], ref[i][j], f,
                  f <= 3.0 ? "ok" : "outside x3");
    }
    if (taus[i] != 1.562)
      for (std::size_t j = 1; j < ns.size(); ++j) monotone = monotone && r.errors[j] < r.errors[j - 1];
  }
  return {within == cells && monotone,
          fmt("%d/%d cells within x3 of ref (worst factor %.1f); monotone decrease: %s", within, cells,
              worst_factor, monotone ? "yes" : "no")};
}

Verdict criterion6() {
  const ReducedFactory f = suarez_schopf_reduced(kAlpha, 6);
  CycleControls c;
  c.saddle_level = -suarez_schopf_t_plus(kAlpha);
  const double sharp = detect_homoclinic(f, 1.57, 1.65, c);
  const double star = detect_sno(f, 1.50, 1.60, c);
  const bool ok = sharp >= 1.5806 && sharp <= 1.6006 && star >= 1.5492 && star <= 1.5692;
  return {ok, fmt("tau_sharp = %.5f (want [1.5806, 1.6006]), tau_star = %.5f (want [1.5492, 1.5692])", sharp, star)};
}

Verdict criterion7() {
  const ReducedFactory f = suarez_schopf_reduced(kAlpha, 6);
  CycleControls c;
  c.saddle_level = -suarez_schopf_t_plus(kAlpha);
  const ReducedOrbit st = compute_stable_cycle(f(1.7689), c);
  const ReducedOrbit up = compute_upo(f(1.5827), Family::upo_outer, c);
  struct Row {
    const char* name;
    double tau, period, target;
  };
  const std::array<Row, 2> rows{Row{"stable cycle", 1.7689, st.orbit.period, 5.78},
                                Row{"outer UPO", 1.5827, up.orbit.period, 18.23}};
  bool ok = true;
  for (const auto& r : rows) {
    const double own = to_physical_years(r.period, r.tau);
    const double fixed = to_physical_years(r.period);
    const double e_own = own / r.target - 1.0, e_fixed = fixed / r.target - 1.0;
    std::printf("  %-12s tau=%.4f P=%.5f  own-delay %.3f yr (%+.2f%%)  fixed 1.7: %.3f yr (%+.2f%%)  target %.2f\n",
                r.name, r.tau, r.period, own, 100 * e_own, fixed, 100 * e_fixed, r.target);
    ok = ok && std::abs(e_own) <= 0.05;
  }
  return {ok, fmt("stable %.3f yr, outer UPO %.3f yr (conversion with the orbit's delay)",
                  to_physical_years(st.orbit.period, 1.7689), to_physical_years(up.orbit.period, 1.5827))};
}

Verdict criterion8() {
  const double tau = 1.9;
  const int n = 6;
  const DdeSpec spec = suarez_schopf_perturbed(kAlpha, tau);
  const TimeSeries coarse = integrate_dde(spec, [](double) { return 1.0; }, 3000.0, tau / 1024);
  const Orbit orb = extract_periodic_orbit(coarse, 2000.0);
  const GkSystem sys = assemble_linear(spec, n);
  const SpectralData sd = eigendecompose(sys);
  const ManifoldParam psi = build_psi(sys, sd);
  std::vector<Eigen::VectorXd> states;
  const int samples = 1000;
  const double t0 = coarse.back_time() - orb.period;
  for (int k = 0; k < samples; ++k) {
    const HistoryElement h = coarse.history_at(t0 + orb.period * k / samples, tau);
    const auto y = project_history(h, n, tau);
    states.push_back(Eigen::Map<const Eigen::VectorXd>(y.data(), n));
  }
  const double q = defect_ratio(sd, psi, states);
  double num = 0.0, den = 0.0;
  for (const auto& y : states) {
    const Eigen::VectorXcd z = mode_coordinates(sd, y);
    const Eigen::VectorXcd p = psi.evaluate(z.head(2));
    num += (p.tail(n - 2) - z.tail(n - 2)).squaredNorm();
    den += z.tail(n - 2).squaredNorm();
  }
  std::printf("  time average of the ratio = %.4e; ratio of time averages = %.4e (target 2.5e-2)\n", q, num / den);
  return {q >= 1.25e-2 && q <= 5e-2, fmt("time-averaged defect ratio = %.3e (want 2.5e-2 within x2)", q)};
}

Verdict criterion9() {
  bool ok = true;
  double orth = 0.0, der = 0.0;
  for (double tau : {0.5, 1.7, 3.0}) {
    orth = std::max(orth, oracle::max_orthogonality_error(20, tau));
    der = std::max(der, oracle::max_derivative_residual(20, tau));
  }
  std::printf("  Koornwinder orthogonality %.1e, derivative relation %.1e\n", orth, der);
  ok = ok && orth <= 1e-10 && der <= 1e-8;

  const DdeSpec spec = suarez_schopf_perturbed(kAlpha, 1.9);
  double hom = 0.0, lp = 0.0, bio = 0.0;
  std::mt19937_64 gen(2024);
  for (int n : {6, 10, 20}) {
    const GkSystem sys = assemble_linear(spec, n);
    const SpectralData sd = eigendecompose(sys);
    bio = std::max(bio, sd.biorthonormality_error());
    const ManifoldParam psi = build_psi(sys, sd);
    for (int i = 0; i < 100; ++i) {
      const auto [a, b] = oracle::random_point(gen);
      hom = std::max({hom, oracle::homological_residual(sys, sd, psi, 2, a, b),
                      oracle::homological_residual(sys, sd, psi, 3, a, b)});
    }
    const auto [a, b] = oracle::random_point(gen);
    lp = std::max(lp, (oracle::lyapunov_perron(sys, sd, a, b) - oracle::graph_vector(sd, psi, a, b, 2))
                          .cwiseAbs()
                          .maxCoeff());
  }
  std::printf("  homological residual %.1e, Lyapunov-Perron gap %.1e, biorthonormality %.1e\n", hom, lp, bio);
  ok = ok && hom <= 1e-10 && lp <= 1e-6 && bio <= 1e-10;

  const double tc = find_tau_c(kAlpha, 6);
  const double tc10 = find_tau_c(kAlpha, 10);
  const ReducedFactory f = suarez_schopf_reduced(kAlpha, 6);
  CycleControls c;
  c.saddle_level = -suarez_schopf_t_plus(kAlpha);
  std::vector<double> lx, ly;
  for (double d : {1e-3, 2e-3, 5e-3, 1e-2}) {
    const ReducedSystem2D r = f(tc - d);
    const ReducedOrbit o = compute_upo(r, Family::upo_inner_plus, c, std::polar(normal_form_radius(r), 0.0));
    lx.push_back(std::log(d));
    ly.push_back(std::log(o.orbit.amplitude));
  }
  const double mx = std::accumulate(lx.begin(), lx.end(), 0.0) / lx.size();
  const double my = std::accumulate(ly.begin(), ly.end(), 0.0) / ly.size();
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) sxy += (lx[i] - mx) * (ly[i] - my), sxx += (lx[i] - mx) * (lx[i] - mx);
  const double slope = sxy / sxx;
  std::printf("  Hopf amplitude slope %.4f\n", slope);
  ok = ok && std::abs(slope - 0.5) <= 0.05;

  const GkSystem sys = assemble_linear(suarez_schopf_perturbed(kAlpha, tc10), 10);
  const SpectralData sd = eigendecompose(sys);
  const double l1 = lyapunov_coefficient(sys, sd);
  double rescale = 0.0;
  for (cplx k : {cplx(2.0, 0.0), cplx(1.0, 1.0)}) {
    const double l1c = lyapunov_coefficient(sys, sd.rescaled(0, k));
    rescale = std::max(rescale, std::abs(l1c / (std::norm(k) * l1) - 1.0));
  }
  std::printf("  l1 rescaling law relative error %.1e\n", rescale);
  ok = ok && rescale <= 1e-10;
  return {ok, fmt("orth %.0e, deriv %.0e, homological %.0e, LP %.0e, biorth %.0e, slope %.3f, rescale %.0e", orth,
                  der, hom, lp, bio, slope, rescale)};
}

struct BandPeak {
  double period = 0.0, power = 0.0, background = 0.0;
  bool local_max = false;
};

// Largest median-PSD bin with period in [lo, hi] against the median of the
// bins in the half-octaves just outside the band.
BandPeak band_peak(const Psd& psd, const std::vector<double>& power, double lo, double hi) {
  BandPeak b;
  std::size_t best = 0;
  std::vector<double> flank;
  for (std::size_t k = 1; k < psd.frequency.size(); ++k) {
    const double p = 1.0 / psd.frequency[k];
    if (p >= lo && p <= hi && power[k] > b.power) b.power = power[k], best = k;
    if ((p >= lo / std::sqrt(2.0) && p < lo) || (p > hi && p <= hi * std::sqrt(2.0))) flank.push_back(power[k]);
  }
  if (best == 0 || flank.empty()) return b;
  b.period = 1.0 / psd.frequency[best];
  b.local_max = power[best] > power[best - 1] && (best + 1 >= power.size() || power[best] > power[best + 1]);
  std::sort(flank.begin(), flank.end());
  const std::size_t m = flank.size();
  b.background = m % 2 ? flank[m / 2] : 0.5 * (flank[m / 2 - 1] + flank[m / 2]);
  return b;
}

Verdict criterion10() {
  StochasticModel model;
  model.schedule = Schedule::triangle;
  const double dt = 2e-3;
  const long steps = 1000000;
  const int seeds = 12;
  std::vector<std::future<Psd>> jobs;
  for (int s = 0; s < seeds; ++s)
    jobs.push_back(std::async(std::launch::async, [&model, s, dt, steps] {
      const TspRun run = simulate_tsp(model, {}, dt, steps, 1000 + static_cast<std::uint64_t>(s));
      return welch_psd(run.theta, dt);
    }));
  std::vector<Psd> psds;
  for (auto& j : jobs) psds.push_back(j.get());
  std::vector<double> median(psds[0].power.size());
  for (std::size_t k = 0; k < median.size(); ++k) {
    std::vector<double> v;
    for (const auto& p : psds) v.push_back(p.power[k]);
    std::sort(v.begin(), v.end());
    median[k] = 0.5 * (v[(v.size() - 1) / 2] + v[v.size() / 2]);
  }
  const double window = to_physical_years(steps * dt);
  bool ok = std::abs(window / 1100.0 - 1.0) <= 0.05;
  std::string text = fmt("window %.1f yr", window);
  for (auto [lo, hi] : {std::pair{4.0, 8.0}, std::pair{15.0, 30.0}}) {
    const BandPeak b = band_peak(psds[0], median, lo, hi);
    const double ratio = b.background > 0.0 ? b.power / b.background : 0.0;
    const bool pass = b.local_max && ratio >= 2.0;
    std::printf("  band %g-%g yr: max at %.2f yr, power %.3e, local max %s, flank median %.3e, ratio %.2f\n", lo, hi,
                b.period, b.power, b.local_max ? "yes" : "no", b.background, ratio);
    text += fmt("; %g-%g yr peak %.2f yr ratio %.2f%s", lo, hi, b.period, ratio, b.local_max ? "" : " (not a local max)");
    ok = ok && pass;
  }
  return {ok, text};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::function<Verdict()>> all{criterion1, criterion2, criterion3, criterion4, criterion5,
                                                  criterion6, criterion7, criterion8, criterion9, criterion10};
  std::set<int> pick;
  for (int i = 1; i < argc; ++i) pick.insert(std::atoi(argv[i]));
  int errors = 0;
  for (int i = 1; i <= static_cast<int>(all.size()); ++i) {
    if (!pick.empty() && !pick.count(i)) continue;
    const auto t0 = std::chrono::steady_clock::now();
    std::printf("criterion %d\n", i);
    std::fflush(stdout);
    try {
      const Verdict v = all[i - 1]();
      const double sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      std::printf("criterion %d: %s  %s  [%.1fs]\n", i, v.pass ? "PASS" : "FAIL", v.summary.c_str(), sec);
    } catch (const std::exception& e) {
      ++errors;
      std::printf("criterion %d: FAIL  error: %s\n", i, e.what());
    }
    std::fflush(stdout);
  }
  return errors == 0 ? 0 : 1;
}

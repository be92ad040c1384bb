// gkr: command-line front end.  Every subcommand writes its outputs plus a
// <command>_meta.json with the full effective configuration into --out.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <future>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "config.hpp"
#include "gkr/bifurcation.hpp"
#include "gkr/cycle_error.hpp"
#include "gkr/dde_oracle.hpp"
#include "gkr/errors.hpp"
#include "gkr/io.hpp"
#include "gkr/manifold.hpp"
#include "gkr/signal.hpp"
#include "gkr/spectral.hpp"
#include "gkr/stochastic.hpp"
#include "json.hpp"

#ifndef GKR_VERSION
#define GKR_VERSION "0.0.0"
#endif

namespace fs = std::filesystem;
using json = nlohmann::json;
using namespace gkr;
using gkr::cli::parse_bracket;
using gkr::cli::parse_int_list;
using gkr::cli::parse_range;

namespace {

enum Exit { kOk = 0, kConfig = 2, kNumeric = 3, kIo = 4 };

struct Common {
  std::string out;
  std::string config;
};

struct SpectrumOpts {
  double alpha = 0.0;
  int n = 20;
  std::string tau = "1.3:2.5:0.01";
  int tracks = 10;
  bool find_tauc = false;
};

struct ReduceOpts {
  double alpha = 0.75;
  int n = 6;
  double tau = 0.0;
};

struct DiagramOpts {
  double alpha = 0.75;
  int n = 6;
  std::string family = "all";
  std::string tau = "1.55:1.8:0.005";
  std::string sharp_bracket = "1.57:1.65";
  std::string star_bracket = "1.5:1.6";
  double dt = 0.01;
  bool no_summary = false;
};

struct OrbitOpts {
  double alpha = 0.75;
  int n = 6;
  double tau = 0.0;
  std::string family = "stable";
  double dt = 0.01;
};

struct DdeOpts {
  double alpha = 0.75;
  double tau = 0.0;
  double t_end = 200.0;
  double dt = 0.0;
  double history = 1.0;
  double skip = kDefaultTransientSkip;
  int stride = 1;
  std::string compare;
  int fine_divisions = 262144;
};

struct TspOpts {
  double alpha = 0.75;
  double sigma = 0.2;
  double tau0 = 1.45;
  double tau1 = 1.65;
  double eps = 8.4e-4;
  std::string schedule = "linear";
  bool stratonovich = false;
  double dt = 2e-3;
  double steps = 118900;
  std::uint64_t seed = 1;
  int ensemble = 1;
  int stride = 1;
  double segment_years = 120.0;
  std::string band = "15:30";
  int threads = 0;
};

struct PsdOpts {
  std::string input;
  std::string column;
  double dt = 0.0;
  double segment_years = 120.0;
  std::string band;
  double reference_delay = 1.7;
};

fs::path out_dir(const Common& c) { return c.out.empty() ? cli::default_output_dir() : fs::path(c.out); }

void write_text(const fs::path& p, const std::string& s, std::vector<std::string>& written) {
  write_file_atomic(p, s);
  written.push_back(p.filename().string());
}

template <typename T>
std::string to_csv(const T& obj) {
  std::ostringstream os;
  obj.write_csv(os);
  return os.str();
}

json effective_config(const CLI::App& sub) {
  json cfg = json::object();
  for (const CLI::Option* opt : sub.get_options()) {
    const std::string name = opt->get_single_name();
    if (name == "help" || name == "config" || name.empty()) continue;
    if (opt->get_expected_min() == 0)
      cfg[name] = opt->count() > 0 && opt->as<bool>();
    else
      cfg[name] = opt->count() > 0 ? opt->as<std::string>() : opt->get_default_str();
  }
  return cfg;
}

void write_meta(const fs::path& dir, const CLI::App& sub, json extra, std::vector<std::string>& written) {
  json meta;
  meta["command"] = sub.get_name();
  meta["version"] = GKR_VERSION;
  meta["config"] = effective_config(sub);
  for (auto& [k, v] : extra.items()) meta[k] = v;
  meta["outputs"] = written;
  write_file_atomic(dir / (sub.get_name() + "_meta.json"), meta.dump(2) + "\n");
}

json hopf_json(const HopfResult& h) { return {{"tau_c", h.tau_c}, {"l1", h.l1}, {"type", to_string(h.type)}}; }

int run_spectrum(const CLI::App& sub, const Common& c, const SpectrumOpts& o) {
  const auto range = parse_range(o.tau);
  if (o.n < 2) throw ConfigError("--N must be at least 2");
  const fs::path dir = out_dir(c);
  std::vector<std::string> written;
  const double lo = range.lo, hi = range.hi > range.lo ? range.hi : range.lo + 1.0;
  const HopfResult h =
      detect_hopf([a = o.alpha](double tau) { return suarez_schopf_perturbed(a, tau); }, o.n, lo, hi);
  const json summary = hopf_json(h);
  if (!o.find_tauc) {
    const EigenSweep sweep = eigen_sweep(suarez_schopf_matrix(o.alpha, o.n), range.values(), o.tracks);
    write_text(dir / "spectrum.csv", to_csv(sweep), written);
  }
  write_text(dir / "spectrum_summary.json", summary.dump(2) + "\n", written);
  write_meta(dir, sub, {}, written);
  std::cout << summary.dump() << "\n";
  return kOk;
}

int run_reduce(const CLI::App& sub, const Common& c, const ReduceOpts& o) {
  const ReducedSystem2D red = build_reduced_system(suarez_schopf_perturbed(o.alpha, o.tau), o.n);
  const fs::path dir = out_dir(c);
  std::vector<std::string> written;
  std::ostringstream os;
  red.write_json(os);
  write_text(dir / "reduced.json", os.str(), written);
  write_meta(dir, sub, {}, written);
  std::printf("tau=%.6f lambda1=%.8f%+.8fi min denominator %.3e\n", o.tau, red.lambda1.real(), red.lambda1.imag(),
              red.param.min_denominator);
  return kOk;
}

CycleControls controls_for(double alpha, double dt) {
  CycleControls c;
  c.dt = dt;
  c.saddle_level = -suarez_schopf_t_plus(alpha);
  return c;
}

int run_diagram(const CLI::App& sub, const Common& c, const DiagramOpts& o) {
  const auto range = parse_range(o.tau);
  std::vector<Family> families;
  if (o.family == "all")
    families = {Family::stable_cycle, Family::upo_inner_plus, Family::upo_inner_minus, Family::upo_outer};
  else
    families = {family_from_string(o.family)};
  const auto sharp = parse_bracket(o.sharp_bracket);
  const auto star = parse_bracket(o.star_bracket);
  const ReducedFactory factory = suarez_schopf_reduced(o.alpha, o.n);
  const CycleControls ctl = controls_for(o.alpha, o.dt);

  std::vector<BranchPoint> points;
  json failures = json::array();
  for (Family f : families) {
    const Branch b = continue_branch(factory, range.lo, range.hi, range.step, f, ctl);
    points.insert(points.end(), b.points.begin(), b.points.end());
    for (const auto& [tau, why] : b.failures) failures.push_back({{"family", to_string(f)}, {"tau", tau}, {"reason", why}});
  }
  const fs::path dir = out_dir(c);
  std::vector<std::string> written;
  std::ostringstream os;
  emit_diagram(points, os);
  write_text(dir / "diagram.csv", os.str(), written);
  json summary;
  if (!o.no_summary) {
    summary["tau_c"] = find_tau_c(o.alpha, o.n);
    summary["tau_sharp"] = detect_homoclinic(factory, sharp.first, sharp.second, ctl);
    summary["tau_star"] = detect_sno(factory, star.first, star.second, ctl);
    write_text(dir / "diagram_summary.json", summary.dump(2) + "\n", written);
    std::cout << summary.dump() << "\n";
  }
  write_meta(dir, sub, {{"points", points.size()}, {"failures", failures}}, written);
  return kOk;
}

int run_orbit(const CLI::App& sub, const Common& c, const OrbitOpts& o) {
  const Family fam = family_from_string(o.family);
  const ReducedSystem2D red = suarez_schopf_reduced(o.alpha, o.n)(o.tau);
  const CycleControls ctl = controls_for(o.alpha, o.dt);
  const ReducedOrbit ro = fam == Family::stable_cycle ? compute_stable_cycle(red, ctl) : compute_upo(red, fam, ctl);
  json j = orbit_to_json(ro.orbit);
  j["tau"] = o.tau;
  j["family"] = to_string(fam);
  j["period_years"] = to_physical_years(ro.orbit.period, o.tau);
  j["period_years_reference_delay"] = to_physical_years(ro.orbit.period);
  j["lifted_min"] = ro.lifted_min;
  j["lifted_max"] = ro.lifted_max;
  const fs::path dir = out_dir(c);
  std::vector<std::string> written;
  write_text(dir / "orbit.json", j.dump(2) + "\n", written);
  std::ostringstream os;
  os << "t,x\n";
  os.precision(17);
  for (const auto& [t, v] : ro.orbit.samples) os << t << ',' << v << '\n';
  write_text(dir / "orbit.csv", os.str(), written);
  write_meta(dir, sub, {}, written);
  std::printf("%s tau=%.6f period=%.6f (%.3f yr) amplitude=%.6f\n", to_string(fam).c_str(), o.tau, ro.orbit.period,
              to_physical_years(ro.orbit.period, o.tau), ro.orbit.amplitude);
  return kOk;
}

int run_dde(const CLI::App& sub, const Common& c, const DdeOpts& o) {
  const DdeSpec spec = suarez_schopf_perturbed(o.alpha, o.tau);
  const double dt = o.dt > 0.0 ? o.dt : o.tau / 1024.0;
  const fs::path dir = out_dir(c);
  std::vector<std::string> written;
  const double h0 = o.history;
  const TimeSeries series = integrate_dde(spec, [h0](double) { return h0; }, o.t_end, dt, o.stride);
  std::ostringstream os;
  write_series_csv(series, os);
  write_text(dir / "dde.csv", os.str(), written);

  json summary;
  try {
    const Orbit orbit = extract_periodic_orbit(series, o.skip);
    summary["orbit"] = orbit_to_json(orbit);
    summary["period_years"] = to_physical_years(orbit.period, o.tau);
  } catch (const NumericError& e) {
    summary["orbit"] = nullptr;
    summary["orbit_note"] = e.what();
  }
  if (!o.compare.empty()) {
    CycleErrorProtocol p;
    p.fine_divisions = o.fine_divisions;
    const CycleErrorResult r = gk_cycle_errors(spec, parse_int_list(o.compare), p);
    json rows = json::array();
    for (std::size_t i = 0; i < r.modes.size(); ++i) rows.push_back({{"N", r.modes[i]}, {"linf_error", r.errors[i]}});
    summary["cycle_errors"] = {{"period", r.period}, {"rows", rows}};
    for (std::size_t i = 0; i < r.modes.size(); ++i) std::printf("N=%d linf=%.3e\n", r.modes[i], r.errors[i]);
  }
  write_text(dir / "dde_summary.json", summary.dump(2) + "\n", written);
  write_meta(dir, sub, {}, written);
  return kOk;
}

std::string band_csv(const TspRun& run, const std::vector<double>& filtered, int stride) {
  std::ostringstream os;
  os << "t,x\n";
  os.precision(17);
  for (std::size_t k = 0; k < filtered.size(); k += stride) os << run.times[k] << ',' << filtered[k] << '\n';
  return os.str();
}

int run_tsp(const CLI::App& sub, const Common& c, const TspOpts& o) {
  StochasticModel m;
  m.alpha = o.alpha;
  m.sigma = o.sigma;
  m.tau0 = o.tau0;
  m.tau1 = o.tau1;
  m.epsilon = o.eps;
  m.schedule = schedule_from_string(o.schedule);
  m.stratonovich = o.stratonovich;
  m.validate();
  if (o.steps < 1 || o.steps != std::floor(o.steps) || o.steps > 1e9) throw ConfigError("--steps must be an integer in [1, 1e9]");
  if (o.ensemble < 1) throw ConfigError("--ensemble must be positive");
  if (o.stride < 1) throw ConfigError("--stride must be positive");
  const auto band = parse_bracket(o.band);
  const long steps = static_cast<long>(o.steps);
  const double years = to_physical_years(steps * o.dt);
  const bool with_psd = years >= 1.5 * o.segment_years;
  const bool with_band = years >= 2.0 * band.second;

  const fs::path dir = out_dir(c);
  struct Member {
    std::uint64_t seed;
    std::string tsp, psd, band;
    std::vector<double> power, freq;
  };
  auto work = [&](std::uint64_t seed) {
    Member mb{seed, {}, {}, {}, {}, {}};
    const TspRun full = simulate_tsp(m, {}, o.dt, steps, seed);
    std::ostringstream os;
    os << "t,theta,tau\n";
    os.precision(17);
    for (std::size_t k = 0; k < full.times.size(); k += o.stride)
      os << full.times[k] << ',' << full.theta[k] << ',' << full.tau_t[k] << '\n';
    mb.tsp = os.str();
    if (with_psd) {
      const Psd psd = welch_psd(full.theta, o.dt, o.segment_years);
      mb.psd = to_csv(psd);
      mb.power = psd.power;
      mb.freq = psd.frequency;
    }
    if (with_band) mb.band = band_csv(full, band_filter(full.theta, o.dt, band), o.stride);
    return mb;
  };

  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const unsigned pool = o.threads > 0 ? static_cast<unsigned>(o.threads) : hw;
  std::vector<Member> members;
  std::vector<std::string> written;
  for (int start = 0; start < o.ensemble; start += static_cast<int>(pool)) {
    std::vector<std::future<Member>> jobs;
    for (int k = start; k < std::min(o.ensemble, start + static_cast<int>(pool)); ++k)
      jobs.push_back(std::async(std::launch::async, work, o.seed + static_cast<std::uint64_t>(k)));
    for (auto& j : jobs) {
      Member mb = j.get();
      const std::string tag = "_seed" + std::to_string(mb.seed);
      write_text(dir / ("tsp" + tag + ".csv"), mb.tsp, written);
      if (with_psd) write_text(dir / ("psd" + tag + ".csv"), mb.psd, written);
      if (with_band) write_text(dir / ("band" + tag + ".csv"), mb.band, written);
      mb.tsp.clear();
      mb.band.clear();
      members.push_back(std::move(mb));
    }
  }
  if (with_psd && members.size() > 1) {
    Psd med;
    med.frequency = members[0].freq;
    med.segments = static_cast<int>(members.size());
    for (std::size_t k = 0; k < med.frequency.size(); ++k) {
      std::vector<double> v;
      for (const auto& mb : members) v.push_back(mb.power[k]);
      std::sort(v.begin(), v.end());
      med.power.push_back(0.5 * (v[(v.size() - 1) / 2] + v[v.size() / 2]));
    }
    write_text(dir / "psd_median.csv", to_csv(med), written);
  }
  json seeds = json::array();
  for (const auto& mb : members) seeds.push_back(mb.seed);
  json extra{{"seed", o.seed}, {"seeds", seeds}, {"rng", kRngName}, {"window_years", years}};
  if (!with_psd) extra["psd_note"] = "run shorter than 1.5 Welch segments; no spectrum written";
  if (!with_band) extra["band_note"] = "run shorter than two periods of the band; no band-pass written";
  write_meta(dir, sub, extra, written);
  std::printf("%zu member(s), window %.1f yr, outputs in %s\n", members.size(), years, dir.string().c_str());
  return kOk;
}

int run_psd(const CLI::App& sub, const Common& c, const PsdOpts& o) {
  std::istringstream is(read_file(o.input));
  std::string header;
  if (!std::getline(is, header)) throw IoError(o.input + ": empty file");
  std::vector<std::string> cols;
  {
    std::istringstream hs(header);
    std::string h;
    while (std::getline(hs, h, ',')) cols.push_back(h);
  }
  if (cols.size() < 2) throw IoError(o.input + ": need a time column and a value column");
  std::size_t col = 1;
  if (!o.column.empty()) {
    const auto it = std::find(cols.begin(), cols.end(), o.column);
    if (it == cols.end()) throw ConfigError("column '" + o.column + "' not in " + o.input);
    col = static_cast<std::size_t>(it - cols.begin());
  }
  std::vector<double> t, x;
  std::string line;
  int lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string cell;
    std::vector<double> row;
    while (std::getline(ls, cell, ',')) {
      try {
        row.push_back(std::stod(cell));
      } catch (const std::exception&) {
        throw IoError(o.input + ":" + std::to_string(lineno) + ": not a number: " + cell);
      }
    }
    if (row.size() <= col) throw IoError(o.input + ":" + std::to_string(lineno) + ": missing column");
    t.push_back(row[0]);
    x.push_back(row[col]);
  }
  if (t.size() < 3) throw IoError(o.input + ": too few rows");
  const double dt = o.dt > 0.0 ? o.dt : (t.back() - t.front()) / static_cast<double>(t.size() - 1);
  const fs::path dir = out_dir(c);
  std::vector<std::string> written;
  const Psd psd = welch_psd(x, dt, o.segment_years, o.reference_delay);
  write_text(dir / "psd.csv", to_csv(psd), written);
  if (!o.band.empty()) {
    const auto y = band_filter(x, dt, parse_bracket(o.band), o.reference_delay);
    std::ostringstream os;
    os << "t,x\n";
    os.precision(17);
    for (std::size_t k = 0; k < y.size(); ++k) os << t[k] << ',' << y[k] << '\n';
    write_text(dir / "band.csv", os.str(), written);
  }
  write_meta(dir, sub, {{"dt", dt}, {"segments", psd.segments}}, written);
  return kOk;
}

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--out", c.out, "Output directory (default $GKR_OUTPUT_DIR or ./gkr_out)");
  sub->add_option("--config", c.config, "Flat key = value file; command-line options win");
}

// Re-parse with config-file values for every option not given explicitly.
void merge_config(CLI::App& app, CLI::App* sub, const Common& c, int argc, char** argv) {
  if (c.config.empty()) return;
  std::vector<std::string> args(argv + 1, argv + argc);
  for (const auto& [key, value] : cli::read_config_file(c.config)) {
    const CLI::Option* opt = key == "config" || key == "help" ? nullptr : sub->get_option_no_throw("--" + key);
    if (!opt) throw ConfigError("unknown key '" + key + "' in " + c.config + " for '" + sub->get_name() + "'");
    if (opt->count() == 0) args.push_back("--" + key + "=" + value);
  }
  std::reverse(args.begin(), args.end());
  app.clear();
  app.parse(args);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Galerkin-Koornwinder reduction and bifurcation toolkit for scalar delay equations"};
  app.option_defaults()->always_capture_default();
  app.require_subcommand(1);
  app.set_version_flag("--version", GKR_VERSION);

  Common common;
  SpectrumOpts so;
  ReduceOpts ro;
  DiagramOpts dgo;
  OrbitOpts oo;
  DdeOpts ddo;
  TspOpts to;
  PsdOpts po;

  auto* sp = app.add_subcommand("spectrum", "Eigenvalue sweep of the GK matrix and Hopf summary");
  sp->add_option("--alpha", so.alpha, "Delayed feedback strength (required)");
  sp->add_option("--N", so.n, "Number of Koornwinder modes");
  sp->add_option("--tau", so.tau, "Delay range lo:hi:step (bracket for the Hopf search)");
  sp->add_option("--tracks", so.tracks, "Eigenvalue pairs to track");
  sp->add_flag("--find-tauc", so.find_tauc, "Only locate tau_c and the Lyapunov coefficient");
  add_common(sp, common);

  auto* rd = app.add_subcommand("reduce", "Build the 2D reduced system and write it as JSON");
  rd->add_option("--alpha", ro.alpha, "Delayed feedback strength");
  rd->add_option("--N", ro.n, "Number of Koornwinder modes");
  rd->add_option("--tau", ro.tau, "Delay (required)");
  add_common(rd, common);

  auto* dg = app.add_subcommand("diagram", "Periodic-orbit branches of the reduced system");
  dg->add_option("--alpha", dgo.alpha, "Delayed feedback strength");
  dg->add_option("--N", dgo.n, "Number of Koornwinder modes");
  dg->add_option("--family", dgo.family, "all, stable, inner_plus, inner_minus or outer");
  dg->add_option("--tau", dgo.tau, "Delay range lo:hi:step");
  dg->add_option("--sharp-bracket", dgo.sharp_bracket, "Search bracket lo:hi for the homoclinic delay");
  dg->add_option("--star-bracket", dgo.star_bracket, "Search bracket lo:hi for the saddle-node of orbits");
  dg->add_option("--dt", dgo.dt, "Reduced-system time step");
  dg->add_flag("--no-summary", dgo.no_summary, "Skip the tau_c / tau_sharp / tau_star search");
  add_common(dg, common);

  auto* ob = app.add_subcommand("orbit", "One periodic orbit of the reduced system, lifted to T");
  ob->add_option("--alpha", oo.alpha, "Delayed feedback strength");
  ob->add_option("--N", oo.n, "Number of Koornwinder modes");
  ob->add_option("--tau", oo.tau, "Delay (required)");
  ob->add_option("--family", oo.family, "stable, inner_plus, inner_minus or outer");
  ob->add_option("--dt", oo.dt, "Reduced-system time step");
  add_common(ob, common);

  auto* dd = app.add_subcommand("dde", "Direct DDE integration, optionally compared with GK systems");
  dd->add_option("--alpha", ddo.alpha, "Delayed feedback strength");
  dd->add_option("--tau", ddo.tau, "Delay (required)");
  dd->add_option("--t-end", ddo.t_end, "Integration length");
  dd->add_option("--dt", ddo.dt, "Step (default tau/1024)");
  dd->add_option("--history", ddo.history, "Constant initial history");
  dd->add_option("--skip", ddo.skip, "Transient skipped before period detection");
  dd->add_option("--stride", ddo.stride, "Write every stride-th step");
  dd->add_option("--compare", ddo.compare, "Comma-separated N list for the one-period GK error");
  dd->add_option("--fine-divisions", ddo.fine_divisions, "tau/dt on the compared period");
  add_common(dd, common);

  auto* ts = app.add_subcommand("tsp", "Stochastic runs with a drifting delay");
  ts->add_option("--alpha", to.alpha, "Delayed feedback strength");
  ts->add_option("--sigma", to.sigma, "Noise strength");
  ts->add_option("--tau0", to.tau0, "Lower delay");
  ts->add_option("--tau1", to.tau1, "Upper delay");
  ts->add_option("--eps", to.eps, "Delay drift rate");
  ts->add_option("--schedule", to.schedule, "linear or triangle");
  ts->add_flag("--stratonovich", to.stratonovich, "Add the Stratonovich drift correction");
  ts->add_option("--dt", to.dt, "Time step");
  ts->add_option("--steps", to.steps, "Number of steps (1e6 notation accepted)");
  ts->add_option("--seed", to.seed, "Seed of the first member");
  ts->add_option("--ensemble", to.ensemble, "Members, seeds seed..seed+K-1");
  ts->add_option("--stride", to.stride, "Write every stride-th sample");
  ts->add_option("--segment-years", to.segment_years, "Welch segment length");
  ts->add_option("--band", to.band, "Band-pass periods lo:hi in years");
  ts->add_option("--threads", to.threads, "Worker threads (0 = hardware)");
  add_common(ts, common);

  auto* ps = app.add_subcommand("psd", "Welch spectrum (and band-pass) of a CSV time series");
  ps->add_option("--input", po.input, "CSV with a time column first (required)");
  ps->add_option("--column", po.column, "Value column name (default: second column)");
  ps->add_option("--dt", po.dt, "Sample interval (default from the time column)");
  ps->add_option("--segment-years", po.segment_years, "Welch segment length");
  ps->add_option("--band", po.band, "Band-pass periods lo:hi in years");
  ps->add_option("--reference-delay", po.reference_delay, "Delay used to convert time to years");
  add_common(ps, common);

  try {
    try {
      app.parse(argc, argv);
      CLI::App* sub = app.get_subcommands().front();
      merge_config(app, sub, common, argc, argv);
    } catch (const CLI::ParseError& e) {
      const int code = app.exit(e);
      return code == 0 ? kOk : kConfig;
    }
    CLI::App* sub = app.get_subcommands().front();
    const std::string name = sub->get_name();
    const std::map<std::string, std::string> required{
        {"spectrum", "--alpha"}, {"reduce", "--tau"}, {"orbit", "--tau"}, {"dde", "--tau"}, {"psd", "--input"}};
    if (auto it = required.find(name); it != required.end() && sub->get_option(it->second)->count() == 0) {
      std::cerr << it->second << " is required (command line or --config)\n";
      return kConfig;
    }
    if (name == "spectrum") return run_spectrum(*sub, common, so);
    if (name == "reduce") return run_reduce(*sub, common, ro);
    if (name == "diagram") return run_diagram(*sub, common, dgo);
    if (name == "orbit") return run_orbit(*sub, common, oo);
    if (name == "dde") return run_dde(*sub, common, ddo);
    if (name == "tsp") return run_tsp(*sub, common, to);
    if (name == "psd") return run_psd(*sub, common, po);
  } catch (const ConfigError& e) {
    std::cerr << "gkr: configuration error: " << e.what() << "\n";
    return kConfig;
  } catch (const IoError& e) {
    std::cerr << "gkr: I/O error: " << e.what() << "\n";
    return kIo;
  } catch (const std::exception& e) {
    std::cerr << "gkr: numerical failure: " << e.what() << "\n";
    return kNumeric;
  }
  return kConfig;
}

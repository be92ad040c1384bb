#include "gkr/manifold.hpp"

#include <cmath>
#include <ostream>
#include <sstream>

#include "gkr/errors.hpp"
#include "json.hpp"

namespace gkr {

namespace {

constexpr double kResonanceTol = 1e-12;

std::string tuple_string(const std::vector<int>& t) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < t.size(); ++i) os << (i ? ", " : "") << t[i];
  os << ')';
  return os.str();
}

void require_resonance_free(const NonresonanceReport& rep, int k) {
  if (!rep.ok) {
    throw NumericError("resonant tuple at order " + std::to_string(k) + ": " + tuple_string(rep.offending));
  }
}

nlohmann::json bipoly_json(const BiPoly& p) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& [e, c] : p.nonzero_terms(0.0)) {
    arr.push_back({{"p", e[0]}, {"q", e[1]}, {"re", c.real()}, {"im", c.imag()}});
  }
  return arr;
}

}  // namespace

ModeInteraction::ModeInteraction(const GkSystem& system, const SpectralData& spectrum)
    : f2(system.nonlinearity.homogeneous_part(2)), f3(system.nonlinearity.homogeneous_part(3)) {
  const int n = spectrum.size();
  if (n != system.n) throw ConfigError("ModeInteraction: spectrum and system sizes differ");
  functionals.resize(3, n);
  for (int r = 0; r < 3; ++r) functionals.row(r) = system.functionals[r].cast<cplx>().transpose() * spectrum.right;
  nu_proj.resize(n);
  for (int j = 0; j < n; ++j) nu_proj[j] = spectrum.adjoint.col(j).dot(system.nu.cast<cplx>());
}

cplx ModeInteraction::g2(int a, int b, int n) const {
  const std::array<std::array<cplx, 3>, 2> xs{args(a), args(b)};
  return f2.symmetric_form(xs) * nu_proj[n];
}

cplx ModeInteraction::g3(int a, int b, int c, int n) const {
  const std::array<std::array<cplx, 3>, 3> xs{args(a), args(b), args(c)};
  return f3.symmetric_form(xs) * nu_proj[n];
}

NonresonanceReport nonresonance_check(const SpectralData& spectrum, int k, const ModeInteraction* interaction) {
  if (k != 2 && k != 3) throw ConfigError("nonresonance_check: order must be 2 or 3");
  const int m = spectrum.m_c, n = spectrum.size();
  if (m < 1 || m >= n) throw ConfigError("nonresonance_check: need 1 <= m_c < N");
  NonresonanceReport rep;
  rep.min_abs_re = INFINITY;
  std::vector<int> idx(k, 0);
  const int combos = k == 2 ? m * m : m * m * m;
  for (int c = 0; c < combos; ++c) {
    int rest = c;
    cplx sum = 0.0;
    for (int l = 0; l < k; ++l) {
      idx[l] = rest % m;
      rest /= m;
      sum += spectrum.lambda(idx[l]);
    }
    for (int s = m; s < n; ++s) {
      if (interaction) {
        const cplx coeff = k == 2 ? interaction->g2(idx[0], idx[1], s) : interaction->g3(idx[0], idx[1], idx[2], s);
        if (std::abs(coeff) < 1e-14) continue;
      }
      const double re = std::abs((sum - spectrum.lambda(s)).real());
      rep.min_abs_re = std::min(rep.min_abs_re, re);
      if (re <= kResonanceTol * (1.0 + std::abs(spectrum.lambda(s))) && rep.ok) {
        rep.ok = false;
        rep.offending = idx;
        rep.offending.push_back(s);
      }
    }
  }
  return rep;
}

Eigen::VectorXcd ManifoldParam::quadratic_part(const Eigen::VectorXcd& x) const {
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(n);
  for (const auto& t : quad) out[t.n] += t.coeff * x[t.j1] * x[t.j2];
  return out;
}

Eigen::VectorXcd ManifoldParam::cubic_part(const Eigen::VectorXcd& x) const {
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(n);
  for (const auto& t : cubic) out[t.n] += t.coeff * x[t.j1] * x[t.j2] * x[t.j3];
  return out;
}

Eigen::VectorXcd ManifoldParam::evaluate(const Eigen::VectorXcd& x) const {
  if (x.size() != m_c) throw ConfigError("ManifoldParam: argument must have m_c entries");
  return quadratic_part(x) + cubic_part(x);
}

std::vector<BiPoly> ManifoldParam::as_bipoly() const {
  if (m_c != 2) throw ConfigError("ManifoldParam: bivariate form needs m_c = 2");
  std::vector<BiPoly> out(n, BiPoly(cubic.empty() ? 2 : 3));
  for (const auto& t : quad) out[t.n].add_to((t.j1 == 0) + (t.j2 == 0), (t.j1 == 1) + (t.j2 == 1), t.coeff);
  for (const auto& t : cubic) {
    const int p = (t.j1 == 0) + (t.j2 == 0) + (t.j3 == 0);
    out[t.n].add_to(p, 3 - p, t.coeff);
  }
  return out;
}

ManifoldParam build_phi2(const GkSystem& system, const SpectralData& spectrum) {
  const ModeInteraction inter(system, spectrum);
  const auto rep = nonresonance_check(spectrum, 2, &inter);
  require_resonance_free(rep, 2);
  ManifoldParam p;
  p.tau = spectrum.tau;
  p.n = spectrum.size();
  p.m_c = spectrum.m_c;
  p.min_denominator = rep.min_abs_re;
  for (int s = p.m_c; s < p.n; ++s)
    for (int a = 0; a < p.m_c; ++a)
      for (int b = 0; b < p.m_c; ++b) {
        const cplx g = inter.g2(a, b, s);
        if (g == 0.0) continue;
        p.quad.push_back({a, b, s, g / (spectrum.lambda(a) + spectrum.lambda(b) - spectrum.lambda(s))});
      }
  return p;
}

ManifoldParam build_psi(const GkSystem& system, const SpectralData& spectrum) {
  ManifoldParam p = build_phi2(system, spectrum);
  const ModeInteraction inter(system, spectrum);
  const auto rep = nonresonance_check(spectrum, 3, &inter);
  require_resonance_free(rep, 3);
  p.min_denominator = std::min(p.min_denominator, rep.min_abs_re);
  for (int s = p.m_c; s < p.n; ++s)
    for (int a = 0; a < p.m_c; ++a)
      for (int b = 0; b < p.m_c; ++b)
        for (int c = 0; c < p.m_c; ++c) {
          const cplx g = inter.g3(a, b, c, s);
          if (g == 0.0) continue;
          const cplx den = spectrum.lambda(a) + spectrum.lambda(b) + spectrum.lambda(c) - spectrum.lambda(s);
          p.cubic.push_back({a, b, c, s, g / den});
        }
  return p;
}

ReducedSystem2D build_reduced_system(const GkSystem& system, const SpectralData& spectrum,
                                     const ManifoldParam& param) {
  if (spectrum.m_c != 2 || param.m_c != 2) throw ConfigError("build_reduced_system: needs m_c = 2");
  const ModeInteraction inter(system, spectrum);
  const std::vector<BiPoly> psi = param.as_bipoly();

  std::array<BiPoly, 3> args;
  for (int r = 0; r < 3; ++r) {
    BiPoly l = BiPoly::monomial(inter.functionals(r, 0), 1, 0) + BiPoly::monomial(inter.functionals(r, 1), 0, 1);
    for (int s = 2; s < param.n; ++s) l += psi[s] * inter.functionals(r, s);
    args[r] = l;
  }
  const BiPoly f = BiPoly::compose(system.nonlinearity, args[0], args[1], args[2]);

  ReducedSystem2D red;
  red.tau = spectrum.tau;
  red.lambda1 = spectrum.lambda(0);
  red.lambda2 = spectrum.lambda(1);
  red.closure1 = f * inter.nu_proj[0];
  red.closure2 = f * inter.nu_proj[1];
  red.lift = args[0];
  red.param = param;
  return red;
}

ReducedSystem2D build_reduced_system(const DdeSpec& spec, int n) {
  const GkSystem sys = assemble_linear(spec, n);
  const SpectralData sd = eigendecompose(sys);
  return build_reduced_system(sys, sd, build_psi(sys, sd));
}

std::array<cplx, 2> reduced_rhs(const ReducedSystem2D& reduced, const std::array<cplx, 2>& x) {
  return reduced.rhs(x[0], x[1]);
}

void ReducedSystem2D::write_json(std::ostream& os) const {
  nlohmann::json j;
  j["tau"] = tau;
  j["lambda1"] = {lambda1.real(), lambda1.imag()};
  j["lambda2"] = {lambda2.real(), lambda2.imag()};
  j["closure1"] = bipoly_json(closure1);
  j["closure2"] = bipoly_json(closure2);
  j["lift"] = bipoly_json(lift);
  os << j.dump(2) << '\n';
}

double lyapunov_coefficient(const GkSystem& system, const SpectralData& spectrum) {
  if (spectrum.size() < 3) throw ConfigError("lyapunov_coefficient: need N >= 3");
  const cplx l1 = spectrum.lambda(0);
  if (std::abs(l1.real()) > 1e-8) {
    throw ConfigError("lyapunov_coefficient: spectrum is not critical (|Re lambda_1| = " +
                      std::to_string(std::abs(l1.real())) + ")");
  }
  if (l1.imag() <= 0.0 || spectrum.conjugate_partner(0) != 1) {
    throw ConfigError("lyapunov_coefficient: leading modes are not a conjugate pair");
  }
  const ModeInteraction g(system, spectrum);
  const cplx a20 = g.g2(0, 0, 0);
  const cplx a11 = 2.0 * g.g2(0, 1, 0);
  cplx a21 = 3.0 * g.g3(0, 0, 1, 0);
  for (int s = 2; s < spectrum.size(); ++s) {
    const cplx ls = spectrum.lambda(s);
    a21 += 2.0 * g.g2(0, 1, s) / (2.0 * l1.real() - ls) * 2.0 * g.g2(0, s, 0);
    a21 += g.g2(0, 0, s) / (2.0 * l1 - ls) * 2.0 * g.g2(1, s, 0);
  }
  return (a20 * a11 * cplx(0.0, 1.0) / l1.imag() + a21).real();
}

std::vector<double> lift_T_star(const ReducedSystem2D& reduced, const std::vector<std::array<cplx, 2>>& path) {
  std::vector<double> out;
  out.reserve(path.size());
  for (const auto& x : path) {
    const cplx v = reduced.lift(x[0], x[1]);
    if (std::abs(v.imag()) > 1e-10 * (1.0 + std::abs(v))) {
      throw NumericError("lift_T_star: imaginary residue above tolerance (path not conjugate-symmetric)");
    }
    out.push_back(v.real());
  }
  return out;
}

Eigen::VectorXcd mode_coordinates(const SpectralData& spectrum, const Eigen::VectorXd& y) {
  return spectrum.adjoint.adjoint() * y.cast<cplx>();
}

ModelErrorReport model_error_diagnostic(const GkSystem& system, const SpectralData& spectrum,
                                        const ReducedSystem2D& reduced,
                                        const std::vector<Eigen::VectorXd>& states, double bound) {
  if (states.empty()) throw ConfigError("model_error_diagnostic: empty trajectory");
  ModelErrorReport rep;
  for (const auto& y : states) {
    if (!(y.norm() <= bound)) throw NumericError("model_error_diagnostic: trajectory leaves the bounded region");
    const Eigen::VectorXcd z = mode_coordinates(spectrum, y);
    const Eigen::VectorXcd gy = gk_nonlinear(system, y).cast<cplx>();
    const cplx r1 = spectrum.adjoint.col(0).dot(gy) - reduced.closure1(z[0], z[1]);
    const cplx r2 = spectrum.adjoint.col(1).dot(gy) - reduced.closure2(z[0], z[1]);
    rep.lhs += std::norm(r1) + std::norm(r2);
    const Eigen::VectorXcd psi = reduced.param.evaluate(z.head(2));
    rep.defect += (z.tail(z.size() - 2) - psi.tail(psi.size() - 2)).squaredNorm();
  }
  rep.lhs /= static_cast<double>(states.size());
  rep.defect /= static_cast<double>(states.size());
  rep.ratio = rep.defect > 0.0 ? rep.lhs / rep.defect : 0.0;
  return rep;
}

double defect_ratio(const SpectralData& spectrum, const ManifoldParam& param,
                    const std::vector<Eigen::VectorXd>& states) {
  if (states.empty()) throw ConfigError("defect_ratio: empty trajectory");
  const int m = param.m_c;
  double acc = 0.0;
  for (const auto& y : states) {
    const Eigen::VectorXcd z = mode_coordinates(spectrum, y);
    const Eigen::VectorXcd psi = param.evaluate(z.head(m));
    const double num = (psi.tail(param.n - m) - z.tail(param.n - m)).squaredNorm();
    const double den = z.tail(param.n - m).squaredNorm();
    if (den == 0.0) throw NumericError("defect_ratio: state with vanishing stable component");
    acc += num / den;
  }
  return acc / static_cast<double>(states.size());
}

}  // namespace gkr

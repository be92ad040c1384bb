#include "gkr/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>

#include "gkr/errors.hpp"

namespace gkr {

namespace {

constexpr double kMaxCondition = 1e12;

double leading_real_part(const Eigen::MatrixXd& a) {
  Eigen::EigenSolver<Eigen::MatrixXd> es(a, false);
  if (es.info() != Eigen::Success) throw NumericError("eigenvalue iteration did not converge");
  return es.eigenvalues().real().maxCoeff();
}

}  // namespace

double SpectralData::biorthonormality_error() const {
  const Eigen::MatrixXcd gram = adjoint.adjoint() * right;  // (j, i) = <e_i, e_j*>
  return (gram - Eigen::MatrixXcd::Identity(size(), size())).cwiseAbs().maxCoeff();
}

int SpectralData::conjugate_partner(int j) const {
  const cplx l = eigenvalues[j];
  if (l.imag() == 0.0) return -1;
  for (int k : {j - 1, j + 1}) {
    if (k >= 0 && k < size() && eigenvalues[k] == std::conj(l)) return k;
  }
  return -1;
}

SpectralData SpectralData::rescaled(int j, cplx c) const {
  if (c == cplx{}) throw ConfigError("rescaled: scale factor must be nonzero");
  SpectralData out = *this;
  out.right.col(j) *= c;
  out.adjoint.col(j) /= std::conj(c);
  if (const int p = conjugate_partner(j); p >= 0) {
    out.right.col(p) *= std::conj(c);
    out.adjoint.col(p) /= c;
  }
  return out;
}

SpectralData eigendecompose(const Eigen::MatrixXd& a, double tau) {
  const int n = static_cast<int>(a.rows());
  if (n == 0 || a.cols() != n) throw ConfigError("eigendecompose: matrix must be square and non-empty");
  Eigen::EigenSolver<Eigen::MatrixXd> es(a);
  if (es.info() != Eigen::Success) throw NumericError("eigendecompose: eigenvalue iteration did not converge");
  const Eigen::VectorXcd lam = es.eigenvalues();
  const Eigen::MatrixXcd vec = es.eigenvectors();

  const double scale = std::max(1.0, lam.cwiseAbs().maxCoeff());
  const double tie = 1e-12 * scale;
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int x, int y) {
    if (std::abs(lam[x].real() - lam[y].real()) > tie) return lam[x].real() > lam[y].real();
    return lam[x].imag() > lam[y].imag();
  });

  SpectralData sd;
  sd.tau = tau;
  sd.eigenvalues.resize(n);
  sd.right.resize(n, n);
  for (int k = 0; k < n; ++k) {
    sd.eigenvalues[k] = lam[order[k]];
    Eigen::VectorXcd v = vec.col(order[k]);
    v.normalize();
    Eigen::Index imax = 0;
    v.cwiseAbs().maxCoeff(&imax);
    v *= std::abs(v[imax]) / v[imax];
    v[imax] = std::abs(v[imax]);
    sd.right.col(k) = v;
  }

  // Exact conjugate pairing and real eigenvalues.
  for (int k = 0; k < n; ++k) {
    const cplx l = sd.eigenvalues[k];
    if (std::abs(l.imag()) <= tie) {
      sd.eigenvalues[k] = l.real();
      sd.right.col(k) = sd.right.col(k).real().cast<cplx>();
      continue;
    }
    if (l.imag() > 0.0 && k + 1 < n && std::abs(sd.eigenvalues[k + 1] - std::conj(l)) <= 1e-8 * scale) {
      sd.eigenvalues[k + 1] = std::conj(l);
      sd.right.col(k + 1) = sd.right.col(k).conjugate();
      ++k;
    }
  }

  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(sd.right);
  const auto& sv = svd.singularValues();
  sd.condition = sv[n - 1] > 0.0 ? sv[0] / sv[n - 1] : INFINITY;
  if (!(sd.condition < kMaxCondition)) {
    throw NumericError("eigendecompose: near-defective matrix (condition number " +
                       std::to_string(sd.condition) + ")");
  }
  sd.adjoint = sd.right.inverse().adjoint();
  return sd;
}

SpectralData eigendecompose(const GkSystem& system) { return eigendecompose(system.A, system.tau); }

double characteristic_residual(cplx lambda, double tau, double alpha) {
  const double tp2 = 1.0 - alpha;
  return std::abs(lambda - (1.0 - 3.0 * tp2) + alpha * std::exp(-lambda * tau));
}

double tau_c_analytic(double alpha) {
  if (!(alpha > 0.5 && alpha < 1.0)) throw ConfigError("tau_c_analytic: alpha must lie in (1/2, 1)");
  const double r = (3.0 * alpha - 2.0) / alpha;
  return std::acos(r) / std::sqrt(alpha * alpha - (3.0 * alpha - 2.0) * (3.0 * alpha - 2.0));
}

double find_tau_c(const SpecFactory& factory, int n, double tau_lo, double tau_hi, double tol) {
  if (!(tau_lo < tau_hi) || !(tau_lo > 0.0)) throw ConfigError("find_tau_c: need 0 < tau_lo < tau_hi");
  auto f = [&](double tau) { return leading_real_part(assemble_linear(factory(tau), n).A); };
  double flo = f(tau_lo);
  const double fhi = f(tau_hi);
  if (flo * fhi > 0.0) throw NumericError("find_tau_c: Re lambda_1 does not change sign over the bracket");
  double lo = tau_lo, hi = tau_hi;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double find_tau_c(double alpha, int n, double tau_lo, double tau_hi, double tol) {
  return find_tau_c([alpha](double tau) { return suarez_schopf_perturbed(alpha, tau); }, n, tau_lo,
                    tau_hi, tol);
}

PesReport pes_verify(const std::function<Eigen::MatrixXd(double)>& matrix_at,
                     const std::vector<double>& tau_grid, int m_c) {
  if (tau_grid.size() < 2) throw ConfigError("pes_verify: grid needs at least two points");
  if (m_c < 1) throw ConfigError("pes_verify: m_c must be positive");
  PesReport rep;
  rep.min_gap = INFINITY;
  std::vector<int> signs;
  for (double tau : tau_grid) {
    const SpectralData sd = eigendecompose(matrix_at(tau), tau);
    if (sd.size() <= m_c) throw ConfigError("pes_verify: matrix smaller than m_c + 1");
    const double lead = sd.eigenvalues[0].real();
    for (int j = 1; j < m_c; ++j) {
      if (std::abs(sd.eigenvalues[j].real() - lead) > 1e-10 * (1.0 + std::abs(lead))) {
        rep.violations.push_back({j, tau, "critical modes do not share a real part"});
      }
    }
    for (int j = m_c; j < sd.size(); ++j) {
      if (sd.eigenvalues[j].real() >= 0.0) rep.violations.push_back({j, tau, "non-critical mode not in the left half-plane"});
    }
    const double gap = sd.eigenvalues[m_c - 1].real() - sd.eigenvalues[m_c].real();
    rep.min_gap = std::min(rep.min_gap, gap);
    if (gap <= 0.0) rep.violations.push_back({m_c, tau, "no spectral gap"});
    signs.push_back(lead < 0.0 ? -1 : (lead > 0.0 ? 1 : 0));
  }
  int changes = 0;
  for (std::size_t k = 1; k < signs.size(); ++k) {
    if (signs[k] == signs[k - 1]) continue;
    if (signs[k] < signs[k - 1]) {
      rep.violations.push_back({0, tau_grid[k], "critical modes move back to the left half-plane"});
    } else if (signs[k - 1] < 0) {
      ++changes;
      rep.tau_crossing = 0.5 * (tau_grid[k - 1] + tau_grid[k]);
    }
  }
  if (changes != 1) rep.violations.push_back({0, tau_grid.back(), "critical modes do not cross exactly once"});
  rep.holds = rep.violations.empty();
  return rep;
}

PesReport pes_verify(double alpha, int n, const std::vector<double>& tau_grid) {
  return pes_verify(suarez_schopf_matrix(alpha, n), tau_grid, 2);
}

void EigenSweep::write_csv(std::ostream& os) const {
  os << "tau,j,re_lambda,im_lambda\n";
  os.precision(17);
  for (const auto& r : rows) os << r.tau << ',' << r.track << ',' << r.lambda.real() << ',' << r.lambda.imag() << '\n';
}

EigenSweep eigen_sweep(const std::function<Eigen::MatrixXd(double)>& matrix_at,
                       const std::vector<double>& tau_grid, int n_track) {
  if (n_track < 1) throw ConfigError("eigen_sweep: need at least one tracked eigenvalue");
  EigenSweep sweep;
  std::vector<cplx> tracks;
  for (double tau : tau_grid) {
    Eigen::EigenSolver<Eigen::MatrixXd> es(matrix_at(tau), false);
    if (es.info() != Eigen::Success) throw NumericError("eigen_sweep: eigenvalue iteration did not converge");
    std::vector<cplx> upper;
    for (const cplx& l : es.eigenvalues()) {
      if (l.imag() >= 0.0) upper.push_back(l);
    }
    if (static_cast<int>(upper.size()) < n_track) throw ConfigError("eigen_sweep: fewer upper-half eigenvalues than tracks");

    if (tracks.empty()) {
      std::sort(upper.begin(), upper.end(), [](cplx x, cplx y) { return std::abs(x) < std::abs(y); });
      tracks.assign(upper.begin(), upper.begin() + n_track);
    } else {
      struct Cand { double d; int t, c; };
      std::vector<Cand> cands;
      for (int t = 0; t < n_track; ++t) {
        for (int c = 0; c < static_cast<int>(upper.size()); ++c) cands.push_back({std::abs(upper[c] - tracks[t]), t, c});
      }
      std::sort(cands.begin(), cands.end(), [](const Cand& x, const Cand& y) { return x.d < y.d; });
      std::vector<char> t_done(n_track, 0), c_done(upper.size(), 0);
      int assigned = 0;
      for (const auto& cd : cands) {
        if (t_done[cd.t] || c_done[cd.c]) continue;
        t_done[cd.t] = c_done[cd.c] = 1;
        sweep.max_step = std::max(sweep.max_step, cd.d);
        tracks[cd.t] = upper[cd.c];
        if (++assigned == n_track) break;
      }
    }
    for (int t = 0; t < n_track; ++t) sweep.rows.push_back({tau, t, tracks[t]});
  }
  return sweep;
}

std::function<Eigen::MatrixXd(double)> suarez_schopf_matrix(double alpha, int n) {
  suarez_schopf_t_plus(alpha);  // validates alpha
  return [alpha, n](double tau) { return assemble_linear(suarez_schopf_perturbed(alpha, tau), n).A; };
}

}  // namespace gkr

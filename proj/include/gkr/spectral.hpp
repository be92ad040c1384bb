#pragma once

#include <Eigen/Dense>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "gkr/dde_spec.hpp"
#include "gkr/gk_system.hpp"
#include "gkr/polynomial.hpp"

namespace gkr {

/// Eigenstructure of a real matrix in lexicographic order (real part
/// descending, ties by imaginary part descending).  Columns of `right` are
/// the modes e_j (unit norm, largest-modulus entry real positive); columns of
/// `adjoint` are the e_j* with sum_k e_i[k] conj(e_j*[k]) = delta_ij.
struct SpectralData {
  double tau = 0.0;
  Eigen::VectorXcd eigenvalues;
  Eigen::MatrixXcd right;
  Eigen::MatrixXcd adjoint;
  int m_c = 2;
  double condition = 1.0;  // 2-norm condition number of the mode matrix

  int size() const { return static_cast<int>(eigenvalues.size()); }
  cplx lambda(int j) const { return eigenvalues[j]; }

  /// <a, b> = sum_k a_k conj(b_k).
  static cplx pairing(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) { return b.dot(a); }

  /// Largest |<e_i, e_j*> - delta_ij|.
  double biorthonormality_error() const;

  /// e_j -> c e_j with e_j* -> e_j* / conj(c).  When mode j has a conjugate
  /// partner, that partner is rescaled by conj(c) so conjugacy survives.
  SpectralData rescaled(int j, cplx c) const;

  /// Index of the conjugate partner of mode j, or -1 for real eigenvalues.
  int conjugate_partner(int j) const;
};

/// Throws NumericError when the mode matrix condition number exceeds 1e12.
SpectralData eigendecompose(const Eigen::MatrixXd& a, double tau = 0.0);
SpectralData eigendecompose(const GkSystem& system);

/// |lambda - (1 - 3 T+^2) + alpha exp(-lambda tau)| for the Suarez-Schopf
/// linearization about T+.
double characteristic_residual(cplx lambda, double tau, double alpha);

/// arccos((3 alpha - 2) / alpha) / sqrt(alpha^2 - (3 alpha - 2)^2), alpha in (1/2, 1).
double tau_c_analytic(double alpha);

using SpecFactory = std::function<DdeSpec(double tau)>;

/// Bisection on Re lambda_1(tau) to tolerance `tol`.  Throws NumericError if
/// Re lambda_1 does not change sign over the bracket.
double find_tau_c(const SpecFactory& factory, int n, double tau_lo, double tau_hi, double tol = 1e-9);
double find_tau_c(double alpha, int n, double tau_lo = 1.3, double tau_hi = 2.5, double tol = 1e-9);

struct PesViolation {
  int j;  // 0-based mode index
  double tau;
  std::string reason;
};

struct PesReport {
  bool holds = true;
  double tau_crossing = 0.0;  // grid interval midpoint where Re lambda_1 changes sign
  double min_gap = 0.0;       // min over the grid of Re lambda_{m_c} - Re lambda_{m_c + 1} (1-based)
  std::vector<PesViolation> violations;
};

/// Checks that modes 1..m_c cross once from left to right over the grid
/// while all other modes stay in the left half-plane.
PesReport pes_verify(const std::function<Eigen::MatrixXd(double)>& matrix_at,
                     const std::vector<double>& tau_grid, int m_c = 2);
PesReport pes_verify(double alpha, int n, const std::vector<double>& tau_grid);

struct SweepRow {
  double tau;
  int track;
  cplx lambda;
};

struct EigenSweep {
  std::vector<SweepRow> rows;
  /// Largest single-step move of any tracked eigenvalue.
  double max_step = 0.0;

  void write_csv(std::ostream& os) const;
};

/// Follows the `n_track` upper-half-plane eigenvalues of smallest modulus at
/// the first grid point along the grid by nearest-neighbour matching.
EigenSweep eigen_sweep(const std::function<Eigen::MatrixXd(double)>& matrix_at,
                       const std::vector<double>& tau_grid, int n_track);

/// Matrix factory for the perturbed Suarez-Schopf GK system.
std::function<Eigen::MatrixXd(double)> suarez_schopf_matrix(double alpha, int n);

}  // namespace gkr

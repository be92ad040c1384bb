#pragma once

#include <Eigen/Dense>
#include <array>
#include <iosfwd>
#include <vector>

#include "gkr/gk_system.hpp"
#include "gkr/polynomial.hpp"
#include "gkr/spectral.hpp"

namespace gkr {

// Mode indices are 0-based: modes 0..m_c-1 are the critical (center-unstable)
// ones, m_c..N-1 the stable ones.

/// The three GK functionals applied to every mode plus <nu, e_n*>.  Because
/// the nonlinearity is F(u.y, v.y, w.y) nu, every interaction coefficient
/// <G_k(e_a, e_b, ...), e_n*> equals F_k^sym(L e_a, L e_b, ...) <nu, e_n*>.
struct ModeInteraction {
  Eigen::MatrixXcd functionals;  // 3 x N, row r = functional r applied to e_n
  Eigen::VectorXcd nu_proj;      // <nu, e_n*>
  Poly3 f2, f3;                  // homogeneous parts of F

  ModeInteraction(const GkSystem& system, const SpectralData& spectrum);

  std::array<cplx, 3> args(int mode) const {
    return {functionals(0, mode), functionals(1, mode), functionals(2, mode)};
  }
  /// <G_2(e_a, e_b), e_n*>.
  cplx g2(int a, int b, int n) const;
  /// <G_3(e_a, e_b, e_c), e_n*>.
  cplx g3(int a, int b, int c, int n) const;
};

struct NonresonanceReport {
  bool ok = true;
  double min_abs_re = 0.0;
  std::vector<int> offending;  // (j_1, ..., j_k, n) of the first resonant tuple
};

/// Scans every tuple of critical modes against every stable mode.  With an
/// interaction, tuples whose coefficient vanishes are skipped.
NonresonanceReport nonresonance_check(const SpectralData& spectrum, int k,
                                      const ModeInteraction* interaction = nullptr);

struct QuadTerm {
  int j1, j2, n;
  cplx coeff;
};
struct CubicTerm {
  int j1, j2, j3, n;
  cplx coeff;
};

/// Polynomial graph x -> Psi(x) over the critical modes, stored as monomial
/// coefficients over ordered index tuples.
struct ManifoldParam {
  double tau = 0.0;
  int n = 0;
  int m_c = 2;
  std::vector<QuadTerm> quad;
  std::vector<CubicTerm> cubic;
  double min_denominator = 0.0;  // min |Re(sum lambda - lambda_n)| over stored terms

  /// Coefficients Psi_n(x) in the mode basis (entries below m_c are zero).
  Eigen::VectorXcd evaluate(const Eigen::VectorXcd& x) const;
  Eigen::VectorXcd quadratic_part(const Eigen::VectorXcd& x) const;
  Eigen::VectorXcd cubic_part(const Eigen::VectorXcd& x) const;

  /// Psi_n as bivariate polynomials in (x_1, x_2); requires m_c = 2.
  std::vector<BiPoly> as_bipoly() const;
};

/// Quadratic homological solution.  Throws NumericError on resonance.
ManifoldParam build_phi2(const GkSystem& system, const SpectralData& spectrum);

/// Quadratic plus cubic homological solution.
ManifoldParam build_psi(const GkSystem& system, const SpectralData& spectrum);

/// x_j' = lambda_j x_j + <G(x + Psi(x)), e_j*>, j = 1, 2, with the closure
/// expanded as polynomials in (x_1, x_2).  In real form x_2 = conj(x_1).
struct ReducedSystem2D {
  double tau = 0.0;
  cplx lambda1, lambda2;
  BiPoly closure1, closure2;
  /// T*(x) = sum of the components of x_1 e_1 + x_2 e_2 + sum_n Psi_n(x) e_n.
  BiPoly lift;
  ManifoldParam param;

  std::array<cplx, 2> rhs(cplx x1, cplx x2) const {
    return {lambda1 * x1 + closure1(x1, x2), lambda2 * x2 + closure2(x1, x2)};
  }
  /// x_1' in real form.
  cplx rhs_real_form(cplx x1) const { return lambda1 * x1 + closure1(x1, std::conj(x1)); }
  /// Real part of the lift at (x1, conj x1).
  double lift_value(cplx x1) const { return lift(x1, std::conj(x1)).real(); }

  void write_json(std::ostream& os) const;
};

ReducedSystem2D build_reduced_system(const GkSystem& system, const SpectralData& spectrum,
                                     const ManifoldParam& param);
/// Assembly, eigendecomposition, Psi and closure in one call.
ReducedSystem2D build_reduced_system(const DdeSpec& spec, int n);

std::array<cplx, 2> reduced_rhs(const ReducedSystem2D& reduced, const std::array<cplx, 2>& x);

/// ell_1 = Re(a20 a11 i / Im lambda_1 + a21).  Throws ConfigError when
/// |Re lambda_1| > 1e-8.
double lyapunov_coefficient(const GkSystem& system, const SpectralData& spectrum);

/// Lifted values along a path of (x_1, x_2).  Throws NumericError when the
/// imaginary residue exceeds 1e-10 (relative).
std::vector<double> lift_T_star(const ReducedSystem2D& reduced,
                                const std::vector<std::array<cplx, 2>>& path);

struct ModelErrorReport {
  double lhs = 0.0;     // <|x_c' - f_reduced(x_c)|^2>
  double defect = 0.0;  // <||z_s - Psi(z_c)||_s^2>
  double ratio = 0.0;   // lhs / defect (0 when defect vanishes)
};

/// Time averages along a GK trajectory.  Throws NumericError when any state
/// exceeds `bound` in Euclidean norm.
ModelErrorReport model_error_diagnostic(const GkSystem& system, const SpectralData& spectrum,
                                        const ReducedSystem2D& reduced,
                                        const std::vector<Eigen::VectorXd>& states,
                                        double bound = 1e3);

/// Mean over samples of ||Psi(z_1, z_2) - z_s||_s^2 / ||z_s||_s^2 with
/// z = mode coordinates of each state.
double defect_ratio(const SpectralData& spectrum, const ManifoldParam& param,
                    const std::vector<Eigen::VectorXd>& states);

/// Mode coordinates z_n = <y, e_n*>.
Eigen::VectorXcd mode_coordinates(const SpectralData& spectrum, const Eigen::VectorXd& y);

}  // namespace gkr

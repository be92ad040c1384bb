#include "doctest.h"

#include <cmath>
#include <sstream>

#include "gkr/errors.hpp"
#include "gkr/spectral.hpp"

using namespace gkr;

namespace {

// Newton on lambda - a + alpha exp(-lambda tau) = 0.
cplx characteristic_root(double alpha, double tau, cplx guess) {
  const double a = 3 * alpha - 2;
  cplx l = guess;
  for (int it = 0; it < 60; ++it) {
    const cplx e = std::exp(-l * tau);
    l -= (l - a + alpha * e) / (1.0 - alpha * tau * e);
  }
  return l;
}

std::vector<double> grid(double lo, double hi, double step) {
  std::vector<double> g;
  for (double t = lo; t <= hi + 1e-12; t += step) g.push_back(t);
  return g;
}

}  // namespace

TEST_CASE("diagonal matrix") {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(2, 2);
  a(0, 0) = 1.0;
  a(1, 1) = 3.0;
  const auto sd = eigendecompose(a);
  CHECK(sd.lambda(0) == cplx(3.0, 0.0));
  CHECK(sd.lambda(1) == cplx(1.0, 0.0));
  CHECK(std::abs(sd.right(1, 0)) == doctest::Approx(1.0));
  CHECK(std::abs(sd.right(0, 0)) == 0.0);
  CHECK(sd.biorthonormality_error() <= 1e-14);
}

TEST_CASE("ordering, pairing and biorthonormality on GK matrices") {
  for (int n : {6, 10, 20}) {
    const auto sd = eigendecompose(suarez_schopf_matrix(0.75, n)(1.7), 1.7);
    CAPTURE(n);
    CHECK(sd.biorthonormality_error() <= 1e-10);
    const Eigen::MatrixXcd gram = sd.adjoint.adjoint() * sd.right;
    CHECK((gram - Eigen::MatrixXcd::Identity(n, n)).norm() <= 1e-10);
    for (int j = 0; j + 1 < n; ++j) {
      const cplx a = sd.lambda(j), b = sd.lambda(j + 1);
      CHECK((a.real() > b.real() || (a.real() == b.real() && a.imag() >= b.imag())));
    }
    for (int j = 0; j < n; ++j) {
      const int p = sd.conjugate_partner(j);
      if (p < 0) continue;
      CHECK(sd.lambda(p) == std::conj(sd.lambda(j)));
      CHECK((sd.right.col(p) - sd.right.col(j).conjugate()).norm() <= 1e-12);
    }
    for (int j = 0; j < n; ++j) {
      Eigen::Index imax = 0;
      sd.right.col(j).cwiseAbs().maxCoeff(&imax);
      CHECK(sd.right.col(j).norm() == doctest::Approx(1.0));
      CHECK(std::abs(sd.right(imax, j).imag()) <= 1e-12);
    }
  }
}

TEST_CASE("rescaling keeps the pairing") {
  const auto sd = eigendecompose(suarez_schopf_matrix(0.75, 8)(1.6), 1.6);
  const auto r = sd.rescaled(0, cplx(1.0, 1.0));
  CHECK(r.biorthonormality_error() <= 1e-10);
  CHECK((r.right.col(1) - r.right.col(0).conjugate()).norm() <= 1e-12);
  CHECK_THROWS_AS(sd.rescaled(0, 0.0), ConfigError);
}

TEST_CASE("defective matrix is rejected") {
  Eigen::MatrixXd j(2, 2);
  j << 1.0, 1.0, 0.0, 1.0;
  CHECK_THROWS_WITH_AS(eigendecompose(j), doctest::Contains("condition number"), NumericError);
}

TEST_CASE("characteristic residual") {
  // Delay-free limit: lambda = a - alpha.
  CHECK(characteristic_residual(cplx(0.25 - 0.75, 0.0), 0.0, 0.75) <= 1e-15);
  const double tc = tau_c_analytic(0.75);
  const double w = std::sqrt(0.75 * 0.75 - 0.25 * 0.25);
  CHECK(characteristic_residual(cplx(0.0, w), tc, 0.75) <= 1e-12);
}

TEST_CASE("analytic critical delay") {
  CHECK(std::abs(tau_c_analytic(0.75) - 1.740839502734206) <= 1e-12);
  for (double alpha : {0.6, 0.9}) {
    const double tc = tau_c_analytic(alpha);
    const cplx root = characteristic_root(alpha, tc, cplx(0.05, 0.6));
    CAPTURE(alpha);
    CHECK(std::abs(root.real()) <= 1e-10);
  }
  CHECK_THROWS_AS(tau_c_analytic(0.4), ConfigError);
  CHECK_THROWS_AS(tau_c_analytic(1.0), ConfigError);
}

TEST_CASE("GK critical delays") {
  CHECK(find_tau_c(0.75, 4) == doctest::Approx(1.7343471).epsilon(1e-6 / 1.73));
  const double t10 = find_tau_c(0.75, 10);
  CHECK(t10 == doctest::Approx(1.7408395).epsilon(1e-6 / 1.74));
  CHECK(std::abs(t10 - tau_c_analytic(0.75)) <= 1e-6);
  CHECK_THROWS_AS(find_tau_c(0.75, 10, 1.3, 1.5), NumericError);
  CHECK_THROWS_AS(find_tau_c(0.75, 10, 1.5, 1.3), ConfigError);
}

TEST_CASE("GK eigenvalues solve the characteristic equation") {
  const auto sweep = eigen_sweep(suarez_schopf_matrix(0.75, 30), grid(1.3, 2.5, 0.1), 5);
  double worst = 0.0;
  for (const auto& r : sweep.rows) worst = std::max(worst, characteristic_residual(r.lambda, r.tau, 0.75));
  CHECK(worst <= 1e-4);
  CHECK(sweep.rows.size() == 13 * 5);
  std::ostringstream os;
  sweep.write_csv(os);
  CHECK(os.str().rfind("tau,j,re_lambda,im_lambda\n", 0) == 0);
}

TEST_CASE("exchange of stability") {
  const auto rep = pes_verify(0.75, 20, grid(1.3, 2.5, 0.05));
  CHECK(rep.holds);
  CHECK(rep.violations.empty());
  CHECK(rep.min_gap > 0.0);
  CHECK(std::abs(rep.tau_crossing - 1.7408) < 0.05);

  // Two pairs crossing at different delays.
  auto two_pairs = [](double tau) {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(5, 5);
    m(0, 0) = m(1, 1) = tau - 1.5;
    m(0, 1) = 1.0;
    m(1, 0) = -1.0;
    m(2, 2) = m(3, 3) = tau - 1.7;
    m(2, 3) = 2.0;
    m(3, 2) = -2.0;
    m(4, 4) = -1.0;
    return m;
  };
  const auto bad = pes_verify(two_pairs, grid(1.3, 1.9, 0.05));
  CHECK_FALSE(bad.holds);
  REQUIRE_FALSE(bad.violations.empty());
  CHECK(bad.violations.front().j >= 2);
}

#pragma once

#include <array>
#include <complex>
#include <span>
#include <string>
#include <vector>

namespace gkr {

using cplx = std::complex<double>;

/// Exponents of u^i v^j w^k.
struct Exponents {
  int u = 0, v = 0, w = 0;
  int degree() const { return u + v + w; }
  auto operator<=>(const Exponents&) const = default;
};

/// Multivariate polynomial in the three formal DDE arguments
/// (u, v, w) = (x(t), x(t - tau), int_{t-tau}^t x).  Total degree is
/// capped at kMaxDegree.
class Poly3 {
 public:
  static constexpr int kMaxDegree = 5;

  struct Term {
    Exponents exps;
    double coeff = 0.0;
  };

  Poly3() = default;

  /// Adds coeff * u^i v^j w^k, merging with an existing monomial.
  Poly3& add(double coeff, int i, int j, int k);

  const std::vector<Term>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  int degree() const;

  /// Homogeneous part of the given degree.
  Poly3 homogeneous_part(int degree) const;

  /// True when the constant and linear coefficients all vanish.
  bool is_tangent() const;

  template <typename T>
  T operator()(T u, T v, T w) const {
    T acc{};
    for (const auto& t : terms_) acc += t.coeff * ipow(u, t.exps.u) * ipow(v, t.exps.v) * ipow(w, t.exps.w);
    return acc;
  }

  /// Symmetric k-linear form of the degree-k homogeneous part, evaluated on
  /// k argument triples (each triple holds the (u, v, w) values of one
  /// argument vector).
  cplx symmetric_form(std::span<const std::array<cplx, 3>> args) const;

  /// Coefficient-wise negation (used to flip the sign of a nonlinearity).
  Poly3 operator-() const;

  std::string to_string() const;

 private:
  template <typename T>
  static T ipow(T x, int p) {
    T r{1};
    for (int i = 0; i < p; ++i) r *= x;
    return r;
  }

  std::vector<Term> terms_;
};

/// Dense complex polynomial in two variables (z1, z2):
/// sum_{p + q <= degree} c_{p,q} z1^p z2^q.
class BiPoly {
 public:
  BiPoly() : BiPoly(0) {}
  explicit BiPoly(int degree);

  static BiPoly constant(cplx c);
  static BiPoly monomial(cplx c, int p, int q);

  int degree() const { return degree_; }
  cplx coeff(int p, int q) const;
  void set(int p, int q, cplx c);
  void add_to(int p, int q, cplx c);

  BiPoly operator+(const BiPoly& o) const;
  BiPoly operator*(const BiPoly& o) const;
  BiPoly operator*(cplx s) const;
  BiPoly& operator+=(const BiPoly& o);

  /// Lowest total degree carrying a coefficient above tol (degree()+1 if none).
  int lowest_degree(double tol = 0.0) const;

  cplx operator()(cplx z1, cplx z2) const;

  /// Partial derivatives at (z1, z2).
  std::array<cplx, 2> gradient(cplx z1, cplx z2) const;

  /// Composition F(a, b, c) where F is a Poly3 and a, b, c are BiPolys.
  static BiPoly compose(const Poly3& f, const BiPoly& a, const BiPoly& b, const BiPoly& c);

  /// Nonzero coefficients as ((p, q), c) entries.
  std::vector<std::pair<std::array<int, 2>, cplx>> nonzero_terms(double tol = 0.0) const;

 private:
  int index(int p, int q) const { return p * (degree_ + 1) + q; }
  int degree_;
  std::vector<cplx> c_;  // (degree+1)^2 dense, entries with p+q > degree are zero
};

}  // namespace gkr

#include "gkr/polynomial.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "gkr/errors.hpp"

namespace gkr {

Poly3& Poly3::add(double coeff, int i, int j, int k) {
  if (i < 0 || j < 0 || k < 0) throw ConfigError("Poly3: negative exponent");
  if (i + j + k > kMaxDegree) throw ConfigError("Poly3: total degree above 5");
  const Exponents e{i, j, k};
  auto it = std::find_if(terms_.begin(), terms_.end(), [&](const Term& t) { return t.exps == e; });
  if (it != terms_.end()) {
    it->coeff += coeff;
  } else {
    terms_.push_back({e, coeff});
    std::sort(terms_.begin(), terms_.end(), [](const Term& a, const Term& b) {
      if (a.exps.degree() != b.exps.degree()) return a.exps.degree() < b.exps.degree();
      return a.exps > b.exps;
    });
  }
  return *this;
}

int Poly3::degree() const {
  int d = 0;
  for (const auto& t : terms_)
    if (t.coeff != 0.0) d = std::max(d, t.exps.degree());
  return d;
}

Poly3 Poly3::homogeneous_part(int degree) const {
  Poly3 out;
  for (const auto& t : terms_)
    if (t.exps.degree() == degree && t.coeff != 0.0) out.terms_.push_back(t);
  return out;
}

bool Poly3::is_tangent() const {
  return std::all_of(terms_.begin(), terms_.end(),
                     [](const Term& t) { return t.exps.degree() >= 2 || t.coeff == 0.0; });
}

cplx Poly3::symmetric_form(std::span<const std::array<cplx, 3>> args) const {
  const int k = static_cast<int>(args.size());
  cplx total = 0.0;
  for (const auto& t : terms_) {
    if (t.exps.degree() != k || t.coeff == 0.0) continue;
    // Variable slots of the monomial, e.g. u^2 w -> {0, 0, 2}.  The
    // symmetric form averages over all assignments of slots to arguments.
    std::vector<int> slots;
    slots.insert(slots.end(), t.exps.u, 0);
    slots.insert(slots.end(), t.exps.v, 1);
    slots.insert(slots.end(), t.exps.w, 2);
    std::vector<int> perm(k);
    std::iota(perm.begin(), perm.end(), 0);
    cplx acc = 0.0;
    int count = 0;
    do {
      cplx prod = 1.0;
      for (int r = 0; r < k; ++r) prod *= args[r][slots[perm[r]]];
      acc += prod;
      ++count;
    } while (std::next_permutation(perm.begin(), perm.end()));
    total += t.coeff * acc / static_cast<double>(count);
  }
  return total;
}

Poly3 Poly3::operator-() const {
  Poly3 out = *this;
  for (auto& t : out.terms_) t.coeff = -t.coeff;
  return out;
}

std::string Poly3::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms_) {
    if (t.coeff == 0.0) continue;
    if (!first) os << " + ";
    first = false;
    os << t.coeff;
    if (t.exps.u) os << "*u^" << t.exps.u;
    if (t.exps.v) os << "*v^" << t.exps.v;
    if (t.exps.w) os << "*w^" << t.exps.w;
  }
  if (first) os << "0";
  return os.str();
}

BiPoly::BiPoly(int degree) : degree_(degree), c_((degree + 1) * (degree + 1), 0.0) {
  if (degree < 0) throw ConfigError("BiPoly: negative degree");
}

BiPoly BiPoly::constant(cplx c) {
  BiPoly p(0);
  p.c_[0] = c;
  return p;
}

BiPoly BiPoly::monomial(cplx c, int p, int q) {
  BiPoly out(p + q);
  out.set(p, q, c);
  return out;
}

cplx BiPoly::coeff(int p, int q) const {
  if (p < 0 || q < 0 || p + q > degree_) return 0.0;
  return c_[index(p, q)];
}

void BiPoly::set(int p, int q, cplx c) {
  if (p < 0 || q < 0 || p + q > degree_) throw ConfigError("BiPoly: monomial beyond degree");
  c_[index(p, q)] = c;
}

void BiPoly::add_to(int p, int q, cplx c) { set(p, q, coeff(p, q) + c); }

BiPoly BiPoly::operator+(const BiPoly& o) const {
  BiPoly out(std::max(degree_, o.degree_));
  for (int p = 0; p <= out.degree_; ++p)
    for (int q = 0; p + q <= out.degree_; ++q) out.c_[out.index(p, q)] = coeff(p, q) + o.coeff(p, q);
  return out;
}

BiPoly& BiPoly::operator+=(const BiPoly& o) { return *this = *this + o; }

BiPoly BiPoly::operator*(const BiPoly& o) const {
  BiPoly out(degree_ + o.degree_);
  for (int p = 0; p <= degree_; ++p)
    for (int q = 0; p + q <= degree_; ++q) {
      const cplx a = c_[index(p, q)];
      if (a == 0.0) continue;
      for (int r = 0; r <= o.degree_; ++r)
        for (int s = 0; r + s <= o.degree_; ++s) {
          const cplx b = o.c_[o.index(r, s)];
          if (b != 0.0) out.c_[out.index(p + r, q + s)] += a * b;
        }
    }
  return out;
}

BiPoly BiPoly::operator*(cplx s) const {
  BiPoly out = *this;
  for (auto& c : out.c_) c *= s;
  return out;
}

int BiPoly::lowest_degree(double tol) const {
  for (int d = 0; d <= degree_; ++d)
    for (int p = 0; p <= d; ++p)
      if (std::abs(c_[index(p, d - p)]) > tol) return d;
  return degree_ + 1;
}

cplx BiPoly::operator()(cplx z1, cplx z2) const {
  // Horner in z1 over rows, Horner in z2 within each row.
  cplx acc = 0.0;
  for (int p = degree_; p >= 0; --p) {
    cplx row = 0.0;
    for (int q = degree_ - p; q >= 0; --q) row = row * z2 + c_[index(p, q)];
    acc = acc * z1 + row;
  }
  return acc;
}

std::array<cplx, 2> BiPoly::gradient(cplx z1, cplx z2) const {
  cplx d1 = 0.0, d2 = 0.0;
  for (int p = 0; p <= degree_; ++p)
    for (int q = 0; p + q <= degree_; ++q) {
      const cplx c = c_[index(p, q)];
      if (c == 0.0) continue;
      if (p > 0) d1 += c * static_cast<double>(p) * std::pow(z1, p - 1) * std::pow(z2, q);
      if (q > 0) d2 += c * static_cast<double>(q) * std::pow(z1, p) * std::pow(z2, q - 1);
    }
  return {d1, d2};
}

BiPoly BiPoly::compose(const Poly3& f, const BiPoly& a, const BiPoly& b, const BiPoly& c) {
  BiPoly out(0);
  for (const auto& t : f.terms()) {
    if (t.coeff == 0.0) continue;
    BiPoly term = BiPoly::constant(t.coeff);
    for (int i = 0; i < t.exps.u; ++i) term = term * a;
    for (int i = 0; i < t.exps.v; ++i) term = term * b;
    for (int i = 0; i < t.exps.w; ++i) term = term * c;
    out += term;
  }
  return out;
}

std::vector<std::pair<std::array<int, 2>, cplx>> BiPoly::nonzero_terms(double tol) const {
  std::vector<std::pair<std::array<int, 2>, cplx>> out;
  for (int p = 0; p <= degree_; ++p)
    for (int q = 0; p + q <= degree_; ++q)
      if (std::abs(c_[index(p, q)]) > tol) out.push_back({{p, q}, c_[index(p, q)]});
  return out;
}

}  // namespace gkr

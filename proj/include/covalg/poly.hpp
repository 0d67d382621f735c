#pragma once

#include <algorithm>
#include <utility>
#include <vector>

#include "covalg/rational.hpp"

namespace covalg {

// Dense univariate polynomial over a field F, coefficients low-to-high.
// Invariant: coeffs is empty (the zero polynomial) or coeffs.back() != 0.
// F needs: F(long), +, -, *, /, ==, copy/move.
template <class F>
struct Poly {
  std::vector<F> coeffs;

  Poly() = default;
  explicit Poly(std::vector<F> c) : coeffs(std::move(c)) { normalize(); }
  // Constant polynomial; lets Poly serve as the coefficient type of another
  // Poly (bivariate use), which needs F(long) to exist.
  explicit Poly(long v) {
    coeffs.push_back(F(v));
    normalize();
  }
  static Poly constant(F x) {
    Poly p;
    p.coeffs.push_back(std::move(x));
    p.normalize();
    return p;
  }
  static Poly x() {
    Poly p;
    p.coeffs = {F(0), F(1)};
    return p;
  }

  void normalize() {
    while (!coeffs.empty() && coeffs.back() == F(0)) coeffs.pop_back();
  }
  bool is_zero() const { return coeffs.empty(); }
  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  const F& lc() const { return coeffs.back(); }
  F coeff(int i) const {
    if (i < 0 || i >= static_cast<int>(coeffs.size())) return F(0);
    return coeffs[static_cast<std::size_t>(i)];
  }
  bool operator==(const Poly& o) const { return coeffs == o.coeffs; }
  bool operator!=(const Poly& o) const { return !(*this == o); }
};

template <class F>
Poly<F> operator+(const Poly<F>& a, const Poly<F>& b) {
  std::vector<F> c(std::max(a.coeffs.size(), b.coeffs.size()), F(0));
  for (std::size_t i = 0; i < a.coeffs.size(); ++i) c[i] = a.coeffs[i];
  for (std::size_t i = 0; i < b.coeffs.size(); ++i) c[i] = c[i] + b.coeffs[i];
  return Poly<F>(std::move(c));
}

template <class F>
Poly<F> operator-(const Poly<F>& a) {
  std::vector<F> c = a.coeffs;
  for (auto& x : c) x = F(0) - x;
  return Poly<F>(std::move(c));
}

template <class F>
Poly<F> operator-(const Poly<F>& a, const Poly<F>& b) {
  std::vector<F> c(std::max(a.coeffs.size(), b.coeffs.size()), F(0));
  for (std::size_t i = 0; i < a.coeffs.size(); ++i) c[i] = a.coeffs[i];
  for (std::size_t i = 0; i < b.coeffs.size(); ++i) c[i] = c[i] - b.coeffs[i];
  return Poly<F>(std::move(c));
}

template <class F>
Poly<F> operator*(const Poly<F>& a, const Poly<F>& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<F> c(a.coeffs.size() + b.coeffs.size() - 1, F(0));
  for (std::size_t i = 0; i < a.coeffs.size(); ++i) {
    if (a.coeffs[i] == F(0)) continue;
    for (std::size_t j = 0; j < b.coeffs.size(); ++j)
      c[i + j] = c[i + j] + a.coeffs[i] * b.coeffs[j];
  }
  return Poly<F>(std::move(c));
}

template <class F>
Poly<F> operator*(const F& s, const Poly<F>& a) {
  std::vector<F> c = a.coeffs;
  for (auto& x : c) x = s * x;
  return Poly<F>(std::move(c));
}

// Shift by x^k.
template <class F>
Poly<F> shift_up(const Poly<F>& a, int k) {
  if (a.is_zero()) return {};
  std::vector<F> c(a.coeffs.size() + static_cast<std::size_t>(k), F(0));
  for (std::size_t i = 0; i < a.coeffs.size(); ++i) c[i + static_cast<std::size_t>(k)] = a.coeffs[i];
  return Poly<F>(std::move(c));
}

template <class F>
std::pair<Poly<F>, Poly<F>> divrem(const Poly<F>& a, const Poly<F>& b) {
  if (b.is_zero()) throw InternalError("poly division by zero");
  Poly<F> r = a;
  if (a.degree() < b.degree()) return {Poly<F>{}, r};
  std::vector<F> q(static_cast<std::size_t>(a.degree() - b.degree()) + 1, F(0));
  F binv = F(1) / b.lc();
  while (!r.is_zero() && r.degree() >= b.degree()) {
    int k = r.degree() - b.degree();
    F f = r.lc() * binv;
    q[static_cast<std::size_t>(k)] = f;
    for (int i = 0; i <= b.degree(); ++i) {
      std::size_t idx = static_cast<std::size_t>(i + k);
      r.coeffs[idx] = r.coeffs[idx] - f * b.coeffs[static_cast<std::size_t>(i)];
    }
    r.normalize();
  }
  return {Poly<F>(std::move(q)), r};
}

template <class F>
Poly<F> operator/(const Poly<F>& a, const Poly<F>& b) {
  return divrem(a, b).first;
}
template <class F>
Poly<F> operator%(const Poly<F>& a, const Poly<F>& b) {
  return divrem(a, b).second;
}

template <class F>
Poly<F> divexact(const Poly<F>& a, const Poly<F>& b) {
  auto [q, r] = divrem(a, b);
  if (!r.is_zero()) throw InternalError("inexact poly division");
  return q;
}

template <class F>
Poly<F> make_monic(const Poly<F>& a) {
  if (a.is_zero() || a.lc() == F(1)) return a;
  F inv = F(1) / a.lc();
  return inv * a;
}

template <class F>
Poly<F> gcd_monic(Poly<F> a, Poly<F> b) {
  while (!b.is_zero()) {
    // Monic reduction each round keeps coefficient growth in check.
    b = make_monic(b);
    Poly<F> r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  if (a.is_zero()) return a;
  return make_monic(a);
}

// g = gcd (monic), with g = s*a + t*b.
template <class F>
void xgcd(const Poly<F>& a, const Poly<F>& b, Poly<F>& g, Poly<F>& s, Poly<F>& t) {
  Poly<F> r0 = a, r1 = b;
  Poly<F> s0 = Poly<F>::constant(F(1)), s1;
  Poly<F> t0, t1 = Poly<F>::constant(F(1));
  while (!r1.is_zero()) {
    auto [q, r2] = divrem(r0, r1);
    Poly<F> s2 = s0 - q * s1;
    Poly<F> t2 = t0 - q * t1;
    r0 = std::move(r1);
    r1 = std::move(r2);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  g = r0;
  s = s0;
  t = t0;
  if (!g.is_zero() && !(g.lc() == F(1))) {
    F inv = F(1) / g.lc();
    g = inv * g;
    s = inv * s;
    t = inv * t;
  }
}

template <class F>
Poly<F> derivative(const Poly<F>& a) {
  if (a.degree() < 1) return {};
  std::vector<F> c(static_cast<std::size_t>(a.degree()), F(0));
  for (int i = 1; i <= a.degree(); ++i)
    c[static_cast<std::size_t>(i - 1)] = F(i) * a.coeffs[static_cast<std::size_t>(i)];
  return Poly<F>(std::move(c));
}

template <class F>
F eval(const Poly<F>& a, const F& x) {
  F r(0);
  for (int i = a.degree(); i >= 0; --i) r = r * x + a.coeffs[static_cast<std::size_t>(i)];
  return r;
}

// a(b(x)) by Horner on polynomial values.
template <class F>
Poly<F> compose(const Poly<F>& a, const Poly<F>& b) {
  Poly<F> r;
  for (int i = a.degree(); i >= 0; --i) {
    r = r * b;
    r = r + Poly<F>::constant(a.coeffs[static_cast<std::size_t>(i)]);
  }
  return r;
}

template <class F>
Poly<F> poly_pow(const Poly<F>& a, int n) {
  Poly<F> r = Poly<F>::constant(F(1));
  for (int i = 0; i < n; ++i) r = r * a;
  return r;
}

template <class F>
Poly<F> mulmod(const Poly<F>& a, const Poly<F>& b, const Poly<F>& m) {
  return (a * b) % m;
}

template <class F>
Poly<F> powmod(Poly<F> a, Int e, const Poly<F>& m) {
  Poly<F> r = Poly<F>::constant(F(1));
  a = a % m;
  while (e > 0) {
    if (mpz_odd_p(e.get_mpz_t())) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

// Unique interpolant of degree < nodes.size() through (node, value) pairs.
template <class F>
Poly<F> interpolate(const std::vector<F>& nodes, const std::vector<F>& values) {
  if (nodes.size() != values.size()) throw InternalError("interpolate: size mismatch");
  // Newton form, built incrementally.
  std::vector<F> dd = values;  // divided differences
  std::size_t n = nodes.size();
  for (std::size_t j = 1; j < n; ++j)
    for (std::size_t i = n - 1; i >= j; --i) {
      dd[i] = (dd[i] - dd[i - 1]) / (nodes[i] - nodes[i - j]);
      if (i == j) break;
    }
  Poly<F> r = Poly<F>::constant(dd[n - 1]);
  for (std::size_t k = n - 1; k-- > 0;) {
    Poly<F> lin({F(0) - nodes[k], F(1)});
    r = r * lin + Poly<F>::constant(dd[k]);
  }
  return r;
}

// Yun squarefree decomposition in characteristic zero:
// a = lc * prod_i part[i]^(i+1) with part[i] squarefree, pairwise coprime, monic.
template <class F>
std::vector<Poly<F>> yun_squarefree(const Poly<F>& a0) {
  std::vector<Poly<F>> parts;
  if (a0.degree() < 1) return parts;
  Poly<F> a = make_monic(a0);
  Poly<F> da = derivative(a);
  Poly<F> g = gcd_monic(a, da);
  Poly<F> w = divexact(a, g);
  Poly<F> y = divexact(da, g);
  Poly<F> z = y - derivative(w);
  while (!z.is_zero()) {
    Poly<F> p = gcd_monic(w, z);
    parts.push_back(p);
    w = divexact(w, p);
    y = divexact(z, p);
    z = y - derivative(w);
  }
  parts.push_back(w);
  return parts;
}

// Product of the distinct irreducible factors (monic).
template <class F>
Poly<F> squarefree_part(const Poly<F>& a) {
  if (a.degree() < 1) return make_monic(a);
  Poly<F> g = gcd_monic(a, derivative(a));
  return make_monic(divexact(a, g));
}

// Resultant over a field via the Euclidean remainder sequence.
template <class F>
F resultant_field(Poly<F> a, Poly<F> b) {
  if (a.is_zero() || b.is_zero()) return F(0);
  F res(1);
  while (true) {
    if (b.degree() == 0) {
      F r(1);
      F bl = b.lc();
      for (int i = 0; i < a.degree(); ++i) r = r * bl;
      return res * r;
    }
    Poly<F> r = a % b;
    if (r.is_zero()) return F(0);
    // res(a,b) = (-1)^(deg a * deg b) * lc(b)^(deg a - deg r) * res(b, r)
    F bl = b.lc();
    F scale(1);
    for (int i = 0; i < a.degree() - r.degree(); ++i) scale = scale * bl;
    if ((a.degree() % 2) && (b.degree() % 2)) scale = F(0) - scale;
    res = res * scale;
    a = std::move(b);
    b = std::move(r);
  }
}

template <class F>
Poly<F> poly_from_longs(const std::vector<long>& v) {
  std::vector<F> c;
  c.reserve(v.size());
  for (long x : v) c.push_back(F(x));
  return Poly<F>(std::move(c));
}

}  // namespace covalg

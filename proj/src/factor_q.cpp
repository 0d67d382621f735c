#include "covalg/factor_q.hpp"

#include <algorithm>
#include <cstdint>
#include <memory>
#include <numeric>

namespace covalg {

// ---------------------------------------------------------------------------
// ZPoly basics

int zp_deg(const ZPoly& a) { return static_cast<int>(a.size()) - 1; }

void zp_normalize(ZPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

ZPoly zp_mul(const ZPoly& a, const ZPoly& b) {
  if (a.empty() || b.empty()) return {};
  ZPoly r(a.size() + b.size() - 1, Int(0));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  zp_normalize(r);
  return r;
}

ZPoly zp_sub(const ZPoly& a, const ZPoly& b) {
  ZPoly r = a;
  if (b.size() > r.size()) r.resize(b.size(), Int(0));
  for (size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  zp_normalize(r);
  return r;
}

Int zp_content(const ZPoly& a) {
  Int g = 0;
  for (const Int& c : a) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g == 1) break;
  }
  return g;  // 0 for the zero polynomial
}

ZPoly zp_primitive(const ZPoly& a) {
  Int g = zp_content(a);
  if (g == 0 || g == 1) return a;
  ZPoly r = a;
  for (Int& c : r) c /= g;
  return r;
}

ZPoly zp_derivative(const ZPoly& a) {
  if (a.size() <= 1) return {};
  ZPoly r(a.size() - 1);
  for (size_t i = 1; i < a.size(); ++i) r[i - 1] = Int(static_cast<long>(i)) * a[i];
  zp_normalize(r);
  return r;
}

ZPoly zp_divexact(const ZPoly& a, const ZPoly& b) {
  if (b.empty()) throw InternalError("zp_divexact: division by zero");
  if (a.empty()) return {};
  if (a.size() < b.size()) throw InternalError("zp_divexact: not divisible");
  ZPoly rem = a;
  ZPoly q(a.size() - b.size() + 1, Int(0));
  const Int& lb = b.back();
  for (int i = static_cast<int>(q.size()) - 1; i >= 0; --i) {
    Int& top = rem[i + b.size() - 1];
    if (top == 0) continue;
    Int qi;
    mpz_tdiv_qr(qi.get_mpz_t(), top.get_mpz_t(), top.get_mpz_t(), lb.get_mpz_t());
    if (top != 0) throw InternalError("zp_divexact: not divisible");
    q[i] = qi;
    for (size_t j = 0; j + 1 < b.size(); ++j) rem[i + j] -= qi * b[j];
  }
  for (const Int& c : rem)
    if (c != 0) throw InternalError("zp_divexact: not divisible");
  zp_normalize(q);
  return q;
}

bool zp_divides(const ZPoly& b, const ZPoly& a) {
  if (b.empty()) return a.empty();
  if (a.empty()) return true;
  if (a.size() < b.size()) return false;
  ZPoly rem = a;
  const Int& lb = b.back();
  Int qi, r;
  for (int i = static_cast<int>(a.size() - b.size()); i >= 0; --i) {
    Int& top = rem[i + b.size() - 1];
    if (top == 0) continue;
    mpz_tdiv_qr(qi.get_mpz_t(), r.get_mpz_t(), top.get_mpz_t(), lb.get_mpz_t());
    if (r != 0) return false;
    top = 0;
    for (size_t j = 0; j + 1 < b.size(); ++j) rem[i + j] -= qi * b[j];
  }
  for (const Int& c : rem)
    if (c != 0) return false;
  return true;
}

namespace {

Int int_pow(const Int& b, unsigned e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
  return r;
}

// Classical pseudo-remainder: lc(b)^(d+1) * a = q*b + r with d = deg a - deg b.
// The exact power matters: the subresultant divisions below rely on it.
ZPoly zp_prem_exact(const ZPoly& a, const ZPoly& b) {
  const int d = zp_deg(a) - zp_deg(b);
  ZPoly r = a;
  const Int scale = int_pow(b.back(), static_cast<unsigned>(d + 1));
  for (Int& c : r) c *= scale;
  const Int& lb = b.back();
  for (int i = d; i >= 0; --i) {
    if (static_cast<size_t>(i + zp_deg(b)) >= r.size()) continue;
    Int& top = r[i + zp_deg(b)];
    if (top == 0) continue;
    Int qi;
    mpz_divexact(qi.get_mpz_t(), top.get_mpz_t(), lb.get_mpz_t());
    top = 0;
    for (int j = 0; j < zp_deg(b); ++j) r[i + j] -= qi * b[j];
  }
  zp_normalize(r);
  return r;
}

}  // namespace

ZPoly zp_gcd(ZPoly a, ZPoly b) {
  zp_normalize(a);
  zp_normalize(b);
  auto pp_positive = [](ZPoly v) {
    v = zp_primitive(v);
    if (!v.empty() && v.back() < 0)
      for (Int& c : v) c = -c;
    return v;
  };
  if (a.empty()) return pp_positive(std::move(b));
  if (b.empty()) return pp_positive(std::move(a));
  if (zp_deg(a) < zp_deg(b)) std::swap(a, b);
  Int ca = zp_content(a), cb = zp_content(b);
  Int cont;
  mpz_gcd(cont.get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
  a = zp_primitive(a);
  b = zp_primitive(b);
  Int g(1), h(1);
  while (true) {
    const int d = zp_deg(a) - zp_deg(b);
    ZPoly r = zp_prem_exact(a, b);
    if (r.empty()) {
      ZPoly res = zp_primitive(b);
      if (res.back() < 0)
        for (Int& c : res) c = -c;
      for (Int& c : res) c *= cont;
      return res;
    }
    // divide r by g*h^d
    Int div = g * int_pow(h, static_cast<unsigned>(d));
    a = std::move(b);
    b.clear();
    b.reserve(r.size());
    for (Int& c : r) {
      Int q;
      mpz_divexact(q.get_mpz_t(), c.get_mpz_t(), div.get_mpz_t());
      b.push_back(q);
    }
    if (zp_deg(b) == 0) {
      ZPoly res{cont};
      return res;
    }
    g = a.back();
    if (d > 0) {
      // h = g^d / h^(d-1)
      Int num = int_pow(g, static_cast<unsigned>(d));
      Int den = int_pow(h, static_cast<unsigned>(d - 1));
      mpz_divexact(h.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    }
  }
}

Int zp_resultant(ZPoly A, ZPoly B) {
  zp_normalize(A);
  zp_normalize(B);
  if (A.empty() || B.empty()) return 0;
  if (zp_deg(A) == 0 && zp_deg(B) == 0) return 1;
  int sflip = 0;
  if (zp_deg(A) < zp_deg(B)) {
    sflip = (zp_deg(A) & 1) && (zp_deg(B) & 1);
    std::swap(A, B);
  }
  if (zp_deg(B) == 0) {
    Int r = int_pow(B[0], static_cast<unsigned>(zp_deg(A)));
    return sflip ? Int(-r) : r;
  }
  Int ca = zp_content(A), cb = zp_content(B);
  Int mult = int_pow(ca, static_cast<unsigned>(zp_deg(B))) *
             int_pow(cb, static_cast<unsigned>(zp_deg(A)));
  A = zp_primitive(A);
  B = zp_primitive(B);
  Int g(1), h(1), s(1);
  while (true) {
    const int d = zp_deg(A) - zp_deg(B);
    if ((zp_deg(A) & 1) && (zp_deg(B) & 1)) s = -s;
    ZPoly R = zp_prem_exact(A, B);
    A = std::move(B);
    if (R.empty()) return 0;
    Int div = g * int_pow(h, static_cast<unsigned>(d));
    B.clear();
    B.reserve(R.size());
    for (Int& c : R) {
      Int q;
      mpz_divexact(q.get_mpz_t(), c.get_mpz_t(), div.get_mpz_t());
      B.push_back(q);
    }
    g = A.back();
    if (d > 0) {
      Int num = int_pow(g, static_cast<unsigned>(d));
      Int den = int_pow(h, static_cast<unsigned>(d - 1));
      mpz_divexact(h.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    }
    if (zp_deg(B) == 0) {
      // res = s * lc(B)^deg(A) / h^(deg(A)-1)
      Int num = int_pow(B[0], static_cast<unsigned>(zp_deg(A)));
      Int den = int_pow(h, static_cast<unsigned>(zp_deg(A) - 1));
      Int res;
      mpz_divexact(res.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
      res *= s * mult;
      return sflip ? Int(-res) : res;
    }
  }
}

std::pair<ZPoly, Rat> to_primitive_z(const Poly<Rat>& a) {
  if (a.is_zero()) return {ZPoly{}, Rat(0)};
  Int den(1);
  for (const Rat& c : a.coeffs)
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den().get_mpz_t());
  ZPoly z;
  z.reserve(a.coeffs.size());
  for (const Rat& c : a.coeffs) {
    Int t = c.get_num() * (den / c.get_den());
    z.push_back(t);
  }
  Int cont = zp_content(z);
  if (z.back() < 0) cont = -cont;
  for (Int& c : z) c /= cont;
  Rat scale(cont, den);
  scale.canonicalize();
  return {std::move(z), scale};
}

Poly<Rat> from_z(const ZPoly& a) {
  Poly<Rat> p;
  p.coeffs.reserve(a.size());
  for (const Int& c : a) p.coeffs.emplace_back(c);
  p.normalize();
  return p;
}

Poly<Rat> qpoly_gcd(const Poly<Rat>& a, const Poly<Rat>& b) {
  if (a.is_zero()) return b.is_zero() ? b : make_monic(b);
  if (b.is_zero()) return make_monic(a);
  ZPoly za = to_primitive_z(a).first;
  ZPoly zb = to_primitive_z(b).first;
  return make_monic(from_z(zp_gcd(std::move(za), std::move(zb))));
}

Rat qpoly_resultant(const Poly<Rat>& a, const Poly<Rat>& b) {
  if (a.is_zero() || b.is_zero()) return Rat(0);
  auto [za, sa] = to_primitive_z(a);
  auto [zb, sb] = to_primitive_z(b);
  Rat r(zp_resultant(za, zb));
  // res(sa*za, sb*zb) = sa^deg(b) sb^deg(a) res(za, zb)
  Rat fa(1), fb(1);
  for (int i = 0; i < b.degree(); ++i) fa *= sa;
  for (int i = 0; i < a.degree(); ++i) fb *= sb;
  return r * fa * fb;
}

// ---------------------------------------------------------------------------
// Arithmetic mod small primes (p < 2^31, coefficients in uint64)

namespace {

using FpPoly = std::vector<uint64_t>;

uint64_t fp_sub(uint64_t a, uint64_t b, uint64_t p) { return (a + p - b) % p; }
uint64_t fp_mul(uint64_t a, uint64_t b, uint64_t p) { return (a * b) % p; }

uint64_t fp_pow(uint64_t a, uint64_t e, uint64_t p) {
  uint64_t r = 1 % p;
  a %= p;
  while (e) {
    if (e & 1) r = fp_mul(r, a, p);
    a = fp_mul(a, a, p);
    e >>= 1;
  }
  return r;
}

uint64_t fp_inv(uint64_t a, uint64_t p) { return fp_pow(a, p - 2, p); }

void fpp_norm(FpPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

int fpp_deg(const FpPoly& a) { return static_cast<int>(a.size()) - 1; }

FpPoly fpp_mul(const FpPoly& a, const FpPoly& b, uint64_t p) {
  if (a.empty() || b.empty()) return {};
  FpPoly r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  }
  fpp_norm(r);
  return r;
}

FpPoly fpp_sub(const FpPoly& a, const FpPoly& b, uint64_t p) {
  FpPoly r = a;
  if (b.size() > r.size()) r.resize(b.size(), 0);
  for (size_t i = 0; i < b.size(); ++i) r[i] = fp_sub(r[i], b[i], p);
  fpp_norm(r);
  return r;
}

FpPoly fpp_rem(FpPoly a, const FpPoly& b, uint64_t p) {
  const uint64_t li = fp_inv(b.back(), p);
  while (fpp_deg(a) >= fpp_deg(b)) {
    const uint64_t q = fp_mul(a.back(), li, p);
    const size_t off = a.size() - b.size();
    for (size_t j = 0; j < b.size(); ++j) a[off + j] = fp_sub(a[off + j], fp_mul(q, b[j], p), p);
    fpp_norm(a);
  }
  return a;
}

FpPoly fpp_divrem(FpPoly& a, const FpPoly& b, uint64_t p) {
  // returns quotient, leaves remainder in a
  const uint64_t li = fp_inv(b.back(), p);
  if (a.size() < b.size()) return {};
  FpPoly q(a.size() - b.size() + 1, 0);
  while (fpp_deg(a) >= fpp_deg(b)) {
    const uint64_t c = fp_mul(a.back(), li, p);
    const size_t off = a.size() - b.size();
    q[off] = c;
    for (size_t j = 0; j < b.size(); ++j) a[off + j] = fp_sub(a[off + j], fp_mul(c, b[j], p), p);
    fpp_norm(a);
    if (a.empty()) break;
  }
  fpp_norm(q);
  return q;
}

FpPoly fpp_gcd(FpPoly a, FpPoly b, uint64_t p) {
  fpp_norm(a);
  fpp_norm(b);
  while (!b.empty()) {
    a = fpp_rem(std::move(a), b, p);
    std::swap(a, b);
  }
  if (!a.empty()) {
    const uint64_t li = fp_inv(a.back(), p);
    for (uint64_t& c : a) c = fp_mul(c, li, p);
  }
  return a;
}

FpPoly fpp_make_monic(FpPoly a, uint64_t p) {
  fpp_norm(a);
  if (a.empty()) return a;
  const uint64_t li = fp_inv(a.back(), p);
  for (uint64_t& c : a) c = fp_mul(c, li, p);
  return a;
}

FpPoly fpp_deriv(const FpPoly& a, uint64_t p) {
  if (a.size() <= 1) return {};
  FpPoly r(a.size() - 1);
  for (size_t i = 1; i < a.size(); ++i) r[i - 1] = (a[i] * (i % p)) % p;
  fpp_norm(r);
  return r;
}

FpPoly fpp_powmod(FpPoly base, Int e, const FpPoly& mod, uint64_t p) {
  FpPoly r{1};
  base = fpp_rem(std::move(base), mod, p);
  while (e > 0) {
    if (mpz_odd_p(e.get_mpz_t())) r = fpp_rem(fpp_mul(r, base, p), mod, p);
    base = fpp_rem(fpp_mul(base, base, p), mod, p);
    e >>= 1;
  }
  return r;
}

FpPoly zp_to_fp(const ZPoly& a, uint64_t p) {
  FpPoly r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = mpz_fdiv_ui(a[i].get_mpz_t(), static_cast<unsigned long>(p));
  fpp_norm(r);
  return r;
}

// Berlekamp Q-matrix nullspace basis for monic squarefree f mod p.
// Returns the basis of { v : v^p == v mod f } as coefficient vectors.
std::vector<FpPoly> berlekamp_basis(const FpPoly& f, uint64_t p) {
  const int n = fpp_deg(f);
  // rows[i] = x^(p*i) mod f
  FpPoly xp = fpp_powmod(FpPoly{0, 1}, Int(static_cast<long>(p)), f, p);
  std::vector<FpPoly> rows(n);
  rows[0] = FpPoly{1};
  for (int i = 1; i < n; ++i) rows[i] = fpp_rem(fpp_mul(rows[i - 1], xp, p), f, p);
  // A = (Q - I)^T, where Q[i][j] = coeff_j(rows[i]); solve A x = 0.
  std::vector<std::vector<uint64_t>> A(n, std::vector<uint64_t>(n, 0));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      uint64_t q = (static_cast<size_t>(j) < rows[i].size()) ? rows[i][j] : 0;
      if (i == j) q = fp_sub(q, 1, p);
      A[j][i] = q;  // transpose
    }
  }
  // Gaussian elimination, track pivot columns.
  std::vector<int> pivot_col_of_row(n, -1);
  int rank = 0;
  for (int col = 0; col < n && rank < n; ++col) {
    int piv = -1;
    for (int r = rank; r < n; ++r)
      if (A[r][col] != 0) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    std::swap(A[rank], A[piv]);
    const uint64_t inv = fp_inv(A[rank][col], p);
    for (int j = col; j < n; ++j) A[rank][j] = fp_mul(A[rank][j], inv, p);
    for (int r = 0; r < n; ++r) {
      if (r == rank || A[r][col] == 0) continue;
      const uint64_t factor = A[r][col];
      for (int j = col; j < n; ++j) A[r][j] = fp_sub(A[r][j], fp_mul(factor, A[rank][j], p), p);
    }
    pivot_col_of_row[rank] = col;
    ++rank;
  }
  std::vector<bool> is_pivot(n, false);
  for (int r = 0; r < rank; ++r) is_pivot[pivot_col_of_row[r]] = true;
  std::vector<FpPoly> basis;
  for (int free_col = 0; free_col < n; ++free_col) {
    if (is_pivot[free_col]) continue;
    FpPoly v(n, 0);
    v[free_col] = 1;
    for (int r = 0; r < rank; ++r) {
      // pivot var = -A[r][free_col]
      v[pivot_col_of_row[r]] = fp_sub(0, A[r][free_col], p);
    }
    fpp_norm(v);
    basis.push_back(std::move(v));
  }
  return basis;
}

// Full Berlekamp split of monic squarefree f mod p into monic irreducibles.
std::vector<FpPoly> berlekamp_factor(const FpPoly& f, uint64_t p) {
  std::vector<FpPoly> basis = berlekamp_basis(f, p);
  const size_t r = basis.size();
  std::vector<FpPoly> factors{f};
  if (r <= 1) return factors;
  for (const FpPoly& v : basis) {
    if (factors.size() == r) break;
    if (fpp_deg(v) < 1) continue;  // the constant vector separates nothing
    std::vector<FpPoly> next;
    for (FpPoly& u : factors) {
      if (fpp_deg(u) == 1) {
        next.push_back(std::move(u));
        continue;
      }
      FpPoly rest = std::move(u);
      for (uint64_t s = 0; s < p && fpp_deg(rest) > 1; ++s) {
        FpPoly vs = v;
        vs[0] = fp_sub(vs[0], s, p);
        fpp_norm(vs);
        FpPoly g = fpp_gcd(rest, vs, p);
        if (fpp_deg(g) > 0 && fpp_deg(g) < fpp_deg(rest)) {
          next.push_back(g);
          FpPoly rem = rest;
          FpPoly q = fpp_divrem(rem, g, p);
          rest = fpp_make_monic(std::move(q), p);
        }
      }
      if (fpp_deg(rest) > 0) next.push_back(std::move(rest));
    }
    factors = std::move(next);
  }
  std::sort(factors.begin(), factors.end());
  return factors;
}

// ---------------------------------------------------------------------------
// Hensel lifting (quadratic, factor tree)

ZPoly zpm_reduce(ZPoly a, const Int& m) {
  for (Int& c : a) {
    mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), m.get_mpz_t());
  }
  zp_normalize(a);
  return a;
}

ZPoly zpm_mul(const ZPoly& a, const ZPoly& b, const Int& m) {
  return zpm_reduce(zp_mul(a, b), m);
}

ZPoly zpm_sub(const ZPoly& a, const ZPoly& b, const Int& m) {
  return zpm_reduce(zp_sub(a, b), m);
}

// divrem by monic b over Z/m
std::pair<ZPoly, ZPoly> zpm_divrem(ZPoly a, const ZPoly& b, const Int& m) {
  if (b.empty() || b.back() != 1) throw InternalError("zpm_divrem: divisor not monic");
  a = zpm_reduce(std::move(a), m);
  if (a.size() < b.size()) return {ZPoly{}, std::move(a)};
  ZPoly q(a.size() - b.size() + 1, Int(0));
  while (zp_deg(a) >= zp_deg(b)) {
    Int c = a.back();
    const size_t off = a.size() - b.size();
    q[off] = c;
    for (size_t j = 0; j < b.size(); ++j) {
      a[off + j] -= c * b[j];
      mpz_fdiv_r(a[off + j].get_mpz_t(), a[off + j].get_mpz_t(), m.get_mpz_t());
    }
    zp_normalize(a);
    if (a.empty()) break;
  }
  zp_normalize(q);
  return {std::move(q), std::move(a)};
}

struct HenselNode {
  ZPoly g, h;  // node splits its polynomial as g*h (both monic mod m)
  ZPoly s, t;  // s*g + t*h == 1 mod m, deg s < deg h, deg t < deg g
  std::unique_ptr<HenselNode> left, right;
  ZPoly leaf_value;  // for leaves: the lifted factor
  bool leaf = false;
};

std::unique_ptr<HenselNode> hensel_build(const std::vector<ZPoly>& parts, size_t lo, size_t hi,
                                         uint64_t p) {
  auto node = std::make_unique<HenselNode>();
  if (hi - lo == 1) {
    node->leaf = true;
    node->leaf_value = parts[lo];
    return node;
  }
  const size_t mid = lo + (hi - lo) / 2;
  node->left = hensel_build(parts, lo, mid, p);
  node->right = hensel_build(parts, mid, hi, p);
  const Int pm(static_cast<long>(p));
  auto product = [&](size_t a, size_t b) {
    ZPoly acc{Int(1)};
    for (size_t i = a; i < b; ++i) acc = zpm_mul(acc, parts[i], pm);
    return acc;
  };
  node->g = product(lo, mid);
  node->h = product(mid, hi);
  // Bezout mod p via the Fp layer
  FpPoly fg = zp_to_fp(node->g, p), fh = zp_to_fp(node->h, p);
  // extended gcd over Fp
  FpPoly r0 = fg, r1 = fh, s0{1}, s1{}, t0{}, t1{1};
  while (!r1.empty()) {
    FpPoly rem = r0;
    FpPoly q = fpp_divrem(rem, r1, p);
    r0 = std::move(r1);
    r1 = std::move(rem);
    FpPoly ns = fpp_sub(s0, fpp_mul(q, s1, p), p);
    s0 = std::move(s1);
    s1 = std::move(ns);
    FpPoly nt = fpp_sub(t0, fpp_mul(q, t1, p), p);
    t0 = std::move(t1);
    t1 = std::move(nt);
  }
  if (fpp_deg(r0) != 0) throw InternalError("hensel_build: factors not coprime mod p");
  const uint64_t inv = fp_inv(r0[0], p);
  for (uint64_t& c : s0) c = fp_mul(c, inv, p);
  for (uint64_t& c : t0) c = fp_mul(c, inv, p);
  // reduce deg s below deg h, fix t accordingly: s*g + t*h = 1
  FpPoly srem = fpp_rem(s0, fh, p);
  // t = (1 - srem*g)/h exactly over Fp
  FpPoly one{1};
  FpPoly num = fpp_sub(one, fpp_mul(srem, fg, p), p);
  FpPoly tq = fpp_divrem(num, fh, p);
  if (!num.empty()) throw InternalError("hensel_build: bezout correction failed");
  auto fp_to_zp = [](const FpPoly& a) {
    ZPoly r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = Int(static_cast<unsigned long>(a[i]));
    zp_normalize(r);
    return r;
  };
  node->s = fp_to_zp(srem);
  node->t = fp_to_zp(tq);
  return node;
}

ZPoly zpm_add(const ZPoly& a, const ZPoly& b, const Int& m) {
  ZPoly r = a;
  if (b.size() > r.size()) r.resize(b.size(), Int(0));
  for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  return zpm_reduce(std::move(r), m);
}

// One quadratic lift of the node split from modulus m to m^2, then recurse.
// f is the node polynomial, monic mod M (M = m^2), f == g*h mod m with
// s*g + t*h == 1 mod m. The cofactor and the Bezout pair are renormalized by
// exact division each round, so no degree bookkeeping is carried between
// rounds; the zero-remainder checks make the step self-validating.
void hensel_lift_node(HenselNode* node, const ZPoly& f, const Int& m) {
  if (node->leaf) {
    node->leaf_value = f;
    return;
  }
  const Int M = m * m;
  ZPoly e = zpm_sub(f, zpm_mul(node->g, node->h, M), M);
  // With s*g + t*h == 1: g*(se - qh) + h*(te + qg) == e*(sg + th) == e mod M,
  // so the remainder of s*e by h updates h (keeping it monic) and the exact
  // division of f recovers the matching g.
  ZPoly r = zpm_divrem(zpm_mul(node->s, e, M), node->h, M).second;
  ZPoly h1 = zpm_add(node->h, r, M);  // monic: deg r < deg h
  auto [g1, grem] = zpm_divrem(f, h1, M);
  if (!grem.empty()) throw InternalError("hensel: lifted factor does not divide");
  // Newton update of the Bezout pair: with b = s*g1 + t*h1 - 1 (== 0 mod m),
  // s*(1-b) and t*(1-b) satisfy the identity mod M; renormalize deg s < deg h1.
  ZPoly b = zpm_add(zpm_mul(node->s, g1, M), zpm_mul(node->t, h1, M), M);
  if (b.empty()) b.push_back(Int(0));
  b[0] -= 1;
  b = zpm_reduce(std::move(b), M);
  ZPoly s1 = zpm_sub(node->s, zpm_mul(node->s, b, M), M);
  s1 = zpm_divrem(std::move(s1), h1, M).second;
  ZPoly one{Int(1)};
  auto [t1, trem] = zpm_divrem(zpm_sub(one, zpm_mul(s1, g1, M), M), h1, M);
  if (!trem.empty()) throw InternalError("hensel: bezout renormalization failed");
  node->g = std::move(g1);
  node->h = std::move(h1);
  node->s = std::move(s1);
  node->t = std::move(t1);
  hensel_lift_node(node->left.get(), node->g, m);
  hensel_lift_node(node->right.get(), node->h, m);
}

void hensel_collect(const HenselNode* node, std::vector<ZPoly>& out) {
  if (node->leaf) {
    out.push_back(node->leaf_value);
    return;
  }
  hensel_collect(node->left.get(), out);
  hensel_collect(node->right.get(), out);
}

// Symmetric representative in (-m/2, m/2]
ZPoly zp_symmetric(ZPoly a, const Int& m) {
  Int half = m / 2;
  for (Int& c : a) {
    mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), m.get_mpz_t());
    if (c > half) c -= m;
  }
  zp_normalize(a);
  return a;
}

// ---------------------------------------------------------------------------
// Zassenhaus driver for a primitive squarefree integer polynomial.

const uint64_t kPrimes[] = {3,  5,  7,  11, 13, 17, 19, 23,  29,  31,  37,  41,  43,  47,  53,
                            59, 61, 67, 71, 73, 79, 83, 89,  97,  101, 103, 107, 109, 113, 127,
                            131, 137, 139, 149, 151, 157, 163, 167, 173, 179, 181, 191, 193, 197, 199};

std::vector<ZPoly> factor_squarefree_z(ZPoly f) {
  zp_normalize(f);
  if (zp_deg(f) <= 0) return {};
  if (zp_deg(f) == 1) return {f};
  const Int lc = f.back();

  // Pick a prime keeping f squarefree with few modular factors.
  uint64_t best_p = 0;
  size_t best_count = SIZE_MAX;
  int tried = 0;
  for (uint64_t p : kPrimes) {
    if (mpz_fdiv_ui(lc.get_mpz_t(), static_cast<unsigned long>(p)) == 0) continue;
    FpPoly fp = zp_to_fp(f, p);
    fp = fpp_make_monic(std::move(fp), p);
    FpPoly g = fpp_gcd(fp, fpp_deriv(fp, p), p);
    if (fpp_deg(g) != 0) continue;
    const size_t count = berlekamp_basis(fp, p).size();
    if (count == 1) return {f};  // irreducible mod p, so irreducible over Z
    if (count < best_count) {
      best_count = count;
      best_p = p;
    }
    if (++tried >= 5) break;
  }
  if (best_p == 0) throw InternalError("factor_squarefree_z: no usable prime");
  const uint64_t p = best_p;

  FpPoly fp = fpp_make_monic(zp_to_fp(f, p), p);
  std::vector<FpPoly> modular = berlekamp_factor(fp, p);

  // Coefficient bound: |coeff of any factor of f| <= 2^n * |f|_2, times |lc|
  // for the leading-coefficient-padded candidates.
  Int norm2(0);
  for (const Int& c : f) norm2 += c * c;
  Int sq;
  mpz_sqrt(sq.get_mpz_t(), norm2.get_mpz_t());
  sq += 1;
  Int bound = sq;
  mpz_mul_2exp(bound.get_mpz_t(), bound.get_mpz_t(), static_cast<mp_bitcnt_t>(zp_deg(f)));
  bound *= abs(lc);
  Int target = 2 * bound + 1;

  // Lift. Work with the monic image of f mod p^k.
  std::vector<ZPoly> parts;
  parts.reserve(modular.size());
  for (const FpPoly& g : modular) {
    ZPoly z(g.size());
    for (size_t i = 0; i < g.size(); ++i) z[i] = Int(static_cast<unsigned long>(g[i]));
    parts.push_back(std::move(z));
  }
  Int m(static_cast<long>(p));
  std::vector<ZPoly> lifted = parts;
  if (parts.size() >= 2) {
    auto root = hensel_build(parts, 0, parts.size(), p);
    while (m < target) {
      Int M = m * m;
      Int lcinv;
      if (!mpz_invert(lcinv.get_mpz_t(), lc.get_mpz_t(), M.get_mpz_t()))
        throw InternalError("factor_squarefree_z: lc not invertible");
      ZPoly fmonic = f;
      for (Int& c : fmonic) {
        c *= lcinv;
        mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), M.get_mpz_t());
      }
      zp_normalize(fmonic);
      hensel_lift_node(root.get(), fmonic, m);
      m = M;
    }
    lifted.clear();
    hensel_collect(root.get(), lifted);
  } else {
    return {f};
  }

  // Recombination.
  std::vector<size_t> active(lifted.size());
  std::iota(active.begin(), active.end(), 0);
  std::vector<ZPoly> result;
  ZPoly fcur = f;

  auto try_subset = [&](const std::vector<size_t>& subset) -> bool {
    ZPoly cand{fcur.back()};  // current leading coefficient
    for (size_t idx : subset) cand = zpm_mul(cand, lifted[idx], m);
    cand = zp_symmetric(std::move(cand), m);
    cand = zp_primitive(cand);
    if (cand.back() < 0)
      for (Int& c : cand) c = -c;
    if (!zp_divides(cand, fcur)) return false;
    result.push_back(cand);
    fcur = zp_divexact(fcur, cand);
    std::vector<size_t> remaining;
    for (size_t idx : active)
      if (std::find(subset.begin(), subset.end(), idx) == subset.end())
        remaining.push_back(idx);
    active = std::move(remaining);
    return true;
  };

  size_t s = 1;
  while (2 * s <= active.size()) {
    // enumerate subsets of `active` of size s in lexicographic order
    std::vector<size_t> pick(s);
    std::iota(pick.begin(), pick.end(), 0);
    bool hit = false;
    while (true) {
      std::vector<size_t> subset(s);
      for (size_t i = 0; i < s; ++i) subset[i] = active[pick[i]];
      if (try_subset(subset)) {
        hit = true;
        break;
      }
      // next combination
      int i = static_cast<int>(s) - 1;
      while (i >= 0 && pick[i] == active.size() - s + i) --i;
      if (i < 0) break;
      ++pick[i];
      for (size_t j = i + 1; j < s; ++j) pick[j] = pick[j - 1] + 1;
    }
    if (!hit) ++s;
  }
  if (zp_deg(fcur) > 0) result.push_back(zp_primitive(fcur));
  std::sort(result.begin(), result.end(), [](const ZPoly& a, const ZPoly& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    for (size_t i = a.size(); i-- > 0;)
      if (a[i] != b[i]) return a[i] < b[i];
    return false;
  });
  return result;
}

}  // namespace

// ---------------------------------------------------------------------------

std::vector<Poly<Rat>> yun_squarefree_q(const Poly<Rat>& a) {
  if (a.is_zero()) throw InternalError("yun_squarefree_q: zero polynomial");
  if (a.degree() == 0) return {};
  ZPoly f = to_primitive_z(a).first;
  // Yun over Z with primitive gcds.
  std::vector<Poly<Rat>> parts;
  ZPoly fd = zp_derivative(f);
  ZPoly c1 = zp_gcd(f, fd);
  ZPoly w = zp_divexact(f, c1);
  ZPoly y = zp_divexact(fd, c1);
  ZPoly z = zp_sub(y, zp_derivative(w));
  while (zp_deg(w) > 0) {
    ZPoly g = zp_gcd(w, z);
    parts.push_back(make_monic(from_z(g)));
    w = zp_divexact(w, g);
    y = zp_divexact(z, g);
    z = zp_sub(y, zp_derivative(w));
  }
  // Trim trailing constant parts (all-1 gcd rounds at the tail).
  while (!parts.empty() && parts.back().degree() == 0) parts.pop_back();
  return parts;
}

QFactorization factor_over_q(const Poly<Rat>& a) {
  if (a.is_zero()) throw InternalError("factor_over_q: zero polynomial");
  QFactorization out;
  out.unit = a.lc();
  if (a.degree() == 0) return out;
  std::vector<Poly<Rat>> parts = yun_squarefree_q(a);
  for (size_t i = 0; i < parts.size(); ++i) {
    if (parts[i].degree() == 0) continue;
    ZPoly z = to_primitive_z(parts[i]).first;
    for (ZPoly& irr : factor_squarefree_z(std::move(z)))
      out.factors.push_back({make_monic(from_z(irr)), static_cast<int>(i + 1)});
  }
  // Deterministic order: by multiplicity, then degree, then coefficients.
  std::sort(out.factors.begin(), out.factors.end(), [](const QFactor& x, const QFactor& y) {
    if (x.multiplicity != y.multiplicity) return x.multiplicity < y.multiplicity;
    if (x.factor.degree() != y.factor.degree()) return x.factor.degree() < y.factor.degree();
    for (size_t i = x.factor.coeffs.size(); i-- > 0;) {
      if (x.factor.coeffs[i] != y.factor.coeffs[i]) return x.factor.coeffs[i] < y.factor.coeffs[i];
    }
    return false;
  });
  // Hard verification: the factorization must multiply back to the input.
  Poly<Rat> check = Poly<Rat>::constant(out.unit);
  for (const QFactor& g : out.factors) check = check * poly_pow(g.factor, g.multiplicity);
  if (check != a) throw InternalError("factor_over_q: product check failed");
  return out;
}

bool irreducible_over_q(const Poly<Rat>& a) {
  if (a.degree() <= 0) return false;
  if (a.degree() == 1) return true;
  QFactorization f = factor_over_q(a);
  return f.factors.size() == 1 && f.factors[0].multiplicity == 1;
}

}  // namespace covalg

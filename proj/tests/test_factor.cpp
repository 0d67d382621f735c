#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "covalg/factor_k.hpp"
#include "covalg/factor_q.hpp"
#include "covalg/galois.hpp"

using namespace covalg;

namespace {

// Independent resultant oracle: Sylvester matrix determinant by exact
// fraction-free elimination. Quadratic in the degrees, fine at this scale.
Rat sylvester_resultant(const Poly<Rat>& a, const Poly<Rat>& b) {
  const int m = a.degree(), n = b.degree();
  REQUIRE(m >= 0);
  REQUIRE(n >= 0);
  if (m == 0 && n == 0) return Rat(1);
  const int N = m + n;
  std::vector<std::vector<Rat>> s(static_cast<size_t>(N), std::vector<Rat>(static_cast<size_t>(N), Rat(0)));
  for (int r = 0; r < n; ++r)
    for (int j = 0; j <= m; ++j) s[static_cast<size_t>(r)][static_cast<size_t>(r + j)] = a.coeff(m - j);
  for (int r = 0; r < m; ++r)
    for (int j = 0; j <= n; ++j) s[static_cast<size_t>(n + r)][static_cast<size_t>(r + j)] = b.coeff(n - j);
  Rat det(1);
  for (int c = 0; c < N; ++c) {
    int piv = -1;
    for (int r = c; r < N; ++r)
      if (s[static_cast<size_t>(r)][static_cast<size_t>(c)] != 0) {
        piv = r;
        break;
      }
    if (piv < 0) return Rat(0);
    if (piv != c) {
      std::swap(s[static_cast<size_t>(piv)], s[static_cast<size_t>(c)]);
      det = -det;
    }
    det *= s[static_cast<size_t>(c)][static_cast<size_t>(c)];
    for (int r = c + 1; r < N; ++r) {
      if (s[static_cast<size_t>(r)][static_cast<size_t>(c)] == 0) continue;
      Rat f = s[static_cast<size_t>(r)][static_cast<size_t>(c)] / s[static_cast<size_t>(c)][static_cast<size_t>(c)];
      for (int j = c; j < N; ++j)
        s[static_cast<size_t>(r)][static_cast<size_t>(j)] -= f * s[static_cast<size_t>(c)][static_cast<size_t>(j)];
    }
  }
  return det;
}

Poly<Rat> qp(std::vector<long> c) {
  std::vector<Rat> v(c.begin(), c.end());
  return Poly<Rat>(std::move(v));
}

Poly<Rat> product(const QFactorization& f) {
  Poly<Rat> p = Poly<Rat>::constant(f.unit);
  for (const auto& [q, mult] : f.factors)
    for (int i = 0; i < mult; ++i) p = p * q;
  return p;
}

}  // namespace

TEST_CASE("resultant matches the Sylvester determinant oracle") {
  std::vector<std::pair<Poly<Rat>, Poly<Rat>>> cases = {
      {qp({-2, 0, 1}), qp({1, 2, 3})},
      {qp({1, 1, 1, 1}), qp({-1, 0, 0, 1})},
      {qp({3, -5, 0, 2, 1}), qp({7, 0, -1, 1})},
      {qp({0, -4, 0, 0, 1}), qp({-4, 0, 0, 4})},  // map and derivative, shared structure
      {qp({1, 0, 1}), qp({2, 3})},
  };
  for (const auto& [a, b] : cases) {
    CHECK(qpoly_resultant(a, b) == sylvester_resultant(a, b));
    // antisymmetry under swap: res(b,a) = (-1)^(deg a * deg b) res(a,b)
    Rat sw = sylvester_resultant(b, a);
    Rat expect = (a.degree() * b.degree()) % 2 ? -sw : sw;
    CHECK(qpoly_resultant(a, b) == expect);
  }
  // common root forces zero: (x-1)(x+2) vs (x-1)(x-3)
  CHECK(qpoly_resultant(qp({-2, 1, 1}) * qp({1, 1}), qp({3, -4, 1})) == Rat(0));
}

TEST_CASE("integer polynomial kernel basics") {
  ZPoly a = {Int(6), Int(12), Int(18)};
  CHECK(zp_content(a) == 6);
  CHECK(zp_primitive(a) == ZPoly({Int(1), Int(2), Int(3)}));
  ZPoly g = zp_gcd({Int(-2), Int(0), Int(2)}, {Int(2), Int(2)});  // 2(x^2-1), 2(x+1)
  CHECK(g == ZPoly({Int(1), Int(1)}));
  CHECK(zp_divides({Int(1), Int(1)}, {Int(-1), Int(0), Int(0), Int(0), Int(1)}));
  CHECK(!zp_divides({Int(1), Int(1)}, {Int(1), Int(0), Int(1)}));
}

TEST_CASE("squarefree decomposition") {
  // (x-1)^2 (x+2)^3
  Poly<Rat> p = qp({-1, 1}) * qp({-1, 1}) * qp({2, 1}) * qp({2, 1}) * qp({2, 1});
  auto parts = yun_squarefree_q(p);
  REQUIRE(parts.size() == 3);
  CHECK(parts[0].degree() == 0);  // nothing appears once
  CHECK(parts[1] == qp({-1, 1}));
  CHECK(parts[2] == qp({2, 1}));
}

TEST_CASE("factorization over Q recovers known splittings") {
  // x^4 - 1 = (x-1)(x+1)(x^2+1)
  auto f = factor_over_q(qp({-1, 0, 0, 0, 1}));
  REQUIRE(f.factors.size() == 3);
  CHECK(product(f) == qp({-1, 0, 0, 0, 1}));
  int quad = 0;
  for (const auto& [q, m] : f.factors) {
    CHECK(m == 1);
    if (q.degree() == 2) {
      ++quad;
      CHECK(q == qp({1, 0, 1}));
    }
  }
  CHECK(quad == 1);

  // x^4 + x^3 + x^2 + x + 1 is irreducible (5th cyclotomic)
  CHECK(irreducible_over_q(qp({1, 1, 1, 1, 1})));
  // x^4 - 10x^2 + 1 (min poly of sqrt2 + sqrt3): irreducible though it
  // splits mod every prime
  CHECK(irreducible_over_q(qp({1, 0, -10, 0, 1})));
  // non-monic with content: 6x^2 - 5x + 1 = 6(x - 1/2)(x - 1/3)
  auto g = factor_over_q(qp({1, -5, 6}));
  CHECK(g.unit == Rat(6));
  REQUIRE(g.factors.size() == 2);
  CHECK(product(g) == qp({1, -5, 6}));
  // multiplicities: x^3(x^2+1)^2
  auto h = factor_over_q(qp({0, 0, 0, 1}) * qp({1, 0, 1}) * qp({1, 0, 1}));
  REQUIRE(h.factors.size() == 2);
  for (const auto& [q, m] : h.factors) CHECK(m == (q.degree() == 1 ? 3 : 2));
}

TEST_CASE("cyclotomic polynomials match hand values") {
  CHECK(cyclotomic(1) == qp({-1, 1}));
  CHECK(cyclotomic(2) == qp({1, 1}));
  CHECK(cyclotomic(4) == qp({1, 0, 1}));
  CHECK(cyclotomic(5) == qp({1, 1, 1, 1, 1}));
  CHECK(cyclotomic(6) == qp({1, -1, 1}));
  CHECK(cyclotomic(12) == qp({1, 0, -1, 0, 1}));
  // x^n - 1 = prod over divisors
  Poly<Rat> prod = cyclotomic(1) * cyclotomic(2) * cyclotomic(3) * cyclotomic(4) * cyclotomic(6) *
                   cyclotomic(12);
  Poly<Rat> x12({Rat(-1), Rat(0), Rat(0), Rat(0), Rat(0), Rat(0), Rat(0), Rat(0), Rat(0), Rat(0),
                 Rat(0), Rat(0), Rat(1)});
  CHECK(prod == x12);
}

TEST_CASE("factorization over Q(i) splits x^2 + 1") {
  ExactScalar i = ExactScalar::gaussian(Rat(0), Rat(1));
  // promote the poly into Q(i) by touching a coefficient with i
  Poly<ExactScalar> pi({ExactScalar(1) + i - i, ExactScalar(0), ExactScalar(1)});
  auto f = factor_over_k(pi);
  REQUIRE(f.factors.size() == 2);
  for (const auto& [q, m] : f.factors) {
    CHECK(m == 1);
    CHECK(q.degree() == 1);
    // root is i or -i
    ExactScalar root = ExactScalar(0) - q.coeff(0);
    CHECK((root == i || root == ExactScalar(0) - i));
  }
  CHECK(!irreducible_over_k(pi));
  // x^2 - 2 stays irreducible over Q(i)
  Poly<ExactScalar> q({ExactScalar(-2) + i - i, ExactScalar(0), ExactScalar(1)});
  CHECK(irreducible_over_k(q));
}

TEST_CASE("factorization over Q(sqrt 2)") {
  Poly<Rat> mp({Rat(-2), Rat(0), Rat(1)});
  ComplexBall hint = ComplexBall::from_rat(Rat(1414, 1000), Rat(0), 64);
  hint.set_rad(Rat(1, 100));
  FieldPtr F = FieldSpec::simple_extension(mp, hint);
  ExactScalar r(F, {Rat(0), Rat(1)});
  // x^2 - 2 = (x - r)(x + r) over Q(r)
  Poly<ExactScalar> p({ExactScalar(-2) + r - r, ExactScalar(0), ExactScalar(1)});
  auto f = factor_over_k(p);
  REQUIRE(f.factors.size() == 2);
  Poly<ExactScalar> prod = Poly<ExactScalar>::constant(f.unit);
  for (const auto& [q, m] : f.factors) {
    CHECK(m == 1);
    prod = prod * q;
  }
  CHECK(prod == p);
  // x^2 + 1 stays irreducible over the real field Q(r)
  Poly<ExactScalar> q({ExactScalar(1) + r - r, ExactScalar(0), ExactScalar(1)});
  CHECK(irreducible_over_k(q));
}

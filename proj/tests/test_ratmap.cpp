#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "covalg/bivar.hpp"
#include "covalg/ratmap.hpp"

using namespace covalg;

namespace {

Poly<ExactScalar> zp(std::vector<long> c) {
  std::vector<ExactScalar> v(c.begin(), c.end());
  return Poly<ExactScalar>(std::move(v));
}

RationalMap pmap(std::vector<long> c) { return RationalMap::from_poly(zp(std::move(c))); }

}  // namespace

TEST_CASE("construction canonicalizes") {
  // (z^2-1)(z+1) / (z+1) reduces to z^2 - 1
  RationalMap P(zp({-1, 0, 1}) * zp({1, 1}), zp({1, 1}));
  CHECK(P == pmap({-1, 0, 1}));
  CHECK(P.is_polynomial());
  // denominator is made monic: 2z^2 / (2z+2) = z^2 / (z+1)
  RationalMap Q(zp({0, 0, 2}), zp({2, 2}));
  CHECK(Q.den() == zp({1, 1}));
  CHECK(Q.num() == zp({0, 0, 1}));
  CHECK(Q.degree() == 2);
  CHECK_THROWS_AS(RationalMap(zp({1}), zp({1})), InputError);   // constant
  CHECK_THROWS_AS(RationalMap(zp({1, 1}), Poly<ExactScalar>{}), InputError);  // zero den
}

TEST_CASE("composition") {
  RationalMap sq = pmap({0, 0, 1});
  RationalMap zp1 = pmap({1, 1});
  CHECK(sq.compose(zp1) == pmap({1, 2, 1}));  // (z+1)^2

  // (z^2+1)/z composed with z^2 gives (z^4+1)/z^2; cross-check by evaluation
  RationalMap f(zp({1, 0, 1}), zp({0, 1}));
  RationalMap g = f.compose(sq);
  CHECK(g == RationalMap(zp({1, 0, 0, 0, 1}), zp({0, 0, 1})));
  for (long x : {1L, 2L, 3L, -1L, 5L}) {
    SpherePoint p(x);
    CHECK(g.eval(p) == f.eval(sq.eval(p)));
  }

  // degree multiplicativity
  RationalMap cube = pmap({0, -3, 0, 1});
  CHECK(f.compose(cube).degree() == f.degree() * cube.degree());
  CHECK(cube.compose(f).degree() == f.degree() * cube.degree());
}

TEST_CASE("evaluation handles infinity and poles") {
  RationalMap inv = RationalMap::power(-1);
  CHECK(inv.eval(SpherePoint(0)) == SpherePoint::infinity());
  CHECK(inv.eval(SpherePoint::infinity()) == SpherePoint(0));
  RationalMap mob(zp({1, 1}), zp({-1, 1}));  // (z+1)/(z-1)
  CHECK(mob.eval(SpherePoint(1)) == SpherePoint::infinity());
  CHECK(mob.eval(SpherePoint::infinity()) == SpherePoint(1));
  CHECK(pmap({0, 0, 1}).eval(SpherePoint::infinity()) == SpherePoint::infinity());
  CHECK(RationalMap::power(-2) == RationalMap(zp({1}), zp({0, 0, 1})));
}

TEST_CASE("moebius transforms") {
  // canonical scaling: (2z+2)/2 is stored as z+1
  MoebiusTransform m(ExactScalar(2), ExactScalar(2), ExactScalar(0), ExactScalar(2));
  CHECK(m == MoebiusTransform::affine(ExactScalar(1), ExactScalar(1)));
  CHECK(m.str() == "z + 1");
  CHECK_THROWS_AS(MoebiusTransform(ExactScalar(1), ExactScalar(2), ExactScalar(2), ExactScalar(4)),
                  InputError);  // determinant zero

  MoebiusTransform neg = MoebiusTransform::affine(ExactScalar(-1), ExactScalar(0));
  MoebiusTransform t = MoebiusTransform::affine(ExactScalar(1), ExactScalar(-2));
  // composition order: (this after inner)
  CHECK(t.compose(neg).apply(SpherePoint(3)) == SpherePoint(-5));  // -z - 2 at 3
  CHECK(neg.compose(neg).is_identity());
  MoebiusTransform r = t.compose(neg);
  CHECK(r.compose(r.inverse()).is_identity());
  CHECK(r.inverse().compose(r).is_identity());

  MoebiusTransform inv = MoebiusTransform::inversion();
  CHECK(inv.apply(SpherePoint(0)) == SpherePoint::infinity());
  CHECK(inv.apply(SpherePoint::infinity()) == SpherePoint(0));
  CHECK(t.apply(SpherePoint::infinity()) == SpherePoint::infinity());
  CHECK(inv.as_map().degree() == 1);
}

TEST_CASE("critical structure of z^2") {
  auto port = critical_structure(pmap({0, 0, 1}));
  CHECK(port.degree == 2);
  REQUIRE(port.classes.size() == 2);
  // canonical order puts the finite class first
  CHECK(!port.classes[0].at_infinity());
  CHECK(port.classes[0].value_min_poly->degree() == 1);
  CHECK(port.classes[0].profile == std::vector<std::pair<int, long>>{{2, 1}});
  CHECK(port.classes[1].at_infinity());
  CHECK(port.classes[1].profile == std::vector<std::pair<int, long>>{{2, 1}});
  CHECK(port.total_branch_points() == 2);
}

TEST_CASE("critical structure of z^3 - 3z") {
  // oracle: z^3 - 3z - 2 = (z+1)^2 (z-2) and z^3 - 3z + 2 = (z-1)^2 (z+2)
  CHECK(zp({1, 1}) * zp({1, 1}) * zp({-2, 1}) == zp({-2, -3, 0, 1}));
  CHECK(zp({-1, 1}) * zp({-1, 1}) * zp({2, 1}) == zp({2, -3, 0, 1}));
  auto port = critical_structure(pmap({0, -3, 0, 1}));
  REQUIRE(port.classes.size() == 3);
  std::vector<std::pair<int, long>> simple = {{2, 1}, {1, 1}};
  int finite = 0;
  for (const auto& cc : port.classes) {
    if (cc.at_infinity()) {
      CHECK(cc.profile == std::vector<std::pair<int, long>>{{3, 1}});
    } else {
      ++finite;
      REQUIRE(cc.value_min_poly->degree() == 1);
      ExactScalar v = ExactScalar(0) - cc.value_min_poly->coeff(0);
      CHECK((v == ExactScalar(2) || v == ExactScalar(-2)));
      CHECK(cc.profile == simple);
      CHECK(!cc.uniform());
    }
  }
  CHECK(finite == 2);
}

TEST_CASE("critical structure of z^4 - 4z groups conjugate values") {
  // oracle from the wronskian: 4z^3 - 4 = 4(z-1)(z^2+z+1); P(1) = -3, and for
  // w with w^2+w+1 = 0 (so w^3 = 1), P(w) = w - 4w = -3w whose min poly is
  // y^2 - 3y + 9. Check that substitution exactly:
  // (y^2 - 3y + 9) at y = -3w reads 9w^2 + 9w + 9 = 9(w^2+w+1) = 0.
  // Above -3: z^4 - 4z + 3 = (z-1)^2 (z^2 + 2z + 3).
  CHECK(zp({-1, 1}) * zp({-1, 1}) * zp({3, 2, 1}) == zp({3, -4, 0, 0, 1}));
  auto port = critical_structure(pmap({0, -4, 0, 0, 1}));
  REQUIRE(port.classes.size() == 3);
  std::vector<std::pair<int, long>> mixed = {{2, 1}, {1, 2}};
  bool saw_rational = false, saw_quadratic = false;
  for (const auto& cc : port.classes) {
    if (cc.at_infinity()) {
      CHECK(cc.profile == std::vector<std::pair<int, long>>{{4, 1}});
    } else if (cc.value_min_poly->degree() == 1) {
      saw_rational = true;
      CHECK(ExactScalar(0) - cc.value_min_poly->coeff(0) == ExactScalar(-3));
      CHECK(cc.profile == mixed);
    } else {
      saw_quadratic = true;
      CHECK(*cc.value_min_poly == zp({9, -3, 1}));
      CHECK(cc.profile == mixed);
    }
  }
  CHECK(saw_rational);
  CHECK(saw_quadratic);
  // Riemann-Hurwitz: sum of (e-1) over all critical points = 2 deg - 2,
  // counting each class once per conjugate value
  long rh = 0;
  for (const auto& cc : port.classes) {
    long size = cc.at_infinity() ? 1 : cc.value_min_poly->degree();
    for (const auto& [e, n] : cc.profile) rh += size * n * (e - 1);
  }
  CHECK(rh == 2 * 4 - 2);
}

TEST_CASE("fibers with multiplicities") {
  Fiber f = fiber(pmap({0, 0, 1}), SpherePoint(4));
  REQUIRE(f.classes.size() == 2);
  CHECK(f.point_count() == 2);
  for (const auto& c : f.classes) {
    CHECK(c.exact());
    CHECK(c.multiplicity == 1);
    CHECK((c.exact_point() == ExactScalar(2) || c.exact_point() == ExactScalar(-2)));
  }

  Fiber g = fiber(pmap({1, 2, 1}), SpherePoint(4));  // (z+1)^2 over 4: {1, -3}
  std::vector<ExactScalar> pts;
  for (const auto& c : g.classes) pts.push_back(c.exact_point());
  CHECK(ExactScalar::cmp(pts[0], pts[1]) != 0);
  for (const auto& p : pts) CHECK((p == ExactScalar(1) || p == ExactScalar(-3)));

  // ramified fiber: z^3 - 3z over 2 is (z+1)^2 (z-2)
  Fiber h = fiber(pmap({0, -3, 0, 1}), SpherePoint(2));
  REQUIRE(h.classes.size() == 2);
  long mult_sum = 0;
  for (const auto& c : h.classes) {
    mult_sum += c.multiplicity * c.min_poly.degree();
    if (c.multiplicity == 2) CHECK(c.exact_point() == ExactScalar(-1));
    if (c.multiplicity == 1) CHECK(c.exact_point() == ExactScalar(2));
  }
  CHECK(mult_sum == 3);

  // polynomial fiber over infinity is infinity with full multiplicity
  Fiber inf = fiber(pmap({0, -3, 0, 1}), SpherePoint::infinity());
  CHECK(inf.classes.empty());
  CHECK(inf.infinity_multiplicity == 3);
}

TEST_CASE("fiber points give exact values when expressible") {
  // z^2 over 2: irrational pair, balls only, certified disjoint
  auto vs = fiber_points(pmap({0, 0, 1}), SpherePoint(2));
  REQUIRE(vs.size() == 2);
  CHECK(!vs[0].exact);
  CHECK(!vs[1].exact);
  REQUIRE(vs[0].ball);
  REQUIRE(vs[1].ball);
  CHECK(vs[0].ball->disjoint(*vs[1].ball));

  // z^2 over -1: Gaussian rationals come out exactly even over plain Q
  auto gi = fiber_points(pmap({0, 0, 1}), SpherePoint(-1));
  REQUIRE(gi.size() == 2);
  for (const auto& v : gi) {
    REQUIRE(v.exact);
    ExactScalar x = v.exact->value();
    CHECK((x == ExactScalar::gaussian(Rat(0), Rat(1)) ||
           x == ExactScalar::gaussian(Rat(0), Rat(-1))));
  }

  // multiplicity is carried: (z+1)^2 over 0
  auto rm = fiber_points(pmap({1, 2, 1}), SpherePoint(0));
  REQUIRE(rm.size() == 1);
  CHECK(rm[0].multiplicity == 2);
  REQUIRE(rm[0].exact);
  CHECK(*rm[0].exact == SpherePoint(-1));
}

TEST_CASE("common right factor degree") {
  CHECK(common_right_factor_degree(pmap({0, 0, 1}), pmap({1, 2, 1})) == 1);
  CHECK(common_right_factor_degree(pmap({0, 0, 0, 0, 1}), RationalMap::power(6)) == 2);
  CHECK(common_right_factor_degree(pmap({0, 0, 1}), pmap({0, 0, 1})) == 2);
  // symmetry
  RationalMap a = pmap({0, -3, 0, 1});
  RationalMap b = pmap({0, 0, 1});
  CHECK(common_right_factor_degree(a, b) == common_right_factor_degree(b, a));
  // crfd(P, P) = deg P
  CHECK(common_right_factor_degree(a, a) == 3);
  // z^4 - 2z^2 and z^2 share the right factor z^2
  CHECK(common_right_factor_degree(pmap({0, 0, -2, 0, 1}), b) == 2);
}

TEST_CASE("left factor extraction") {
  auto f1 = left_factor(RationalMap::power(6), RationalMap::power(2));
  REQUIRE(f1);
  CHECK(*f1 == RationalMap::power(3));

  auto f2 = left_factor(pmap({0, 0, -2, 0, 1}), pmap({0, 0, 1}));
  REQUIRE(f2);
  CHECK(*f2 == pmap({0, -2, 1}));  // z^4 - 2z^2 = F(z^2) with F = z^2 - 2z

  // round trip on a rational (non-polynomial) example
  RationalMap F(zp({1, 0, 1}), zp({0, 1}));  // (z^2+1)/z
  RationalMap P = pmap({1, 2, 1});
  auto f3 = left_factor(F.compose(P), P);
  REQUIRE(f3);
  CHECK(*f3 == F);

  // degree divides but no factor exists
  CHECK(!left_factor(pmap({0, 0, 0, 1, 1}), pmap({0, 0, 1})));
  // degree non-divisibility is a precondition violation
  CHECK_THROWS_AS(left_factor(pmap({0, 0, 0, 1}), pmap({0, 0, 1})), InputError);
}

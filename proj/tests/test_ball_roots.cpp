#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "covalg/reconstruct.hpp"
#include "covalg/roots.hpp"

using namespace covalg;

namespace {

Poly<Rat> qp(std::vector<long> c) {
  std::vector<Rat> v(c.begin(), c.end());
  return Poly<Rat>(std::move(v));
}

}  // namespace

TEST_CASE("ball arithmetic encloses exact arithmetic") {
  ComplexBall a = ComplexBall::from_rat(Rat(1, 3), Rat(0), 64);
  ComplexBall b = ComplexBall::from_rat(Rat(0), Rat(1, 7), 64);
  // 1/3 and i/7 are not dyadic: the balls are inexact but tiny
  CHECK(!a.is_exact());
  CHECK(ball_rad_below_2exp(a, -60));
  ComplexBall p = ball_mul(a, b);  // i/21
  ComplexBall exact = ComplexBall::from_rat(Rat(0), Rat(1, 21), 256);
  CHECK(!p.disjoint(exact));
  ComplexBall s = ball_add(a, ball_neg(a));
  CHECK(s.contains_zero());
  CHECK_THROWS_AS(ball_recip(s), BallContainsZero);
  // dyadic values are exact
  CHECK(ComplexBall::from_rat(Rat(3, 8), Rat(-5, 4), 64).is_exact());
}

TEST_CASE("containment and disjointness are certified") {
  ComplexBall big = ComplexBall::from_rat(Rat(0), Rat(0), 64);
  big.set_rad(Rat(1));
  ComplexBall small = ComplexBall::from_rat(Rat(1, 2), Rat(0), 64);
  small.set_rad(Rat(1, 4));
  CHECK(big.contains_ball(small));
  CHECK(!small.contains_ball(big));
  CHECK(!big.disjoint(small));
  ComplexBall far = ComplexBall::from_rat(Rat(3), Rat(0), 64);
  far.set_rad(Rat(1, 4));
  CHECK(big.disjoint(far));
}

TEST_CASE("root isolation on x^2 - 2") {
  auto iso = isolate_roots(rat_poly_provider(qp({-2, 0, 1})), 2, -80, 64, 1024);
  REQUIRE(iso.roots.size() == 2);
  CHECK(iso.roots[0].disjoint(iso.roots[1]));
  for (const auto& r : iso.roots) {
    CHECK(ball_rad_below_2exp(r, -80));
    // r^2 - 2 must contain 0
    ComplexBall v = eval_ball_poly({ComplexBall::from_rat(Rat(-2), Rat(0), 128),
                                    ComplexBall::from_rat(Rat(0), Rat(0), 128),
                                    ComplexBall::from_rat(Rat(1), Rat(0), 128)},
                                   r);
    CHECK(v.contains_zero());
  }
  // deterministic order: negative root first (sorted by midpoint)
  CHECK(mpfr_sgn(iso.roots[0].mid_re()) < 0);
  CHECK(mpfr_sgn(iso.roots[1].mid_re()) > 0);
}

TEST_CASE("root isolation finds complex conjugate pairs") {
  // x^3 - 1: roots 1, (-1 +- i sqrt3)/2
  auto iso = isolate_roots(rat_poly_provider(qp({-1, 0, 0, 1})), 3, -60, 64, 1024);
  REQUIRE(iso.roots.size() == 3);
  int real = 0, complex_roots = 0;
  for (const auto& r : iso.roots) {
    Mpfr im_abs;
    mpfr_abs(im_abs.get(), r.mid_im(), MPFR_RNDN);
    if (mpfr_cmp_d(im_abs.get(), 0.5) > 0)
      ++complex_roots;
    else
      ++real;
  }
  CHECK(real == 1);
  CHECK(complex_roots == 2);
}

TEST_CASE("rational roots reconstruct exactly") {
  // (x-1)(x-2)(x-3)
  Poly<Rat> p = qp({-1, 1}) * qp({-2, 1}) * qp({-3, 1});
  auto iso = isolate_roots(rat_poly_provider(p), 3, -80, 64, 1024);
  REQUIRE(iso.roots.size() == 3);
  std::vector<Rat> vals;
  for (const auto& r : iso.roots) {
    auto q = rational_from_ball(r);
    REQUIRE(q.has_value());
    vals.push_back(*q);
  }
  CHECK(vals == std::vector<Rat>{Rat(1), Rat(2), Rat(3)});
}

TEST_CASE("refinement shrinks a certified ball") {
  auto iso = isolate_roots(rat_poly_provider(qp({-2, 0, 1})), 2, -40, 64, 1024);
  ComplexBall fine = refine_root(rat_poly_provider(qp({-2, 0, 1})), 2, iso.roots[1], -200, 256, 4096);
  CHECK(ball_rad_below_2exp(fine, -200));
  CHECK(iso.roots[1].contains_ball(fine));
}

TEST_CASE("precision cap is an explicit failure") {
  // roots 2^-20 apart cannot be isolated to 2^-100 with 32-bit midpoints
  Rat eps(1, 1 << 20);
  Poly<Rat> close({Rat(1) * (Rat(1) + eps), -(Rat(2) + eps), Rat(1)});
  CHECK_THROWS_AS(isolate_roots(rat_poly_provider(close), 2, -100, 32, 32), UndeterminedError);
}

TEST_CASE("rational reconstruction from balls") {
  ComplexBall b = ComplexBall::from_rat(Rat(22, 7), Rat(0), 96);
  auto q = rational_from_ball(b);
  REQUIRE(q.has_value());
  CHECK(*q == Rat(22, 7));
  // imaginary balls have no rational explanation
  ComplexBall im = ComplexBall::from_rat(Rat(0), Rat(1), 96);
  CHECK(!rational_from_ball(im).has_value());
}

TEST_CASE("algebraic reconstruction proposes the right candidates") {
  Poly<Rat> mp = qp({-2, 0, 1});
  ComplexBall hint = ComplexBall::from_rat(Rat(1414, 1000), Rat(0), 64);
  hint.set_rad(Rat(1, 100));
  FieldPtr F = FieldSpec::simple_extension(mp, hint);
  // ball of 1 + sqrt2
  ExactScalar x = ExactScalar(1) + ExactScalar(F, {Rat(0), Rat(1)});
  ComplexBall b = x.embed(192);
  auto s = scalar_from_ball(F, b, 192);
  REQUIRE(s.has_value());
  CHECK(*s == x);
  // min-poly guess for sqrt2 itself
  auto g = min_poly_from_ball(ExactScalar(F, {Rat(0), Rat(1)}).embed(192), 4);
  REQUIRE(g.has_value());
  CHECK(*g == mp);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "covalg/field.hpp"

using namespace covalg;

TEST_CASE("rational parsing and printing") {
  CHECK(parse_rat("3/4") == Rat(3, 4));
  CHECK(parse_rat("-7") == Rat(-7));
  CHECK(parse_rat("+1/2") == Rat(1, 2));
  CHECK(parse_rat(" 6 / 4 ") == Rat(3, 2));
  CHECK(parse_rat("0.25") == Rat(1, 4));
  CHECK(parse_rat("-2.5e1") == Rat(-25));
  CHECK(rat_str(Rat(-3, 7)) == "-3/7");
  CHECK(rat_str(Rat(5)) == "5");
  CHECK(parse_rat(rat_str(Rat(22, 7))) == Rat(22, 7));
  CHECK_THROWS_AS(parse_rat("1/0"), InputError);
  CHECK_THROWS_AS(parse_rat("x"), InputError);
  CHECK_THROWS_AS(parse_rat("2/"), InputError);
}

TEST_CASE("plain rational scalars") {
  ExactScalar a(Rat(2, 3)), b(Rat(1, 6));
  CHECK((a + b).rational_value() == Rat(5, 6));
  CHECK((a * b).rational_value() == Rat(1, 9));
  CHECK((a / b).rational_value() == Rat(4));
  CHECK((a - a).is_zero());
  CHECK(a.is_rational());
  CHECK(!a.spec());
  CHECK(ExactScalar(Rat(7)).str() == "7");
}

TEST_CASE("gaussian arithmetic and promotion on contact") {
  ExactScalar i = ExactScalar::gaussian(Rat(0), Rat(1));
  CHECK(i * i == ExactScalar(-1));
  // (1+i)/(1-i) = i
  ExactScalar u = ExactScalar::gaussian(Rat(1), Rat(1));
  ExactScalar v = ExactScalar::gaussian(Rat(1), Rat(-1));
  CHECK(u / v == i);
  // plain rational promotes into Q(i) when it meets a gaussian value
  ExactScalar s = ExactScalar(Rat(1, 2)) + i;
  REQUIRE(s.spec());
  CHECK(s.spec()->kind() == FieldKind::GaussianRationals);
  CHECK(s.coords()[0] == Rat(1, 2));
  CHECK(s.coords()[1] == Rat(1));
  // norm is rational again
  ExactScalar n = s * ExactScalar::gaussian(Rat(1, 2), Rat(-1));
  CHECK(n.is_rational());
  CHECK(n.rational_value() == Rat(5, 4));
}

static FieldPtr sqrt2_field() {
  // x^2 - 2, root near +1.414
  Poly<Rat> mp({Rat(-2), Rat(0), Rat(1)});
  ComplexBall hint = ComplexBall::from_rat(Rat(1414, 1000), Rat(0), 64);
  hint.set_rad(Rat(1, 100));
  return FieldSpec::simple_extension(mp, hint);
}

TEST_CASE("simple extension Q(sqrt 2)") {
  FieldPtr F = sqrt2_field();
  CHECK(F->degree() == 2);
  ExactScalar r(F, {Rat(0), Rat(1)});
  CHECK(r * r == ExactScalar(2));
  ExactScalar x = ExactScalar(1) + r;  // 1 + sqrt2
  CHECK(x * x == ExactScalar(3) + ExactScalar(2) * r);
  // 1/(1+sqrt2) = sqrt2 - 1
  CHECK(x.inv() == r - ExactScalar(1));
  CHECK(x * x.inv() == ExactScalar(1));
  CHECK(!x.is_rational());
  CHECK((x - r).is_rational());
  // as_poly returns the coordinate polynomial in the generator
  CHECK(x.as_poly() == Poly<Rat>({Rat(1), Rat(1)}));
}

TEST_CASE("embedding radius contract") {
  FieldPtr F = sqrt2_field();
  ExactScalar r(F, {Rat(0), Rat(1)});
  ComplexBall b = r.embed(128);
  CHECK(ball_rad_below_2exp(b, -126));
  // the embedded value squares to 2 within ball bounds
  ComplexBall sq = ball_mul(b, b);
  ComplexBall two = ComplexBall::from_rat(Rat(2), Rat(0), 128);
  CHECK(!sq.disjoint(two));
  // exact rationals embed exactly
  CHECK(ExactScalar(Rat(3, 8)).embed(64).is_exact());
}

TEST_CASE("total order is antisymmetric and transitive") {
  FieldPtr F = sqrt2_field();
  std::vector<ExactScalar> xs = {ExactScalar(F, {Rat(0), Rat(1)}), ExactScalar(-1), ExactScalar(0),
                                 ExactScalar(1), ExactScalar(F, {Rat(1), Rat(1)}),
                                 ExactScalar(F, {Rat(0), Rat(-1)})};
  for (const auto& a : xs)
    for (const auto& b : xs) {
      CHECK(ExactScalar::cmp(a, b) == -ExactScalar::cmp(b, a));
      CHECK((ExactScalar::cmp(a, b) == 0) == (a == b));
      for (const auto& c : xs)
        if (ExactScalar::cmp(a, b) < 0 && ExactScalar::cmp(b, c) < 0)
          CHECK(ExactScalar::cmp(a, c) < 0);
    }
}

TEST_CASE("field identity is structural") {
  FieldPtr F = sqrt2_field(), G = sqrt2_field();
  CHECK(F->same_field(*G));  // same min_poly, same chosen root
  ExactScalar a(F, {Rat(0), Rat(1)}), b(G, {Rat(0), Rat(1)});
  CHECK(a == b);
  // the other root of x^2 - 2 gives a different field
  Poly<Rat> mp({Rat(-2), Rat(0), Rat(1)});
  ComplexBall hint = ComplexBall::from_rat(Rat(-1414, 1000), Rat(0), 64);
  hint.set_rad(Rat(1, 100));
  FieldPtr H = FieldSpec::simple_extension(mp, hint);
  CHECK(!F->same_field(*H));
  ExactScalar c(H, {Rat(0), Rat(1)});
  CHECK_THROWS_AS((void)(a + c), InputError);
}

TEST_CASE("construction rejects bad extensions") {
  // reducible min_poly
  Poly<Rat> red({Rat(-1), Rat(0), Rat(1)});  // x^2 - 1
  ComplexBall hint = ComplexBall::from_rat(Rat(1), Rat(0), 64);
  hint.set_rad(Rat(1, 100));
  CHECK_THROWS_AS(FieldSpec::simple_extension(red, hint), InputError);
  // hint ball touching no root
  Poly<Rat> mp({Rat(-2), Rat(0), Rat(1)});
  ComplexBall off = ComplexBall::from_rat(Rat(5), Rat(0), 64);
  off.set_rad(Rat(1, 100));
  CHECK_THROWS_AS(FieldSpec::simple_extension(mp, off), InputError);
}

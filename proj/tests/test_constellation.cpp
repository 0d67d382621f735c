#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "covalg/constellation.hpp"

using namespace covalg;

namespace {

Constellation make(int d, std::vector<BranchLabel> labels, std::vector<std::string> cycles) {
  Constellation c;
  c.degree = d;
  c.branch_points = std::move(labels);
  for (const auto& s : cycles) c.perms.push_back(Permutation::parse_cycles(d, s));
  c.validate();
  return c;
}

// z^n as branch data: full cycles over 0 and infinity.
Constellation power_constellation(int n) {
  std::vector<int> cyc;
  for (int i = 1; i <= n; ++i) cyc.push_back(i);
  Constellation c;
  c.degree = n;
  c.branch_points = {BranchLabel::at(SpherePoint(0)), BranchLabel::at(SpherePoint::infinity())};
  c.perms = {Permutation::from_cycles(n, {cyc}),
             Permutation::from_cycles(n, {cyc}).inverse()};
  c.validate();
  return c;
}

}  // namespace

TEST_CASE("permutation basics") {
  Permutation p = Permutation::parse_cycles(4, "(1 2 3)");
  CHECK(p.apply(1) == 2);
  CHECK(p.apply(3) == 1);
  CHECK(p.apply(4) == 4);
  CHECK(p.cycle_type() == std::vector<int>{3, 1});
  CHECK(p.cycle_count() == 2);
  CHECK(p.order() == 3);
  CHECK(p.str() == "(1 2 3)(4)");
  CHECK((p * p.inverse()).is_identity());

  // left-to-right action: a acts first
  Permutation a = Permutation::parse_cycles(3, "(1 2)");
  Permutation b = Permutation::parse_cycles(3, "(2 3)");
  CHECK((a * b).apply(1) == 3);
  CHECK((a * b) == Permutation::parse_cycles(3, "(1 3 2)"));

  CHECK(Permutation::parse_cycles(5, "(1 4)(2 5)") ==
        Permutation({4, 5, 3, 1, 2}));
  CHECK_THROWS_AS(Permutation({1, 1, 3}), InputError);
  CHECK_THROWS_AS(Permutation::parse_cycles(3, "(1 4)"), InputError);
  CHECK_THROWS_AS(Permutation::parse_cycles(3, "(1 2"), InputError);
}

TEST_CASE("constellation validation") {
  // product of the perms must be the identity
  Constellation bad;
  bad.degree = 3;
  bad.branch_points = {BranchLabel::at(SpherePoint(0)), BranchLabel::at(SpherePoint(1))};
  bad.perms = {Permutation::parse_cycles(3, "(1 2)"), Permutation::parse_cycles(3, "(1 3)")};
  CHECK_THROWS_AS(bad.validate(), InputError);

  // intransitive data is rejected
  Constellation split;
  split.degree = 4;
  split.branch_points = {BranchLabel::at(SpherePoint(0)), BranchLabel::at(SpherePoint(1))};
  split.perms = {Permutation::parse_cycles(4, "(1 2)(3 4)"),
                 Permutation::parse_cycles(4, "(1 2)(3 4)")};
  CHECK_THROWS_AS(split.validate(), InputError);

  // duplicate branch points are rejected
  Constellation dup;
  dup.degree = 2;
  dup.branch_points = {BranchLabel::at(SpherePoint(0)), BranchLabel::at(SpherePoint(0))};
  dup.perms = {Permutation::parse_cycles(2, "(1 2)"), Permutation::parse_cycles(2, "(1 2)")};
  CHECK_THROWS_AS(dup.validate(), InputError);
}

TEST_CASE("genus from branch data") {
  // sphere: z^n data has genus 0 for all n
  for (int n = 2; n <= 6; ++n) CHECK(genus(power_constellation(n)) == 0);

  // torus: elliptic involution, degree 2 with 4 simple branch points
  Constellation torus = make(
      2,
      {BranchLabel::at(SpherePoint(0)), BranchLabel::at(SpherePoint(1)),
       BranchLabel::at(SpherePoint(-1)), BranchLabel::at(SpherePoint::infinity())},
      {"(1 2)", "(1 2)", "(1 2)", "(1 2)"});
  CHECK(genus(torus) == 1);

  // genus 2: degree 2 with 6 branch points
  Constellation g2 = make(2,
                          {BranchLabel::at(SpherePoint(0)), BranchLabel::at(SpherePoint(1)),
                           BranchLabel::at(SpherePoint(2)), BranchLabel::at(SpherePoint(3)),
                           BranchLabel::at(SpherePoint(4)), BranchLabel::at(SpherePoint::infinity())},
                          {"(1 2)", "(1 2)", "(1 2)", "(1 2)", "(1 2)", "(1 2)"});
  CHECK(genus(g2) == 2);

  // odd total branching has no covering surface
  Constellation odd;
  odd.degree = 2;
  odd.branch_points = {BranchLabel::at(SpherePoint(0)), BranchLabel::at(SpherePoint(1)),
                       BranchLabel::at(SpherePoint(2))};
  odd.perms = {Permutation::parse_cycles(2, "(1 2)"), Permutation::parse_cycles(2, "(1 2)"),
               Permutation::parse_cycles(2, "(1 2)")};
  CHECK_THROWS_AS(genus(odd), InputError);
}

TEST_CASE("align pads with identities over the union of branch points") {
  Constellation a = power_constellation(2);
  Constellation b = make(2, {BranchLabel::at(SpherePoint(1)), BranchLabel::at(SpherePoint::infinity())},
                         {"(1 2)", "(1 2)"});
  auto al = align({a, b});
  REQUIRE(al.size() == 2);
  CHECK(al[0].branch_points == al[1].branch_points);
  CHECK(al[0].branch_points.size() == 3);  // 0, 1, infinity
  for (const auto& c : al) c.validate();
  // the padded slots are identities
  CHECK(al[0].perms[1].is_identity());  // z^2 is regular over 1
  CHECK(al[1].perms[0].is_identity());  // the other map is regular over 0
}

TEST_CASE("fiber product of z^2 and (z+1)^2 splits into two lines") {
  // (z+1)^2 has critical point -1 but branch VALUES {0, inf}, the same locus
  // as z^2; the curve x^2 = (y+1)^2 is the pair of lines x = +-(y+1)
  Constellation a = power_constellation(2);
  Constellation b = make(2, {BranchLabel::at(SpherePoint(0)), BranchLabel::at(SpherePoint::infinity())},
                         {"(1 2)", "(1 2)"});
  auto comps = fiber_product(align({a, b}));
  REQUIRE(comps.size() == 2);
  long total = 0;
  for (const auto& comp : comps) {
    total += static_cast<long>(comp.orbit.size());
    CHECK(comp.genus == 0);
    CHECK(comp.degrees_to_factors == std::vector<long>{1, 1});
    comp.cover.validate();
  }
  CHECK(total == 2 * 2);
}

TEST_CASE("fiber product with disjoint finite branch loci is connected") {
  // z^2 branches over {0, inf}; z^2 + 2z over {-1, inf}: the product curve
  // x^2 = y^2 + 2y is an irreducible conic
  Constellation a = power_constellation(2);
  Constellation b = make(2, {BranchLabel::at(SpherePoint(-1)), BranchLabel::at(SpherePoint::infinity())},
                         {"(1 2)", "(1 2)"});
  auto comps = fiber_product(align({a, b}));
  REQUIRE(comps.size() == 1);
  CHECK(comps[0].orbit.size() == 4);
  CHECK(comps[0].genus == 0);
  CHECK(comps[0].degrees_to_factors == std::vector<long>{2, 2});
}

TEST_CASE("fiber product of z^2 and z^3 is one rational component") {
  auto comps = fiber_product(align({power_constellation(2), power_constellation(3)}));
  REQUIRE(comps.size() == 1);
  CHECK(comps[0].orbit.size() == 6);
  CHECK(comps[0].genus == 0);
  CHECK(comps[0].degrees_to_factors == std::vector<long>{3, 2});
}

TEST_CASE("orbit sizes always partition the degree product") {
  std::vector<std::pair<Constellation, Constellation>> pairs = {
      {power_constellation(2), power_constellation(4)},
      {power_constellation(3), power_constellation(3)},
      {power_constellation(4), power_constellation(6)},
  };
  for (const auto& [x, y] : pairs) {
    auto al = align({x, y});
    long product = static_cast<long>(x.degree) * y.degree;
    long sum = 0;
    for (const auto& comp : fiber_product(al)) {
      sum += static_cast<long>(comp.orbit.size());
      for (size_t j = 0; j < comp.degrees_to_factors.size(); ++j)
        CHECK(comp.degrees_to_factors[j] * al[j].degree ==
              static_cast<long>(comp.orbit.size()));
      CHECK(comp.genus >= 0);
    }
    CHECK(sum == product);
  }
}

TEST_CASE("monodromy group orders") {
  CHECK(monodromy_group(power_constellation(5)).order == 5);
  // S3 from a 3-cycle and a transposition
  Constellation s3 = make(
      3, {BranchLabel::at(SpherePoint(0)), BranchLabel::at(SpherePoint(1)),
          BranchLabel::at(SpherePoint::infinity())},
      {"(1 2)", "(2 3)", "(1 2 3)"});
  CHECK(monodromy_group(s3).order == 6);
  // the cap reports a truncated closure instead of running away
  GroupCount capped = monodromy_group(s3, 4);
  CHECK(capped.capped);
  CHECK(capped.order >= 4);
}

TEST_CASE("normalization genus: cyclic covers are their own closure") {
  for (int n = 2; n <= 5; ++n) {
    Constellation c = power_constellation(n);
    CHECK(normalization_genus(c) == 0);
    CHECK(normalization_genus_tuple_oracle(c) == 0);
  }
}

TEST_CASE("normalization genus of the S3 cover matches the tuple oracle") {
  // z^3 - 3z: simple branch points over 2 and -2, 3-cycle over infinity
  Constellation c = make(
      3, {BranchLabel::at(SpherePoint(2)), BranchLabel::at(SpherePoint(-2)),
          BranchLabel::at(SpherePoint::infinity())},
      {"(1 2)", "(2 3)", "(1 2 3)"});
  CHECK(monodromy_group(c).order == 6);
  // regular S3 cover: chi = 2 + (1/2 - 1)*2 + (1/3 - 1) = 1/3; g = 1 - 6*(1/3)/2 = 0
  CHECK(normalization_genus(c) == 0);
  CHECK(normalization_genus_tuple_oracle(c) == 0);
}

TEST_CASE("normalization genus of z^4 - 4z") {
  // transpositions over the three conjugate values, 4-cycle over infinity
  Constellation c = make(
      4,
      {BranchLabel::at(SpherePoint(-3)), BranchLabel::named("root 1 of y^2 - 3*y + 9"),
       BranchLabel::named("root 2 of y^2 - 3*y + 9"), BranchLabel::at(SpherePoint::infinity())},
      {"(1 2)", "(2 3)", "(3 4)", "(1 2 3 4)"});
  CHECK(monodromy_group(c).order == 24);
  // chi = 2 + 3*(1/2 - 1) + (1/4 - 1) = -1/4; g = 1 - 24*(-1/4)/2 = 4
  CHECK(normalization_genus(c) == 4);
  CHECK(normalization_genus_tuple_oracle(c) == 4);
}

TEST_CASE("tuple oracle bounds are enforced") {
  Constellation c = power_constellation(6);
  CHECK_THROWS_AS(normalization_genus_tuple_oracle(c), InputError);
}

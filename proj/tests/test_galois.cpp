#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "covalg/galois.hpp"

using namespace covalg;

namespace {

Poly<ExactScalar> zp(std::vector<long> c) {
  std::vector<ExactScalar> v(c.begin(), c.end());
  return Poly<ExactScalar>(std::move(v));
}

RationalMap pmap(std::vector<long> c) { return RationalMap::from_poly(zp(std::move(c))); }

MoebiusTransform aff(long slope, long offset) {
  return MoebiusTransform::affine(ExactScalar(slope), ExactScalar(offset));
}

}  // namespace

TEST_CASE("group enumeration closes and caps") {
  // {-z} closes to {z, -z}
  TransformGroup g = enumerate_group({aff(-1, 0)});
  CHECK(g.order == 2);
  CHECK(g.contains(MoebiusTransform::identity()));
  CHECK(g.contains(aff(-1, 0)));
  // the two reflections -z and -z-2 generate an infinite dihedral group
  CHECK_THROWS_AS(enumerate_group({aff(-1, 0), aff(-1, -2)}, 100), UndeterminedError);
  // elements come sorted and duplicate-free
  TransformGroup v4 = enumerate_group({aff(-1, 0), MoebiusTransform::inversion()});
  CHECK(v4.order == 4);
  for (size_t i = 1; i < v4.elements->size(); ++i)
    CHECK(MoebiusTransform::cmp((*v4.elements)[i - 1], (*v4.elements)[i]) < 0);
}

TEST_CASE("deck group of the shifted square") {
  TransformGroup g = deck_group(pmap({1, 2, 1}));
  CHECK(g.order == 2);
  CHECK(g.contains(MoebiusTransform::identity()));
  CHECK(g.contains(aff(-1, -2)));  // z -> -z - 2
  for (const auto& m : *g.elements) CHECK(preserves_map(pmap({1, 2, 1}), m));
}

TEST_CASE("non-Galois maps are refused with a witness") {
  RationalMap cheb = pmap({0, -3, 0, 1});
  GaloisCertificate cert = is_galois(cheb);
  CHECK(!cert.galois);
  REQUIRE(cert.nonuniform_class);
  CHECK(!cert.nonuniform_class->uniform());
  CHECK_THROWS_AS(deck_group(cheb), InputError);
}

TEST_CASE("Galois over a too-small field yields the hint, not a wrong group") {
  RationalMap p5 = pmap({0, 0, 0, 0, 0, 1});  // z^5 over plain Q
  GaloisCertificate cert = is_galois(p5);
  CHECK(cert.galois);
  CHECK(!cert.deck);
  REQUIRE(cert.missing_field_hint);
  CHECK(*cert.missing_field_hint == cyclotomic(5));
  CHECK_THROWS_AS(deck_group(p5), DeckFieldError);
}

TEST_CASE("dihedral family of order 10") {
  StandardFamily fam = standard_family(StandardKind::Dihedral, 5);
  CHECK(fam.map.degree() == 10);
  CHECK(fam.group.order == 10);
  REQUIRE(fam.group.enumerated());
  for (const auto& m : *fam.group.elements) CHECK(preserves_map(fam.map, m));
  // deck_group recovers the same group over the family's field
  TransformGroup g = deck_group(fam.map);
  CHECK(g.order == 10);
  for (const auto& m : *g.elements) CHECK(fam.group.contains(m));
}

TEST_CASE("every standard family has deck order equal to degree") {
  std::vector<std::pair<StandardKind, int>> kinds = {{StandardKind::Power, 5},
                                                     {StandardKind::Dihedral, 4},
                                                     {StandardKind::Tetrahedral, 0},
                                                     {StandardKind::Octahedral, 0},
                                                     {StandardKind::Icosahedral, 0}};
  for (auto [kind, n] : kinds) {
    StandardFamily fam = standard_family(kind, n);
    CAPTURE(fam.name);
    CHECK(fam.group.order == fam.map.degree());
    GaloisCertificate cert = is_galois(fam.map);
    CHECK(cert.galois);
  }
  CHECK(standard_family(StandardKind::Tetrahedral).map.degree() == 12);
  CHECK(standard_family(StandardKind::Octahedral).map.degree() == 24);
  CHECK(standard_family(StandardKind::Icosahedral).map.degree() == 60);
}

TEST_CASE("quotient maps invert the deck correspondence") {
  // V4 = {z, -z, 1/z, -1/z}
  TransformGroup v4 = enumerate_group({aff(-1, 0), MoebiusTransform::inversion()});
  RationalMap q = quotient_map(v4);
  CHECK(q.degree() == 4);
  for (const auto& m : *v4.elements) CHECK(preserves_map(q, m));
  TransformGroup back = deck_group(q);
  CHECK(back.order == 4);
  for (const auto& m : *back.elements) CHECK(v4.contains(m));

  // cyclic order 2: quotient is a degree-2 map preserved by -z
  TransformGroup c2 = enumerate_group({aff(-1, 0)});
  RationalMap q2 = quotient_map(c2);
  CHECK(q2.degree() == 2);
  CHECK(preserves_map(q2, aff(-1, 0)));
}

TEST_CASE("cyclotomic fields carry the power-map deck groups") {
  FieldPtr F5 = cyclotomic_field(5);
  REQUIRE(F5);
  CHECK(F5->degree() == 4);
  CHECK(F5->min_poly() == cyclotomic(5));
  // z^5 declared over Q(zeta5) has a full cyclic deck group
  ExactScalar zeta(F5, {Rat(0), Rat(1)});
  Poly<ExactScalar> num({ExactScalar(0), ExactScalar(0), ExactScalar(0), ExactScalar(0),
                         ExactScalar(0), ExactScalar(1) + zeta - zeta});
  TransformGroup g = deck_group(RationalMap::from_poly(num));
  CHECK(g.order == 5);
  CHECK(g.contains(MoebiusTransform::affine(zeta, ExactScalar(0))));
  // n <= 2 needs no extension
  CHECK(!cyclotomic_field(2));
}

TEST_CASE("preserves_map is an exact identity, not a sample test") {
  RationalMap sq = pmap({0, 0, 1});
  CHECK(preserves_map(sq, aff(-1, 0)));
  CHECK(!preserves_map(sq, aff(-1, -2)));
  CHECK(!preserves_map(sq, MoebiusTransform::inversion()));
  RationalMap inv_symm(zp({1, 0, 1}), zp({0, 2}));  // (z^2+1)/2z
  CHECK(preserves_map(inv_symm, MoebiusTransform::inversion()));
  CHECK(!preserves_map(inv_symm, aff(-1, 0)));
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>

#include "covalg/orbits.hpp"

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

const std::vector<MoebiusTransform> kIntroGens = {aff(-1, 0), aff(-1, -2), aff(1, 1)};

long as_int(const SpherePoint& p) {
  Rat q = p.value().rational_value();
  REQUIRE(q.get_den() == 1);
  return q.get_num().get_si();
}

}  // namespace

TEST_CASE("orbit truncations of the intro generators are integer intervals") {
  // <-z, -z-2, z+1> acting on 0: level 1 is {1, -1, -2}; from level 2 on,
  // each new level w contributes exactly {w, -(w+1)}
  for (int depth : {2, 5, 9}) {
    OrbitSet S = orbit(SpherePoint(0), kIntroGens, depth);
    std::vector<long> got;
    for (const auto& p : S.points()) got.push_back(as_int(p.point));
    std::sort(got.begin(), got.end());
    std::vector<long> expect;
    for (long x = -(depth + 1); x <= depth; ++x) expect.push_back(x);
    CHECK(got == expect);
  }
  OrbitSet S = orbit(SpherePoint(0), kIntroGens, 8);
  CHECK(S.word_length(SpherePoint(0)) == 0);
  CHECK(S.word_length(SpherePoint(-2)) == 1);
  CHECK(S.word_length(SpherePoint(-1)) == 1);
  CHECK(S.word_length(SpherePoint(1)) == 1);
  CHECK(S.word_length(SpherePoint(5)) == 5);
  CHECK(S.word_length(SpherePoint(-6)) == 5);
  CHECK(S.word_length(SpherePoint(8)) == 8);
  CHECK(S.word_length(SpherePoint(-9)) == 8);
  CHECK(!S.contains(SpherePoint(9)));
  CHECK(!S.word_length(SpherePoint(-10)));
}

TEST_CASE("orbits are monotone in depth with stable word lengths") {
  OrbitSet small = orbit(SpherePoint(0), kIntroGens, 4);
  OrbitSet big = orbit(SpherePoint(0), kIntroGens, 7);
  for (const auto& p : small.points()) {
    auto wl = big.word_length(p.point);
    REQUIRE(wl.has_value());
    CHECK(*wl == p.word_length);
  }
}

TEST_CASE("orbits pass through infinity and de-duplicate") {
  OrbitSet S = orbit(SpherePoint(0), {MoebiusTransform::inversion()}, 3);
  CHECK(S.points().size() == 2);  // 1/z is an involution: {0, inf}
  CHECK(S.word_length(SpherePoint::infinity()) == 1);

  // generators' inverses are adjoined: z+1 alone still reaches -1
  OrbitSet T = orbit(SpherePoint(0), {aff(1, 1)}, 2);
  CHECK(T.contains(SpherePoint(-2)));
  CHECK(T.contains(SpherePoint(2)));
}

TEST_CASE("the point cap is an explicit failure") {
  CHECK_THROWS_AS(orbit(SpherePoint(0), kIntroGens, 50, 10), UndeterminedError);
}

TEST_CASE("construct_sets gives sorted deduplicated images with provenance") {
  std::vector<RationalMap> maps = {pmap({0, 0, 1}), pmap({1, 2, 1})};
  OrbitSet S = orbit(SpherePoint(0), kIntroGens, 4);  // integers [-5, 4]
  auto sets = construct_sets(maps, S);
  REQUIRE(sets.size() == 2);
  CHECK(sets[0].provenance == 0);
  CHECK(sets[1].provenance == 1);
  // squares of [-5,4]: {0,1,4,9,16,25}; (z+1)^2 of [-5,4]: {0,1,4,9,16,25}
  for (const auto& k : sets) {
    std::vector<long> vals;
    for (const auto& v : k.values) vals.push_back(as_int(v));
    CHECK(vals == std::vector<long>{0, 1, 4, 9, 16, 25});
    CHECK(std::is_sorted(k.values.begin(), k.values.end(),
                         [](const SpherePoint& a, const SpherePoint& b) {
                           return SpherePoint::cmp(a, b) < 0;
                         }));
  }
}

TEST_CASE("construct_sets requires the decks inside the generator group") {
  std::vector<RationalMap> maps = {pmap({0, 0, 1}), pmap({1, 2, 1})};
  OrbitSet S = orbit(SpherePoint(1), {aff(-1, 0)}, 2);  // misses -z-2
  CHECK_THROWS_WITH_AS(construct_sets(maps, S),
                       "construct_sets: deck element -z - 2 of map 2 is not in the generator "
                       "group (word search to depth 2)",
                       InputError);
}

TEST_CASE("intro configuration verifies with the honest window") {
  std::vector<RationalMap> maps = {pmap({0, 0, 1}), pmap({1, 2, 1})};
  OrbitSet S = orbit(SpherePoint(0), kIntroGens, 12);
  auto sets = construct_sets(maps, S);
  VerificationReport rep = verify_shared_preimage(maps, sets, S, 8);
  CHECK(rep.pass());
  CHECK(rep.growth_bound == 1);
  REQUIRE(rep.windowed_preimages.size() == 2);
  // both restricted preimage sets are the integers [-9, 8]: every point of
  // word length <= 8
  for (const auto& pre : rep.windowed_preimages) {
    std::vector<long> vals;
    for (const auto& p : pre) vals.push_back(as_int(p));
    std::sort(vals.begin(), vals.end());
    std::vector<long> expect;
    for (long x = -9; x <= 8; ++x) expect.push_back(x);
    CHECK(vals == expect);
  }
  CHECK(rep.windowed_preimages[0] == rep.windowed_preimages[1]);
  // every check passes, including the informational value-set comparison
  for (const auto& c : rep.checks) CHECK(c.pass);
}

TEST_CASE("window plus growth margin must fit inside the depth") {
  std::vector<RationalMap> maps = {pmap({0, 0, 1}), pmap({1, 2, 1})};
  OrbitSet S = orbit(SpherePoint(0), kIntroGens, 6);
  auto sets = construct_sets(maps, S);
  CHECK_THROWS_AS(verify_shared_preimage(maps, sets, S, 6), InputError);
  CHECK(verify_shared_preimage(maps, sets, S, 5).pass());
}

TEST_CASE("a planted foreign value is caught by preimage equality") {
  std::vector<RationalMap> maps = {pmap({0, 0, 1}), pmap({1, 2, 1})};
  OrbitSet S = orbit(SpherePoint(1), {aff(-1, 0), aff(-1, -2)}, 2);  // {1,-1,-3,3}
  auto sets = construct_sets(maps, S);
  // plant 4 into K_1: it has no witness in P_1(S) = {1, 9}, and its fiber
  // {2, -2} gives inconsistent membership across the maps
  ValueSet planted = sets[0];
  planted.values.insert(planted.values.begin(), SpherePoint(4));  // keeps order: 1 < 4 < 9
  std::sort(planted.values.begin(), planted.values.end(),
            [](const SpherePoint& a, const SpherePoint& b) { return SpherePoint::cmp(a, b) < 0; });
  VerificationReport rep = verify_shared_preimage(maps, {planted, sets[1]}, S, 1);
  CHECK(!rep.pass());
  const VerificationCheck* eq = rep.find("preimage-equality");
  REQUIRE(eq);
  CHECK(!eq->pass);
  bool mentions_2 = false;
  for (const auto& ce : eq->counterexamples)
    if (ce.find("2") != std::string::npos) mentions_2 = true;
  CHECK(mentions_2);
  // fiber-completeness itself is fine: S is closed under both true fibers
  const VerificationCheck* fc = rep.find("fiber-completeness");
  REQUIRE(fc);
  CHECK(fc->pass);
}

TEST_CASE("maps outside the verifiable class are rejected up front") {
  // Verification places each deck group inside the generator group, so a map
  // whose deck lives in a larger field and a map with no deck at all are both
  // input errors, not silent failures.
  OrbitSet S = orbit(SpherePoint(1), {aff(-1, 0)}, 1);  // {1, -1}
  ValueSet K;
  K.provenance = 0;
  K.values = {SpherePoint(-1), SpherePoint(1)};

  std::vector<RationalMap> cube = {pmap({0, 0, 0, 1})};  // deck needs zeta_3
  CHECK_THROWS_AS(verify_shared_preimage(cube, {K}, S, 0), DeckFieldError);

  std::vector<RationalMap> branched = {pmap({0, -3, 0, 1})};  // not Galois
  ValueSet K2;
  K2.provenance = 0;
  K2.values = {SpherePoint(-2), SpherePoint(2)};
  CHECK_THROWS_AS(verify_shared_preimage(branched, {K2}, S, 0), InputError);
}

TEST_CASE("finite joint deck group reduces to one common map") {
  // z^2 and (z^2+1)/(2z): decks {z,-z} and {z,1/z} generate a 4-group
  std::vector<RationalMap> maps = {pmap({0, 0, 1}),
                                   RationalMap(zp({1, 0, 1}), zp({0, 2}))};
  auto red = finite_group_reduction(maps);
  REQUIRE(red);
  CHECK(red->group.order == 4);
  CHECK(red->common.degree() == 4);
  REQUIRE(red->factors.size() == 2);
  for (size_t i = 0; i < maps.size(); ++i)
    CHECK(red->factors[i].compose(maps[i]) == red->common);
  // the common map is invariant under the whole joint group
  for (const auto& m : *red->group.elements) CHECK(preserves_map(red->common, m));
}

TEST_CASE("infinite joint groups produce a growth certificate, not a hang") {
  std::vector<RationalMap> maps = {pmap({0, 0, 1}), pmap({1, 2, 1})};
  CHECK(!finite_group_reduction(maps));
}

TEST_CASE("generator assembly and base choice") {
  std::vector<RationalMap> maps = {pmap({0, 0, 1}), pmap({1, 2, 1})};
  auto gens = assemble_generators(maps);
  // deck generators of both maps plus the default shift z + 1
  auto has = [&](const MoebiusTransform& m) {
    return std::find(gens.begin(), gens.end(), m) != gens.end();
  };
  CHECK(has(aff(-1, 0)));
  CHECK(has(aff(-1, -2)));
  CHECK(has(aff(1, 1)));
  // a custom mu replaces the default
  auto gens2 = assemble_generators(maps, aff(1, 3));
  CHECK(std::find(gens2.begin(), gens2.end(), aff(1, 3)) != gens2.end());
  // identity mu is dropped rather than stored
  auto gens3 = assemble_generators(maps, MoebiusTransform::identity());
  CHECK(std::find(gens3.begin(), gens3.end(), MoebiusTransform::identity()) == gens3.end());

  // base choice walks 0, 1, -1, ... and skips critical points
  CHECK(choose_base(maps) == SpherePoint(1));  // 0 is critical for z^2
  std::vector<RationalMap> pair2 = {pmap({0, 0, 1}), RationalMap(zp({1, 0, 1}), zp({0, 1}))};
  CHECK(choose_base(pair2) == SpherePoint(2));  // 0, +-1 are critical points
}

TEST_CASE("truncated theorem instance with distinct value sets") {
  // P1 = z^2, P2 = z + 1/z: decks {z,-z} and {z,1/z}, glued by mu = z+1
  std::vector<RationalMap> maps = {pmap({0, 0, 1}), RationalMap(zp({1, 0, 1}), zp({0, 1}))};
  auto gens = assemble_generators(maps);
  OrbitSet S = orbit(SpherePoint(2), gens, 10, 2000000);
  auto sets = construct_sets(maps, S);
  CHECK(sets[0].values != sets[1].values);
  VerificationReport rep = verify_shared_preimage(maps, sets, S, 6);
  CHECK(rep.pass());
  // distinct K sets: the value-set comparison is informational only
  REQUIRE(rep.find("value-set-equality"));
}

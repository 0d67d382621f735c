#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <map>

#include "covalg/corpus.hpp"
#include "covalg/monodromy.hpp"

using namespace covalg;

namespace {

Poly<ExactScalar> zp(std::vector<long> c) {
  std::vector<ExactScalar> v(c.begin(), c.end());
  return Poly<ExactScalar>(std::move(v));
}

RationalMap pmap(std::vector<long> c) { return RationalMap::from_poly(zp(std::move(c))); }

// Multiset of local degrees above one value of the class, unramified included.
std::vector<int> profile_multiset(const CriticalClass& cc) {
  std::vector<int> out;
  for (const auto& [e, n] : cc.profile)
    for (long i = 0; i < n; ++i) out.push_back(e);
  std::sort(out.begin(), out.end(), std::greater<int>());
  return out;
}

}  // namespace

TEST_CASE("cycle types equal the exact local degrees, map by map") {
  for (const auto& entry : corpus()) {
    CAPTURE(entry.name);
    Constellation c = extract_monodromy(entry.map);
    c.validate();
    CHECK(genus(c) == 0);
    auto port = critical_structure(entry.map);

    // each exact branch point label matches a degree-1 class; each tag label
    // matches one root of a higher-degree class polynomial
    std::map<std::string, std::vector<int>> expected;
    for (const auto& cc : port.classes) {
      if (cc.at_infinity()) {
        expected[BranchLabel::at(SpherePoint::infinity()).str()] = profile_multiset(cc);
      } else if (cc.value_min_poly->degree() == 1) {
        ExactScalar v = ExactScalar(0) - cc.value_min_poly->coeff(0);
        expected[BranchLabel::at(SpherePoint(std::move(v))).str()] = profile_multiset(cc);
      } else {
        for (int k = 1; k <= cc.value_min_poly->degree(); ++k)
          expected["root " + std::to_string(k) + " of " + poly_str(*cc.value_min_poly, "y")] =
              profile_multiset(cc);
      }
    }
    REQUIRE(c.branch_points.size() == expected.size());
    for (size_t i = 0; i < c.branch_points.size(); ++i) {
      auto it = expected.find(c.branch_points[i].str());
      REQUIRE(it != expected.end());
      CHECK(c.perms[i].cycle_type() == it->second);
    }
  }
}

TEST_CASE("extraction is deterministic") {
  RationalMap P = pmap({0, -4, 0, 0, 1});
  Constellation a = extract_monodromy(P);
  Constellation b = extract_monodromy(P);
  CHECK(a.degree == b.degree);
  CHECK(a.branch_points == b.branch_points);
  CHECK(a.perms == b.perms);
}

TEST_CASE("extra branch points enter as identity columns") {
  RationalMap sq = pmap({0, 0, 1});
  // adjoin the finite critical values of z^3 - 3z (namely 2 and -2)
  std::vector<Poly<ExactScalar>> extras = {zp({-2, 1}), zp({2, 1})};
  Constellation c = extract_monodromy(sq, extras);
  c.validate();
  REQUIRE(c.branch_points.size() == 4);  // 0, 2, -2, infinity
  int identities = 0;
  for (size_t i = 0; i < c.perms.size(); ++i) {
    if (c.perms[i].is_identity()) {
      ++identities;
      REQUIRE(c.branch_points[i].point);
      ExactScalar v = c.branch_points[i].point->value();
      CHECK((v == ExactScalar(2) || v == ExactScalar(-2)));
    }
  }
  CHECK(identities == 2);
}

TEST_CASE("shared loop basis: both extractions list the same branch points") {
  RationalMap sq = pmap({0, 0, 1});
  RationalMap cheb = pmap({0, -3, 0, 1});
  auto crit_polys = [](const RationalMap& P) {
    std::vector<Poly<ExactScalar>> out;
    for (const auto& cc : critical_structure(P).classes)
      if (!cc.at_infinity()) out.push_back(*cc.value_min_poly);
    return out;
  };
  Constellation a = extract_monodromy(sq, crit_polys(cheb));
  Constellation b = extract_monodromy(cheb, crit_polys(sq));
  CHECK(a.branch_points == b.branch_points);
  // duplicate extras collapse: each center appears once
  for (size_t i = 1; i < a.branch_points.size(); ++i)
    CHECK(BranchLabel::cmp(a.branch_points[i - 1], a.branch_points[i]) != 0);
  // and the aligned pair is immediately fiber-product ready
  auto comps = fiber_product(align({a, b}));
  long total = 0;
  for (const auto& comp : comps) total += static_cast<long>(comp.orbit.size());
  CHECK(total == 6);
}

TEST_CASE("a finite regular value at infinity blocks extra centers near it") {
  // P = ((z-1)/(z+1))^2 sends infinity to the regular value 1
  RationalMap P(zp({1, -2, 1}), zp({1, 2, 1}));
  CHECK(P.eval(SpherePoint::infinity()) == SpherePoint(1));
  // an extra center at exactly 1 would put a loop through the fiber of
  // infinity; the library refuses rather than guessing a chart
  CHECK_THROWS_AS(extract_monodromy(P, {zp({-1, 1})}), InputError);
  // away from 1 the extraction works and carries the extra center
  Constellation c = extract_monodromy(P, {zp({-5, 1})});
  c.validate();
  bool found = false;
  for (size_t i = 0; i < c.branch_points.size(); ++i)
    if (c.branch_points[i].point && !c.branch_points[i].point->is_infinity() &&
        c.branch_points[i].point->value() == ExactScalar(5)) {
      found = true;
      CHECK(c.perms[i].is_identity());
    }
  CHECK(found);
}

TEST_CASE("an unramified infinity stays off the branch list") {
  // (z^2+1)/(2z): critical points +-1 with values +-1; the fiber over
  // infinity is {0, inf}, both simple, so infinity is a regular value
  RationalMap P(zp({1, 0, 1}), zp({0, 2}));
  Constellation c = extract_monodromy(P);
  c.validate();
  CHECK(genus(c) == 0);
  REQUIRE(c.branch_points.size() == 2);
  for (const auto& bp : c.branch_points) {
    REQUIRE(bp.point);
    CHECK(!bp.point->is_infinity());
    ExactScalar v = bp.point->value();
    CHECK((v == ExactScalar(1) || v == ExactScalar(-1)));
  }
}

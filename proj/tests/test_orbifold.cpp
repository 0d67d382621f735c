#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "covalg/orbifold.hpp"

using namespace covalg;

namespace {

RationalMap pmap(std::vector<long> c) {
  std::vector<ExactScalar> v(c.begin(), c.end());
  return RationalMap::from_poly(Poly<ExactScalar>(std::move(v)));
}

}  // namespace

TEST_CASE("power maps give signature {n,n} and chi = 2/n") {
  for (int n = 2; n <= 6; ++n) {
    ClassVerdict v = classify(RationalMap::power(n));
    CHECK(v.signature == Signature{{n, n}});
    CHECK(v.chi == Rat(2, n));
    CHECK(v.in_list);
    REQUIRE(v.list_member);
    CHECK(*v.list_member == "{l,l}");
    CHECK(v.genus_bound == GenusBound::NormalizationGenusAtMost1);
  }
}

TEST_CASE("z^3 - 3z marks {2,2,3} with chi = 1/3") {
  // local degrees above 2 are (2,1): lcm 2; same above -2; above inf: 3
  ClassVerdict v = classify(pmap({0, -3, 0, 1}));
  CHECK(v.signature == Signature{{2, 2, 3}});
  CHECK(v.chi == Rat(1, 3));
  CHECK(v.in_list);
  CHECK(v.genus_bound == GenusBound::NormalizationGenusAtMost1);
}

TEST_CASE("z^4 - 4z marks {2,2,2,4} with chi = -1/4") {
  // three conjugate critical values with lcm 2 each, plus infinity with 4
  ClassVerdict v = classify(pmap({0, -4, 0, 0, 1}));
  CHECK(v.signature == Signature{{2, 2, 2, 4}});
  CHECK(v.chi == Rat(-1, 4));
  CHECK(!v.in_list);
  CHECK(!v.list_member);
  CHECK(v.genus_bound == GenusBound::NormalizationGenusAtLeast2);
  CHECK(genus_bound_str(v.genus_bound) == "normalization_genus_ge_2");
}

TEST_CASE("z^4 + z^3 marks {2,3,4} with chi = 1/12") {
  // crit points: wronskian 4z^3 + 3z^2 = z^2 (4z + 3); z = 0 has e = 3
  // (value 0), z = -3/4 has e = 2 (value -27/256), infinity has e = 4
  ClassVerdict v = classify(pmap({0, 0, 0, 1, 1}));
  CHECK(v.signature == Signature{{2, 3, 4}});
  CHECK(v.chi == Rat(1, 12));
  CHECK(v.in_list);
  REQUIRE(v.list_member);
  CHECK(*v.list_member == "{2,3,4}");
}

TEST_CASE("z^4 - 2z^2 marks {2,2,4} despite three critical points") {
  // wronskian 4z^3 - 4z = 4z(z-1)(z+1): values 0 (from z = 0, e = 2) and -1
  // (from z = +-1, both e = 2); fiber over 0 also contains +-sqrt2 unramified
  // so lcm stays 2; infinity carries 4.
  ClassVerdict v = classify(pmap({0, 0, -2, 0, 1}));
  CHECK(v.signature == Signature{{2, 2, 4}});
  CHECK(v.chi == Rat(2) + (Rat(1, 2) - 1) * 2 + (Rat(1, 4) - 1));
  CHECK(v.chi == Rat(1, 4));
  CHECK(v.in_list);
  CHECK(v.genus_bound == GenusBound::NormalizationGenusAtMost1);
}

TEST_CASE("orbifold data is consistent with the signature") {
  Orbifold o = ramification_orbifold(pmap({0, -4, 0, 0, 1}));
  CHECK(o.marked_point_count() == 4);
  long entries = 0;
  for (const auto& m : o.marked) {
    CHECK(m.nu >= 2);
    entries += m.class_size();
  }
  CHECK(entries == 4);
  Signature s = signature_of(o);
  CHECK(s.str() == "{2,2,2,4}");
  CHECK(euler_characteristic(o) == Rat(-1, 4));
}

TEST_CASE("signature list membership patterns") {
  CHECK(*signature_list_member(Signature{{7, 7}}) == "{l,l}");
  CHECK(*signature_list_member(Signature{{2, 2, 9}}) == "{2,2,l}");
  CHECK(*signature_list_member(Signature{{2, 3, 5}}) == "{2,3,5}");
  CHECK(*signature_list_member(Signature{{2, 3, 6}}) == "{2,3,6}");
  CHECK(*signature_list_member(Signature{{2, 4, 4}}) == "{2,4,4}");
  CHECK(*signature_list_member(Signature{{3, 3, 3}}) == "{3,3,3}");
  CHECK(*signature_list_member(Signature{{2, 2, 2, 2}}) == "{2,2,2,2}");
  CHECK(!signature_list_member(Signature{{2, 3, 7}}));
  CHECK(!signature_list_member(Signature{{2, 2, 2, 4}}));
  CHECK(!signature_list_member(Signature{{3, 3, 4}}));
  CHECK(!signature_list_member(Signature{{2, 2, 2, 2, 2}}));
}

TEST_CASE("chi sign always matches list membership and genus bound") {
  // property over a mixed bag of maps, including non-polynomial ones
  std::vector<RationalMap> maps = {
      RationalMap::power(2),
      RationalMap::power(5),
      pmap({0, -3, 0, 1}),
      pmap({0, -4, 0, 0, 1}),
      pmap({0, 0, -2, 0, 1}),
      pmap({0, 0, 0, 1, 1}),
      RationalMap(Poly<ExactScalar>({ExactScalar(1), ExactScalar(0), ExactScalar(1)}),
                  Poly<ExactScalar>({ExactScalar(0), ExactScalar(2)})),  // (z^2+1)/2z
      RationalMap(Poly<ExactScalar>({ExactScalar(1), ExactScalar(0), ExactScalar(0), ExactScalar(0),
                                     ExactScalar(1)}),
                  Poly<ExactScalar>({ExactScalar(0), ExactScalar(0), ExactScalar(2)})),  // (z^4+1)/2z^2
  };
  for (const auto& P : maps) {
    ClassVerdict v = classify(P);
    CHECK((v.chi >= 0) == v.in_list);
    CHECK((v.chi >= 0) == (v.genus_bound == GenusBound::NormalizationGenusAtMost1));
    CHECK(v.in_list == v.list_member.has_value());
    // signature values match the chi sum exactly
    Rat chi(2);
    for (int nu : v.signature.values) chi += Rat(1, nu) - 1;
    CHECK(chi == v.chi);
  }
}

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "covalg/ratmap.hpp"

namespace covalg {

// Marked point class of an orbifold structure on the sphere: the Galois class
// of marked points (nullopt = the point at infinity) together with the common
// ramification index nu >= 2 attached to each point of the class.
struct OrbifoldPoint {
  std::optional<Poly<ExactScalar>> point_min_poly;
  int nu = 2;

  bool at_infinity() const { return !point_min_poly.has_value(); }
  long class_size() const { return at_infinity() ? 1 : point_min_poly->degree(); }
};

struct Orbifold {
  std::vector<OrbifoldPoint> marked;  // canonical order, classes pairwise distinct
  long marked_point_count() const;
};

// Sorted multiset of the nu values, one entry per marked point (a class of
// size k contributes k equal entries).
struct Signature {
  std::vector<int> values;  // ascending

  friend bool operator==(const Signature&, const Signature&) = default;
  std::string str() const;  // "{2,2,2,4}"
};

// Marks each critical value class of P with the lcm of the local degrees of
// the fiber above it; values whose lcm is 1 are unmarked. Requires deg P >= 2.
Orbifold ramification_orbifold(const RationalMap& P);

Signature signature_of(const Orbifold& o);

// chi = 2 + sum over marked points of (1/nu - 1), exact.
Rat euler_characteristic(const Orbifold& o);

// Spherical and flat signatures: {l,l}, {2,2,l} (l >= 2), {2,3,3}, {2,3,4},
// {2,3,5} and {2,2,2,2}, {3,3,3}, {2,4,4}, {2,3,6}. Returns the matched
// pattern tag, or nullopt when chi < 0.
std::optional<std::string> signature_list_member(const Signature& s);

enum class GenusBound {
  NormalizationGenusAtMost1,   // chi >= 0
  NormalizationGenusAtLeast2,  // chi < 0
};

struct ClassVerdict {
  Rat chi;
  Signature signature;
  bool in_list = false;
  std::optional<std::string> list_member;
  GenusBound genus_bound = GenusBound::NormalizationGenusAtLeast2;
};

// Full decision for P's ramification orbifold. The chi sign, the list
// membership, and the genus bound are computed independently enough that a
// disagreement throws InternalError.
ClassVerdict classify(const RationalMap& P);

std::string genus_bound_str(GenusBound g);

}  // namespace covalg

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "covalg/ratmap.hpp"

namespace covalg {

// Group of Moebius transformations given by generators, with the complete
// element list when finite and enumerated. order == 0 means not enumerated
// (unknown or infinite).
struct TransformGroup {
  std::vector<MoebiusTransform> generators;
  std::optional<std::vector<MoebiusTransform>> elements;  // sorted by cmp, with identity
  long order = 0;

  bool enumerated() const { return elements.has_value(); }
  bool contains(const MoebiusTransform& m) const;
};

// Breadth-first closure of the generators; throws UndeterminedError when the
// closure exceeds cap elements (infinite or too-large group).
TransformGroup enumerate_group(std::vector<MoebiusTransform> generators, long cap = 10080);

// Thrown by deck_group when some deck transformation cannot be written over
// the declared field; hint (when recognizable) is the minimal polynomial of
// a coefficient that a larger field would need to contain.
struct DeckFieldError : Error {
  explicit DeckFieldError(const std::string& what, std::optional<Poly<Rat>> h = std::nullopt)
      : Error(what), hint(std::move(h)) {}
  std::optional<Poly<Rat>> hint;
};

struct GaloisCertificate {
  bool galois = false;
  // present iff galois and the declared field can express the deck group
  std::optional<TransformGroup> deck;
  // witness iff not galois: a critical class with non-uniform local degrees
  std::optional<CriticalClass> nonuniform_class;
  // set when galois but deck enumeration needs a larger field
  std::optional<Poly<Rat>> missing_field_hint;
};

// Uniform-fiber test with deck-group cross-check (|deck| must equal deg P
// whenever the deck group is expressible over the declared field).
GaloisCertificate is_galois(const RationalMap& P);

// Full deck transformation group of a Galois map, every element verified
// exactly against P ∘ σ = P. Throws DeckFieldError when the declared field
// is too small, InputError when P is not Galois.
TransformGroup deck_group(const RationalMap& P);

// Exact check of P ∘ σ = P by cleared-denominator cross multiplication.
bool preserves_map(const RationalMap& P, const MoebiusTransform& sigma);

enum class StandardKind { Power, Dihedral, Tetrahedral, Octahedral, Icosahedral };

struct StandardFamily {
  RationalMap map;
  TransformGroup group;
  FieldPtr field;  // minimal field carrying the group (null = plain rationals)
  std::string name;
};

// Classical Galois families: z^n (cyclic, needs the n-th cyclotomic field for
// enumeration), (z^n + z^-n)/2 (dihedral of order 2n over the same field),
// and the three platonic quotients of degrees 12/24/60. Deck order = degree
// and generator invariance are verified at construction.
StandardFamily standard_family(StandardKind kind, int n = 0);

// Galois covering whose deck group is exactly G, built from the fiber
// polynomial prod_{g in G} (y - g(z)): the first nonconstant symmetric
// coefficient is a G-invariant rational map of degree exactly |G| over the
// declared field. Invariance and degree are verified before returning.
RationalMap quotient_map(const TransformGroup& G);

// n-th cyclotomic polynomial, monic over Q.
Poly<Rat> cyclotomic(int n);

// Field generated by a primitive n-th root of unity (null for n <= 2), with
// the generator ball chosen near exp(2*pi*i/n).
FieldPtr cyclotomic_field(int n);

}  // namespace covalg

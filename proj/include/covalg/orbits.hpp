#pragma once

#include <optional>
#include <string>
#include <vector>

#include "covalg/galois.hpp"

namespace covalg {

struct OrbitPoint {
  SpherePoint point;
  int word_length = 0;  // minimal generator word length from the base
};

// Truncated orbit of a base point under a finitely generated group of
// Moebius transformations (inverses are adjoined automatically). Points are
// listed level by level, canonically ordered inside each level.
class OrbitSet {
 public:
  OrbitSet() = default;
  OrbitSet(SpherePoint base, std::vector<MoebiusTransform> generators, int depth,
           std::vector<OrbitPoint> points);

  const SpherePoint& base() const { return base_; }
  const std::vector<MoebiusTransform>& generators() const { return gens_; }
  int depth() const { return depth_; }
  const std::vector<OrbitPoint>& points() const { return pts_; }

  bool contains(const SpherePoint& p) const { return word_length(p).has_value(); }
  std::optional<int> word_length(const SpherePoint& p) const;

 private:
  SpherePoint base_;
  std::vector<MoebiusTransform> gens_;
  int depth_ = 0;
  std::vector<OrbitPoint> pts_;                       // (word length, point) order
  std::vector<std::pair<SpherePoint, int>> lookup_;  // point order
};

// Breadth-first truncated orbit with minimal word lengths, deterministic.
// UndeterminedError when the point count exceeds the cap.
OrbitSet orbit(const SpherePoint& base, const std::vector<MoebiusTransform>& generators,
               int depth, long point_cap = 1000000);

// Exact image of an orbit under one of the maps.
struct ValueSet {
  std::vector<SpherePoint> values;  // canonical order, deduplicated
  int provenance = 0;               // index of the producing map
};

// K_i = P_i(S) for each map. Requires every map to be Galois with its deck
// group inside the orbit's generator group; the containment is checked by a
// word-ball search, and a deck element that never appears is an InputError
// naming it.
std::vector<ValueSet> construct_sets(const std::vector<RationalMap>& maps, const OrbitSet& S);

struct VerificationCheck {
  std::string kind;  // "fiber-completeness" | "preimage-equality" | "value-set-equality"
  bool pass = true;
  std::vector<std::string> counterexamples;
};

struct VerificationReport {
  int window_depth = 0;
  // Word-length margin kept between the window and the truncation depth: the
  // maximum word length of any deck element inside the generator group.
  int growth_bound = 0;
  std::vector<VerificationCheck> checks;
  // Preimage sets P_i^{-1}(K_i) restricted to the window, one per map, as
  // orbit points; equal across maps whenever the equality check passes.
  std::vector<std::vector<SpherePoint>> windowed_preimages;

  // Fiber-completeness and preimage-equality decide the verdict; the
  // value-set-equality check records whether one shared K would do.
  bool pass() const;
  const VerificationCheck* find(const std::string& kind) const;
};

// Windowed check of P_1^{-1}(K_1) = ... = P_k^{-1}(K_k) = S on truncations:
// for every s in the window, each full exact fiber P_i^{-1}(P_i(s)) must lie
// in S (a fiber point outside the declared field is a counterexample, not an
// error), and membership of fiber points must agree across the maps. The
// window must leave the deck-word growth margin: window_depth + growth bound
// <= S.depth(), otherwise InputError.
VerificationReport verify_shared_preimage(const std::vector<RationalMap>& maps,
                                          const std::vector<ValueSet>& sets, const OrbitSet& S,
                                          int window_depth);

struct FiniteReduction {
  RationalMap common;                // A, invariant under the joint deck group
  std::vector<RationalMap> factors;  // F_i with A = F_i after P_i, exact
  TransformGroup group;              // G = <deck groups of all maps>
};

// Joint finite-group form of the maps: when G = <deck(P_1),...,deck(P_k)> is
// finite, returns A = quotient_map(G) and the exact left factors F_i. When
// the closure exceeds the cap and the word-ball sizes strictly increase for
// 8 consecutive radii, G is reported infinite (nullopt). A cap overrun with
// no growth certificate is an UndeterminedError.
std::optional<FiniteReduction> finite_group_reduction(const std::vector<RationalMap>& maps,
                                                      long order_cap = 10080);

// Deck generators of all maps plus the connecting shift mu (default z + 1):
// the generator set the shared-preimage constructions run on.
std::vector<MoebiusTransform> assemble_generators(
    const std::vector<RationalMap>& maps,
    const MoebiusTransform& mu = MoebiusTransform::affine(ExactScalar(1), ExactScalar(1)));

// Smallest admissible rational base for the construction, enumerating
// 0, 1, -1, 2, -2, ... and skipping values whose orbit would start on a
// critical point of one of the maps.
SpherePoint choose_base(const std::vector<RationalMap>& maps);

}  // namespace covalg

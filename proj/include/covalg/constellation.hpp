#pragma once

#include <optional>
#include <string>
#include <vector>

#include "covalg/ratmap.hpp"

namespace covalg {

// Bijection of {1..d}, stored as the image array: images()[i-1] = sigma(i).
class Permutation {
 public:
  explicit Permutation(std::vector<int> images);
  static Permutation identity(int d);
  static Permutation from_cycles(int d, const std::vector<std::vector<int>>& cycles);
  // Cycle notation, e.g. "(1 2)(3)". Points not mentioned are fixed.
  static Permutation parse_cycles(int d, const std::string& text);

  int size() const { return static_cast<int>(img_.size()); }
  int apply(int i) const;
  const std::vector<int>& images() const { return img_; }

  // Left-to-right composition: (a * b)(i) = b(a(i)), a acts first.
  friend Permutation operator*(const Permutation& a, const Permutation& b);
  Permutation inverse() const;
  bool is_identity() const;

  // Each cycle starts at its least element; cycles sorted by first element.
  std::vector<std::vector<int>> cycles() const;
  std::vector<int> cycle_type() const;  // lengths, descending
  int cycle_count() const;
  long order() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend bool operator<(const Permutation& a, const Permutation& b) {
    return a.img_ < b.img_;
  }
  std::string str() const;  // "(1 2)(3)"

 private:
  std::vector<int> img_;
};

// Branch point label: an exact sphere point when the value lives in the
// declared coefficient field, an opaque text tag otherwise.
struct BranchLabel {
  std::optional<SpherePoint> point;
  std::string tag;

  static BranchLabel at(SpherePoint p);
  static BranchLabel named(std::string t);
  // Exact points first (SpherePoint order), then tags lexicographically.
  static int cmp(const BranchLabel& x, const BranchLabel& y);
  friend bool operator==(const BranchLabel& x, const BranchLabel& y) {
    return cmp(x, y) == 0;
  }
  std::string str() const;
};

// Branch data of a degree-d covering of the sphere: one permutation per
// branch point. Invariants (checked by validate): every permutation acts on
// {1..d}, the branch points are pairwise distinct, the left-to-right product
// perms[0] * ... * perms[k-1] is the identity, and the generated group acts
// transitively on {1..d}.
struct Constellation {
  int degree = 0;
  std::vector<BranchLabel> branch_points;
  std::vector<Permutation> perms;

  void validate() const;  // InputError on any violation
};

// Genus of the covering surface: 2 - 2g = 2d - sum_i (d - cycles(perms[i])).
// InputError when the total branching is odd (no covering has that data).
long genus(const Constellation& c);

// Re-express the constellations over the union of their branch point lists,
// in canonical label order, padding with identity permutations.
std::vector<Constellation> align(std::vector<Constellation> cs);

// One connected component of a fiber product. orbit holds the index tuples
// (tuple[j] in {1..degree_j}) in sorted order; cover is the induced branch
// data on the orbit; degrees_to_factors[j] * degree_j = |orbit|.
struct FiberComponent {
  std::vector<std::vector<int>> orbit;
  Constellation cover;
  std::vector<long> degrees_to_factors;
  long genus = 0;
};

// Components of the fiber product of coverings over a common branch point
// list (run align first if the lists differ): orbits of the componentwise
// action on index tuples. Components sorted by their least tuple.
std::vector<FiberComponent> fiber_product(const std::vector<Constellation>& cs);

struct GroupCount {
  long order = 0;
  bool capped = false;  // closure stopped at the cap; order is a lower bound
};

// Order of the group generated by the branch permutations.
GroupCount monodromy_group(const Constellation& c, long cap = 10080);

// Genus of the regular covering attached to the monodromy group G: the
// branch permutations act on G by right multiplication and the genus comes
// from that action's cycle counts. Recomputed via the exact rational identity
// g = 1 - |G| chi / 2 with chi = 2 + sum (1/ord - 1); disagreement between
// the two routes is an InternalError. UndeterminedError past the cap.
long normalization_genus(const Constellation& c, long cap = 10080);

// Same genus from the componentwise action on injective d-tuples (the orbit
// of (1,...,d) carries a free action, so its covering data is again regular).
// Only for degree <= 5 and monodromy order <= 120; InputError beyond that.
long normalization_genus_tuple_oracle(const Constellation& c);

}  // namespace covalg

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "covalg/field.hpp"
#include "covalg/poly.hpp"

namespace covalg {

// Human-readable polynomial, highest degree first, deterministic.
std::string poly_str(const Poly<ExactScalar>& p, const std::string& var = "z");

// Point on the Riemann sphere with exact coordinates.
class SpherePoint {
 public:
  SpherePoint() : inf_(false), v_(0) {}
  explicit SpherePoint(ExactScalar v) : inf_(false), v_(std::move(v)) {}
  explicit SpherePoint(long v) : inf_(false), v_(v) {}
  static SpherePoint infinity() {
    SpherePoint p;
    p.inf_ = true;
    return p;
  }

  bool is_infinity() const { return inf_; }
  const ExactScalar& value() const {
    if (inf_) throw InternalError("value() of the point at infinity");
    return v_;
  }

  friend bool operator==(const SpherePoint& a, const SpherePoint& b) {
    if (a.inf_ || b.inf_) return a.inf_ == b.inf_;
    return a.v_ == b.v_;
  }
  friend bool operator!=(const SpherePoint& a, const SpherePoint& b) { return !(a == b); }
  // Finite points first (coordinate-lex), infinity last.
  static int cmp(const SpherePoint& a, const SpherePoint& b);
  std::size_t hash() const;
  std::string str() const;

 private:
  bool inf_;
  ExactScalar v_;
};

// Nonconstant rational map P = num/den on the sphere, in canonical form:
// num and den coprime over the coefficient field, den monic (the constant 1
// when P is a polynomial). Degree = max(deg num, deg den) >= 1.
class RationalMap {
 public:
  RationalMap(Poly<ExactScalar> num, Poly<ExactScalar> den);
  static RationalMap from_poly(Poly<ExactScalar> p);
  static RationalMap power(int n);  // z^n (n >= 1) or 1/z^|n| (n <= -1)

  const Poly<ExactScalar>& num() const { return num_; }
  const Poly<ExactScalar>& den() const { return den_; }
  int degree() const { return std::max(num_.degree(), den_.degree()); }
  bool is_polynomial() const { return den_.degree() == 0; }
  // Common field of all coefficients (null = plain rationals).
  const FieldPtr& field() const { return field_; }

  SpherePoint eval(const SpherePoint& z) const;
  RationalMap compose(const RationalMap& inner) const;  // this after inner
  // num' * den - num * den'; root multiplicities encode local degrees.
  Poly<ExactScalar> wronskian() const;

  friend bool operator==(const RationalMap& a, const RationalMap& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const RationalMap& a, const RationalMap& b) { return !(a == b); }
  std::size_t hash() const;
  std::string str() const;

 private:
  Poly<ExactScalar> num_, den_;
  FieldPtr field_;
};

// Invertible map (a z + b) / (c z + d), ad - bc != 0, scaled so the first
// nonzero entry of (a, b, c, d) is 1; equality is then componentwise.
class MoebiusTransform {
 public:
  MoebiusTransform() : a_(1), b_(0), c_(0), d_(1) {}
  MoebiusTransform(ExactScalar a, ExactScalar b, ExactScalar c, ExactScalar d);
  static MoebiusTransform identity() { return MoebiusTransform(); }
  static MoebiusTransform affine(ExactScalar slope, ExactScalar offset);
  static MoebiusTransform inversion();  // 1/z

  const ExactScalar& a() const { return a_; }
  const ExactScalar& b() const { return b_; }
  const ExactScalar& c() const { return c_; }
  const ExactScalar& d() const { return d_; }
  bool is_identity() const;

  SpherePoint apply(const SpherePoint& z) const;
  MoebiusTransform compose(const MoebiusTransform& inner) const;  // this after inner
  MoebiusTransform inverse() const;
  RationalMap as_map() const;

  friend bool operator==(const MoebiusTransform& x, const MoebiusTransform& y) {
    return x.a_ == y.a_ && x.b_ == y.b_ && x.c_ == y.c_ && x.d_ == y.d_;
  }
  friend bool operator!=(const MoebiusTransform& x, const MoebiusTransform& y) {
    return !(x == y);
  }
  static int cmp(const MoebiusTransform& x, const MoebiusTransform& y);
  std::size_t hash() const;
  std::string str() const;

 private:
  ExactScalar a_, b_, c_, d_;
};

// One Galois class of critical values, with the branching shape above each
// value in the class. value_min_poly: monic irreducible over the base field
// whose roots are the values (nullopt = the value infinity). profile: pairs
// (local degree, number of preimage points with that degree) above each
// single value of the class, unramified points included; sum e*n = degree.
struct CriticalClass {
  std::optional<Poly<ExactScalar>> value_min_poly;
  std::vector<std::pair<int, long>> profile;  // sorted by degree descending

  bool at_infinity() const { return !value_min_poly.has_value(); }
  bool uniform(int* e_out = nullptr) const;  // all points share one degree
  int max_degree() const { return profile.empty() ? 1 : profile.front().first; }
};

struct RamificationPortrait {
  int degree = 0;
  std::vector<CriticalClass> classes;  // critical values only, canonical order
  long total_branch_points() const;    // sum over classes of points with e >= 2
};

// Exact ramification data of P over its declared coefficient field.
RamificationPortrait critical_structure(const RationalMap& P);

// Galois class of fiber points: monic irreducible over the base field, each
// of whose roots is a preimage with the stated local degree.
struct FiberClass {
  Poly<ExactScalar> min_poly;
  int multiplicity;
  bool exact() const { return min_poly.degree() == 1; }
  ExactScalar exact_point() const;  // requires degree 1
};

struct Fiber {
  std::vector<FiberClass> classes;  // canonical order
  int infinity_multiplicity = 0;    // 0 when infinity is not in the fiber
  long point_count() const;         // distinct sphere points
};

// The full preimage P^{-1}(v) with multiplicities (local degrees).
Fiber fiber(const RationalMap& P, const SpherePoint& v);

// One fiber point for numeric consumers: a certified ball, plus the exact
// point when one is expressible (the point lies in the declared field, or is
// a Gaussian rational over the plain rationals, or is infinity). The ball is
// absent only for infinity.
struct FiberPointView {
  std::optional<SpherePoint> exact;
  std::optional<ComplexBall> ball;
  int multiplicity = 1;
};

// All points of P^{-1}(v) as pairwise distinct certified views, exact points
// first within each Galois class, infinity last. sum of multiplicities over
// the views = deg P.
std::vector<FiberPointView> fiber_points(const RationalMap& P, const SpherePoint& v,
                                         mpfr_prec_t prec = 256);

}  // namespace covalg

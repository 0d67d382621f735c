#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "covalg/ball.hpp"
#include "covalg/poly.hpp"
#include "covalg/rational.hpp"

namespace covalg {

enum class FieldKind { Rationals, GaussianRationals, SimpleExtension };

class FieldSpec;
using FieldPtr = std::shared_ptr<const FieldSpec>;

// Immutable description of the coefficient field: Q, Q(i), or Q[t]/(m(t))
// with a distinguished complex root of m selected by a certified ball.
// Safe to share across threads; the embedding cache is internally locked.
class FieldSpec {
 public:
  static const FieldPtr& rationals();
  static const FieldPtr& gaussian();
  // min_poly: irreducible over Q, degree >= 2 (normalized to monic here).
  // hint: a ball meeting exactly one root of min_poly; InputError otherwise.
  static FieldPtr simple_extension(Poly<Rat> min_poly, const ComplexBall& hint,
                                   mpfr_prec_t prec_cap = 4096);

  FieldKind kind() const { return kind_; }
  int degree() const { return kind_ == FieldKind::Rationals ? 1 : min_poly_.degree(); }
  const Poly<Rat>& min_poly() const { return min_poly_; }

  // Certified isolating ball of the chosen root, fixed at construction.
  const ComplexBall& isolating_ball() const { return isolate_; }
  // Chosen root refined until rad <= 2^(-prec); monotone cache inside.
  ComplexBall generator_ball(mpfr_prec_t prec) const;

  // Structural identity: same kind, same min_poly, same chosen root.
  bool same_field(const FieldSpec& o) const;

  std::string describe() const;

 protected:
  FieldSpec(FieldKind kind, Poly<Rat> mp, ComplexBall iso)
      : kind_(kind), min_poly_(std::move(mp)), isolate_(std::move(iso)) {}

 private:
  FieldKind kind_ = FieldKind::Rationals;
  Poly<Rat> min_poly_;    // monic; empty for Rationals
  ComplexBall isolate_;   // certified: contains exactly this root, no other
  mutable std::mutex mu_;
  mutable std::optional<ComplexBall> cache_;
};

// Element of the field described by spec(). A null spec means "plain
// rational"; such values embed into any field on contact (promotion), which
// keeps constants writable without threading a field handle everywhere.
class ExactScalar {
 public:
  ExactScalar() : co_{Rat(0)} {}
  ExactScalar(long n) : co_{Rat(n)} {}
  explicit ExactScalar(Rat q) : co_{std::move(q)} {}
  ExactScalar(FieldPtr spec, std::vector<Rat> coords);

  static ExactScalar gaussian(Rat re, Rat im);

  const FieldPtr& spec() const { return spec_; }
  const std::vector<Rat>& coords() const { return co_; }
  bool is_zero() const;
  bool is_rational() const;
  Rat rational_value() const;  // requires is_rational()

  ExactScalar promoted_to(const FieldPtr& spec) const;

  friend ExactScalar operator+(const ExactScalar& a, const ExactScalar& b);
  friend ExactScalar operator-(const ExactScalar& a, const ExactScalar& b);
  friend ExactScalar operator*(const ExactScalar& a, const ExactScalar& b);
  friend ExactScalar operator/(const ExactScalar& a, const ExactScalar& b);
  ExactScalar inv() const;
  friend bool operator==(const ExactScalar& a, const ExactScalar& b);
  friend bool operator!=(const ExactScalar& a, const ExactScalar& b) { return !(a == b); }

  // Deterministic total order (coordinate-lex); used for canonical output.
  static int cmp(const ExactScalar& a, const ExactScalar& b);

  std::size_t hash() const;
  std::string str() const;

  // Certified ball with rad <= 2^(-prec + 2).
  ComplexBall embed(mpfr_prec_t prec, mpfr_prec_t prec_cap = 4096) const;

  // Coordinates viewed as a polynomial in the generator.
  Poly<Rat> as_poly() const { return Poly<Rat>(co_); }

 private:
  void reduce_();  // asserts coords length == field degree
  FieldPtr spec_;  // null = plain rational
  std::vector<Rat> co_;
};

// Promote both operands to a common field in place; InputError on mismatch.
void align_fields(ExactScalar& a, ExactScalar& b);

// The common field of a set of scalars (null if all plain rational).
FieldPtr common_field(const std::vector<ExactScalar>& xs);

}  // namespace covalg

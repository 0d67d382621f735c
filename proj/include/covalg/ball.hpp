#pragma once

#include <mpfr.h>

#include <string>
#include <utility>

#include "covalg/rational.hpp"

namespace covalg {

// Thrown when an operation needs a ball separated from zero but got one that
// may contain it; callers escalate precision and retry.
struct BallContainsZero : Error {
  using Error::Error;
};

// RAII wrapper around one mpfr number.
class Mpfr {
 public:
  explicit Mpfr(mpfr_prec_t prec = 64) {
    mpfr_init2(v_, prec);
    mpfr_set_zero(v_, 1);
  }
  Mpfr(const Mpfr& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  Mpfr(Mpfr&& o) noexcept {
    mpfr_init2(v_, 2);
    mpfr_swap(v_, o.v_);
  }
  Mpfr& operator=(const Mpfr& o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  Mpfr& operator=(Mpfr&& o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
  }
  ~Mpfr() { mpfr_clear(v_); }

  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }

 private:
  mpfr_t v_;
};

// Closed disk in the complex plane: |z - (mid_re + i*mid_im)| <= rad.
// Midpoints carry the working precision; the radius is a low-precision
// upper bound maintained with outward rounding. rad == 0 means exact.
class ComplexBall {
 public:
  static constexpr mpfr_prec_t kRadiusPrec = 32;

  explicit ComplexBall(mpfr_prec_t prec = 64);
  static ComplexBall from_rat(const Rat& re, const Rat& im, mpfr_prec_t prec);
  static ComplexBall from_long(long re, mpfr_prec_t prec);

  mpfr_prec_t prec() const { return mpfr_get_prec(re_.get()); }
  mpfr_srcptr mid_re() const { return re_.get(); }
  mpfr_srcptr mid_im() const { return im_.get(); }
  mpfr_srcptr rad() const { return rad_.get(); }
  bool is_exact() const { return mpfr_zero_p(rad_.get()); }

  void set_rad(const Rat& r);                    // overwrite, rounded up
  void add_rad(mpfr_srcptr extra);               // inflate, rounded up
  void set_mid(mpfr_srcptr re, mpfr_srcptr im);  // exact copy

  // Midpoint distance to o, as a [lower, upper] pair of bounds.
  std::pair<Mpfr, Mpfr> mid_dist_bounds(const ComplexBall& o) const;

  Mpfr abs_upper() const;  // upper bound of |z| over the ball
  Mpfr abs_lower() const;  // lower bound (0 when the ball may contain 0)
  bool contains_zero() const;
  bool disjoint(const ComplexBall& o) const;      // certified
  bool contains_ball(const ComplexBall& o) const;  // certified o subset of this
  bool strictly_contains(const ComplexBall& o) const;

  std::string str(int digits = 8) const;  // human-readable, deterministic

  friend ComplexBall ball_add(const ComplexBall& a, const ComplexBall& b);
  friend ComplexBall ball_sub(const ComplexBall& a, const ComplexBall& b);
  friend ComplexBall ball_neg(const ComplexBall& a);
  friend ComplexBall ball_conj(const ComplexBall& a);
  friend ComplexBall ball_mul(const ComplexBall& a, const ComplexBall& b);
  friend ComplexBall ball_recip(const ComplexBall& a);
  friend ComplexBall ball_div(const ComplexBall& a, const ComplexBall& b);
  friend ComplexBall ball_round(const ComplexBall& a, mpfr_prec_t prec);

 private:
  Mpfr re_, im_, rad_;
};

ComplexBall ball_add(const ComplexBall& a, const ComplexBall& b);
ComplexBall ball_sub(const ComplexBall& a, const ComplexBall& b);
ComplexBall ball_neg(const ComplexBall& a);
ComplexBall ball_conj(const ComplexBall& a);
ComplexBall ball_mul(const ComplexBall& a, const ComplexBall& b);
ComplexBall ball_recip(const ComplexBall& a);  // throws BallContainsZero
ComplexBall ball_div(const ComplexBall& a, const ComplexBall& b);
ComplexBall ball_round(const ComplexBall& a, mpfr_prec_t prec);

// rad <= 2^e check, for termination tests.
bool ball_rad_below_2exp(const ComplexBall& a, long e);

}  // namespace covalg

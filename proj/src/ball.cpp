#include "covalg/ball.hpp"

#include <cstdio>
#include <cstdlib>

namespace covalg {

namespace {

constexpr mpfr_prec_t kRp = ComplexBall::kRadiusPrec;

// Accumulates upper bounds of midpoint rounding errors.
class ErrAcc {
 public:
  ErrAcc() : e_(kRp) {}
  // Record the rounding error of an operation that produced x with ternary t.
  void bump(mpfr_srcptr x, int t) {
    if (t == 0) return;
    if (mpfr_zero_p(x)) throw InternalError("ball rounding underflowed to zero");
    Mpfr u(kRp);
    // One full ulp of x bounds the half-ulp RNDN error with slack.
    mpfr_set_ui_2exp(u.get(), 1, mpfr_get_exp(x) - mpfr_get_prec(x), MPFR_RNDU);
    mpfr_add(e_.get(), e_.get(), u.get(), MPFR_RNDU);
  }
  mpfr_srcptr get() const { return e_.get(); }

 private:
  Mpfr e_;
};

void radd(Mpfr& r, mpfr_srcptr x) { mpfr_add(r.get(), r.get(), x, MPFR_RNDU); }

}  // namespace

ComplexBall::ComplexBall(mpfr_prec_t prec) : re_(prec), im_(prec), rad_(kRp) {}

ComplexBall ComplexBall::from_rat(const Rat& re, const Rat& im, mpfr_prec_t prec) {
  ComplexBall b(prec);
  ErrAcc err;
  int t1 = mpfr_set_q(b.re_.get(), re.get_mpq_t(), MPFR_RNDN);
  err.bump(b.re_.get(), t1);
  int t2 = mpfr_set_q(b.im_.get(), im.get_mpq_t(), MPFR_RNDN);
  err.bump(b.im_.get(), t2);
  mpfr_set(b.rad_.get(), err.get(), MPFR_RNDU);
  return b;
}

ComplexBall ComplexBall::from_long(long re, mpfr_prec_t prec) {
  ComplexBall b(prec);
  mpfr_set_si(b.re_.get(), re, MPFR_RNDN);
  return b;
}

void ComplexBall::set_rad(const Rat& r) {
  if (r < 0) throw InternalError("negative ball radius");
  mpfr_set_q(rad_.get(), r.get_mpq_t(), MPFR_RNDU);
}

void ComplexBall::add_rad(mpfr_srcptr extra) { mpfr_add(rad_.get(), rad_.get(), extra, MPFR_RNDU); }

void ComplexBall::set_mid(mpfr_srcptr re, mpfr_srcptr im) {
  mpfr_set_prec(re_.get(), mpfr_get_prec(re));
  mpfr_set_prec(im_.get(), mpfr_get_prec(im));
  mpfr_set(re_.get(), re, MPFR_RNDN);
  mpfr_set(im_.get(), im, MPFR_RNDN);
}

std::pair<Mpfr, Mpfr> ComplexBall::mid_dist_bounds(const ComplexBall& o) const {
  mpfr_prec_t p = std::max(prec(), o.prec()) + 8;
  // Component differences as [lo, hi] intervals.
  Mpfr dre_lo(p), dre_hi(p), dim_lo(p), dim_hi(p);
  mpfr_sub(dre_lo.get(), re_.get(), o.re_.get(), MPFR_RNDD);
  mpfr_sub(dre_hi.get(), re_.get(), o.re_.get(), MPFR_RNDU);
  mpfr_sub(dim_lo.get(), im_.get(), o.im_.get(), MPFR_RNDD);
  mpfr_sub(dim_hi.get(), im_.get(), o.im_.get(), MPFR_RNDU);
  auto abs_bounds = [&](const Mpfr& lo, const Mpfr& hi, Mpfr& alo, Mpfr& ahi) {
    Mpfr nlo(p), nhi(p);
    mpfr_abs(nlo.get(), lo.get(), MPFR_RNDU);
    mpfr_abs(nhi.get(), hi.get(), MPFR_RNDU);
    mpfr_max(ahi.get(), nlo.get(), nhi.get(), MPFR_RNDU);
    if (mpfr_sgn(lo.get()) <= 0 && mpfr_sgn(hi.get()) >= 0) {
      mpfr_set_zero(alo.get(), 1);
    } else {
      mpfr_abs(nlo.get(), lo.get(), MPFR_RNDD);
      mpfr_abs(nhi.get(), hi.get(), MPFR_RNDD);
      mpfr_min(alo.get(), nlo.get(), nhi.get(), MPFR_RNDD);
    }
  };
  Mpfr are_lo(p), are_hi(p), aim_lo(p), aim_hi(p);
  abs_bounds(dre_lo, dre_hi, are_lo, are_hi);
  abs_bounds(dim_lo, dim_hi, aim_lo, aim_hi);
  Mpfr lo(p), hi(p);
  mpfr_hypot(lo.get(), are_lo.get(), aim_lo.get(), MPFR_RNDD);
  mpfr_hypot(hi.get(), are_hi.get(), aim_hi.get(), MPFR_RNDU);
  return {std::move(lo), std::move(hi)};
}

Mpfr ComplexBall::abs_upper() const {
  Mpfr h(kRp);
  mpfr_hypot(h.get(), re_.get(), im_.get(), MPFR_RNDU);
  mpfr_add(h.get(), h.get(), rad_.get(), MPFR_RNDU);
  return h;
}

Mpfr ComplexBall::abs_lower() const {
  Mpfr h(prec());
  mpfr_hypot(h.get(), re_.get(), im_.get(), MPFR_RNDD);
  mpfr_sub(h.get(), h.get(), rad_.get(), MPFR_RNDD);
  if (mpfr_sgn(h.get()) < 0) mpfr_set_zero(h.get(), 1);
  return h;
}

bool ComplexBall::contains_zero() const {
  Mpfr lo = abs_lower();
  return mpfr_zero_p(lo.get());
}

bool ComplexBall::disjoint(const ComplexBall& o) const {
  auto [lo, hi] = mid_dist_bounds(o);
  (void)hi;
  Mpfr rr(kRp);
  mpfr_add(rr.get(), rad_.get(), o.rad_.get(), MPFR_RNDU);
  return mpfr_cmp(lo.get(), rr.get()) > 0;
}

bool ComplexBall::contains_ball(const ComplexBall& o) const {
  auto [lo, hi] = mid_dist_bounds(o);
  (void)lo;
  Mpfr s(kRp);
  mpfr_add(s.get(), hi.get(), o.rad_.get(), MPFR_RNDU);
  return mpfr_cmp(s.get(), rad_.get()) <= 0;
}

bool ComplexBall::strictly_contains(const ComplexBall& o) const {
  auto [lo, hi] = mid_dist_bounds(o);
  (void)lo;
  Mpfr s(kRp);
  mpfr_add(s.get(), hi.get(), o.rad_.get(), MPFR_RNDU);
  return mpfr_cmp(s.get(), rad_.get()) < 0;
}

std::string ComplexBall::str(int digits) const {
  char* out = nullptr;
  int n = mpfr_asprintf(&out, "(%.*Rg %+.*Rg*i +/- %.3Re)", digits, re_.get(), digits, im_.get(),
                        rad_.get());
  if (n < 0) throw InternalError("mpfr_asprintf failed");
  std::string s(out);
  mpfr_free_str(out);
  return s;
}

ComplexBall ball_add(const ComplexBall& a, const ComplexBall& b) {
  ComplexBall r(std::max(a.prec(), b.prec()));
  ErrAcc err;
  int t1 = mpfr_add(r.re_.get(), a.re_.get(), b.re_.get(), MPFR_RNDN);
  err.bump(r.re_.get(), t1);
  int t2 = mpfr_add(r.im_.get(), a.im_.get(), b.im_.get(), MPFR_RNDN);
  err.bump(r.im_.get(), t2);
  mpfr_add(r.rad_.get(), a.rad_.get(), b.rad_.get(), MPFR_RNDU);
  radd(r.rad_, err.get());
  return r;
}

ComplexBall ball_sub(const ComplexBall& a, const ComplexBall& b) { return ball_add(a, ball_neg(b)); }

ComplexBall ball_neg(const ComplexBall& a) {
  ComplexBall r(a.prec());
  mpfr_neg(r.re_.get(), a.re_.get(), MPFR_RNDN);
  mpfr_neg(r.im_.get(), a.im_.get(), MPFR_RNDN);
  mpfr_set(r.rad_.get(), a.rad_.get(), MPFR_RNDU);
  return r;
}

ComplexBall ball_conj(const ComplexBall& a) {
  ComplexBall r(a.prec());
  mpfr_set(r.re_.get(), a.re_.get(), MPFR_RNDN);
  mpfr_neg(r.im_.get(), a.im_.get(), MPFR_RNDN);
  mpfr_set(r.rad_.get(), a.rad_.get(), MPFR_RNDU);
  return r;
}

ComplexBall ball_mul(const ComplexBall& a, const ComplexBall& b) {
  mpfr_prec_t p = std::max(a.prec(), b.prec());
  ComplexBall r(p);
  ErrAcc err;
  Mpfr p1(p), p2(p);
  int t;
  // re = a.re*b.re - a.im*b.im
  t = mpfr_mul(p1.get(), a.re_.get(), b.re_.get(), MPFR_RNDN);
  err.bump(p1.get(), t);
  t = mpfr_mul(p2.get(), a.im_.get(), b.im_.get(), MPFR_RNDN);
  err.bump(p2.get(), t);
  t = mpfr_sub(r.re_.get(), p1.get(), p2.get(), MPFR_RNDN);
  err.bump(r.re_.get(), t);
  // im = a.re*b.im + a.im*b.re
  t = mpfr_mul(p1.get(), a.re_.get(), b.im_.get(), MPFR_RNDN);
  err.bump(p1.get(), t);
  t = mpfr_mul(p2.get(), a.im_.get(), b.re_.get(), MPFR_RNDN);
  err.bump(p2.get(), t);
  t = mpfr_add(r.im_.get(), p1.get(), p2.get(), MPFR_RNDN);
  err.bump(r.im_.get(), t);
  // rad = |a|*rb + |b|*ra + ra*rb + rounding
  Mpfr ma(kRp), mb(kRp), acc(kRp), tmp(kRp);
  mpfr_hypot(ma.get(), a.re_.get(), a.im_.get(), MPFR_RNDU);
  mpfr_hypot(mb.get(), b.re_.get(), b.im_.get(), MPFR_RNDU);
  mpfr_mul(acc.get(), ma.get(), b.rad_.get(), MPFR_RNDU);
  mpfr_mul(tmp.get(), mb.get(), a.rad_.get(), MPFR_RNDU);
  mpfr_add(acc.get(), acc.get(), tmp.get(), MPFR_RNDU);
  mpfr_mul(tmp.get(), a.rad_.get(), b.rad_.get(), MPFR_RNDU);
  mpfr_add(acc.get(), acc.get(), tmp.get(), MPFR_RNDU);
  mpfr_add(r.rad_.get(), acc.get(), err.get(), MPFR_RNDU);
  return r;
}

ComplexBall ball_recip(const ComplexBall& a) {
  mpfr_prec_t p = a.prec();
  ComplexBall r(p);
  // |mid| bounds and zero separation.
  Mpfr mlo(p), mhi(kRp), gap(p);
  mpfr_hypot(mlo.get(), a.re_.get(), a.im_.get(), MPFR_RNDD);
  mpfr_hypot(mhi.get(), a.re_.get(), a.im_.get(), MPFR_RNDU);
  mpfr_sub(gap.get(), mlo.get(), a.rad_.get(), MPFR_RNDD);
  if (mpfr_sgn(gap.get()) <= 0) throw BallContainsZero("reciprocal of a ball containing zero");
  // n ~= |mid|^2 with |n - |mid|^2| <= errN.
  ErrAcc errN;
  Mpfr n(p), t1(p);
  int t;
  t = mpfr_sqr(t1.get(), a.re_.get(), MPFR_RNDN);
  errN.bump(t1.get(), t);
  t = mpfr_sqr(n.get(), a.im_.get(), MPFR_RNDN);
  errN.bump(n.get(), t);
  t = mpfr_add(n.get(), n.get(), t1.get(), MPFR_RNDN);
  errN.bump(n.get(), t);
  // Computed midpoint: conj(mid)/n, with division rounding err1.
  ErrAcc err1;
  t = mpfr_div(r.re_.get(), a.re_.get(), n.get(), MPFR_RNDN);
  err1.bump(r.re_.get(), t);
  Mpfr negim(p);
  mpfr_neg(negim.get(), a.im_.get(), MPFR_RNDN);
  t = mpfr_div(r.im_.get(), negim.get(), n.get(), MPFR_RNDN);
  err1.bump(r.im_.get(), t);
  // |conj(mid)/n - 1/mid| = |mid| * |n - |mid|^2| / (n * |mid|^2)
  //                      <= mhi * errN / (n_lo * mlo^2) =: errD.
  Mpfr nlo(p), m2lo(p), den(kRp), errD(kRp);
  mpfr_sub(nlo.get(), n.get(), errN.get(), MPFR_RNDD);
  mpfr_sqr(m2lo.get(), mlo.get(), MPFR_RNDD);
  if (mpfr_sgn(nlo.get()) <= 0 || mpfr_sgn(m2lo.get()) <= 0)
    throw BallContainsZero("reciprocal of a ball containing zero");
  mpfr_mul(den.get(), nlo.get(), m2lo.get(), MPFR_RNDD);
  mpfr_mul(errD.get(), mhi.get(), errN.get(), MPFR_RNDU);
  mpfr_div(errD.get(), errD.get(), den.get(), MPFR_RNDU);
  // Enclosure of {1/z : z in ball} about 1/mid: rad / (|mid|_lo * gap).
  Mpfr edn(kRp), rr(kRp);
  mpfr_mul(edn.get(), mlo.get(), gap.get(), MPFR_RNDD);
  mpfr_div(rr.get(), a.rad_.get(), edn.get(), MPFR_RNDU);
  mpfr_add(r.rad_.get(), rr.get(), errD.get(), MPFR_RNDU);
  radd(r.rad_, err1.get());
  return r;
}

ComplexBall ball_div(const ComplexBall& a, const ComplexBall& b) { return ball_mul(a, ball_recip(b)); }

ComplexBall ball_round(const ComplexBall& a, mpfr_prec_t prec) {
  ComplexBall r(prec);
  ErrAcc err;
  int t1 = mpfr_set(r.re_.get(), a.re_.get(), MPFR_RNDN);
  err.bump(r.re_.get(), t1);
  int t2 = mpfr_set(r.im_.get(), a.im_.get(), MPFR_RNDN);
  err.bump(r.im_.get(), t2);
  mpfr_add(r.rad_.get(), a.rad_.get(), err.get(), MPFR_RNDU);
  return r;
}

bool ball_rad_below_2exp(const ComplexBall& a, long e) {
  if (a.is_exact()) return true;
  Mpfr bound(ComplexBall::kRadiusPrec);
  mpfr_set_ui_2exp(bound.get(), 1, e, MPFR_RNDD);
  return mpfr_cmp(a.rad(), bound.get()) <= 0;
}

}  // namespace covalg

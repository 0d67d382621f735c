#include "covalg/roots.hpp"

#include <algorithm>
#include <cmath>

namespace covalg {

namespace {

// Plain complex midpoint arithmetic (round-to-nearest, no error tracking);
// only used to steer iterations, never for certified statements.
struct MpC {
  Mpfr re, im;
  explicit MpC(mpfr_prec_t p) : re(p), im(p) {}
};

MpC c_from_ball_mid(const ComplexBall& b, mpfr_prec_t p) {
  MpC r(p);
  mpfr_set(r.re.get(), b.mid_re(), MPFR_RNDN);
  mpfr_set(r.im.get(), b.mid_im(), MPFR_RNDN);
  return r;
}

MpC c_add(const MpC& a, const MpC& b, mpfr_prec_t p) {
  MpC r(p);
  mpfr_add(r.re.get(), a.re.get(), b.re.get(), MPFR_RNDN);
  mpfr_add(r.im.get(), a.im.get(), b.im.get(), MPFR_RNDN);
  return r;
}

MpC c_sub(const MpC& a, const MpC& b, mpfr_prec_t p) {
  MpC r(p);
  mpfr_sub(r.re.get(), a.re.get(), b.re.get(), MPFR_RNDN);
  mpfr_sub(r.im.get(), a.im.get(), b.im.get(), MPFR_RNDN);
  return r;
}

MpC c_mul(const MpC& a, const MpC& b, mpfr_prec_t p) {
  MpC r(p);
  Mpfr t1(p), t2(p);
  mpfr_mul(t1.get(), a.re.get(), b.re.get(), MPFR_RNDN);
  mpfr_mul(t2.get(), a.im.get(), b.im.get(), MPFR_RNDN);
  mpfr_sub(r.re.get(), t1.get(), t2.get(), MPFR_RNDN);
  mpfr_mul(t1.get(), a.re.get(), b.im.get(), MPFR_RNDN);
  mpfr_mul(t2.get(), a.im.get(), b.re.get(), MPFR_RNDN);
  mpfr_add(r.im.get(), t1.get(), t2.get(), MPFR_RNDN);
  return r;
}

MpC c_div(const MpC& a, const MpC& b, mpfr_prec_t p) {
  MpC r(p);
  Mpfr n(p), t1(p), t2(p);
  mpfr_sqr(t1.get(), b.re.get(), MPFR_RNDN);
  mpfr_sqr(t2.get(), b.im.get(), MPFR_RNDN);
  mpfr_add(n.get(), t1.get(), t2.get(), MPFR_RNDN);
  // (a * conj(b)) / |b|^2
  mpfr_mul(t1.get(), a.re.get(), b.re.get(), MPFR_RNDN);
  mpfr_mul(t2.get(), a.im.get(), b.im.get(), MPFR_RNDN);
  mpfr_add(t1.get(), t1.get(), t2.get(), MPFR_RNDN);
  mpfr_div(r.re.get(), t1.get(), n.get(), MPFR_RNDN);
  mpfr_mul(t1.get(), a.im.get(), b.re.get(), MPFR_RNDN);
  mpfr_mul(t2.get(), a.re.get(), b.im.get(), MPFR_RNDN);
  mpfr_sub(t1.get(), t1.get(), t2.get(), MPFR_RNDN);
  mpfr_div(r.im.get(), t1.get(), n.get(), MPFR_RNDN);
  return r;
}

Mpfr c_abs(const MpC& a, mpfr_prec_t p) {
  Mpfr r(p);
  mpfr_hypot(r.get(), a.re.get(), a.im.get(), MPFR_RNDN);
  return r;
}

bool c_is_zero(const MpC& a) { return mpfr_zero_p(a.re.get()) && mpfr_zero_p(a.im.get()); }

// f(z) and f'(z) by a joint Horner pass on midpoints.
void horner2(const std::vector<MpC>& a, const MpC& z, mpfr_prec_t p, MpC& f, MpC& df) {
  f = MpC(p);
  df = MpC(p);
  for (std::size_t k = a.size(); k-- > 0;) {
    df = c_mul(df, z, p);
    df = c_add(df, f, p);
    f = c_mul(f, z, p);
    f = c_add(f, a[k], p);
  }
}

ComplexBall exact_point_ball(const MpC& z, mpfr_prec_t p) {
  ComplexBall b(p);
  b.set_mid(z.re.get(), z.im.get());
  return b;
}

// Aberth-Ehrlich simultaneous iteration on midpoints. Returns false when it
// failed to converge within the iteration budget.
bool aberth(const std::vector<MpC>& a, std::vector<MpC>& z, mpfr_prec_t p) {
  const int n = static_cast<int>(z.size());
  Mpfr tol(p);
  mpfr_set_ui_2exp(tol.get(), 1, -static_cast<long>(p) / 2 - 8, MPFR_RNDN);
  for (int iter = 0; iter < 400; ++iter) {
    bool done = true;
    for (int j = 0; j < n; ++j) {
      MpC f(p), df(p);
      horner2(a, z[static_cast<std::size_t>(j)], p, f, df);
      MpC nwt(p);
      if (c_is_zero(df)) {
        // Nudge deterministically off the stationary point.
        mpfr_set_d(nwt.re.get(), 1e-3, MPFR_RNDN);
        mpfr_set_d(nwt.im.get(), 2e-3, MPFR_RNDN);
      } else {
        nwt = c_div(f, df, p);
      }
      // Aberth correction: nwt / (1 - nwt * sum_{k!=j} 1/(z_j - z_k))
      MpC s(p);
      for (int k = 0; k < n; ++k) {
        if (k == j) continue;
        MpC d = c_sub(z[static_cast<std::size_t>(j)], z[static_cast<std::size_t>(k)], p);
        if (c_is_zero(d)) {
          mpfr_set_ui_2exp(d.re.get(), 1, -static_cast<long>(p) / 3, MPFR_RNDN);
        }
        MpC one(p);
        mpfr_set_ui(one.re.get(), 1, MPFR_RNDN);
        s = c_add(s, c_div(one, d, p), p);
      }
      MpC den(p);
      mpfr_set_ui(den.re.get(), 1, MPFR_RNDN);
      den = c_sub(den, c_mul(nwt, s, p), p);
      MpC corr = c_is_zero(den) ? nwt : c_div(nwt, den, p);
      z[static_cast<std::size_t>(j)] = c_sub(z[static_cast<std::size_t>(j)], corr, p);
      // Convergence: |corr| <= tol * max(1, |z_j|)
      Mpfr ca = c_abs(corr, p);
      Mpfr za = c_abs(z[static_cast<std::size_t>(j)], p);
      if (mpfr_cmp_ui(za.get(), 1) < 0) mpfr_set_ui(za.get(), 1, MPFR_RNDN);
      mpfr_mul(za.get(), za.get(), tol.get(), MPFR_RNDN);
      if (mpfr_cmp(ca.get(), za.get()) > 0) done = false;
    }
    if (done) return true;
  }
  return false;
}

}  // namespace

ComplexBall eval_ball_poly(const std::vector<ComplexBall>& c, const ComplexBall& z) {
  mpfr_prec_t p = z.prec();
  for (const auto& a : c) p = std::max(p, a.prec());
  ComplexBall r(p);
  for (std::size_t k = c.size(); k-- > 0;) {
    r = ball_mul(r, z);
    r = ball_add(r, c[k]);
  }
  return r;
}

std::vector<ComplexBall> ball_poly_derivative(const std::vector<ComplexBall>& c) {
  std::vector<ComplexBall> d;
  if (c.size() <= 1) return d;
  d.reserve(c.size() - 1);
  for (std::size_t i = 1; i < c.size(); ++i) {
    ComplexBall k = ComplexBall::from_long(static_cast<long>(i), c[i].prec());
    d.push_back(ball_mul(k, c[i]));
  }
  return d;
}

std::optional<ComplexBall> certify_root_near(const std::vector<ComplexBall>& coeffs,
                                             const ComplexBall& seed, int max_attempts) {
  mpfr_prec_t p = seed.prec();
  for (const auto& a : coeffs) p = std::max(p, a.prec());
  std::vector<ComplexBall> dcoeffs = ball_poly_derivative(coeffs);

  // Polish the seed midpoint with plain Newton first.
  std::vector<MpC> a;
  a.reserve(coeffs.size());
  for (const auto& cb : coeffs) a.push_back(c_from_ball_mid(cb, p));
  MpC z = c_from_ball_mid(seed, p);
  for (int it = 0; it < 80; ++it) {
    MpC f(p), df(p);
    horner2(a, z, p, f, df);
    if (c_is_zero(df)) break;
    MpC corr = c_div(f, df, p);
    z = c_sub(z, corr, p);
    Mpfr ca = c_abs(corr, p);
    Mpfr za = c_abs(z, p);
    if (mpfr_cmp_ui(za.get(), 1) < 0) mpfr_set_ui(za.get(), 1, MPFR_RNDN);
    mpfr_mul_2si(za.get(), za.get(), -static_cast<long>(p) + 8, MPFR_RNDN);
    if (mpfr_cmp(ca.get(), za.get()) <= 0) break;
  }

  // Initial certification radius from the Newton correction size.
  ComplexBall zball = exact_point_ball(z, p);
  ComplexBall fz = eval_ball_poly(coeffs, zball);
  Mpfr r0(ComplexBall::kRadiusPrec);
  {
    MpC f(p), df(p);
    horner2(a, z, p, f, df);
    if (c_is_zero(df)) {
      mpfr_set_ui_2exp(r0.get(), 1, -static_cast<long>(p) / 2, MPFR_RNDU);
    } else {
      MpC corr = c_div(f, df, p);
      Mpfr ca = c_abs(corr, p);
      mpfr_mul_ui(r0.get(), ca.get(), 4 * static_cast<unsigned long>(coeffs.size()), MPFR_RNDU);
    }
    Mpfr floor_(ComplexBall::kRadiusPrec);
    mpfr_set_ui_2exp(floor_.get(), 1, -static_cast<long>(p) + 16, MPFR_RNDU);
    Mpfr za = c_abs(z, p);
    if (mpfr_cmp_ui(za.get(), 1) > 0) mpfr_mul(floor_.get(), floor_.get(), za.get(), MPFR_RNDU);
    if (mpfr_cmp(r0.get(), floor_.get()) < 0) mpfr_set(r0.get(), floor_.get(), MPFR_RNDU);
  }

  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    ComplexBall region = zball;
    Mpfr rr(ComplexBall::kRadiusPrec);
    mpfr_set(rr.get(), r0.get(), MPFR_RNDU);
    mpfr_mul_2si(rr.get(), rr.get(), 2 * attempt, MPFR_RNDU);  // widen x4 per attempt
    region.add_rad(rr.get());
    try {
      ComplexBall dfr = eval_ball_poly(dcoeffs, region);
      ComplexBall step = ball_div(fz, dfr);
      ComplexBall contracted = ball_sub(zball, step);
      if (region.strictly_contains(contracted)) return contracted;
    } catch (const BallContainsZero&) {
      // Derivative ball straddles zero: the region is too wide already, and
      // widening further cannot help.
      return std::nullopt;
    }
  }
  return std::nullopt;
}

namespace {

// Newton-shrink a certified ball until rad <= 2^rad_exp, escalating the
// working precision as needed.
ComplexBall refine_certified(const CoeffProvider& provider, ComplexBall ball, long rad_exp,
                             mpfr_prec_t w, mpfr_prec_t cap) {
  while (true) {
    std::vector<ComplexBall> cb = provider(w);
    std::vector<ComplexBall> db = ball_poly_derivative(cb);
    bool progress = true;
    while (progress && !ball_rad_below_2exp(ball, rad_exp)) {
      progress = false;
      ComplexBall mid(w);
      mid.set_mid(ball.mid_re(), ball.mid_im());
      try {
        ComplexBall fz = eval_ball_poly(cb, mid);
        ComplexBall dfb = eval_ball_poly(db, ball);
        ComplexBall next = ball_sub(mid, ball_div(fz, dfb));
        if (ball.contains_ball(next)) {
          // Require geometric shrink to know we are not stalled.
          Mpfr half(ComplexBall::kRadiusPrec);
          mpfr_mul_2si(half.get(), ball.rad(), -1, MPFR_RNDU);
          if (mpfr_cmp(next.rad(), half.get()) <= 0 || ball.strictly_contains(next)) {
            bool shrunk = mpfr_cmp(next.rad(), ball.rad()) < 0;
            ball = next;
            progress = shrunk;
          }
        }
      } catch (const BallContainsZero&) {
        progress = false;
      }
    }
    if (ball_rad_below_2exp(ball, rad_exp)) return ball;
    if (w >= cap) throw UndeterminedError("root refinement exceeded the precision cap");
    w = std::min(cap, w * 2);
  }
}

}  // namespace

ComplexBall refine_root(const CoeffProvider& coeffs, int degree, ComplexBall isolating,
                        long rad_exp, mpfr_prec_t start_prec, mpfr_prec_t cap) {
  (void)degree;
  return refine_certified(coeffs, std::move(isolating), rad_exp, start_prec, cap);
}

RootIsolation isolate_roots(const CoeffProvider& provider, int degree, long rad_exp,
                            mpfr_prec_t start_prec, mpfr_prec_t prec_cap) {
  if (degree < 1) return {{}, start_prec};
  mpfr_prec_t w = start_prec;
  while (true) {
    bool ok = true;
    std::vector<ComplexBall> cb = provider(w);
    if (static_cast<int>(cb.size()) != degree + 1)
      throw InternalError("isolate_roots: provider length mismatch");
    if (cb.back().contains_zero())
      throw InternalError("isolate_roots: leading coefficient ball contains zero");

    // Midpoint coefficients, normalized, and initial guesses on a staggered circle.
    std::vector<MpC> a;
    a.reserve(cb.size());
    for (const auto& c : cb) a.push_back(c_from_ball_mid(c, w));
    Mpfr bound(w), t(w);
    mpfr_set_ui(bound.get(), 0, MPFR_RNDN);
    Mpfr lcabs = c_abs(a.back(), w);
    for (int i = 0; i < degree; ++i) {
      Mpfr ca = c_abs(a[static_cast<std::size_t>(i)], w);
      mpfr_div(t.get(), ca.get(), lcabs.get(), MPFR_RNDN);
      mpfr_max(bound.get(), bound.get(), t.get(), MPFR_RNDN);
    }
    mpfr_add_ui(bound.get(), bound.get(), 1, MPFR_RNDN);
    std::vector<MpC> z;
    z.reserve(static_cast<std::size_t>(degree));
    for (int j = 0; j < degree; ++j) {
      MpC g(w);
      // radius staggered in (0.3, 0.9)*bound, angle offset to avoid symmetry locks
      double frac = degree == 1 ? 0.5 : 0.3 + 0.6 * static_cast<double>(j) / degree;
      double ang = 2.0 * 3.14159265358979323846 * (static_cast<double>(j) + 0.3117) /
                       static_cast<double>(degree) +
                   0.5251;
      mpfr_set_d(g.re.get(), frac * std::cos(ang), MPFR_RNDN);
      mpfr_set_d(g.im.get(), frac * std::sin(ang), MPFR_RNDN);
      mpfr_mul(g.re.get(), g.re.get(), bound.get(), MPFR_RNDN);
      mpfr_mul(g.im.get(), g.im.get(), bound.get(), MPFR_RNDN);
      z.push_back(std::move(g));
    }

    std::vector<ComplexBall> roots;
    if (!aberth(a, z, w)) ok = false;
    if (ok) {
      roots.reserve(z.size());
      for (const auto& zj : z) {
        auto c = certify_root_near(cb, exact_point_ball(zj, w));
        if (!c) {
          ok = false;
          break;
        }
        roots.push_back(*c);
      }
    }
    if (ok) {
      for (std::size_t i = 0; ok && i < roots.size(); ++i)
        for (std::size_t j = i + 1; j < roots.size(); ++j)
          if (!roots[i].disjoint(roots[j])) {
            ok = false;
            break;
          }
    }
    if (ok) {
      for (auto& r : roots) r = refine_certified(provider, r, rad_exp, w, prec_cap);
      std::sort(roots.begin(), roots.end(), [](const ComplexBall& x, const ComplexBall& y) {
        int c = mpfr_cmp(x.mid_re(), y.mid_re());
        if (c != 0) return c < 0;
        return mpfr_cmp(x.mid_im(), y.mid_im()) < 0;
      });
      return {std::move(roots), w};
    }
    if (w >= prec_cap) throw UndeterminedError("root isolation exceeded the precision cap");
    w = std::min(prec_cap, w * 2);
  }
}

CoeffProvider rat_poly_provider(Poly<Rat> p) {
  return [p = std::move(p)](mpfr_prec_t w) {
    std::vector<ComplexBall> cb;
    cb.reserve(p.coeffs.size());
    for (const auto& q : p.coeffs) cb.push_back(ComplexBall::from_rat(q, Rat(0), w));
    return cb;
  };
}

CoeffProvider scalar_poly_provider(Poly<ExactScalar> p, mpfr_prec_t prec_cap) {
  return [p = std::move(p), prec_cap](mpfr_prec_t w) {
    std::vector<ComplexBall> cb;
    cb.reserve(p.coeffs.size());
    for (const auto& s : p.coeffs) cb.push_back(s.embed(w, std::max(prec_cap, 4 * w)));
    return cb;
  };
}

}  // namespace covalg

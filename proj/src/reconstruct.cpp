#include "covalg/reconstruct.hpp"

#include <algorithm>

#include "covalg/factor_q.hpp"
#include "covalg/roots.hpp"

namespace covalg {

namespace {

// Exact value of a finite mpfr as a rational (mpfr values are dyadic).
Rat mpfr_to_rat(mpfr_srcptr x) {
  if (mpfr_zero_p(x)) return Rat(0);
  Int z;
  mpfr_exp_t e = mpfr_get_z_2exp(z.get_mpz_t(), x);
  Rat r(z);
  if (e > 0) {
    Int p(1);
    mpz_mul_2exp(p.get_mpz_t(), p.get_mpz_t(), static_cast<mp_bitcnt_t>(e));
    r *= Rat(p);
  } else if (e < 0) {
    Int p(1);
    mpz_mul_2exp(p.get_mpz_t(), p.get_mpz_t(), static_cast<mp_bitcnt_t>(-e));
    r /= Rat(p);
  }
  r.canonicalize();
  return r;
}

// Continued-fraction recovery of the unique small rational within distance
// rad of mid. The 4*q^2*rad <= 1 guard keeps the answer unambiguous.
std::optional<Rat> rational_from_parts(mpfr_srcptr mid, mpfr_srcptr rad) {
  Rat x = mpfr_to_rat(mid);
  Rat r = mpfr_to_rat(rad);
  if (r == 0) return x;

  Rat p0(1), q0(0), p1, q1(1);  // p1 = a0 set in first round
  Rat cur = x;
  bool first = true;
  for (int iter = 0; iter < 256; ++iter) {
    Int a;
    mpz_fdiv_q(a.get_mpz_t(), rat_num(cur).get_mpz_t(), rat_den(cur).get_mpz_t());
    Rat pa = first ? Rat(a) : Rat(a) * p1 + p0;
    Rat qa = first ? Rat(1) : Rat(a) * q1 + q0;
    pa.canonicalize();
    qa.canonicalize();
    Rat conv = pa / qa;
    conv.canonicalize();
    Rat err = conv - x;
    if (err < 0) err = -err;
    if (err <= r) {
      Rat guard = Rat(4) * qa * qa * r;
      guard.canonicalize();
      if (guard > 1) return std::nullopt;  // ambiguous at this radius
      return conv;
    }
    Rat frac = cur - Rat(a);
    frac.canonicalize();
    if (frac == 0) return std::nullopt;  // exhausted the exact expansion
    cur = Rat(1) / frac;
    cur.canonicalize();
    if (!first) {
      p0 = p1;
      q0 = q1;
    }
    p1 = pa;
    q1 = qa;
    first = false;
  }
  return std::nullopt;
}

Int round_scaled(mpfr_srcptr v, long bits) {
  Mpfr t(mpfr_get_prec(v) + 64);
  mpfr_mul_2si(t.get(), v, bits, MPFR_RNDN);
  Int z;
  mpfr_get_z(z.get_mpz_t(), t.get(), MPFR_RNDN);
  return z;
}

Rat vec_dot(const std::vector<Rat>& a, const std::vector<Rat>& b) {
  Rat s(0);
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  s.canonicalize();
  return s;
}

// Integer relation (c_0..c_{k-1}) with sum c_j v_j ~ 0 for complex inputs,
// via LLL on [I | 2^bits * Re v | 2^bits * Im v]. Candidates ordered by the
// reduced basis; the caller validates. Returns reduced coefficient rows.
std::vector<std::vector<Int>> relation_candidates(const std::vector<ComplexBall>& v, long bits) {
  const size_t k = v.size();
  std::vector<std::vector<Int>> basis(k, std::vector<Int>(k + 2, Int(0)));
  for (size_t j = 0; j < k; ++j) {
    basis[j][j] = 1;
    basis[j][k] = round_scaled(v[j].mid_re(), bits);
    basis[j][k + 1] = round_scaled(v[j].mid_im(), bits);
  }
  std::vector<std::vector<Int>> red = lll_reduce(std::move(basis));
  for (auto& row : red) row.resize(k);  // keep the coefficient part
  return red;
}

}  // namespace

std::vector<std::vector<Int>> lll_reduce(std::vector<std::vector<Int>> basis) {
  const size_t n = basis.size();
  if (n <= 1) return basis;

  std::vector<std::vector<Rat>> bstar;
  std::vector<std::vector<Rat>> mu;
  std::vector<Rat> B;

  auto gso = [&]() {
    bstar.assign(n, {});
    mu.assign(n, std::vector<Rat>(n, Rat(0)));
    B.assign(n, Rat(0));
    for (size_t i = 0; i < n; ++i) {
      std::vector<Rat> v(basis[i].size());
      for (size_t c = 0; c < v.size(); ++c) v[c] = Rat(basis[i][c]);
      for (size_t j = 0; j < i; ++j) {
        if (B[j] == 0) continue;
        Rat m = vec_dot(v, bstar[j]) / B[j];
        m.canonicalize();
        mu[i][j] = m;
        for (size_t c = 0; c < v.size(); ++c) v[c] -= m * bstar[j][c];
      }
      for (auto& c : v) c.canonicalize();
      bstar[i] = std::move(v);
      B[i] = vec_dot(bstar[i], bstar[i]);
    }
  };

  auto round_rat = [](const Rat& x) {
    Rat h = x + Rat(1, 2);
    h.canonicalize();
    Int r;
    mpz_fdiv_q(r.get_mpz_t(), rat_num(h).get_mpz_t(), rat_den(h).get_mpz_t());
    return r;
  };

  gso();
  size_t k = 1;
  int steps = 0;
  while (k < n) {
    if (++steps > 100000) throw InternalError("lll: did not terminate");
    for (size_t j = k; j-- > 0;) {
      Rat m = mu[k][j];
      if (m < 0) m = -m;
      if (Rat(2) * m > 1) {
        Int r = round_rat(mu[k][j]);
        for (size_t c = 0; c < basis[k].size(); ++c) basis[k][c] -= r * basis[j][c];
        gso();
      }
    }
    Rat lhs = B[k];
    Rat rhs = (Rat(3, 4) - mu[k][k - 1] * mu[k][k - 1]) * B[k - 1];
    lhs.canonicalize();
    rhs.canonicalize();
    if (lhs >= rhs) {
      ++k;
    } else {
      std::swap(basis[k], basis[k - 1]);
      gso();
      k = std::max<size_t>(1, k - 1);
    }
  }
  return basis;
}

std::optional<Rat> rational_from_ball(const ComplexBall& b) {
  Mpfr aim(64);
  mpfr_abs(aim.get(), b.mid_im(), MPFR_RNDU);
  if (mpfr_cmp(aim.get(), b.rad()) > 0) return std::nullopt;  // no real value inside
  return rational_from_parts(b.mid_re(), b.rad());
}

std::optional<ExactScalar> scalar_from_ball(const FieldPtr& F, const ComplexBall& b,
                                            mpfr_prec_t prec) {
  if (!F) {
    std::optional<Rat> r = rational_from_ball(b);
    if (!r) return std::nullopt;
    return ExactScalar(*r);
  }
  if (F->kind() == FieldKind::GaussianRationals) {
    std::optional<Rat> re = rational_from_parts(b.mid_re(), b.rad());
    std::optional<Rat> im = rational_from_parts(b.mid_im(), b.rad());
    if (!re || !im) return std::nullopt;
    return ExactScalar::gaussian(*re, *im);
  }

  const int r = F->degree();
  ComplexBall alpha = F->generator_ball(prec);
  std::vector<ComplexBall> v;
  ComplexBall pw = ComplexBall::from_long(1, prec);
  for (int j = 0; j < r; ++j) {
    v.push_back(pw);
    if (j + 1 < r) pw = ball_mul(pw, alpha);
  }
  v.push_back(b);

  const long bits = std::max<long>(64, prec - 16);
  for (const auto& row : relation_candidates(v, bits)) {
    const Int& q = row[static_cast<size_t>(r)];
    if (q == 0) continue;
    std::vector<Rat> co(static_cast<size_t>(r));
    for (int j = 0; j < r; ++j) {
      co[static_cast<size_t>(j)] = Rat(-row[static_cast<size_t>(j)], q);
      co[static_cast<size_t>(j)].canonicalize();
    }
    ExactScalar cand(F, co);
    // candidate must be compatible with the input ball
    ComplexBall cb = cand.embed(std::min<mpfr_prec_t>(prec, 256));
    ComplexBall diff = ball_sub(cb, b);
    if (diff.contains_zero()) return cand;
  }
  return std::nullopt;
}

std::optional<Poly<Rat>> min_poly_from_ball(const ComplexBall& b, int max_degree) {
  const mpfr_prec_t prec = b.prec();
  for (int d = 1; d <= max_degree; ++d) {
    std::vector<ComplexBall> v;
    ComplexBall pw = ComplexBall::from_long(1, prec);
    for (int j = 0; j <= d; ++j) {
      v.push_back(pw);
      if (j < d) pw = ball_mul(pw, b);
    }
    const long bits = std::max<long>(64, prec - 16);
    for (const auto& row : relation_candidates(v, bits)) {
      Poly<Rat> m;
      for (const Int& c : row) m.coeffs.emplace_back(Rat(c));
      m.normalize();
      if (m.degree() != d) continue;
      if (m.lc() < 0)
        for (auto& c : m.coeffs) c = -c;
      if (d > 1 && !irreducible_over_q(m)) continue;
      std::vector<ComplexBall> cb;
      for (const Rat& c : m.coeffs) cb.push_back(ComplexBall::from_rat(c, Rat(0), prec));
      if (!eval_ball_poly(cb, b).contains_zero()) continue;
      return m;
    }
  }
  return std::nullopt;
}

}  // namespace covalg

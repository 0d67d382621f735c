#include "covalg/factor_k.hpp"

#include <algorithm>

namespace covalg {

Poly<ExactScalar> lift_q_poly(const Poly<Rat>& a) {
  Poly<ExactScalar> r;
  r.coeffs.reserve(a.coeffs.size());
  for (const Rat& c : a.coeffs) r.coeffs.emplace_back(ExactScalar(c));
  r.normalize();
  return r;
}

Poly<Rat> rational_poly(const Poly<ExactScalar>& a) {
  Poly<Rat> r;
  r.coeffs.reserve(a.coeffs.size());
  for (const ExactScalar& c : a.coeffs) {
    if (!c.is_rational()) throw InternalError("rational_poly: non-rational coefficient");
    r.coeffs.push_back(c.rational_value());
  }
  r.normalize();
  return r;
}

namespace {

bool all_rational(const Poly<ExactScalar>& a) {
  for (const ExactScalar& c : a.coeffs)
    if (!c.is_rational()) return false;
  return true;
}

int cmp_scalar_poly(const Poly<ExactScalar>& a, const Poly<ExactScalar>& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree() ? -1 : 1;
  for (size_t i = a.coeffs.size(); i-- > 0;) {
    int c = ExactScalar::cmp(a.coeffs[i], b.coeffs[i]);
    if (c != 0) return c;
  }
  return 0;
}

}  // namespace

Poly<ExactScalar> gcd_k(const Poly<ExactScalar>& a, const Poly<ExactScalar>& b) {
  if (all_rational(a) && all_rational(b))
    return lift_q_poly(qpoly_gcd(rational_poly(a), rational_poly(b)));
  return gcd_monic(a, b);
}

std::vector<Poly<ExactScalar>> yun_k(const Poly<ExactScalar>& a) {
  if (all_rational(a)) {
    std::vector<Poly<ExactScalar>> out;
    for (const Poly<Rat>& p : yun_squarefree_q(rational_poly(a))) out.push_back(lift_q_poly(p));
    return out;
  }
  return yun_squarefree(a);
}

Poly<ExactScalar> squarefree_part_k(const Poly<ExactScalar>& a) {
  if (a.is_zero()) throw InternalError("squarefree_part_k: zero polynomial");
  if (a.degree() == 0) return Poly<ExactScalar>::constant(ExactScalar(1));
  Poly<ExactScalar> g = gcd_k(a, derivative(a));
  return make_monic(divexact(a, g));
}

ExactScalar resultant_k(const Poly<ExactScalar>& a, const Poly<ExactScalar>& b) {
  if (all_rational(a) && all_rational(b))
    return ExactScalar(qpoly_resultant(rational_poly(a), rational_poly(b)));
  return resultant_field(a, b);
}

namespace {

// Norm descent: factor a monic squarefree h over the extension field spec by
// pushing a generator shift through the norm to Q, splitting there, and
// pulling each piece back with a gcd.
std::vector<Poly<ExactScalar>> trager_squarefree(const Poly<ExactScalar>& h, const FieldPtr& F) {
  if (h.degree() == 1) return {h};
  const Poly<Rat>& m = F->min_poly();
  const int r = m.degree();
  const int D = h.degree() * r;
  ExactScalar alpha(F, [&] {
    std::vector<Rat> co(static_cast<size_t>(r), Rat(0));
    co[1] = Rat(1);
    return co;
  }());

  auto node_value = [](int j) -> long {  // 0, 1, -1, 2, -2, ...
    return (j % 2 == 1) ? (j + 1) / 2 : -(j / 2);
  };

  for (int shift_idx = 0;; ++shift_idx) {
    if (shift_idx > 2 * D * D + 8) throw InternalError("trager: no squarefree norm found");
    const long s = (shift_idx == 0) ? 0 : node_value(shift_idx);
    // H(x) = h(x - s*alpha)
    Poly<ExactScalar> lin;
    lin.coeffs = {ExactScalar(-s) * alpha, ExactScalar(1)};
    Poly<ExactScalar> H = (s == 0) ? h : compose(h, lin);

    // Norm(H) in Q[x] by evaluation at D+1 points and interpolation.
    std::vector<Rat> nodes, values;
    nodes.reserve(D + 1);
    values.reserve(D + 1);
    for (int j = 0; j <= D; ++j) {
      const long xj = node_value(j + 1);
      ExactScalar v = eval(H, ExactScalar(xj));
      values.push_back(qpoly_resultant(m, v.as_poly()));
      nodes.emplace_back(xj);
    }
    Poly<Rat> N = interpolate(nodes, values);
    if (N.degree() != D) throw InternalError("trager: norm degree mismatch");
    if (qpoly_gcd(N, derivative(N)).degree() != 0) continue;  // bad shift

    QFactorization nf = factor_over_q(N);
    if (nf.factors.size() == 1) return {h};

    Poly<ExactScalar> back;
    back.coeffs = {ExactScalar(s) * alpha, ExactScalar(1)};
    std::vector<Poly<ExactScalar>> out;
    Poly<ExactScalar> product = Poly<ExactScalar>::constant(ExactScalar(1));
    for (const QFactor& q : nf.factors) {
      Poly<ExactScalar> g = gcd_k(H, lift_q_poly(q.factor));
      if (g.degree() < 1) throw InternalError("trager: trivial gcd for norm factor");
      if (s != 0) g = make_monic(compose(g, back));
      product = product * g;
      out.push_back(std::move(g));
    }
    if (product != h) throw InternalError("trager: product check failed");
    return out;
  }
}

}  // namespace

KFactorization factor_over_k(const Poly<ExactScalar>& a) {
  if (a.is_zero()) throw InternalError("factor_over_k: zero polynomial");
  KFactorization out;
  out.unit = a.lc();
  if (a.degree() == 0) return out;

  FieldPtr F = common_field(a.coeffs);
  if (!F) {
    QFactorization qf = factor_over_q(rational_poly(a));
    out.unit = ExactScalar(qf.unit);
    for (QFactor& q : qf.factors) out.factors.push_back({lift_q_poly(q.factor), q.multiplicity});
    return out;
  }

  std::vector<Poly<ExactScalar>> parts = yun_k(make_monic(a));
  for (size_t i = 0; i < parts.size(); ++i) {
    if (parts[i].degree() < 1) continue;
    for (Poly<ExactScalar>& f : trager_squarefree(parts[i], F))
      out.factors.push_back({std::move(f), static_cast<int>(i + 1)});
  }
  std::sort(out.factors.begin(), out.factors.end(), [](const KFactor& x, const KFactor& y) {
    if (x.multiplicity != y.multiplicity) return x.multiplicity < y.multiplicity;
    return cmp_scalar_poly(x.factor, y.factor) < 0;
  });
  Poly<ExactScalar> check = Poly<ExactScalar>::constant(out.unit);
  for (const KFactor& f : out.factors) check = check * poly_pow(f.factor, f.multiplicity);
  if (check != a) throw InternalError("factor_over_k: product check failed");
  return out;
}

bool irreducible_over_k(const Poly<ExactScalar>& a) {
  if (a.degree() <= 0) return false;
  if (a.degree() == 1) return true;
  KFactorization f = factor_over_k(a);
  return f.factors.size() == 1 && f.factors[0].multiplicity == 1;
}

}  // namespace covalg

#include <algorithm>
#include <map>

#include "covalg/factor_k.hpp"
#include "covalg/ratmap.hpp"
#include "covalg/roots.hpp"

namespace covalg {

namespace {

int cmp_scalar_poly(const Poly<ExactScalar>& a, const Poly<ExactScalar>& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree() ? -1 : 1;
  for (size_t i = a.coeffs.size(); i-- > 0;) {
    int c = ExactScalar::cmp(a.coeffs[i], b.coeffs[i]);
    if (c != 0) return c;
  }
  return 0;
}

// Minimal polynomial over the base field of the set P(roots of m), where m is
// monic irreducible and coprime to den: the squarefree part in y of
// Res_x(m(x), num(x) - y*den(x)), recovered by interpolation. m monic keeps
// the specialization at each node equal to the evaluated resultant even when
// the x-degree of num - y*den drops.
Poly<ExactScalar> value_orbit_poly(const Poly<ExactScalar>& m, const Poly<ExactScalar>& num,
                                   const Poly<ExactScalar>& den) {
  const int D = m.degree();
  std::vector<ExactScalar> nodes, values;
  nodes.reserve(D + 1);
  values.reserve(D + 1);
  for (int j = 0; j <= D; ++j) {
    long yj = (j % 2 == 0) ? (j / 2) : -(j + 1) / 2;  // 0, -1, 1, -2, 2, ...
    Poly<ExactScalar> spec = num;
    Poly<ExactScalar> scaled = den;
    for (auto& c : scaled.coeffs) c = c * ExactScalar(yj);
    spec = spec - scaled;
    values.push_back(resultant_k(m, spec));
    nodes.emplace_back(ExactScalar(yj));
  }
  Poly<ExactScalar> R = interpolate(nodes, values);
  if (R.degree() != D) throw InternalError("value orbit: resultant degree mismatch");
  Poly<ExactScalar> mu = squarefree_part_k(R);
  if (mu.degree() > 1 && !irreducible_over_k(mu))
    throw InternalError("value orbit: reducible orbit polynomial");
  return mu;
}

struct ClassAccum {
  // nullopt key handled separately (infinity class)
  std::map<int, long, std::greater<int>> points;  // local degree -> point count per value
};

}  // namespace

RamificationPortrait critical_structure(const RationalMap& P) {
  const Poly<ExactScalar>& num = P.num();
  const Poly<ExactScalar>& den = P.den();
  const int d = P.degree();

  Poly<ExactScalar> W = P.wronskian();
  if (W.is_zero()) throw InternalError("critical_structure: zero wronskian");
  KFactorization wf = factor_over_k(W);

  // Finite critical points, grouped by the minimal polynomial of their value.
  std::vector<std::pair<Poly<ExactScalar>, ClassAccum>> finite;  // key: orbit poly
  ClassAccum inf_class;
  auto add_finite = [&](const Poly<ExactScalar>& mu, int e, long count) {
    for (auto& [key, acc] : finite)
      if (key == mu) {
        acc.points[e] += count;
        return;
      }
    finite.emplace_back(mu, ClassAccum{});
    finite.back().second.points[e] = count;
  };

  for (const KFactor& f : wf.factors) {
    const int e = f.multiplicity + 1;
    if (divrem(den, f.factor).second.is_zero()) {
      // Multiple pole: every root of this factor maps to infinity.
      inf_class.points[e] += f.factor.degree();
    } else {
      Poly<ExactScalar> mu = value_orbit_poly(f.factor, num, den);
      if (f.factor.degree() % mu.degree() != 0)
        throw InternalError("critical_structure: orbit size does not divide class size");
      add_finite(mu, e, f.factor.degree() / mu.degree());
    }
  }

  // The point at infinity, invisible to the wronskian: local degree from the
  // drop in degree of num - P(inf)*den (or of den when P(inf) = inf).
  SpherePoint vinf = P.eval(SpherePoint::infinity());
  int e_inf;
  if (vinf.is_infinity()) {
    e_inf = d - den.degree();
  } else {
    Poly<ExactScalar> scaled = den;
    for (auto& c : scaled.coeffs) c = c * vinf.value();
    Poly<ExactScalar> drop = num - scaled;
    if (drop.is_zero()) throw InternalError("critical_structure: constant map");
    e_inf = d - drop.degree();
  }
  if (e_inf < 1) throw InternalError("critical_structure: bad local degree at infinity");
  if (e_inf >= 2) {
    if (vinf.is_infinity()) {
      inf_class.points[e_inf] += 1;
    } else {
      Poly<ExactScalar> mu;
      mu.coeffs = {ExactScalar(0) - vinf.value(), ExactScalar(1)};
      add_finite(mu, e_inf, 1);
    }
  }

  // Fill each class with unramified points so the degrees above one value sum
  // to d, then keep only genuinely critical values.
  RamificationPortrait out;
  out.degree = d;
  auto emit = [&](std::optional<Poly<ExactScalar>> mu, const ClassAccum& acc) {
    long covered = 0;
    bool branched = false;
    for (auto [e, n] : acc.points) {
      covered += static_cast<long>(e) * n;
      if (e >= 2) branched = true;
    }
    if (covered > d) throw InternalError("critical_structure: fiber exceeds degree");
    if (!branched) return;
    CriticalClass c;
    c.value_min_poly = std::move(mu);
    for (auto [e, n] : acc.points) c.profile.emplace_back(e, n);
    if (covered < d) c.profile.emplace_back(1, d - covered);
    // keep sorted by degree descending; merge the filler into an existing
    // degree-1 entry if there is one
    std::sort(c.profile.begin(), c.profile.end(),
              [](auto& x, auto& y) { return x.first > y.first; });
    for (size_t i = 0; i + 1 < c.profile.size(); ++i)
      if (c.profile[i].first == c.profile[i + 1].first) {
        c.profile[i].second += c.profile[i + 1].second;
        c.profile.erase(c.profile.begin() + static_cast<long>(i) + 1);
        --i;
      }
    out.classes.push_back(std::move(c));
  };

  if (!inf_class.points.empty()) emit(std::nullopt, inf_class);
  std::sort(finite.begin(), finite.end(),
            [](auto& x, auto& y) { return cmp_scalar_poly(x.first, y.first) < 0; });
  for (auto& [mu, acc] : finite) emit(mu, acc);

  long rh = 0;
  for (const CriticalClass& c : out.classes) {
    long size = c.at_infinity() ? 1 : c.value_min_poly->degree();
    for (auto [e, n] : c.profile) rh += size * static_cast<long>(e - 1) * n;
  }
  if (rh != 2L * d - 2)
    throw InternalError("critical_structure: Riemann-Hurwitz count violated");
  return out;
}

Fiber fiber(const RationalMap& P, const SpherePoint& v) {
  const int d = P.degree();
  Poly<ExactScalar> q;
  if (v.is_infinity()) {
    q = P.den();
  } else {
    Poly<ExactScalar> scaled = P.den();
    for (auto& c : scaled.coeffs) c = c * v.value();
    q = P.num() - scaled;
  }
  Fiber out;
  out.infinity_multiplicity = d - q.degree();
  if (q.degree() >= 1) {
    KFactorization kf = factor_over_k(q);
    for (KFactor& f : kf.factors) out.classes.push_back({std::move(f.factor), f.multiplicity});
  } else if (q.is_zero()) {
    throw InternalError("fiber: constant map");
  }
  std::sort(out.classes.begin(), out.classes.end(), [](const FiberClass& a, const FiberClass& b) {
    if (a.multiplicity != b.multiplicity) return a.multiplicity < b.multiplicity;
    return cmp_scalar_poly(a.min_poly, b.min_poly) < 0;
  });
  long total = out.infinity_multiplicity;
  for (const FiberClass& c : out.classes)
    total += static_cast<long>(c.multiplicity) * c.min_poly.degree();
  if (total != d) throw InternalError("fiber: multiplicities do not sum to the degree");
  return out;
}

namespace {

std::optional<Rat> rat_sqrt(const Rat& x) {
  if (x < 0) return std::nullopt;
  Rat c = x;
  c.canonicalize();
  mpz_class num = c.get_num(), den = c.get_den();
  if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t()))
    return std::nullopt;
  mpz_class rn, rd;
  mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
  Rat r(rn, rd);
  r.canonicalize();
  return r;
}

// Roots of a rational monic quadratic when they are Gaussian rationals:
// x^2 + p x + q with p^2 - 4q = -s^2, s rational, gives (-p +- s i)/2.
std::optional<std::pair<ExactScalar, ExactScalar>> gaussian_quadratic_roots(
    const Poly<ExactScalar>& mp) {
  if (!mp.coeff(0).is_rational() || !mp.coeff(1).is_rational()) return std::nullopt;
  const Rat p = mp.coeff(1).rational_value(), q = mp.coeff(0).rational_value();
  auto s = rat_sqrt(Rat(4) * q - p * p);
  if (!s) return std::nullopt;
  const Rat re = -p / 2, im = *s / 2;
  return std::make_pair(ExactScalar::gaussian(re, -im), ExactScalar::gaussian(re, im));
}

}  // namespace

std::vector<FiberPointView> fiber_points(const RationalMap& P, const SpherePoint& v,
                                         mpfr_prec_t prec) {
  const Fiber f = fiber(P, v);
  const mpfr_prec_t cap = std::max<mpfr_prec_t>(4096, 4 * prec);
  std::vector<FiberPointView> out;
  for (const FiberClass& cls : f.classes) {
    const auto& mp = cls.min_poly;
    if (mp.degree() == 1) {
      FiberPointView fv;
      ExactScalar x = cls.exact_point();
      fv.ball = x.embed(prec, cap);
      fv.exact = SpherePoint(std::move(x));
      fv.multiplicity = cls.multiplicity;
      out.push_back(std::move(fv));
      continue;
    }
    if (mp.degree() == 2) {
      if (auto roots = gaussian_quadratic_roots(mp)) {
        for (ExactScalar x : {roots->first, roots->second}) {
          FiberPointView fv;
          fv.ball = x.embed(prec, cap);
          fv.exact = SpherePoint(std::move(x));
          fv.multiplicity = cls.multiplicity;
          out.push_back(std::move(fv));
        }
        continue;
      }
    }
    RootIsolation iso =
        isolate_roots(scalar_poly_provider(mp, cap), mp.degree(), -(prec / 2), prec, cap);
    for (ComplexBall& b : iso.roots) {
      FiberPointView fv;
      fv.ball = std::move(b);
      fv.multiplicity = cls.multiplicity;
      out.push_back(std::move(fv));
    }
  }
  if (f.infinity_multiplicity > 0) {
    FiberPointView fv;
    fv.exact = SpherePoint::infinity();
    fv.multiplicity = f.infinity_multiplicity;
    out.push_back(std::move(fv));
  }
  return out;
}

}  // namespace covalg

#include <algorithm>
#include <map>
#include <mutex>
#include <string>

#include "covalg/galois.hpp"

namespace covalg {

namespace {

Poly<Rat> cyclo_unlocked(int n, std::map<int, Poly<Rat>>& cache) {
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  Poly<Rat> acc;
  acc.coeffs.assign(static_cast<size_t>(n) + 1, Rat(0));
  acc.coeffs[0] = Rat(-1);
  acc.coeffs[static_cast<size_t>(n)] = Rat(1);
  acc.normalize();
  for (int d = 1; d < n; ++d)
    if (n % d == 0) acc = divexact(acc, cyclo_unlocked(d, cache));
  cache.emplace(n, acc);
  return acc;
}

}  // namespace

Poly<Rat> cyclotomic(int n) {
  if (n < 1) throw InputError("cyclotomic: n must be positive");
  static std::mutex mu;
  static std::map<int, Poly<Rat>> cache;
  std::lock_guard<std::mutex> lock(mu);
  return cyclo_unlocked(n, cache);
}

FieldPtr cyclotomic_field(int n) {
  if (n < 1) throw InputError("cyclotomic_field: n must be positive");
  if (n <= 2) return FieldPtr();
  if (n == 4) return FieldSpec::gaussian();
  static std::mutex mu;
  static std::map<int, FieldPtr> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;

  const mpfr_prec_t prec = 128;
  Mpfr theta(prec), c(prec), s(prec);
  mpfr_const_pi(theta.get(), MPFR_RNDN);
  mpfr_mul_ui(theta.get(), theta.get(), 2, MPFR_RNDN);
  mpfr_div_ui(theta.get(), theta.get(), static_cast<unsigned long>(n), MPFR_RNDN);
  mpfr_cos(c.get(), theta.get(), MPFR_RNDN);
  mpfr_sin(s.get(), theta.get(), MPFR_RNDN);
  ComplexBall hint = ComplexBall::from_long(0, prec);
  hint.set_mid(c.get(), s.get());
  hint.set_rad(Rat(1, 2L * n * n));  // below half the gap between n-th roots of unity

  FieldPtr F = FieldSpec::simple_extension(cyclotomic(n), hint);
  cache.emplace(n, F);
  return F;
}

namespace {

// Primitive n-th root of unity in its cyclotomic field (rational for n <= 2).
ExactScalar unity_root(int n, const FieldPtr& F) {
  if (n == 1) return ExactScalar(1);
  if (n == 2) return ExactScalar(-1);
  if (n == 4) return ExactScalar::gaussian(Rat(0), Rat(1));
  std::vector<Rat> co(static_cast<size_t>(F->degree()), Rat(0));
  co[1] = Rat(1);
  return ExactScalar(F, std::move(co));
}

ExactScalar in_field(long v, const FieldPtr& F) {
  ExactScalar x(v);
  return F ? x.promoted_to(F) : x;
}

Poly<ExactScalar> tagged_poly(const std::vector<long>& coeffs, const FieldPtr& F) {
  Poly<ExactScalar> p;
  p.coeffs.reserve(coeffs.size());
  for (long v : coeffs) p.coeffs.push_back(in_field(v, F));
  p.normalize();
  return p;
}

void verify_generators(const RationalMap& P, const std::vector<MoebiusTransform>& gens,
                       const char* name) {
  // Invariance under generators extends to the whole group: if P∘σ = P and
  // P∘τ = P exactly then P∘(στ) = P exactly.
  for (const MoebiusTransform& g : gens)
    if (!preserves_map(P, g))
      throw InternalError(std::string(name) + ": generator fails map invariance");
}

// Cleared composition of a degree-m polynomial form with a Moebius transform:
// sum form_i (az+b)^i (cz+d)^(m-i).
Poly<ExactScalar> cleared_form_compose(const Poly<ExactScalar>& form, int m,
                                       const MoebiusTransform& s) {
  Poly<ExactScalar> up, low;
  up.coeffs = {s.b(), s.a()};
  up.normalize();
  low.coeffs = {s.d(), s.c()};
  low.normalize();
  std::vector<Poly<ExactScalar>> low_pow(static_cast<size_t>(m) + 1);
  low_pow[0] = Poly<ExactScalar>::constant(ExactScalar(1));
  for (int i = 1; i <= m; ++i)
    low_pow[static_cast<size_t>(i)] = low_pow[static_cast<size_t>(i - 1)] * low;
  Poly<ExactScalar> acc;
  Poly<ExactScalar> up_pow = Poly<ExactScalar>::constant(ExactScalar(1));
  for (int i = 0; i <= m; ++i) {
    if (i < static_cast<int>(form.coeffs.size()) && !form.coeffs[static_cast<size_t>(i)].is_zero()) {
      Poly<ExactScalar> term = up_pow * low_pow[static_cast<size_t>(m - i)];
      for (auto& c : term.coeffs) c = c * form.coeffs[static_cast<size_t>(i)];
      acc = acc + term;
    }
    if (i < m) up_pow = up_pow * up;
  }
  return acc;
}

// The scalar chi with form∘s (cleared to degree m) = chi * form; InternalError
// when the form is not projectively covariant under s.
ExactScalar form_covariance(const Poly<ExactScalar>& form, int m, const MoebiusTransform& s,
                            const char* name) {
  Poly<ExactScalar> moved = cleared_form_compose(form, m, s);
  size_t j = 0;
  while (j < form.coeffs.size() && form.coeffs[j].is_zero()) ++j;
  if (j == form.coeffs.size() || moved.coeffs.size() <= j)
    throw InternalError(std::string(name) + ": degenerate form");
  ExactScalar chi = moved.coeffs[j] / form.coeffs[j];
  Poly<ExactScalar> scaled = form;
  for (auto& c : scaled.coeffs) c = c * chi;
  if (moved != scaled)
    throw InternalError(std::string(name) + ": form is not covariant");
  return chi;
}

StandardFamily power_family(int n) {
  FieldPtr F = cyclotomic_field(n);
  std::vector<long> num(static_cast<size_t>(n) + 1, 0);
  num[static_cast<size_t>(n)] = 1;
  RationalMap map(tagged_poly(num, F), tagged_poly({1}, F));
  std::vector<MoebiusTransform> gens = {
      MoebiusTransform::affine(unity_root(n, F), in_field(0, F))};
  TransformGroup grp = enumerate_group(gens, n);
  if (grp.order != n) throw InternalError("power family: deck order mismatch");
  verify_generators(map, gens, "power family");
  return {std::move(map), std::move(grp), std::move(F), "power-" + std::to_string(n)};
}

StandardFamily dihedral_family(int n) {
  FieldPtr F = cyclotomic_field(n);
  std::vector<long> num(static_cast<size_t>(2 * n) + 1, 0);
  num[0] = 1;
  num[static_cast<size_t>(2 * n)] = 1;
  std::vector<long> den(static_cast<size_t>(n) + 1, 0);
  den[static_cast<size_t>(n)] = 2;
  RationalMap map(tagged_poly(num, F), tagged_poly(den, F));
  std::vector<MoebiusTransform> gens = {
      MoebiusTransform::affine(unity_root(n, F), in_field(0, F)),
      MoebiusTransform::inversion()};
  TransformGroup grp = enumerate_group(gens, 2L * n);
  if (grp.order != 2L * n) throw InternalError("dihedral family: deck order mismatch");
  verify_generators(map, gens, "dihedral family");
  return {std::move(map), std::move(grp), std::move(F), "dihedral-" + std::to_string(n)};
}

StandardFamily tetrahedral_family() {
  FieldPtr F = FieldSpec::gaussian();
  ExactScalar i = ExactScalar::gaussian(Rat(0), Rat(1));
  std::vector<MoebiusTransform> gens = {
      MoebiusTransform::affine(in_field(-1, F), in_field(0, F)),
      MoebiusTransform(in_field(1, F), i, in_field(1, F), ExactScalar(0) - i)};
  TransformGroup grp = enumerate_group(gens, 12);
  if (grp.order != 12) throw InternalError("tetrahedral family: group order is not 12");
  // Average of sigma(z)^2 over the group, reduced; ramified over infinity and
  // the two roots of y^2 + 432.
  RationalMap map(tagged_poly({2, 0, 0, 0, -66, 0, 0, 0, -66, 0, 0, 0, 2}, F),
                  tagged_poly({0, 0, 1, 0, 0, 0, -2, 0, 0, 0, 1}, F));
  if (map.degree() != 12) throw InternalError("tetrahedral family: degree is not 12");
  for (const MoebiusTransform& s : *grp.elements)
    if (!preserves_map(map, s))
      throw InternalError("tetrahedral family: group element fails map invariance");
  return {std::move(map), std::move(grp), std::move(F), "tetrahedral"};
}

StandardFamily octahedral_family() {
  FieldPtr F = FieldSpec::gaussian();
  std::vector<MoebiusTransform> gens = {
      MoebiusTransform::affine(ExactScalar::gaussian(Rat(0), Rat(1)), in_field(0, F)),
      MoebiusTransform(in_field(1, F), in_field(1, F), in_field(1, F), in_field(-1, F))};
  TransformGroup grp = enumerate_group(gens, 24);
  if (grp.order != 24) throw InternalError("octahedral family: group order is not 24");

  Poly<Rat> vert = Poly<Rat>({Rat(1), Rat(0), Rat(0), Rat(0), Rat(14), Rat(0), Rat(0), Rat(0), Rat(1)});
  Poly<Rat> edge = Poly<Rat>({Rat(0), Rat(-1), Rat(0), Rat(0), Rat(0), Rat(1)});
  Poly<Rat> face = Poly<Rat>({Rat(1), Rat(0), Rat(0), Rat(0), Rat(-33), Rat(0), Rat(0), Rat(0),
                              Rat(-33), Rat(0), Rat(0), Rat(0), Rat(1)});
  Poly<Rat> rel = poly_pow(vert, 3) -
                  (poly_pow(edge, 4) * Poly<Rat>::constant(Rat(108)) + poly_pow(face, 2));
  if (!rel.is_zero()) throw InternalError("octahedral family: form identity fails");

  auto lift = [&](const Poly<Rat>& p, const Rat& scale) {
    Poly<ExactScalar> out;
    out.coeffs.reserve(p.coeffs.size());
    for (const Rat& c : p.coeffs) {
      Rat v = c * scale;
      v.canonicalize();
      out.coeffs.push_back(ExactScalar(v).promoted_to(F));
    }
    out.normalize();
    return out;
  };
  RationalMap map(lift(poly_pow(vert, 3), Rat(1)), lift(poly_pow(edge, 4), Rat(108)));
  if (map.degree() != 24) throw InternalError("octahedral family: degree is not 24");
  verify_generators(map, gens, "octahedral family");
  return {std::move(map), std::move(grp), std::move(F), "octahedral"};
}

StandardFamily icosahedral_family() {
  FieldPtr F = cyclotomic_field(5);
  auto el = [&](long c0, long c1, long c2, long c3) {
    return ExactScalar(F, {Rat(c0), Rat(c1), Rat(c2), Rat(c3)});
  };
  // Klein's generators: z -> zeta z and the involution built from
  // zeta - zeta^4 and zeta^2 - zeta^3; zeta^4 = -1 - zeta - zeta^2 - zeta^3.
  std::vector<MoebiusTransform> gens = {
      MoebiusTransform::affine(el(0, 1, 0, 0), el(0, 0, 0, 0)),
      MoebiusTransform(el(-1, -2, -1, -1), el(0, 0, 1, -1), el(0, 0, 1, -1), el(1, 2, 1, 1))};
  TransformGroup grp = enumerate_group(gens, 60);
  if (grp.order != 60) throw InternalError("icosahedral family: group order is not 60");

  Poly<Rat> f({Rat(0), Rat(-1), Rat(0), Rat(0), Rat(0), Rat(0), Rat(11), Rat(0), Rat(0),
               Rat(0), Rat(0), Rat(1)});
  Poly<Rat> h({Rat(-1), Rat(0), Rat(0), Rat(0), Rat(0), Rat(-228), Rat(0), Rat(0), Rat(0),
               Rat(0), Rat(-494), Rat(0), Rat(0), Rat(0), Rat(0), Rat(228), Rat(0), Rat(0),
               Rat(0), Rat(0), Rat(-1)});
  Poly<Rat> t({Rat(1), Rat(0), Rat(0), Rat(0), Rat(0), Rat(-522), Rat(0), Rat(0), Rat(0),
               Rat(0), Rat(-10005), Rat(0), Rat(0), Rat(0), Rat(0), Rat(0), Rat(0), Rat(0),
               Rat(0), Rat(0), Rat(-10005), Rat(0), Rat(0), Rat(0), Rat(0), Rat(522), Rat(0),
               Rat(0), Rat(0), Rat(0), Rat(1)});
  Poly<Rat> rel =
      poly_pow(t, 2) + poly_pow(h, 3) - poly_pow(f, 5) * Poly<Rat>::constant(Rat(1728));
  if (!rel.is_zero()) throw InternalError("icosahedral family: form identity fails");

  auto lift = [&](const Poly<Rat>& p, const Rat& scale) {
    Poly<ExactScalar> out;
    out.coeffs.reserve(p.coeffs.size());
    for (const Rat& c : p.coeffs) {
      Rat v = c * scale;
      v.canonicalize();
      out.coeffs.push_back(ExactScalar(v).promoted_to(F));
    }
    out.normalize();
    return out;
  };
  RationalMap map(lift(poly_pow(t, 2), Rat(1)), lift(poly_pow(f, 5), Rat(1728)));
  if (map.degree() != 60) throw InternalError("icosahedral family: degree is not 60");

  // Direct invariance under the degree-60 map is costly to expand; instead
  // verify the generators through form covariance: both defining forms pick
  // up scalars chi_t, chi_f with chi_t^2 = chi_f^5, so the ratio t^2/(1728
  // f^5) is fixed. The affine generator is cheap to check directly.
  if (!preserves_map(map, gens[0]))
    throw InternalError("icosahedral family: rotation fails map invariance");
  Poly<ExactScalar> f_k = lift(f, Rat(1));
  Poly<ExactScalar> t_k = lift(t, Rat(1));
  // f has projective weight 12: the twelfth vertex sits at infinity.
  ExactScalar chi_f = form_covariance(f_k, 12, gens[1], "icosahedral family");
  ExactScalar chi_t = form_covariance(t_k, 30, gens[1], "icosahedral family");
  if (chi_t * chi_t != chi_f * chi_f * chi_f * chi_f * chi_f)
    throw InternalError("icosahedral family: covariance scalars break invariance");
  return {std::move(map), std::move(grp), std::move(F), "icosahedral"};
}

}  // namespace

StandardFamily standard_family(StandardKind kind, int n) {
  switch (kind) {
    case StandardKind::Power:
      if (n < 2) throw InputError("standard_family: power kind needs n >= 2");
      return power_family(n);
    case StandardKind::Dihedral:
      if (n < 2) throw InputError("standard_family: dihedral kind needs n >= 2");
      return dihedral_family(n);
    case StandardKind::Tetrahedral:
      return tetrahedral_family();
    case StandardKind::Octahedral:
      return octahedral_family();
    case StandardKind::Icosahedral:
      return icosahedral_family();
  }
  throw InputError("standard_family: unknown kind");
}

namespace {

long element_order(const MoebiusTransform& g, long cap) {
  MoebiusTransform p = g;
  for (long k = 1; k <= cap; ++k) {
    if (p.is_identity()) return k;
    p = p.compose(g);
  }
  throw InternalError("element order exceeds group order");
}

bool same_element_set(const std::vector<MoebiusTransform>& a,
                      const std::vector<MoebiusTransform>& b) {
  if (a.size() != b.size()) return false;
  try {
    for (size_t i = 0; i < a.size(); ++i)
      if (MoebiusTransform::cmp(a[i], b[i]) != 0) return false;
  } catch (const InputError&) {
    return false;  // incompatible coefficient fields
  }
  return true;
}

// Quotient from the fiber polynomial Phi(x, z) = prod_sigma (x (cz+d) - (az+b)):
// its x-coefficients C_j(z) are invariant up to a common factor, so any
// non-proportional pair (C_j, C_n) is a degree-|G| invariant map.
RationalMap orbit_quotient(const TransformGroup& grp) {
  const std::vector<MoebiusTransform>& elems = *grp.elements;
  const long n = grp.order;
  std::vector<Poly<ExactScalar>> C = {Poly<ExactScalar>::constant(ExactScalar(1))};
  for (const MoebiusTransform& s : elems) {
    Poly<ExactScalar> D, N;
    D.coeffs = {s.d(), s.c()};
    D.normalize();
    N.coeffs = {s.b(), s.a()};
    N.normalize();
    std::vector<Poly<ExactScalar>> next(C.size() + 1);
    for (size_t j = 0; j < C.size(); ++j) {
      next[j + 1] = next[j + 1] + C[j] * D;
      next[j] = next[j] - C[j] * N;
    }
    C = std::move(next);
  }
  const Poly<ExactScalar>& Cn = C[static_cast<size_t>(n)];
  if (Cn.is_zero()) throw InternalError("quotient_map: vanishing leading fiber coefficient");
  for (long j = n - 1; j >= 0; --j) {
    const Poly<ExactScalar>& Cj = C[static_cast<size_t>(j)];
    if (Cj.is_zero()) continue;
    if (Cj.degree() == Cn.degree()) {
      Poly<ExactScalar> lhs = Cj, rhs = Cn;
      for (auto& c : lhs.coeffs) c = c * Cn.lc();
      for (auto& c : rhs.coeffs) c = c * Cj.lc();
      if (lhs == rhs) continue;  // proportional: constant ratio
    }
    RationalMap A(Cj, Cn);
    if (A.degree() != n) throw InternalError("quotient_map: quotient degree mismatch");
    for (const MoebiusTransform& g : grp.generators)
      if (!preserves_map(A, g))
        throw InternalError("quotient_map: quotient is not invariant");
    return A;
  }
  throw InternalError("quotient_map: every fiber coefficient ratio is constant");
}

}  // namespace

RationalMap quotient_map(const TransformGroup& G) {
  std::vector<MoebiusTransform> gens = G.generators;
  if (gens.empty() && G.elements) gens = *G.elements;
  if (gens.empty()) throw InputError("quotient_map: empty group");
  TransformGroup grp = enumerate_group(std::move(gens), 10080);
  const long n = grp.order;
  if (n == 1) throw InputError("quotient_map: group must be nontrivial");

  long max_ord = 1;
  std::vector<long> orders;
  orders.reserve(static_cast<size_t>(n));
  for (const MoebiusTransform& e : *grp.elements) {
    long o = element_order(e, n);
    orders.push_back(o);
    max_ord = std::max(max_ord, o);
  }

  if (max_ord == n) return orbit_quotient(grp);  // cyclic

  if (n % 2 == 0) {
    const long m = n / 2;
    for (size_t i = 0; i < orders.size(); ++i) {
      if (orders[i] != m) continue;
      // candidate rotation subgroup: powers of this element
      std::vector<MoebiusTransform> rot = {(*grp.elements)[i]};
      TransformGroup sub = enumerate_group(rot, n);
      if (sub.order != m) break;
      bool dihedral = true;
      for (size_t k = 0; k < grp.elements->size() && dihedral; ++k)
        if (!sub.contains((*grp.elements)[k]) && orders[k] != 2) dihedral = false;
      if (dihedral) return orbit_quotient(grp);
      break;
    }
  }

  if (n == 12 || n == 24 || n == 60) {
    StandardKind kind = n == 12   ? StandardKind::Tetrahedral
                        : n == 24 ? StandardKind::Octahedral
                                  : StandardKind::Icosahedral;
    StandardFamily fam = standard_family(kind);
    if (same_element_set(*grp.elements, *fam.group.elements)) return fam.map;
  }
  throw InputError("quotient_map: unsupported group shape");
}

}  // namespace covalg

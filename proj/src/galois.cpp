#include "covalg/galois.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "covalg/factor_k.hpp"
#include "covalg/reconstruct.hpp"
#include "covalg/roots.hpp"

namespace covalg {

namespace {

struct MoebiusLess {
  bool operator()(const MoebiusTransform& x, const MoebiusTransform& y) const {
    return MoebiusTransform::cmp(x, y) < 0;
  }
};

// num ∘ σ and den ∘ σ homogenized by (cz+d)^deg, sharing one clearing factor.
std::pair<Poly<ExactScalar>, Poly<ExactScalar>> compose_moebius_cleared(
    const RationalMap& P, const MoebiusTransform& s) {
  Poly<ExactScalar> up, low;
  up.coeffs = {s.b(), s.a()};
  up.normalize();
  low.coeffs = {s.d(), s.c()};
  low.normalize();
  const int D = P.degree();
  std::vector<Poly<ExactScalar>> low_pow(static_cast<size_t>(D) + 1);
  low_pow[0] = Poly<ExactScalar>::constant(ExactScalar(1));
  for (int i = 1; i <= D; ++i) low_pow[static_cast<size_t>(i)] = low_pow[static_cast<size_t>(i - 1)] * low;
  auto lift = [&](const Poly<ExactScalar>& a) {
    Poly<ExactScalar> acc;
    Poly<ExactScalar> up_pow = Poly<ExactScalar>::constant(ExactScalar(1));
    for (int i = 0; i <= D; ++i) {
      if (i < static_cast<int>(a.coeffs.size()) && !a.coeffs[static_cast<size_t>(i)].is_zero()) {
        Poly<ExactScalar> term = up_pow * low_pow[static_cast<size_t>(D - i)];
        for (auto& c : term.coeffs) c = c * a.coeffs[static_cast<size_t>(i)];
        acc = acc + term;
      }
      if (i < D) up_pow = up_pow * up;
    }
    return acc;
  };
  return {lift(P.num()), lift(P.den())};
}

}  // namespace

bool preserves_map(const RationalMap& P, const MoebiusTransform& sigma) {
  auto [n_s, d_s] = compose_moebius_cleared(P, sigma);
  return (n_s * P.den() - d_s * P.num()).is_zero();
}

bool TransformGroup::contains(const MoebiusTransform& m) const {
  if (!elements) return false;
  return std::binary_search(elements->begin(), elements->end(), m, MoebiusLess{});
}

TransformGroup enumerate_group(std::vector<MoebiusTransform> generators, long cap) {
  std::set<MoebiusTransform, MoebiusLess> gens;
  for (const MoebiusTransform& g : generators)
    if (!g.is_identity()) gens.insert(g);

  std::set<MoebiusTransform, MoebiusLess> elems;
  std::deque<MoebiusTransform> queue;
  elems.insert(MoebiusTransform::identity());
  queue.push_back(MoebiusTransform::identity());
  while (!queue.empty()) {
    MoebiusTransform e = std::move(queue.front());
    queue.pop_front();
    for (const MoebiusTransform& g : gens) {
      MoebiusTransform p = e.compose(g);
      if (elems.insert(p).second) {
        if (static_cast<long>(elems.size()) > cap)
          throw UndeterminedError("group enumeration exceeded cap " + std::to_string(cap));
        queue.push_back(std::move(p));
      }
    }
  }

  TransformGroup out;
  out.generators.assign(gens.begin(), gens.end());
  if (out.generators.empty()) out.generators.push_back(MoebiusTransform::identity());
  out.elements = std::vector<MoebiusTransform>(elems.begin(), elems.end());
  out.order = static_cast<long>(out.elements->size());
  return out;
}

namespace {

// Regular rational base values: deg(num - t den) = deg P and the fiber is
// squarefree (no critical point above).
std::vector<Poly<ExactScalar>> regular_fibers(const RationalMap& P, int count) {
  std::vector<Poly<ExactScalar>> out;
  for (long k = 0; static_cast<int>(out.size()) < count; ++k) {
    long t = (k % 2 == 0) ? (k / 2 + 2) : -(k / 2 + 1);
    if (k > 200) throw InternalError("deck group: no regular base value found");
    Poly<ExactScalar> scaled = P.den();
    for (auto& c : scaled.coeffs) c = c * ExactScalar(t);
    Poly<ExactScalar> q = P.num() - scaled;
    if (q.degree() != P.degree()) continue;
    if (gcd_k(q, derivative(q)).degree() != 0) continue;
    out.push_back(std::move(q));
  }
  return out;
}

// nullopt when the candidate sends z too close to infinity to evaluate.
std::optional<ComplexBall> moebius_apply_ball(const std::vector<ComplexBall>& m,
                                              const ComplexBall& z) {
  ComplexBall den = ball_add(ball_mul(m[2], z), m[3]);
  if (den.contains_zero()) return std::nullopt;
  return ball_div(ball_add(ball_mul(m[0], z), m[1]), den);
}

// (a,b,c,d) of the Moebius transform sending (p1,p2,p3) to (0,1,inf).
std::vector<ComplexBall> to_standard_triple(const ComplexBall& p1, const ComplexBall& p2,
                                            const ComplexBall& p3) {
  ComplexBall d23 = ball_sub(p2, p3);
  ComplexBall d21 = ball_sub(p2, p1);
  return {d23, ball_neg(ball_mul(p1, d23)), d21, ball_neg(ball_mul(p3, d21))};
}

std::vector<ComplexBall> matrix_mul(const std::vector<ComplexBall>& x,
                                    const std::vector<ComplexBall>& y) {
  return {ball_add(ball_mul(x[0], y[0]), ball_mul(x[1], y[2])),
          ball_add(ball_mul(x[0], y[1]), ball_mul(x[1], y[3])),
          ball_add(ball_mul(x[2], y[0]), ball_mul(x[3], y[2])),
          ball_add(ball_mul(x[2], y[1]), ball_mul(x[3], y[3]))};
}

std::vector<ComplexBall> matrix_inv(const std::vector<ComplexBall>& x) {
  return {x[3], ball_neg(x[1]), ball_neg(x[2]), x[0]};
}

// Numeric Moebius through three point pairs p_i -> q_i.
std::vector<ComplexBall> moebius_through(const std::array<ComplexBall, 3>& p,
                                         const std::array<ComplexBall, 3>& q) {
  return matrix_mul(matrix_inv(to_standard_triple(q[0], q[1], q[2])),
                    to_standard_triple(p[0], p[1], p[2]));
}

bool near_some_root(const ComplexBall& z, const std::vector<ComplexBall>& roots, Mpfr& tol) {
  for (const ComplexBall& r : roots) {
    auto [lo, hi] = z.mid_dist_bounds(r);
    if (mpfr_cmp(lo.get(), tol.get()) <= 0) return true;
  }
  return false;
}

// Normalize the matrix by its largest-magnitude entry, reconstruct the other
// three coefficients over F, and return the exact transform if it verifies.
std::optional<MoebiusTransform> lift_and_verify(const RationalMap& P, const FieldPtr& F,
                                                const std::vector<ComplexBall>& m,
                                                mpfr_prec_t prec,
                                                std::vector<ComplexBall>* failed_coeffs) {
  int best = 0;
  Mpfr best_mag = m[0].abs_upper();
  for (int i = 1; i < 4; ++i) {
    Mpfr mag = m[static_cast<size_t>(i)].abs_upper();
    if (mpfr_cmp(mag.get(), best_mag.get()) > 0) {
      best = i;
      best_mag = std::move(mag);
    }
  }
  if (m[static_cast<size_t>(best)].contains_zero()) return std::nullopt;  // degenerate
  std::array<ExactScalar, 4> co;
  co[static_cast<size_t>(best)] = ExactScalar(1);
  for (int i = 0; i < 4; ++i) {
    if (i == best) continue;
    ComplexBall ratio = ball_div(m[static_cast<size_t>(i)], m[static_cast<size_t>(best)]);
    std::optional<ExactScalar> v = scalar_from_ball(F, ratio, prec);
    if (!v) {
      if (failed_coeffs) failed_coeffs->push_back(std::move(ratio));
      return std::nullopt;
    }
    co[static_cast<size_t>(i)] = std::move(*v);
  }
  ExactScalar det = co[0] * co[3] - co[1] * co[2];
  if (det.is_zero()) return std::nullopt;
  MoebiusTransform sigma(co[0], co[1], co[2], co[3]);
  if (!preserves_map(P, sigma)) return std::nullopt;
  return sigma;
}

}  // namespace

TransformGroup deck_group(const RationalMap& P) {
  const int d = P.degree();
  if (d < 2) throw InputError("deck group: degree must be at least 2");
  {
    RamificationPortrait rp = critical_structure(P);
    for (const CriticalClass& c : rp.classes)
      if (!c.uniform(nullptr))
        throw InputError("deck group: map is not Galois (non-uniform fiber)");
  }
  const FieldPtr& F = P.field();

  std::vector<ComplexBall> sample_failures;
  for (mpfr_prec_t prec = 192; prec <= 3072; prec *= 2) {
    sample_failures.clear();
    std::vector<Poly<ExactScalar>> fibers = regular_fibers(P, 2);
    const long rad_exp = -(static_cast<long>(prec) / 2);
    std::vector<ComplexBall> roots =
        isolate_roots(scalar_poly_provider(fibers[0], 8 * prec), d, rad_exp, prec, 8 * prec)
            .roots;
    std::vector<ComplexBall> roots2 =
        isolate_roots(scalar_poly_provider(fibers[1], 8 * prec), d, rad_exp, prec, 8 * prec)
            .roots;

    Mpfr tol(64);
    mpfr_set_ui_2exp(tol.get(), 1, static_cast<mpfr_exp_t>(-(prec / 4)), MPFR_RNDU);

    // A deck transform permutes every fiber, so check the points not pinned
    // by the interpolation triple against fiber 1 and the whole second fiber.
    auto plausible = [&](const std::vector<ComplexBall>& m, size_t skip_below) -> bool {
      for (size_t t = skip_below; t < roots.size(); ++t) {
        std::optional<ComplexBall> img = moebius_apply_ball(m, roots[t]);
        if (!img || !near_some_root(*img, roots, tol)) return false;
      }
      for (const ComplexBall& r : roots2) {
        std::optional<ComplexBall> img = moebius_apply_ball(m, r);
        if (!img || !near_some_root(*img, roots2, tol)) return false;
      }
      return true;
    };

    std::set<MoebiusTransform, MoebiusLess> found;
    found.insert(MoebiusTransform::identity());
    long closure = 1;

    auto try_candidate = [&](const std::vector<ComplexBall>& m) -> bool {
      std::optional<MoebiusTransform> sigma = lift_and_verify(P, F, m, prec, &sample_failures);
      if (!sigma || !found.insert(*sigma).second) return false;
      std::vector<MoebiusTransform> gens(found.begin(), found.end());
      closure = enumerate_group(std::move(gens), d + 1).order;
      return true;
    };

    if (d >= 3) {
      const std::array<ComplexBall, 3> p = {roots[0], roots[1], roots[2]};
      for (size_t i = 0; i < roots.size() && closure < d; ++i) {
        bool found_for_image = false;
        for (size_t j = 0; j < roots.size() && !found_for_image; ++j) {
          if (j == i) continue;
          for (size_t k = 0; k < roots.size(); ++k) {
            if (k == i || k == j) continue;
            std::vector<ComplexBall> m = moebius_through(p, {roots[i], roots[j], roots[k]});
            if (!plausible(m, 3)) continue;
            if (try_candidate(m)) {
              found_for_image = true;  // one deck element per image of p1
              break;
            }
          }
        }
      }
    } else {
      const std::array<ComplexBall, 3> p = {roots[0], roots[1], roots2[0]};
      for (int si = 0; si < 2 && closure < d; ++si)
        for (int sj = 0; sj < 2; ++sj) {
          std::vector<ComplexBall> m = moebius_through(
              p, {roots[static_cast<size_t>(si)], roots[static_cast<size_t>(1 - si)],
                  roots2[static_cast<size_t>(sj)]});
          if (!plausible(m, 2)) continue;
          if (try_candidate(m)) break;
        }
    }

    if (closure == d) {
      std::vector<MoebiusTransform> gens(found.begin(), found.end());
      gens.erase(std::remove_if(gens.begin(), gens.end(),
                                [](const MoebiusTransform& g) { return g.is_identity(); }),
                 gens.end());
      TransformGroup g = enumerate_group(gens, d + 1);
      if (g.order != d) throw InternalError("deck group: closure changed size");
      for (const MoebiusTransform& sigma : *g.elements)
        if (!preserves_map(P, sigma))
          throw InternalError("deck group: closure element fails invariance");
      return g;
    }
    if (closure > d) throw InternalError("deck group: more deck transforms than the degree");
  }

  std::optional<Poly<Rat>> hint;
  for (const ComplexBall& b : sample_failures)
    if ((hint = min_poly_from_ball(ball_round(b, 320), 6))) break;
  throw DeckFieldError("deck group: coefficients not expressible over the declared field",
                       std::move(hint));
}

GaloisCertificate is_galois(const RationalMap& P) {
  if (P.degree() < 2) throw InputError("is_galois: degree must be at least 2");
  RamificationPortrait rp = critical_structure(P);
  GaloisCertificate cert;
  for (CriticalClass& c : rp.classes) {
    if (!c.uniform(nullptr)) {
      cert.galois = false;
      cert.nonuniform_class = std::move(c);
      return cert;
    }
  }
  cert.galois = true;
  try {
    TransformGroup g = deck_group(P);
    if (g.order != P.degree())
      throw InternalError("is_galois: deck order disagrees with the degree");
    cert.deck = std::move(g);
  } catch (const DeckFieldError& e) {
    cert.missing_field_hint = e.hint;
  }
  return cert;
}

}  // namespace covalg

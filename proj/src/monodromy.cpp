#include "covalg/monodromy.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <optional>
#include <sstream>

#include "covalg/roots.hpp"

namespace covalg {

namespace {

using Cd = std::complex<double>;

// Path node with exact dyadic coordinates. Planning runs in doubles; every
// double is a dyadic rational, so the planned polyline is followed exactly.
struct Node {
  Rat re, im;
  static Node from(Cd z) { return {Rat(z.real()), Rat(z.imag())}; }
};

Cd ball_to_cd(const ComplexBall& b) {
  return {mpfr_get_d(b.mid_re(), MPFR_RNDN), mpfr_get_d(b.mid_im(), MPFR_RNDN)};
}

double dist_point_segment(Cd p, Cd a, Cd b) {
  const Cd ab = b - a;
  const double den = std::norm(ab);
  if (den == 0.0) return std::abs(p - a);
  double t = ((p - a).real() * ab.real() + (p - a).imag() * ab.imag()) / den;
  t = std::clamp(t, 0.0, 1.0);
  return std::abs(p - (a + t * ab));
}

double mid_dist(const ComplexBall& a, const ComplexBall& b) {
  return std::abs(ball_to_cd(a) - ball_to_cd(b));
}

// One isolated critical value: its ball, the class it came from, and the
// root index inside that class (canonical isolation order).
struct CritValue {
  Cd approx;
  BranchLabel label;
  std::vector<int> local_degrees;  // descending, unramified sheets included
};

std::vector<int> expand_profile(const CriticalClass& cc) {
  std::vector<int> out;
  for (auto [e, n] : cc.profile)
    for (long k = 0; k < n; ++k) out.push_back(e);
  std::sort(out.rbegin(), out.rend());
  return out;
}

// Loop plan around all finite critical values from one base point.
struct LoopPlan {
  Cd base;
  double radius = 0;
  std::vector<size_t> order;  // indices into the critical value list
};

LoopPlan plan_loops(const std::vector<CritValue>& crit, const std::optional<Cd>& obstacle) {
  std::vector<Cd> pts;
  for (const auto& c : crit) pts.push_back(c.approx);
  if (obstacle) pts.push_back(*obstacle);

  double sep = 2.0;
  for (size_t i = 0; i < pts.size(); ++i)
    for (size_t j = i + 1; j < pts.size(); ++j) sep = std::min(sep, std::abs(pts[i] - pts[j]));
  if (!(sep > 0))
    throw InternalError("monodromy: critical values indistinguishable in double precision");

  Cd mu{0, 0};
  for (const auto& c : crit) mu += c.approx;
  mu /= static_cast<double>(crit.size());
  double spread = 0;
  for (const auto& p : pts) spread = std::max(spread, std::abs(p - mu));

  for (double r = sep / 4; r > sep / 1024; r /= 2) {
    const double d0 = spread + std::max(1.0, 8 * r);
    for (int t = 0; t < 16; ++t) {
      const double th = 2 * M_PI * t / 16 + 0.3;
      const Cd b = mu + d0 * Cd{std::cos(th), std::sin(th)};
      bool ok = true;
      for (const auto& p : pts)
        if (std::abs(b - p) < 3 * r) ok = false;
      for (size_t j = 0; ok && j < crit.size(); ++j)
        for (size_t k = 0; ok && k < pts.size(); ++k) {
          if (k < crit.size() && k == j) continue;
          if (dist_point_segment(pts[k], b, crit[j].approx) < 1.5 * r) ok = false;
        }
      if (!ok) continue;
      std::vector<std::pair<double, size_t>> keyed;
      for (size_t j = 0; j < crit.size(); ++j) {
        double a = std::arg(crit[j].approx - b);
        if (a < 0) a += 2 * M_PI;
        keyed.emplace_back(a, j);
      }
      std::sort(keyed.begin(), keyed.end());
      for (size_t j = 0; ok && j + 1 < keyed.size(); ++j)
        if (keyed[j + 1].first - keyed[j].first < 1e-9) ok = false;
      if (!ok) continue;
      LoopPlan plan;
      plan.base = b;
      plan.radius = r;
      for (auto& [a, j] : keyed) plan.order.push_back(j);
      return plan;
    }
  }
  throw InternalError("monodromy: could not place disjoint loops around the critical values");
}

// Polyline from the base out to the entry point of the circle about c,
// counterclockwise around it, and back. First node is the base itself.
std::vector<Node> petal_nodes(Cd base, Cd c, double r) {
  std::vector<Node> nodes;
  const Cd u = (base - c) / std::abs(base - c);
  const Cd entry = c + r * u;
  nodes.push_back(Node::from(base));
  for (int s = 1; s <= 8; ++s)
    nodes.push_back(Node::from(base + (entry - base) * (static_cast<double>(s) / 8)));
  const double phi0 = std::arg(u);
  for (int k = 1; k <= 16; ++k) {
    const double phi = phi0 + 2 * M_PI * k / 16;
    nodes.push_back(Node::from(c + r * Cd{std::cos(phi), std::sin(phi)}));
  }
  for (int s = 7; s >= 0; --s)
    nodes.push_back(Node::from(base + (entry - base) * (static_cast<double>(s) / 8)));
  return nodes;
}

class Tracker {
 public:
  Tracker(const RationalMap& P, mpfr_prec_t prec) : P_(P), prec_(prec) {}

  std::vector<ComplexBall> fiber_coeffs(const Rat& re, const Rat& im) const {
    const mpfr_prec_t cap = std::max<mpfr_prec_t>(4096, 4 * prec_);
    ComplexBall t = ComplexBall::from_rat(re, im, prec_);
    std::vector<ComplexBall> cb;
    for (int i = 0; i <= P_.degree(); ++i)
      cb.push_back(ball_sub(P_.num().coeff(i).embed(prec_, cap),
                            ball_mul(t, P_.den().coeff(i).embed(prec_, cap))));
    return cb;
  }

  // Continue all tracked roots from their current positions to the fiber
  // over the target value. False = certification failed at this precision.
  bool step_to(std::vector<ComplexBall>& cur, const Node& from, const Node& to, int depth) const {
    const auto coeffs = fiber_coeffs(to.re, to.im);
    if (coeffs.back().contains_zero()) return false;
    std::vector<ComplexBall> nxt;
    bool ok = true;
    for (size_t i = 0; ok && i < cur.size(); ++i) {
      auto res = certify_root_near(coeffs, cur[i]);
      if (!res) {
        ok = false;
        break;
      }
      // No root may move further than a third of its separation from the
      // rest of the fiber; that pins the matching between the two fibers.
      double min_sep = 1e300;
      for (size_t k = 0; k < cur.size(); ++k)
        if (k != i) min_sep = std::min(min_sep, mid_dist(cur[i], cur[k]));
      if (!(mid_dist(*res, cur[i]) < min_sep / 3)) {
        ok = false;
        break;
      }
      nxt.push_back(std::move(*res));
    }
    for (size_t i = 0; ok && i < nxt.size(); ++i)
      for (size_t k = i + 1; ok && k < nxt.size(); ++k)
        if (!nxt[i].disjoint(nxt[k])) ok = false;
    if (ok) {
      cur = std::move(nxt);
      return true;
    }
    if (depth >= 48) return false;
    Node mid{(from.re + to.re) / 2, (from.im + to.im) / 2};
    return step_to(cur, from, mid, depth + 1) && step_to(cur, mid, to, depth + 1);
  }

  std::optional<Permutation> run_loop(const std::vector<ComplexBall>& base_fiber,
                                      const std::vector<Node>& nodes) const {
    std::vector<ComplexBall> cur = base_fiber;
    for (size_t s = 0; s + 1 < nodes.size(); ++s)
      if (!step_to(cur, nodes[s], nodes[s + 1], 0)) return std::nullopt;
    // Match the final fiber back to the base fiber.
    double base_sep = 1e300;
    for (size_t i = 0; i < base_fiber.size(); ++i)
      for (size_t k = i + 1; k < base_fiber.size(); ++k)
        base_sep = std::min(base_sep, mid_dist(base_fiber[i], base_fiber[k]));
    std::vector<int> img(cur.size(), 0);
    std::vector<char> used(base_fiber.size(), 0);
    for (size_t i = 0; i < cur.size(); ++i) {
      int hit = -1;
      for (size_t k = 0; k < base_fiber.size(); ++k) {
        if (mid_dist(cur[i], base_fiber[k]) < base_sep / 3) {
          if (hit >= 0) return std::nullopt;
          hit = static_cast<int>(k);
        }
      }
      if (hit < 0 || used[static_cast<size_t>(hit)]) return std::nullopt;
      used[static_cast<size_t>(hit)] = 1;
      img[i] = hit + 1;
    }
    return Permutation(std::move(img));
  }

 private:
  const RationalMap& P_;
  mpfr_prec_t prec_;
};

}  // namespace

Constellation extract_monodromy(const RationalMap& P, mpfr_prec_t prec_cap) {
  return extract_monodromy(P, std::vector<Poly<ExactScalar>>{}, prec_cap);
}

Constellation extract_monodromy(const RationalMap& P,
                                const std::vector<Poly<ExactScalar>>& extra_branch,
                                mpfr_prec_t prec_cap) {
  const int d = P.degree();
  const RamificationPortrait portrait = critical_structure(P);

  Constellation out;
  out.degree = d;
  if (portrait.classes.empty() && extra_branch.empty()) {
    out.validate();
    return out;
  }

  // Isolate every finite loop center once; this fixes the loop geometry.
  std::vector<CritValue> crit;
  auto add_centers = [&](const Poly<ExactScalar>& mp, std::vector<int> degrees) {
    if (mp.degree() == 1) {
      CritValue cv;
      ExactScalar v = ExactScalar(0) - mp.coeff(0);  // monic linear factor
      cv.approx = ball_to_cd(v.embed(128));
      cv.label = BranchLabel::at(SpherePoint(std::move(v)));
      cv.local_degrees = std::move(degrees);
      crit.push_back(std::move(cv));
    } else {
      RootIsolation iso = isolate_roots(scalar_poly_provider(mp), mp.degree(), -60, 128, 4096);
      for (size_t k = 0; k < iso.roots.size(); ++k) {
        CritValue cv;
        cv.approx = ball_to_cd(iso.roots[k]);
        std::ostringstream tag;
        tag << "root " << k + 1 << " of " << poly_str(mp, "y");
        cv.label = BranchLabel::named(tag.str());
        cv.local_degrees = degrees;
        crit.push_back(std::move(cv));
      }
    }
  };

  const CriticalClass* inf_class = nullptr;
  for (const auto& cc : portrait.classes) {
    if (cc.at_infinity())
      inf_class = &cc;
    else
      add_centers(*cc.value_min_poly, expand_profile(cc));
  }

  // Extra loop centers shared with other maps; values regular for P, whose
  // loops must come back as the identity.
  std::vector<const Poly<ExactScalar>*> extras;
  for (const auto& mp : extra_branch) {
    bool present = false;
    for (const auto& cc : portrait.classes)
      if (!cc.at_infinity() && *cc.value_min_poly == mp) present = true;
    for (const auto* e : extras)
      if (*e == mp) present = true;
    if (!present) extras.push_back(&mp);
  }
  for (const auto* mp : extras) add_centers(*mp, std::vector<int>(d, 1));

  // A finite regular value of P at infinity is an obstacle the path must
  // avoid: crossing it would send one tracked root through infinity.
  std::optional<Cd> obstacle;
  const SpherePoint v_inf = P.eval(SpherePoint::infinity());
  if (!v_inf.is_infinity()) {
    bool is_critical = false;
    for (const auto& cc : portrait.classes)
      if (!cc.at_infinity() && eval(*cc.value_min_poly, v_inf.value()) == ExactScalar(0))
        is_critical = true;
    if (!is_critical) {
      for (const auto* mp : extras)
        if (eval(*mp, v_inf.value()) == ExactScalar(0))
          throw InputError(
              "extract_monodromy: a loop around the finite regular value of " + P.str() +
              " at infinity would drive a fiber point through infinity");
      obstacle = ball_to_cd(v_inf.value().embed(128));
    }
  }

  const LoopPlan plan = plan_loops(crit, obstacle);
  const Node base = Node::from(plan.base);

  for (mpfr_prec_t prec = 192; prec <= prec_cap; prec *= 2) {
    Tracker tracker(P, prec);
    auto provider = [&](mpfr_prec_t p) {
      Tracker t(P, p);
      return t.fiber_coeffs(base.re, base.im);
    };
    RootIsolation base_iso = isolate_roots(provider, d, -(prec / 2), prec, prec_cap);

    std::vector<Permutation> perms;
    bool ok = true;
    for (size_t idx : plan.order) {
      auto nodes = petal_nodes(plan.base, crit[idx].approx, plan.radius);
      auto sigma = tracker.run_loop(base_iso.roots, nodes);
      if (!sigma) {
        ok = false;
        break;
      }
      perms.push_back(std::move(*sigma));
    }
    if (!ok) continue;

    // Assemble; the last factor closes the product to the identity.
    Permutation prod = Permutation::identity(d);
    for (const auto& s : perms) prod = prod * s;
    Permutation sigma_inf = prod.inverse();

    for (size_t j = 0; j < plan.order.size(); ++j) {
      if (perms[j].cycle_type() != crit[plan.order[j]].local_degrees)
        throw InternalError("monodromy: cycle type disagrees with the exact local degrees at " +
                            crit[plan.order[j]].label.str());
      out.branch_points.push_back(crit[plan.order[j]].label);
      out.perms.push_back(perms[j]);
    }
    if (inf_class != nullptr) {
      if (sigma_inf.cycle_type() != expand_profile(*inf_class))
        throw InternalError(
            "monodromy: cycle type disagrees with the exact local degrees at infinity");
      out.branch_points.push_back(BranchLabel::at(SpherePoint::infinity()));
      out.perms.push_back(std::move(sigma_inf));
    } else if (!sigma_inf.is_identity()) {
      throw InternalError("monodromy: loop product is nontrivial but infinity is unramified");
    }
    out.validate();
    if (genus(out) != 0)
      throw InternalError("monodromy: extracted branch data does not close up to a sphere");
    return out;
  }
  throw UndeterminedError("monodromy: certification failed at the precision cap");
}

}  // namespace covalg

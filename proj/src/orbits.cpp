#include "covalg/orbits.hpp"

#include <algorithm>

#include "covalg/bivar.hpp"
#include <map>
#include <set>

namespace covalg {

namespace {

struct PointLess {
  bool operator()(const SpherePoint& a, const SpherePoint& b) const {
    return SpherePoint::cmp(a, b) < 0;
  }
};

struct MoebiusLess {
  bool operator()(const MoebiusTransform& a, const MoebiusTransform& b) const {
    return MoebiusTransform::cmp(a, b) < 0;
  }
};

using PointSet = std::set<SpherePoint, PointLess>;

std::vector<MoebiusTransform> symmetrize(const std::vector<MoebiusTransform>& gens) {
  std::set<MoebiusTransform, MoebiusLess> out;
  for (const auto& g : gens) {
    if (g.is_identity()) continue;
    out.insert(g);
    out.insert(g.inverse());
  }
  return {out.begin(), out.end()};
}

// Word lengths of all group elements reachable within the given word length,
// by breadth-first closure over the symmetrized generators.
std::map<MoebiusTransform, int, MoebiusLess> word_ball(const std::vector<MoebiusTransform>& gens,
                                                       int radius, long cap) {
  const auto sym = symmetrize(gens);
  std::map<MoebiusTransform, int, MoebiusLess> wl;
  wl[MoebiusTransform::identity()] = 0;
  std::vector<MoebiusTransform> frontier{MoebiusTransform::identity()};
  for (int w = 1; w <= radius && !frontier.empty(); ++w) {
    std::vector<MoebiusTransform> next;
    for (const auto& prev : frontier) {
      for (const auto& g : sym) {
        MoebiusTransform cand = g.compose(prev);
        if (wl.emplace(cand, w).second) {
          if (static_cast<long>(wl.size()) > cap)
            throw UndeterminedError("word ball exceeded the element cap");
          next.push_back(std::move(cand));
        }
      }
    }
    frontier = std::move(next);
  }
  return wl;
}

bool value_member(const std::vector<SpherePoint>& sorted, const SpherePoint& p) {
  auto it = std::lower_bound(sorted.begin(), sorted.end(), p, PointLess{});
  return it != sorted.end() && SpherePoint::cmp(*it, p) == 0;
}

// In-field points of one exact fiber; irrational Galois classes are returned
// separately as their minimal polynomials.
struct FieldFiber {
  std::vector<SpherePoint> points;
  std::vector<Poly<ExactScalar>> irrational;
};

FieldFiber field_fiber(const RationalMap& P, const SpherePoint& v) {
  FieldFiber out;
  Fiber f = fiber(P, v);
  for (const FiberClass& cls : f.classes) {
    if (cls.min_poly.degree() == 1)
      out.points.push_back(SpherePoint(cls.exact_point()));
    else
      out.irrational.push_back(cls.min_poly);
  }
  if (f.infinity_multiplicity > 0) out.points.push_back(SpherePoint::infinity());
  return out;
}

// Deck elements of every map with their word lengths inside the generator
// group; an element outside the searched ball is an InputError naming it.
struct DeckPlacement {
  std::vector<TransformGroup> decks;
  int growth_bound = 0;
};

DeckPlacement place_decks(const std::vector<RationalMap>& maps, const OrbitSet& S,
                          const std::string& caller) {
  const int radius = std::max(S.depth(), 2);
  auto ball = word_ball(S.generators(), radius, 200000);
  DeckPlacement out;
  for (size_t i = 0; i < maps.size(); ++i) {
    TransformGroup deck = deck_group(maps[i]);
    for (const MoebiusTransform& g : *deck.elements) {
      if (g.is_identity()) continue;
      auto it = ball.find(g);
      if (it == ball.end())
        throw InputError(caller + ": deck element " + g.str() + " of map " +
                         std::to_string(i + 1) +
                         " is not in the generator group (word search to depth " +
                         std::to_string(radius) + ")");
      out.growth_bound = std::max(out.growth_bound, it->second);
    }
    out.decks.push_back(std::move(deck));
  }
  return out;
}

}  // namespace

OrbitSet::OrbitSet(SpherePoint base, std::vector<MoebiusTransform> generators, int depth,
                   std::vector<OrbitPoint> points)
    : base_(std::move(base)), gens_(std::move(generators)), depth_(depth), pts_(std::move(points)) {
  std::sort(pts_.begin(), pts_.end(), [](const OrbitPoint& a, const OrbitPoint& b) {
    if (a.word_length != b.word_length) return a.word_length < b.word_length;
    return SpherePoint::cmp(a.point, b.point) < 0;
  });
  lookup_.reserve(pts_.size());
  for (const OrbitPoint& p : pts_) lookup_.emplace_back(p.point, p.word_length);
  std::sort(lookup_.begin(), lookup_.end(),
            [](const auto& a, const auto& b) { return SpherePoint::cmp(a.first, b.first) < 0; });
  for (size_t i = 0; i + 1 < lookup_.size(); ++i)
    if (SpherePoint::cmp(lookup_[i].first, lookup_[i + 1].first) == 0)
      throw InputError("orbit set: duplicate point");
}

std::optional<int> OrbitSet::word_length(const SpherePoint& p) const {
  auto it = std::lower_bound(
      lookup_.begin(), lookup_.end(), p,
      [](const auto& a, const SpherePoint& b) { return SpherePoint::cmp(a.first, b) < 0; });
  if (it == lookup_.end() || SpherePoint::cmp(it->first, p) != 0) return std::nullopt;
  return it->second;
}

OrbitSet orbit(const SpherePoint& base, const std::vector<MoebiusTransform>& generators,
               int depth, long point_cap) {
  if (depth < 0) throw InputError("orbit: depth must be nonnegative");
  const auto sym = symmetrize(generators);
  std::map<SpherePoint, int, PointLess> seen;
  seen[base] = 0;
  std::vector<SpherePoint> frontier{base};
  for (int w = 1; w <= depth && !frontier.empty(); ++w) {
    std::vector<SpherePoint> next;
    for (const SpherePoint& s : frontier) {
      for (const auto& g : sym) {
        SpherePoint img = g.apply(s);
        if (seen.emplace(img, w).second) {
          if (static_cast<long>(seen.size()) > point_cap)
            throw UndeterminedError("orbit: point count exceeded the cap of " +
                                    std::to_string(point_cap));
          next.push_back(std::move(img));
        }
      }
    }
    frontier = std::move(next);
  }
  std::vector<OrbitPoint> pts;
  pts.reserve(seen.size());
  for (auto& [p, w] : seen) pts.push_back({p, w});
  return OrbitSet(base, generators, depth, std::move(pts));
}

std::vector<ValueSet> construct_sets(const std::vector<RationalMap>& maps, const OrbitSet& S) {
  if (maps.empty()) throw InputError("construct_sets: no maps given");
  place_decks(maps, S, "construct_sets");  // containment check
  std::vector<ValueSet> out;
  for (size_t i = 0; i < maps.size(); ++i) {
    PointSet values;
    for (const OrbitPoint& s : S.points()) values.insert(maps[i].eval(s.point));
    ValueSet vs;
    vs.values.assign(values.begin(), values.end());
    vs.provenance = static_cast<int>(i);
    out.push_back(std::move(vs));
  }
  return out;
}

bool VerificationReport::pass() const {
  for (const auto& c : checks)
    if (c.kind != "value-set-equality" && !c.pass) return false;
  return true;
}

const VerificationCheck* VerificationReport::find(const std::string& kind) const {
  for (const auto& c : checks)
    if (c.kind == kind) return &c;
  return nullptr;
}

VerificationReport verify_shared_preimage(const std::vector<RationalMap>& maps,
                                          const std::vector<ValueSet>& sets, const OrbitSet& S,
                                          int window_depth) {
  if (maps.size() != sets.size())
    throw InputError("verify_shared_preimage: one value set per map required");
  if (maps.empty()) throw InputError("verify_shared_preimage: no maps given");
  if (window_depth < 0) throw InputError("verify_shared_preimage: window must be nonnegative");

  DeckPlacement placement = place_decks(maps, S, "verify_shared_preimage");
  if (window_depth + placement.growth_bound > S.depth())
    throw InputError("verify_shared_preimage: window depth " + std::to_string(window_depth) +
                     " plus deck growth bound " + std::to_string(placement.growth_bound) +
                     " exceeds the orbit depth " + std::to_string(S.depth()));

  VerificationReport report;
  report.window_depth = window_depth;
  report.growth_bound = placement.growth_bound;

  const size_t k = maps.size();
  std::vector<std::vector<SpherePoint>> K(k);
  for (size_t i = 0; i < k; ++i) {
    K[i] = sets[i].values;
    std::sort(K[i].begin(), K[i].end(), PointLess{});
  }

  std::vector<SpherePoint> window_points;
  for (const OrbitPoint& s : S.points()) {
    if (s.word_length > window_depth) break;  // level order
    window_points.push_back(s.point);
  }

  // (a) Fiber-completeness: the full exact fiber of every window point lies
  // in S. An irrational fiber class has no point in the declared field, so
  // it cannot lie in S and counts as a counterexample as well.
  VerificationCheck fc{"fiber-completeness", true, {}};
  std::vector<PointSet> window_values(k);  // values over the window, per map
  PointSet candidates;
  for (size_t i = 0; i < k; ++i) {
    for (const SpherePoint& s : window_points) {
      const SpherePoint v = maps[i].eval(s);
      if (!window_values[i].insert(v).second) continue;
      FieldFiber ff = field_fiber(maps[i], v);
      for (const auto& mp : ff.irrational) {
        fc.pass = false;
        fc.counterexamples.push_back("fiber of map " + std::to_string(i + 1) + " over " + v.str() +
                                     " contains the irrational class " + poly_str(mp, "x"));
      }
      for (const SpherePoint& p : ff.points) {
        candidates.insert(p);
        if (!S.contains(p)) {
          fc.pass = false;
          fc.counterexamples.push_back("fiber point " + p.str() + " of map " +
                                       std::to_string(i + 1) + " over " + v.str() +
                                       " is not in the orbit set");
        }
      }
    }
  }

  // Values someone put into a K_i without any witness in P_i(S) violate the
  // value-set invariant; their fibers join the candidate pool so that the
  // mismatch surfaces as a counterexample below.
  for (size_t i = 0; i < k; ++i) {
    PointSet image;
    for (const OrbitPoint& s : S.points()) image.insert(maps[i].eval(s.point));
    for (const SpherePoint& v : K[i]) {
      if (image.count(v)) continue;
      FieldFiber ff = field_fiber(maps[i], v);
      for (const SpherePoint& p : ff.points) candidates.insert(p);
    }
  }

  // (b) Equality of preimages on the candidate pool: membership of each
  // candidate in P_i^{-1}(K_i) must agree across the maps.
  VerificationCheck eq{"preimage-equality", true, {}};
  for (const SpherePoint& p : candidates) {
    std::vector<bool> member(k);
    for (size_t i = 0; i < k; ++i) member[i] = value_member(K[i], maps[i].eval(p));
    for (size_t i = 1; i < k; ++i) {
      if (member[i] != member[0]) {
        eq.pass = false;
        const size_t in = member[i] ? i : 0, outside = member[i] ? 0 : i;
        eq.counterexamples.push_back(p.str() + " is in the preimage of K_" +
                                     std::to_string(in + 1) + " under map " +
                                     std::to_string(in + 1) + " but not in the preimage of K_" +
                                     std::to_string(outside + 1) + " under map " +
                                     std::to_string(outside + 1));
      }
    }
  }

  // (c) Value-set equality with the growth margin: every value reached from
  // the inner window by one map must be reached from the window by every
  // other. Informational: it certifies the single-K collapse when it holds.
  VerificationCheck vk{"value-set-equality", true, {}};
  const int inner = window_depth - placement.growth_bound;
  for (size_t i = 0; i < k; ++i) {
    PointSet inner_values;
    for (const OrbitPoint& s : S.points()) {
      if (s.word_length > inner) break;
      inner_values.insert(maps[i].eval(s.point));
    }
    for (size_t j = 0; j < k; ++j) {
      if (j == i) continue;
      for (const SpherePoint& v : inner_values) {
        if (!window_values[j].count(v)) {
          vk.pass = false;
          vk.counterexamples.push_back(v.str() + " is a window value of map " +
                                       std::to_string(i + 1) + " but not of map " +
                                       std::to_string(j + 1));
        }
      }
    }
  }

  // Windowed preimage sets P_i^{-1}(K_i) restricted to the window.
  for (size_t i = 0; i < k; ++i) {
    PointSet t;
    for (const SpherePoint& v : K[i])
      for (const SpherePoint& p : field_fiber(maps[i], v).points) {
        auto w = S.word_length(p);
        if (w && *w <= window_depth) t.insert(p);
      }
    report.windowed_preimages.emplace_back(t.begin(), t.end());
  }

  auto cap_list = [](VerificationCheck& c) {
    if (c.counterexamples.size() > 16) {
      const size_t extra = c.counterexamples.size() - 16;
      c.counterexamples.resize(16);
      c.counterexamples.push_back("(+" + std::to_string(extra) + " more)");
    }
  };
  cap_list(fc);
  cap_list(eq);
  cap_list(vk);
  report.checks = {std::move(fc), std::move(eq), std::move(vk)};
  return report;
}

std::optional<FiniteReduction> finite_group_reduction(const std::vector<RationalMap>& maps,
                                                      long order_cap) {
  if (maps.empty()) throw InputError("finite_group_reduction: no maps given");
  std::set<MoebiusTransform, MoebiusLess> gens;
  for (const RationalMap& P : maps) {
    TransformGroup deck = deck_group(P);
    for (const MoebiusTransform& g : deck.generators)
      if (!g.is_identity()) gens.insert(g);
  }
  std::vector<MoebiusTransform> gen_list(gens.begin(), gens.end());

  TransformGroup G;
  try {
    G = enumerate_group(gen_list, order_cap);
  } catch (const UndeterminedError&) {
    // Growth certificate: strictly increasing word-ball sizes for 8
    // consecutive radii witness an infinite group.
    auto ball = word_ball(gen_list, 8, 600000);
    std::vector<long> sizes(9, 0);
    for (const auto& [g, w] : ball) ++sizes[static_cast<size_t>(w)];
    for (size_t r = 1; r < sizes.size(); ++r) sizes[r] += sizes[r - 1];
    bool strict = true;
    for (size_t r = 0; r + 1 < sizes.size(); ++r)
      if (sizes[r + 1] <= sizes[r]) strict = false;
    if (strict) return std::nullopt;
    throw UndeterminedError(
        "finite_group_reduction: closure exceeded the cap without a growth certificate");
  }

  FiniteReduction red{quotient_map(G), {}, G};
  for (const RationalMap& P : maps) {
    auto F = left_factor(red.common, P);
    if (!F)
      throw InternalError("finite_group_reduction: quotient map does not factor through " +
                          P.str());
    if (F->compose(P) != red.common)
      throw InternalError("finite_group_reduction: factorization check failed for " + P.str());
    red.factors.push_back(std::move(*F));
  }
  return red;
}

std::vector<MoebiusTransform> assemble_generators(const std::vector<RationalMap>& maps,
                                                  const MoebiusTransform& mu) {
  std::set<MoebiusTransform, MoebiusLess> out;
  for (const RationalMap& P : maps) {
    TransformGroup deck = deck_group(P);
    for (const MoebiusTransform& g : deck.generators)
      if (!g.is_identity()) out.insert(g);
  }
  if (!mu.is_identity()) out.insert(mu);
  return {out.begin(), out.end()};
}

SpherePoint choose_base(const std::vector<RationalMap>& maps) {
  for (long j = 0; j < 1000; ++j) {
    const long r = (j % 2 == 1) ? (j + 1) / 2 : -(j / 2);
    const ExactScalar x(r);
    bool ok = true;
    for (const RationalMap& P : maps)
      if (eval(P.wronskian(), x) == ExactScalar(0)) ok = false;
    if (ok) return SpherePoint(x);
  }
  throw InternalError("choose_base: no admissible rational in the enumeration");
}

}  // namespace covalg

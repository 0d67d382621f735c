#include "covalg/corpus.hpp"

#include <algorithm>
#include <map>
#include <ostream>
#include <sstream>

#include "covalg/json_io.hpp"
#include "covalg/monodromy.hpp"
#include "covalg/orbifold.hpp"

namespace covalg {

namespace {

RationalMap poly_map(const std::vector<long>& coeffs) {
  return RationalMap::from_poly(Poly<ExactScalar>(std::vector<ExactScalar>(coeffs.begin(), coeffs.end())));
}

RationalMap dihedral_map(int n) {
  std::vector<ExactScalar> num(static_cast<size_t>(2 * n) + 1, ExactScalar(0));
  num.front() = ExactScalar(1);
  num.back() = ExactScalar(1);
  std::vector<ExactScalar> den(static_cast<size_t>(n) + 1, ExactScalar(0));
  den.back() = ExactScalar(2);
  return RationalMap(Poly<ExactScalar>(std::move(num)), Poly<ExactScalar>(std::move(den)));
}

std::vector<Poly<ExactScalar>> finite_crit_polys(const RationalMap& P) {
  std::vector<Poly<ExactScalar>> out;
  for (const auto& cc : critical_structure(P).classes)
    if (!cc.at_infinity()) out.push_back(*cc.value_min_poly);
  return out;
}

const RationalMap& by_name(const std::string& name) {
  for (const auto& e : corpus())
    if (e.name == name) return e.map;
  throw InternalError("corpus: no entry named " + name);
}

struct Suite {
  std::string line;
  bool pass = true;
};

// chi >= 0, signature-list membership, and the normalization genus must give
// one verdict per map; the constellations are kept for the later suites.
Suite classifier_suite(std::vector<Constellation>& cs) {
  Suite s;
  long checked = 0;
  for (const auto& e : corpus()) {
    ClassVerdict v = classify(e.map);
    Constellation c = extract_monodromy(e.map);
    long gn = normalization_genus(c);
    const bool chi_says = v.chi >= 0;
    const bool genus_says = gn <= 1;
    const bool bound_says = v.genus_bound == GenusBound::NormalizationGenusAtMost1;
    if (chi_says != v.in_list || chi_says != genus_says || chi_says != bound_says) {
      s.pass = false;
      s.line = "classifier: FAIL on " + e.name + " (chi " + rat_str(v.chi) + ", list " +
               (v.in_list ? "yes" : "no") + ", normalization genus " + std::to_string(gn) + ")";
      return s;
    }
    cs.push_back(std::move(c));
    ++checked;
  }
  s.line = "classifier: chi sign, signature list, and normalization genus agree on " +
           std::to_string(checked) + " maps";
  return s;
}

Suite riemann_hurwitz_suite(const std::vector<Constellation>& cs) {
  Suite s;
  for (size_t i = 0; i < cs.size(); ++i) {
    const Constellation& c = cs[i];
    long branching = 0;
    for (const auto& p : c.perms) branching += c.degree - p.cycle_count();
    if (branching % 2 != 0 || genus(c) != 0) {
      s.pass = false;
      s.line = "riemann-hurwitz: FAIL on " + corpus()[i].name;
      return s;
    }
  }
  s.line = "riemann-hurwitz: branching parity and sphere genus hold on " +
           std::to_string(cs.size()) + " constellations";
  return s;
}

Suite fiber_product_suite(bool quick) {
  static const std::vector<std::pair<std::string, std::string>> all_pairs = {
      {"z^2", "z^3"},      {"z^2", "z^3-3z"},        {"z^2", "z^4-4z"},
      {"z^3-3z", "z^4-2z^2"}, {"dihedral-2", "z^2"},
  };
  const size_t take = quick ? 2 : all_pairs.size();
  Suite s;
  std::ostringstream sizes;
  for (size_t t = 0; t < take; ++t) {
    const RationalMap& A = by_name(all_pairs[t].first);
    const RationalMap& B = by_name(all_pairs[t].second);
    Constellation ca = extract_monodromy(A, finite_crit_polys(B));
    Constellation cb = extract_monodromy(B, finite_crit_polys(A));
    auto comps = fiber_product(align({ca, cb}));
    long total = 0;
    for (const auto& comp : comps) {
      total += static_cast<long>(comp.orbit.size());
      for (size_t j = 0; j < 2; ++j) {
        const long dj = j == 0 ? A.degree() : B.degree();
        if (comp.degrees_to_factors[j] * dj != static_cast<long>(comp.orbit.size())) {
          s.pass = false;
          s.line = "fiber products: FAIL (projection degree mismatch on " + all_pairs[t].first +
                   " x " + all_pairs[t].second + ")";
          return s;
        }
      }
      if (comp.genus < 0) {
        s.pass = false;
        s.line = "fiber products: FAIL (negative genus)";
        return s;
      }
    }
    if (total != static_cast<long>(A.degree()) * B.degree()) {
      s.pass = false;
      s.line = "fiber products: FAIL (orbit sizes do not partition " +
               std::to_string(A.degree() * B.degree()) + " on " + all_pairs[t].first + " x " +
               all_pairs[t].second + ")";
      return s;
    }
    if (t) sizes << ", ";
    sizes << all_pairs[t].first << " x " << all_pairs[t].second << " -> " << comps.size();
  }
  s.line = "fiber products: orbit sizes partition the degree product (" + sizes.str() + ")";
  return s;
}

Suite orbit_suite(bool quick) {
  Suite s;
  struct Config {
    std::vector<RationalMap> maps;
    SpherePoint base;
  };
  std::vector<Config> configs;
  configs.push_back({{by_name("z^2"), RationalMap(Poly<ExactScalar>({ExactScalar(1), ExactScalar(2), ExactScalar(1)}),
                                                  Poly<ExactScalar>::constant(ExactScalar(1)))},
                     SpherePoint(ExactScalar(0))});
  if (!quick) {
    RationalMap zplus = RationalMap(Poly<ExactScalar>({ExactScalar(1), ExactScalar(0), ExactScalar(1)}),
                                    Poly<ExactScalar>({ExactScalar(0), ExactScalar(1)}));
    std::vector<RationalMap> maps{by_name("z^2"), zplus};
    configs.push_back({maps, choose_base(maps)});
  }
  int runs = 0;
  for (const auto& cfg : configs) {
    auto gens = assemble_generators(cfg.maps);
    std::vector<OrbitSet> levels;
    for (int d = 0; d <= 7; ++d) levels.push_back(orbit(cfg.base, gens, d));
    for (int d = 0; d + 1 <= 7; ++d) {
      for (const auto& p : levels[static_cast<size_t>(d)].points()) {
        auto w = levels[static_cast<size_t>(d) + 1].word_length(p.point);
        if (!w || *w != p.word_length) {
          s.pass = false;
          s.line = "orbits: FAIL (truncation not monotone or word length unstable)";
          return s;
        }
      }
    }
    for (const auto& P : cfg.maps) {
      for (const auto& g : deck_group(P).generators) {
        for (const auto& p : levels[6].points()) {
          if (p.word_length > 6) continue;
          if (!levels[7].contains(g.apply(p.point))) {
            s.pass = false;
            s.line = "orbits: FAIL (orbit not deck invariant within the margin)";
            return s;
          }
        }
      }
    }
    ++runs;
  }
  s.line = "orbits: monotone truncations, stable word lengths, deck invariance (" +
           std::to_string(runs) + (runs == 1 ? " configuration)" : " configurations)");
  return s;
}

std::string determinism_payload() {
  std::ostringstream out;
  for (const auto& e : corpus()) out << e.name << " " << verdict_to_json(classify(e.map)).dump() << "\n";
  RationalMap P = by_name("z^2");
  RationalMap Q(Poly<ExactScalar>({ExactScalar(1), ExactScalar(2), ExactScalar(1)}),
                Poly<ExactScalar>::constant(ExactScalar(1)));
  auto gens = assemble_generators({P, Q});
  OrbitSet S = orbit(SpherePoint(ExactScalar(0)), gens, 8);
  out << orbit_to_json(S).dump() << "\n";
  auto sets = construct_sets({P, Q}, S);
  out << report_to_json(verify_shared_preimage({P, Q}, sets, S, 7)).dump() << "\n";
  return out.str();
}

Suite determinism_suite() {
  Suite s;
  if (determinism_payload() != determinism_payload()) {
    s.pass = false;
    s.line = "determinism: FAIL (two runs differ)";
    return s;
  }
  s.line = "determinism: repeated runs byte-identical";
  return s;
}

}  // namespace

const std::vector<CorpusEntry>& corpus() {
  static const std::vector<CorpusEntry> entries = [] {
    std::vector<CorpusEntry> out;
    for (int n = 2; n <= 6; ++n)
      out.push_back({"z^" + std::to_string(n), RationalMap::power(n)});
    for (int n = 2; n <= 5; ++n)
      out.push_back({"dihedral-" + std::to_string(n), dihedral_map(n)});
    out.push_back({"z^3-3z", poly_map({0, -3, 0, 1})});
    out.push_back({"z^4-2z^2", poly_map({0, 0, -2, 0, 1})});
    out.push_back({"z^4+z^3", poly_map({0, 0, 0, 1, 1})});
    out.push_back({"z^4-4z", poly_map({0, -4, 0, 0, 1})});
    return out;
  }();
  return entries;
}

bool corpus_check(bool quick, std::ostream& os) {
  std::vector<Suite> suites;
  std::vector<Constellation> cs;
  suites.push_back(classifier_suite(cs));
  if (suites.back().pass) suites.push_back(riemann_hurwitz_suite(cs));
  suites.push_back(fiber_product_suite(quick));
  suites.push_back(orbit_suite(quick));
  suites.push_back(determinism_suite());

  bool all = true;
  for (const auto& s : suites) {
    os << s.line << "\n";
    all = all && s.pass;
  }
  os << (all ? "corpus-check: pass (" + std::to_string(suites.size()) + " suites)"
             : "corpus-check: FAIL")
     << "\n";
  return all;
}

}  // namespace covalg

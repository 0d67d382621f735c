#include "covalg/json_io.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "covalg/roots.hpp"

namespace covalg {

namespace {

Rat rat_from_json(const Json& j) {
  if (j.is_string()) return parse_rat(j.get<std::string>());
  if (j.is_number_integer()) return Rat(static_cast<long>(j.get<long long>()));
  throw InputError("expected a rational: integer or \"p/q\" string");
}

Json poly_to_json(const Poly<ExactScalar>& p) {
  Json out = Json::array();
  for (const auto& c : p.coeffs) out.push_back(scalar_to_json(c));
  return out;
}

Json rat_poly_to_json(const Poly<Rat>& p) {
  Json out = Json::array();
  for (const auto& c : p.coeffs) out.push_back(rat_str(c));
  return out;
}

Poly<ExactScalar> poly_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) throw InputError("expected a nonempty coefficient array");
  std::vector<ExactScalar> cs;
  for (const auto& c : j) cs.push_back(scalar_from_json(c));
  return Poly<ExactScalar>(std::move(cs));
}

// Index of the field's chosen root among the canonically isolated roots of
// its minimal polynomial (1-based).
int root_index_of(const FieldPtr& f) {
  const Poly<Rat>& mp = f->min_poly();
  RootIsolation iso = isolate_roots(rat_poly_provider(mp), mp.degree(), -60, 128, 4096);
  const ComplexBall& chosen = f->isolating_ball();
  int found = 0;
  for (size_t k = 0; k < iso.roots.size(); ++k)
    if (!iso.roots[k].disjoint(f->generator_ball(192))) {
      if (found) throw InternalError("root_index_of: generator ball meets two isolated roots");
      found = static_cast<int>(k) + 1;
    }
  (void)chosen;
  if (!found) throw InternalError("root_index_of: generator ball meets no isolated root");
  return found;
}

// Signed terms of a linear expression a*z + b.
std::pair<Rat, Rat> parse_linear(const std::string& s) {
  if (s.empty()) throw InputError("empty linear expression");
  Rat a(0), b(0);
  size_t i = 0;
  while (i < s.size()) {
    size_t j = i + 1;  // a sign at position i belongs to this term
    while (j < s.size() && s[j] != '+' && s[j] != '-') ++j;
    std::string term = s.substr(i, j - i);
    if (term == "+" || term == "-" || term.empty())
      throw InputError("dangling sign in \"" + s + "\"");
    if (term.back() == 'z') {
      term.pop_back();
      if (!term.empty() && term.back() == '*') term.pop_back();
      if (term.empty() || term == "+")
        a += 1;
      else if (term == "-")
        a -= 1;
      else
        a += parse_rat(term);
    } else {
      if (term.find('z') != std::string::npos)
        throw InputError("cannot parse the term \"" + term + "\"");
      b += parse_rat(term);
    }
    i = j;
  }
  return {a, b};
}

}  // namespace

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_json(buf.str());
}

Json parse_json(const std::string& text) {
  Json j = Json::parse(text, nullptr, false);
  if (j.is_discarded()) throw InputError("malformed JSON");
  return j;
}

Json scalar_to_json(const ExactScalar& x) {
  if (!x.spec()) return rat_str(x.rational_value());
  if (x.spec()->kind() == FieldKind::GaussianRationals) {
    Json out;
    out["re"] = rat_str(x.coords()[0]);
    out["im"] = rat_str(x.coords()[1]);
    return out;
  }
  Json out;
  out["min_poly"] = rat_poly_to_json(x.spec()->min_poly());
  out["root_index"] = root_index_of(x.spec());
  Json coords = Json::array();
  for (const auto& c : x.coords()) coords.push_back(rat_str(c));
  out["coords"] = coords;
  return out;
}

ExactScalar scalar_from_json(const Json& j) {
  if (j.is_string() || j.is_number_integer()) return ExactScalar(rat_from_json(j));
  if (!j.is_object()) throw InputError("expected a scalar");
  if (j.contains("re") || j.contains("im"))
    return ExactScalar::gaussian(j.contains("re") ? rat_from_json(j.at("re")) : Rat(0),
                                 j.contains("im") ? rat_from_json(j.at("im")) : Rat(0));
  if (!j.contains("min_poly") || !j.contains("coords"))
    throw InputError("scalar object needs re/im or min_poly/coords");
  std::vector<Rat> mp_coeffs;
  for (const auto& c : j.at("min_poly")) mp_coeffs.push_back(rat_from_json(c));
  Poly<Rat> mp(std::move(mp_coeffs));
  if (mp.degree() < 2) throw InputError("min_poly must have degree >= 2");
  const int idx = j.contains("root_index") ? j.at("root_index").get<int>() : 1;
  RootIsolation iso = isolate_roots(rat_poly_provider(mp), mp.degree(), -60, 128, 4096);
  if (idx < 1 || idx > static_cast<int>(iso.roots.size()))
    throw InputError("root_index out of range");
  FieldPtr f = FieldSpec::simple_extension(mp, iso.roots[static_cast<size_t>(idx) - 1]);
  std::vector<Rat> coords;
  for (const auto& c : j.at("coords")) coords.push_back(rat_from_json(c));
  if (static_cast<int>(coords.size()) != f->degree())
    throw InputError("coords length must equal the field degree");
  return ExactScalar(f, std::move(coords));
}

Json point_to_json(const SpherePoint& p) {
  if (p.is_infinity()) return "inf";
  return scalar_to_json(p.value());
}

SpherePoint point_from_json(const Json& j) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "inf" || s == "oo" || s == "infinity") return SpherePoint::infinity();
  }
  return SpherePoint(scalar_from_json(j));
}

Json map_to_json(const RationalMap& P) {
  Json out;
  out["num"] = poly_to_json(P.num());
  out["den"] = poly_to_json(P.den());
  return out;
}

RationalMap map_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("num")) throw InputError("a map needs a \"num\" array");
  Poly<ExactScalar> num = poly_from_json(j.at("num"));
  Poly<ExactScalar> den =
      j.contains("den") ? poly_from_json(j.at("den")) : Poly<ExactScalar>::constant(ExactScalar(1));
  return RationalMap(std::move(num), std::move(den));
}

Json moebius_to_json(const MoebiusTransform& m) {
  Json out;
  out["a"] = scalar_to_json(m.a());
  out["b"] = scalar_to_json(m.b());
  out["c"] = scalar_to_json(m.c());
  out["d"] = scalar_to_json(m.d());
  return out;
}

MoebiusTransform moebius_from_json(const Json& j) {
  if (j.is_string()) return parse_moebius(j.get<std::string>());
  if (!j.is_object()) throw InputError("expected a transformation object or expression string");
  auto get = [&](const char* k, long dflt) {
    return j.contains(k) ? scalar_from_json(j.at(k)) : ExactScalar(dflt);
  };
  return MoebiusTransform(get("a", 1), get("b", 0), get("c", 0), get("d", 1));
}

MoebiusTransform parse_moebius(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) throw InputError("empty transformation expression");

  // "(a z + b)/(c z + d)", both sides parenthesized.
  if (s.front() == '(') {
    int depth = 0;
    size_t close = std::string::npos;
    for (size_t i = 0; i < s.size(); ++i) {
      if (s[i] == '(') ++depth;
      if (s[i] == ')' && --depth == 0) {
        close = i;
        break;
      }
    }
    if (close == std::string::npos) throw InputError("unbalanced parentheses in \"" + text + "\"");
    if (close + 2 < s.size() && s[close + 1] == '/' && s[close + 2] == '(' && s.back() == ')') {
      auto [a, b] = parse_linear(s.substr(1, close - 1));
      auto [c, d] = parse_linear(s.substr(close + 3, s.size() - close - 4));
      return MoebiusTransform(ExactScalar(a), ExactScalar(b), ExactScalar(c), ExactScalar(d));
    }
    if (close == s.size() - 1) {
      auto [a, b] = parse_linear(s.substr(1, close - 1));
      return MoebiusTransform::affine(ExactScalar(a), ExactScalar(b));
    }
    throw InputError("cannot parse the transformation \"" + text + "\"");
  }

  // "c/z" and "c/(...)": the denominator must be "z" or parenthesized, so
  // rational coefficients like 1/2 stay unambiguous.
  for (size_t i = 1; i + 1 < s.size(); ++i) {
    if (s[i] != '/') continue;
    const std::string rest = s.substr(i + 1);
    if (rest == "z") {
      Rat c = parse_rat(s.substr(0, i));
      return MoebiusTransform(ExactScalar(0), ExactScalar(c), ExactScalar(1), ExactScalar(0));
    }
    if (rest.front() == '(' && rest.back() == ')') {
      Rat cnum = parse_rat(s.substr(0, i));
      auto [c, d] = parse_linear(rest.substr(1, rest.size() - 2));
      return MoebiusTransform(ExactScalar(0), ExactScalar(cnum), ExactScalar(c), ExactScalar(d));
    }
  }

  auto [a, b] = parse_linear(s);
  return MoebiusTransform::affine(ExactScalar(a), ExactScalar(b));
}

namespace {

Json class_to_json(const CriticalClass& cc) {
  Json out;
  out["value_min_poly"] = cc.at_infinity() ? Json(nullptr) : poly_to_json(*cc.value_min_poly);
  Json prof = Json::array();
  for (const auto& [e, n] : cc.profile) prof.push_back(Json::array({e, n}));
  out["profile"] = prof;
  return out;
}

Json label_to_json(const BranchLabel& l) {
  Json out;
  if (l.point)
    out["point"] = point_to_json(*l.point);
  else
    out["tag"] = l.tag;
  return out;
}

BranchLabel label_from_json(const Json& j) {
  if (j.is_object() && j.contains("tag")) return BranchLabel::named(j.at("tag").get<std::string>());
  if (j.is_object() && j.contains("point")) return BranchLabel::at(point_from_json(j.at("point")));
  return BranchLabel::at(point_from_json(j));
}

}  // namespace

Json portrait_to_json(const RamificationPortrait& r) {
  Json out;
  out["degree"] = r.degree;
  out["total_branch_points"] = r.total_branch_points();
  Json cls = Json::array();
  for (const auto& cc : r.classes) cls.push_back(class_to_json(cc));
  out["classes"] = cls;
  return out;
}

Json verdict_to_json(const ClassVerdict& v) {
  Json out;
  out["signature"] = v.signature.values;
  out["chi"] = rat_str(v.chi);
  out["in_list"] = v.in_list;
  out["list_member"] = v.list_member ? Json(*v.list_member) : Json(nullptr);
  out["genus_bound"] = genus_bound_str(v.genus_bound);
  return out;
}

Json certificate_to_json(const GaloisCertificate& c) {
  Json out;
  out["galois"] = c.galois;
  out["deck"] = c.deck ? group_to_json(*c.deck) : Json(nullptr);
  out["nonuniform_class"] = c.nonuniform_class ? class_to_json(*c.nonuniform_class) : Json(nullptr);
  out["missing_field_hint"] =
      c.missing_field_hint ? rat_poly_to_json(*c.missing_field_hint) : Json(nullptr);
  return out;
}

Json group_to_json(const TransformGroup& g) {
  Json out;
  out["order"] = g.order;
  Json gens = Json::array();
  for (const auto& m : g.generators) gens.push_back(moebius_to_json(m));
  out["generators"] = gens;
  if (g.elements) {
    Json els = Json::array();
    for (const auto& m : *g.elements) els.push_back(moebius_to_json(m));
    out["elements"] = els;
  } else {
    out["elements"] = Json(nullptr);
  }
  return out;
}

Json constellation_to_json(const Constellation& c) {
  Json out;
  out["degree"] = c.degree;
  Json bps = Json::array();
  for (const auto& l : c.branch_points) bps.push_back(label_to_json(l));
  out["branch_points"] = bps;
  Json ps = Json::array();
  for (const auto& p : c.perms) ps.push_back(p.images());
  out["perms"] = ps;
  return out;
}

Constellation constellation_from_json(const Json& j) {
  Constellation c;
  if (!j.is_object() || !j.contains("degree")) throw InputError("a constellation needs a degree");
  c.degree = j.at("degree").get<int>();
  if (j.contains("branch_points"))
    for (const auto& l : j.at("branch_points")) c.branch_points.push_back(label_from_json(l));
  if (j.contains("perms")) {
    for (const auto& p : j.at("perms")) {
      if (p.is_string())
        c.perms.push_back(Permutation::parse_cycles(c.degree, p.get<std::string>()));
      else
        c.perms.push_back(Permutation(p.get<std::vector<int>>()));
    }
  }
  c.validate();
  return c;
}

Json component_to_json(const FiberComponent& c) {
  Json out;
  out["degree"] = c.orbit.size();
  out["genus"] = c.genus;
  out["projection_degrees"] = c.degrees_to_factors;
  return out;
}

Json orbit_to_json(const OrbitSet& s) {
  Json out;
  out["base"] = point_to_json(s.base());
  out["depth"] = s.depth();
  Json gens = Json::array();
  for (const auto& g : s.generators()) gens.push_back(moebius_to_json(g));
  out["generators"] = gens;
  Json pts = Json::array();
  for (const auto& p : s.points()) {
    Json e;
    e["point"] = point_to_json(p.point);
    e["word_length"] = p.word_length;
    pts.push_back(e);
  }
  out["points"] = pts;
  return out;
}

Json value_set_to_json(const ValueSet& v) {
  Json out;
  out["map_index"] = v.provenance + 1;
  Json vals = Json::array();
  for (const auto& p : v.values) vals.push_back(point_to_json(p));
  out["values"] = vals;
  return out;
}

Json report_to_json(const VerificationReport& r) {
  Json out;
  out["window"] = r.window_depth;
  out["growth_bound"] = r.growth_bound;
  out["pass"] = r.pass();
  Json checks = Json::array();
  for (const auto& c : r.checks) {
    Json e;
    e["kind"] = c.kind;
    e["pass"] = c.pass;
    e["counterexamples"] = c.counterexamples;
    checks.push_back(e);
  }
  out["checks"] = checks;
  Json wp = Json::array();
  for (const auto& pts : r.windowed_preimages) {
    Json arr = Json::array();
    for (const auto& p : pts) arr.push_back(point_to_json(p));
    wp.push_back(arr);
  }
  out["windowed_preimages"] = wp;
  return out;
}

Json reduction_to_json(const std::optional<FiniteReduction>& r) {
  Json out;
  out["finite"] = r.has_value();
  if (r) {
    out["order"] = r->group.order;
    out["common"] = map_to_json(r->common);
    Json fs = Json::array();
    for (const auto& f : r->factors) fs.push_back(map_to_json(f));
    out["factors"] = fs;
  }
  return out;
}

}  // namespace covalg

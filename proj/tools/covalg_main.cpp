#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "covalg/corpus.hpp"
#include "covalg/json_io.hpp"
#include "covalg/monodromy.hpp"

using namespace covalg;

namespace {

struct RunConfig {
  long prec_cap = 4096;
  long order_cap = 10080;
  long point_cap = 1000000;
  int depth = 12;
  int window = 8;
  std::string format = "text";
};

void apply_config_file(RunConfig& cfg, const std::string& path) {
  Json j = load_json_file(path);
  if (j.contains("precision_cap")) cfg.prec_cap = j.at("precision_cap").get<long>();
  if (j.contains("order_cap")) cfg.order_cap = j.at("order_cap").get<long>();
  if (j.contains("point_cap")) cfg.point_cap = j.at("point_cap").get<long>();
  if (j.contains("depth")) cfg.depth = j.at("depth").get<int>();
  if (j.contains("window")) cfg.window = j.at("window").get<int>();
  if (j.contains("format")) cfg.format = j.at("format").get<std::string>();
  if (cfg.prec_cap <= 0 || cfg.order_cap <= 0 || cfg.point_cap <= 0)
    throw InputError("config: caps must be positive");
}

RationalMap load_map(const std::string& path) {
  Json j = load_json_file(path);
  return map_from_json(j.contains("map") ? j.at("map") : j);
}

std::vector<RationalMap> load_maps(const Json& j) {
  if (!j.contains("maps") || !j.at("maps").is_array() || j.at("maps").empty())
    throw InputError("expected a nonempty \"maps\" array");
  std::vector<RationalMap> maps;
  for (const auto& m : j.at("maps")) maps.push_back(map_from_json(m));
  return maps;
}

std::string point_str(const SpherePoint& p) { return p.str(); }

std::string points_line(const std::vector<SpherePoint>& pts) {
  std::ostringstream os;
  for (size_t i = 0; i < pts.size(); ++i) {
    if (i) os << ", ";
    os << pts[i].str();
  }
  return os.str();
}

std::string class_str(const CriticalClass& cc) {
  if (cc.at_infinity()) return "inf";
  if (cc.value_min_poly->degree() == 1)
    return SpherePoint(ExactScalar(0) - cc.value_min_poly->coeff(0)).str();
  return "roots of " + poly_str(*cc.value_min_poly, "y");
}

int cmd_classify(const RunConfig& cfg, const std::string& file) {
  ClassVerdict v = classify(load_map(file));
  if (cfg.format == "json") {
    std::cout << verdict_to_json(v).dump(2) << "\n";
    return 0;
  }
  std::cout << "signature " << v.signature.str() << "; chi = " << rat_str(v.chi)
            << "; verdict: "
            << (v.genus_bound == GenusBound::NormalizationGenusAtMost1
                    ? "normalization genus <= 1"
                    : "normalization genus >= 2")
            << "\n";
  return 0;
}

int cmd_galois(const RunConfig& cfg, const std::string& file) {
  GaloisCertificate cert = is_galois(load_map(file));
  if (cfg.format == "json") {
    std::cout << certificate_to_json(cert).dump(2) << "\n";
    return 0;
  }
  if (!cert.galois) {
    std::cout << "galois: no; non-uniform fiber over " << class_str(*cert.nonuniform_class)
              << "\n";
  } else if (cert.deck) {
    std::cout << "galois: yes; deck order " << cert.deck->order << "\n";
  } else {
    Poly<ExactScalar> hint(std::vector<ExactScalar>(cert.missing_field_hint->coeffs.begin(),
                                                    cert.missing_field_hint->coeffs.end()));
    std::cout << "galois: yes; deck enumeration needs a root of " << poly_str(hint, "x") << "\n";
  }
  return 0;
}

int cmd_deck(const RunConfig& cfg, const std::string& file) {
  TransformGroup g = deck_group(load_map(file));
  if (cfg.format == "json") {
    std::cout << group_to_json(g).dump(2) << "\n";
    return 0;
  }
  std::cout << "order " << g.order << "\n";
  for (const auto& m : *g.elements) std::cout << m.str() << "\n";
  return 0;
}

std::vector<Poly<ExactScalar>> other_crit_polys(const std::vector<RationalMap>& maps, size_t skip) {
  std::vector<Poly<ExactScalar>> out;
  for (size_t j = 0; j < maps.size(); ++j) {
    if (j == skip) continue;
    for (const auto& cc : critical_structure(maps[j]).classes)
      if (!cc.at_infinity()) out.push_back(*cc.value_min_poly);
  }
  return out;
}

int cmd_fiberprod(const RunConfig& cfg, const std::string& file) {
  auto maps = load_maps(load_json_file(file));
  if (maps.size() < 2) throw InputError("fiberprod needs at least two maps");
  std::vector<Constellation> cs;
  for (size_t i = 0; i < maps.size(); ++i)
    cs.push_back(extract_monodromy(maps[i], other_crit_polys(maps, i),
                                   static_cast<mpfr_prec_t>(cfg.prec_cap)));
  auto comps = fiber_product(align(cs));
  if (cfg.format == "json") {
    Json out = Json::array();
    for (const auto& c : comps) out.push_back(component_to_json(c));
    std::cout << out.dump(2) << "\n";
    return 0;
  }
  for (size_t i = 0; i < comps.size(); ++i) {
    std::cout << "component " << i + 1 << ": degree " << comps[i].orbit.size() << ", genus "
              << comps[i].genus << ", projection degrees [";
    for (size_t j = 0; j < comps[i].degrees_to_factors.size(); ++j) {
      if (j) std::cout << ", ";
      std::cout << comps[i].degrees_to_factors[j];
    }
    std::cout << "]\n";
  }
  return 0;
}

int cmd_normalize(const RunConfig& cfg, const std::string& file) {
  Constellation c = extract_monodromy(load_map(file), static_cast<mpfr_prec_t>(cfg.prec_cap));
  GroupCount g = monodromy_group(c, cfg.order_cap);
  long gn = normalization_genus(c, cfg.order_cap);
  if (cfg.format == "json") {
    Json out;
    out["monodromy_order"] = g.order;
    out["normalization_genus"] = gn;
    std::cout << out.dump(2) << "\n";
    return 0;
  }
  std::cout << "monodromy order " << g.order << "; normalization genus " << gn << "\n";
  return 0;
}

int cmd_monodromy(const RunConfig& cfg, const std::string& file) {
  Constellation c = extract_monodromy(load_map(file), static_cast<mpfr_prec_t>(cfg.prec_cap));
  if (cfg.format == "json") {
    std::cout << constellation_to_json(c).dump(2) << "\n";
    return 0;
  }
  std::cout << "degree " << c.degree << "\n";
  for (size_t i = 0; i < c.branch_points.size(); ++i)
    std::cout << c.branch_points[i].str() << " -> " << c.perms[i].str() << "\n";
  return 0;
}

std::string orbit_svg(const OrbitSet& S) {
  // Scatter of the finite points, colored by word length.
  static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                  "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};
  struct Pt {
    double x, y;
    int w;
  };
  std::vector<Pt> pts;
  double lo_x = 0, hi_x = 0, lo_y = 0, hi_y = 0;
  for (const auto& p : S.points()) {
    if (p.point.is_infinity()) continue;
    ComplexBall b = p.point.value().embed(64);
    Pt q{mpfr_get_d(b.mid_re(), MPFR_RNDN), mpfr_get_d(b.mid_im(), MPFR_RNDN), p.word_length};
    lo_x = std::min(lo_x, q.x);
    hi_x = std::max(hi_x, q.x);
    lo_y = std::min(lo_y, q.y);
    hi_y = std::max(hi_y, q.y);
    pts.push_back(q);
  }
  const double span = std::max({hi_x - lo_x, hi_y - lo_y, 1e-9});
  const double pad = 0.05 * span;
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(4);
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << lo_x - pad << " "
     << -(hi_y + pad) << " " << (hi_x - lo_x) + 2 * pad << " " << (hi_y - lo_y) + 2 * pad
     << "\">\n";
  const double r = span / 150.0;
  for (const auto& q : pts)
    os << "  <circle cx=\"" << q.x << "\" cy=\"" << -q.y << "\" r=\"" << r << "\" fill=\""
       << palette[q.w % 8] << "\"/>\n";
  os << "</svg>\n";
  return os.str();
}

int cmd_orbit(const RunConfig& cfg, const std::string& base_str,
              const std::vector<std::string>& gen_strs, int depth, long cap) {
  if (gen_strs.empty()) throw InputError("orbit: --gens requires at least one transformation");
  std::vector<MoebiusTransform> gens;
  for (const auto& s : gen_strs) gens.push_back(parse_moebius(s));
  SpherePoint base = base_str == "inf" ? SpherePoint::infinity()
                                       : SpherePoint(ExactScalar(parse_rat(base_str)));
  OrbitSet S = orbit(base, gens, depth, cap);
  if (cfg.format == "json") {
    std::cout << orbit_to_json(S).dump(2) << "\n";
    return 0;
  }
  if (cfg.format == "svg") {
    std::cout << orbit_svg(S);
    return 0;
  }
  int w = -1;
  for (const auto& p : S.points()) {
    if (p.word_length != w) {
      w = p.word_length;
      std::cout << (w ? "\n" : "") << "wl " << w << ":";
    }
    std::cout << " " << point_str(p.point);
  }
  std::cout << "\npoints: " << S.points().size() << "\n";
  return 0;
}

struct SharedSetup {
  std::vector<RationalMap> maps;
  std::vector<MoebiusTransform> gens;
  SpherePoint base;
  bool base_chosen = false;  // true when picked by the ladder, not the input
};

SharedSetup shared_setup(const Json& j) {
  SharedSetup s;
  s.maps = load_maps(j);
  if (j.contains("generators")) {
    for (const auto& g : j.at("generators")) s.gens.push_back(moebius_from_json(g));
  } else {
    s.gens = assemble_generators(s.maps);
  }
  if (j.contains("base")) {
    s.base = point_from_json(j.at("base"));
  } else {
    s.base = choose_base(s.maps);
    s.base_chosen = true;
  }
  return s;
}

int cmd_construct(const RunConfig& cfg, const std::string& file, int depth) {
  SharedSetup s = shared_setup(load_json_file(file));
  OrbitSet S = orbit(s.base, s.gens, depth, cfg.point_cap);
  auto sets = construct_sets(s.maps, S);
  if (cfg.format == "json") {
    Json out;
    out["base"] = point_to_json(s.base);
    out["base_chosen"] = s.base_chosen;
    out["orbit"] = orbit_to_json(S);
    Json ks = Json::array();
    for (const auto& v : sets) ks.push_back(value_set_to_json(v));
    out["sets"] = ks;
    std::cout << out.dump(2) << "\n";
    return 0;
  }
  std::cout << "base " << point_str(s.base) << (s.base_chosen ? " (chosen)" : "") << "; orbit of "
            << S.points().size() << " points to depth " << depth << "\n";
  for (const auto& v : sets)
    std::cout << "K_" << v.provenance + 1 << " (" << v.values.size()
              << " values): " << points_line(v.values) << "\n";
  return 0;
}

int cmd_verify(const RunConfig& cfg, const std::string& file, int depth, int window) {
  SharedSetup s = shared_setup(load_json_file(file));
  OrbitSet S = orbit(s.base, s.gens, depth, cfg.point_cap);
  auto sets = construct_sets(s.maps, S);
  VerificationReport rep = verify_shared_preimage(s.maps, sets, S, window);
  if (cfg.format == "json") {
    std::cout << report_to_json(rep).dump(2) << "\n";
    return rep.pass() ? 0 : 1;
  }
  std::cout << "window " << rep.window_depth << " (growth bound " << rep.growth_bound
            << ", orbit depth " << depth << ")\n";
  for (const auto& c : rep.checks) {
    std::cout << c.kind << ": " << (c.pass ? "pass" : "fail") << "\n";
    for (const auto& ce : c.counterexamples) std::cout << "  " << ce << "\n";
  }
  for (size_t i = 0; i < rep.windowed_preimages.size(); ++i)
    std::cout << "windowed preimage " << i + 1 << " (" << rep.windowed_preimages[i].size()
              << " points): " << points_line(rep.windowed_preimages[i]) << "\n";
  std::cout << "verdict: " << (rep.pass() ? "pass" : "fail") << "\n";
  return rep.pass() ? 0 : 1;
}

int cmd_reduce_finite(const RunConfig& cfg, const std::string& file) {
  auto maps = load_maps(load_json_file(file));
  auto red = finite_group_reduction(maps, cfg.order_cap);
  if (cfg.format == "json") {
    std::cout << reduction_to_json(red).dump(2) << "\n";
    return 0;
  }
  if (!red) {
    std::cout << "joint deck group is infinite (growth certificate)\n";
    return 0;
  }
  std::cout << "joint deck group order " << red->group.order << "\n";
  std::cout << "A = " << red->common.str() << "\n";
  for (size_t i = 0; i < red->factors.size(); ++i)
    std::cout << "F_" << i + 1 << " = " << red->factors[i].str() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig cfg;
  std::string file, base_str = "0";
  std::vector<std::string> gen_strs;
  int depth = -1, window = -1;
  long cap = -1;
  bool quick = false;

  CLI::App app{"structural analysis of holomorphic maps sharing preimage sets"};
  app.require_subcommand(1);
  app.add_option("--format", cfg.format, "output format: text, json, svg")
      ->check(CLI::IsMember({"text", "json", "svg"}));
  app.add_option("--prec-cap", cfg.prec_cap, "ball precision cap in bits");
  app.add_option("--order-cap", cfg.order_cap, "group order cap");
  app.add_option("--point-cap", cfg.point_cap, "orbit point cap");

  auto* c_classify = app.add_subcommand("classify", "ramification orbifold verdict for a map");
  c_classify->add_option("file", file)->required();
  auto* c_galois = app.add_subcommand("galois", "uniform-fiber certificate for a map");
  c_galois->add_option("file", file)->required();
  auto* c_deck = app.add_subcommand("deck", "deck transformation group of a Galois map");
  c_deck->add_option("file", file)->required();
  auto* c_fiberprod = app.add_subcommand("fiberprod", "fiber product components of several maps");
  c_fiberprod->add_option("file", file)->required();
  auto* c_normalize = app.add_subcommand("normalize", "monodromy order and normalization genus");
  c_normalize->add_option("file", file)->required();
  auto* c_monodromy = app.add_subcommand("monodromy", "branch points and permutations of a map");
  c_monodromy->add_option("file", file)->required();
  auto* c_orbit = app.add_subcommand("orbit", "truncated group orbit of a base point");
  c_orbit->add_option("--base", base_str, "base point (rational or inf)");
  c_orbit->add_option("--gens", gen_strs, "generator expressions")->delimiter(',')->required();
  c_orbit->add_option("--depth", depth, "word-length truncation depth");
  c_orbit->add_option("--cap", cap, "orbit point cap");
  auto* c_construct = app.add_subcommand("construct", "orbit S and value sets K_i for maps");
  c_construct->add_option("file", file)->required();
  c_construct->add_option("--depth", depth, "orbit depth");
  auto* c_verify = app.add_subcommand("verify", "windowed shared-preimage verification");
  c_verify->add_option("file", file)->required();
  c_verify->add_option("--depth", depth, "orbit depth");
  c_verify->add_option("--window", window, "verification window");
  auto* c_reduce = app.add_subcommand("reduce-finite", "joint finite-group form of maps");
  c_reduce->add_option("file", file)->required();
  auto* c_corpus = app.add_subcommand("corpus-check", "property suites over the shipped corpus");
  c_corpus->add_flag("--quick", quick, "fast subset of the suites");

  try {
    if (const char* env = std::getenv("COVALG_CONFIG")) apply_config_file(cfg, env);
    app.parse(argc, argv);
    if (depth < 0) depth = cfg.depth;
    if (window < 0) window = cfg.window;
    if (cap < 0) cap = cfg.point_cap;

    if (*c_classify) return cmd_classify(cfg, file);
    if (*c_galois) return cmd_galois(cfg, file);
    if (*c_deck) return cmd_deck(cfg, file);
    if (*c_fiberprod) return cmd_fiberprod(cfg, file);
    if (*c_normalize) return cmd_normalize(cfg, file);
    if (*c_monodromy) return cmd_monodromy(cfg, file);
    if (*c_orbit) return cmd_orbit(cfg, base_str, gen_strs, depth, cap);
    if (*c_construct) return cmd_construct(cfg, file, depth);
    if (*c_verify) return cmd_verify(cfg, file, depth, window);
    if (*c_reduce) return cmd_reduce_finite(cfg, file);
    if (*c_corpus) return corpus_check(quick, std::cout) ? 0 : 1;
    throw InputError("no subcommand");
  } catch (const CLI::CallForHelp&) {
    std::cout << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const UndeterminedError& e) {
    std::cerr << "undetermined: " << e.what() << "\n";
    return 3;
  } catch (const VerificationError& e) {
    std::cerr << "verification failure: " << e.what() << "\n";
    return 1;
  } catch (const DeckFieldError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

#include "covalg/orbifold.hpp"

#include <algorithm>
#include <numeric>

namespace covalg {

long Orbifold::marked_point_count() const {
  long n = 0;
  for (const OrbifoldPoint& p : marked) n += p.class_size();
  return n;
}

std::string Signature::str() const {
  std::string out = "{";
  for (size_t i = 0; i < values.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(values[i]);
  }
  return out + "}";
}

Orbifold ramification_orbifold(const RationalMap& P) {
  if (P.degree() < 2) throw InputError("ramification orbifold: degree must be at least 2");
  RamificationPortrait rp = critical_structure(P);
  Orbifold o;
  for (CriticalClass& c : rp.classes) {
    int nu = 1;
    for (auto [e, n] : c.profile) nu = std::lcm(nu, e);
    if (nu < 2) continue;  // cannot happen for a portrait class, kept for safety
    o.marked.push_back({std::move(c.value_min_poly), nu});
  }
  return o;
}

Signature signature_of(const Orbifold& o) {
  Signature s;
  for (const OrbifoldPoint& p : o.marked)
    s.values.insert(s.values.end(), static_cast<size_t>(p.class_size()), p.nu);
  std::sort(s.values.begin(), s.values.end());
  return s;
}

Rat euler_characteristic(const Orbifold& o) {
  Rat chi(2);
  for (const OrbifoldPoint& p : o.marked) {
    Rat term = Rat(1, p.nu) - 1;
    term.canonicalize();
    chi += Rat(p.class_size()) * term;
  }
  chi.canonicalize();
  return chi;
}

std::optional<std::string> signature_list_member(const Signature& s) {
  const std::vector<int>& v = s.values;
  auto is = [&](std::initializer_list<int> w) {
    return v.size() == w.size() && std::equal(v.begin(), v.end(), w.begin());
  };
  // flat: chi = 0
  if (is({2, 2, 2, 2})) return "{2,2,2,2}";
  if (is({3, 3, 3})) return "{3,3,3}";
  if (is({2, 4, 4})) return "{2,4,4}";
  if (is({2, 3, 6})) return "{2,3,6}";
  // spherical: chi > 0
  if (v.size() == 2 && v[0] == v[1]) return "{l,l}";
  if (v.size() == 3 && v[0] == 2 && v[1] == 2) return "{2,2,l}";
  if (is({2, 3, 3})) return "{2,3,3}";
  if (is({2, 3, 4})) return "{2,3,4}";
  if (is({2, 3, 5})) return "{2,3,5}";
  return std::nullopt;
}

ClassVerdict classify(const RationalMap& P) {
  Orbifold o = ramification_orbifold(P);
  ClassVerdict v;
  v.signature = signature_of(o);
  v.chi = euler_characteristic(o);
  v.list_member = signature_list_member(v.signature);
  v.in_list = v.list_member.has_value();
  bool nonneg = v.chi >= 0;
  if (nonneg != v.in_list)
    throw InternalError("classify: chi sign and signature list disagree for " +
                        v.signature.str());
  v.genus_bound =
      nonneg ? GenusBound::NormalizationGenusAtMost1 : GenusBound::NormalizationGenusAtLeast2;
  return v;
}

std::string genus_bound_str(GenusBound g) {
  return g == GenusBound::NormalizationGenusAtMost1 ? "normalization_genus_le_1"
                                                    : "normalization_genus_ge_2";
}

}  // namespace covalg

#pragma once

#include <optional>
#include <string>

#include "json.hpp"

#include "covalg/constellation.hpp"
#include "covalg/orbifold.hpp"
#include "covalg/orbits.hpp"

namespace covalg {

// Insertion-ordered JSON keeps every serialization byte-deterministic.
using Json = nlohmann::ordered_json;

Json load_json_file(const std::string& path);  // InputError on I/O or parse failure
Json parse_json(const std::string& text);      // InputError on parse failure

// Scalars: plain rationals as "p/q" strings (integers accepted on input),
// Gaussian rationals as {"re","im"}, simple-extension elements as
// {"min_poly": [rat...], "root_index": k, "coords": [rat...]} where k counts
// the roots of min_poly in the canonical isolation order.
Json scalar_to_json(const ExactScalar& x);
ExactScalar scalar_from_json(const Json& j);

Json point_to_json(const SpherePoint& p);  // "inf" or a scalar
SpherePoint point_from_json(const Json& j);

// {"num": [scalar...], "den": [scalar...]}, coefficients low to high; "den"
// defaults to 1 on input.
Json map_to_json(const RationalMap& P);
RationalMap map_from_json(const Json& j);

// {"a","b","c","d"} or an expression string on input.
Json moebius_to_json(const MoebiusTransform& m);
MoebiusTransform moebius_from_json(const Json& j);

// Expressions: affine "a*z+b" with rational coefficients ("-z", "z+1",
// "1/2z-3"), the inversion family "c/z", and the general quotient with both
// sides parenthesized: "(a z + b)/(c z + d)".
MoebiusTransform parse_moebius(const std::string& text);

Json portrait_to_json(const RamificationPortrait& r);
Json verdict_to_json(const ClassVerdict& v);
Json certificate_to_json(const GaloisCertificate& c);
Json group_to_json(const TransformGroup& g);

// {"degree", "branch_points", "perms"}; permutations are 1-based image
// arrays, or cycle strings like "(1 2)(3)" on input.
Json constellation_to_json(const Constellation& c);
Constellation constellation_from_json(const Json& j);

Json component_to_json(const FiberComponent& c);
Json orbit_to_json(const OrbitSet& s);
Json value_set_to_json(const ValueSet& v);
Json report_to_json(const VerificationReport& r);
Json reduction_to_json(const std::optional<FiniteReduction>& r);

}  // namespace covalg

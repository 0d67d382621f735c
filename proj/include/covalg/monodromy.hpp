#pragma once

#include "covalg/constellation.hpp"
#include "covalg/ratmap.hpp"

namespace covalg {

// Branch data of P, extracted by certified path tracking: a regular base
// value is chosen off the critical values, its fiber is isolated, and the
// fiber is continued along a polyline loop about each finite critical value
// (counterclockwise, loops ordered by argument from the base point). Every
// step keeps the tracked root balls certified and pairwise disjoint; failed
// steps bisect, then the whole run escalates precision up to prec_cap.
//
// The permutation over each critical value is cross-checked exactly against
// the local degrees from critical_structure, the left-to-right product of
// the returned permutations is the identity by construction with the final
// factor checked against the class of the value at infinity, and the genus
// of the result must come out 0. Any mismatch is an InternalError; running
// out of precision is an UndeterminedError.
Constellation extract_monodromy(const RationalMap& P, mpfr_prec_t prec_cap = 4096);

// Same extraction over a loop basis extended by extra branch values (given
// by their minimal polynomials, e.g. the critical values of other maps), so
// several maps can be extracted against one common set of loops: the plan
// depends only on the union of the loop centers, so maps whose own critical
// values plus extras coincide share base point, loops, and loop order, and
// their constellations are aligned sheet by sheet. Loops around values
// regular for P must come back as the identity (checked; the extra branch
// points are kept in the result with identity permutations). A map sending
// infinity to a finite regular value that appears among the extras is an
// InputError: tracking such a loop would drive a fiber point through
// infinity.
Constellation extract_monodromy(const RationalMap& P,
                                const std::vector<Poly<ExactScalar>>& extra_branch,
                                mpfr_prec_t prec_cap = 4096);

}  // namespace covalg

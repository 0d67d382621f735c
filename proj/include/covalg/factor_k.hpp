#pragma once

#include <vector>

#include "covalg/factor_q.hpp"
#include "covalg/field.hpp"
#include "covalg/poly.hpp"

namespace covalg {

// Polynomial arithmetic over the working field, with a fast integer-kernel
// path when every coefficient is rational.

Poly<ExactScalar> lift_q_poly(const Poly<Rat>& a);
// Requires every coefficient rational-valued; InternalError otherwise.
Poly<Rat> rational_poly(const Poly<ExactScalar>& a);

Poly<ExactScalar> gcd_k(const Poly<ExactScalar>& a, const Poly<ExactScalar>& b);  // monic
// a = lc * prod parts[i]^(i+1), parts monic squarefree pairwise coprime.
std::vector<Poly<ExactScalar>> yun_k(const Poly<ExactScalar>& a);
Poly<ExactScalar> squarefree_part_k(const Poly<ExactScalar>& a);
ExactScalar resultant_k(const Poly<ExactScalar>& a, const Poly<ExactScalar>& b);

struct KFactor {
  Poly<ExactScalar> factor;  // monic irreducible over the field
  int multiplicity;
};
struct KFactorization {
  ExactScalar unit;
  std::vector<KFactor> factors;  // canonical order
};

// Complete factorization over the common coefficient field: direct Zassenhaus
// over Q, norm descent through the extension generator otherwise.
KFactorization factor_over_k(const Poly<ExactScalar>& a);

bool irreducible_over_k(const Poly<ExactScalar>& a);

}  // namespace covalg

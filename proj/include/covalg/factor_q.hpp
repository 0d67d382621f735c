#pragma once

#include <vector>

#include "covalg/poly.hpp"
#include "covalg/rational.hpp"

namespace covalg {

// Integer polynomials, low-to-high, normalized like Poly: empty or back != 0.
using ZPoly = std::vector<Int>;

int zp_deg(const ZPoly& a);
void zp_normalize(ZPoly& a);
ZPoly zp_mul(const ZPoly& a, const ZPoly& b);
ZPoly zp_sub(const ZPoly& a, const ZPoly& b);
Int zp_content(const ZPoly& a);          // nonnegative; sign carried by lc
ZPoly zp_primitive(const ZPoly& a);      // content removed, lc sign kept
ZPoly zp_derivative(const ZPoly& a);
// Exact division; throws InternalError when not divisible.
ZPoly zp_divexact(const ZPoly& a, const ZPoly& b);
bool zp_divides(const ZPoly& b, const ZPoly& a);  // b | a

// Subresultant PRS with content stripping.
ZPoly zp_gcd(ZPoly a, ZPoly b);
Int zp_resultant(ZPoly a, ZPoly b);

// scale * zpoly == the rational polynomial (zpoly primitive, lc > 0).
std::pair<ZPoly, Rat> to_primitive_z(const Poly<Rat>& a);
Poly<Rat> from_z(const ZPoly& a);

// Fast gcd/resultant for rational polynomials through the integer kernel.
Poly<Rat> qpoly_gcd(const Poly<Rat>& a, const Poly<Rat>& b);  // monic
Rat qpoly_resultant(const Poly<Rat>& a, const Poly<Rat>& b);

struct QFactor {
  Poly<Rat> factor;  // monic irreducible
  int multiplicity;
};
struct QFactorization {
  Rat unit;  // a == unit * prod factor^multiplicity
  std::vector<QFactor> factors;
};

// Monic squarefree parts: a = lc(a) * prod parts[i]^(i+1), pairwise coprime.
// Runs Yun over the primitive integer model to keep coefficients small.
std::vector<Poly<Rat>> yun_squarefree_q(const Poly<Rat>& a);

// Complete factorization over Q (Yun, then Berlekamp mod p, quadratic Hensel,
// subset recombination per squarefree part). Deterministic.
QFactorization factor_over_q(const Poly<Rat>& a);

bool irreducible_over_q(const Poly<Rat>& a);

}  // namespace covalg

#pragma once

#include <functional>
#include <vector>

#include "covalg/ball.hpp"
#include "covalg/field.hpp"

namespace covalg {

// Yields the coefficient balls (low-to-high, fixed length) of one polynomial
// at any requested midpoint precision. Must be consistent across precisions:
// the balls at higher precision are contained in those at lower precision up
// to outward rounding (true for exact-value embeddings).
using CoeffProvider = std::function<std::vector<ComplexBall>(mpfr_prec_t)>;

CoeffProvider rat_poly_provider(Poly<Rat> p);
CoeffProvider scalar_poly_provider(Poly<ExactScalar> p, mpfr_prec_t prec_cap = 4096);

struct RootIsolation {
  std::vector<ComplexBall> roots;  // pairwise disjoint, one root each, sorted
  mpfr_prec_t used_prec = 0;
};

// All complex roots of a squarefree polynomial of the given exact degree.
// Each returned ball is certified (by interval Newton contraction) to contain
// exactly one root of every polynomial within the coefficient balls, refined
// until rad <= 2^rad_exp. Deterministic ordering by midpoint (re, im).
// Throws UndeterminedError when the precision cap is exceeded.
RootIsolation isolate_roots(const CoeffProvider& coeffs, int degree, long rad_exp,
                            mpfr_prec_t start_prec, mpfr_prec_t prec_cap);

// Shrink an already-certified isolating ball until rad <= 2^rad_exp.
ComplexBall refine_root(const CoeffProvider& coeffs, int degree, ComplexBall isolating,
                        long rad_exp, mpfr_prec_t start_prec, mpfr_prec_t prec_cap);

// Horner evaluation in ball arithmetic.
ComplexBall eval_ball_poly(const std::vector<ComplexBall>& c, const ComplexBall& z);

std::vector<ComplexBall> ball_poly_derivative(const std::vector<ComplexBall>& c);

// Certified Newton contraction of seed toward a root of the polynomial:
// returns a ball contained in `region` holding exactly one root, or nullopt
// if certification fails at this precision. seed is the starting midpoint.
std::optional<ComplexBall> certify_root_near(const std::vector<ComplexBall>& coeffs,
                                             const ComplexBall& seed, int max_attempts = 24);

}  // namespace covalg

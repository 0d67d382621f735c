#pragma once

#include <optional>
#include <vector>

#include "covalg/ball.hpp"
#include "covalg/field.hpp"

namespace covalg {

// Best rational explanation of a real ball: the unique p/q with
// |p/q - mid| <= rad and 2*q^2*rad < 1, found on the continued fraction of
// the (exactly dyadic) midpoint. nullopt when the ball cannot contain such a
// rational (imaginary part too large, or no small-denominator value fits).
std::optional<Rat> rational_from_ball(const ComplexBall& b);

// Writes the ball's value in the power basis of F (coordinates rational)
// when a small integer relation explains it; F null means plain rationals.
// The result is a candidate only: callers must verify it exactly downstream.
std::optional<ExactScalar> scalar_from_ball(const FieldPtr& F, const ComplexBall& b,
                                            mpfr_prec_t prec);

// Minimal-polynomial guess for the ball's value: smallest degree <= max_degree
// whose integer relation among 1, x, ..., x^d is short enough to be credible
// and whose polynomial is irreducible with a root inside the ball's vicinity.
// Advisory output for error messages; never a certificate.
std::optional<Poly<Rat>> min_poly_from_ball(const ComplexBall& b, int max_degree);

// Shortest-vector style reduction (Lenstra-Lenstra-Lovasz, delta = 3/4) of a
// small integer lattice given by row vectors. Exact rational Gram-Schmidt;
// intended for the tiny dimensions used above.
std::vector<std::vector<Int>> lll_reduce(std::vector<std::vector<Int>> basis);

}  // namespace covalg

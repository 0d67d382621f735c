#pragma once

#include <optional>

#include "covalg/ratmap.hpp"

namespace covalg {

// Degree of the maximal common compositional right factor W of P and Q
// (P = A ∘ W, Q = B ∘ W with deg W maximal). 1 means no nontrivial common
// right factor. Computed from the bidegree of the squarefree part of
// Res_z(num_P - x den_P, num_Q - y den_Q); the two independent degree
// quotients must agree or InternalError is thrown.
int common_right_factor_degree(const RationalMap& P, const RationalMap& Q);

// Solves A = F ∘ P for F. Returns nullopt when no such F exists. Requires
// deg P | deg A (InputError otherwise). A successful result satisfies
// compose(F, P) == A exactly; that identity is re-checked internally.
std::optional<RationalMap> left_factor(const RationalMap& A, const RationalMap& P);

}  // namespace covalg

#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

#include "qeskc/ratfunc.hpp"

namespace qeskc {

struct SingularSystem : std::runtime_error {
    SingularSystem() : std::runtime_error("linear system is symbolically singular") {}
};

using PolyMatrix = std::vector<std::vector<MultiPoly>>;
using PolyVector = std::vector<MultiPoly>;

// Exact solution of A x = rhs over the rational-function field via
// fraction-free (Bareiss) elimination; divisions are exact by construction,
// so no rational-function arithmetic happens until back-substitution.
// The residual A x - rhs is verified to vanish identically.
std::vector<RatFunc> solve_linear_exact(PolyMatrix A, PolyVector rhs);

// Trial-division extraction of factors (q^2 + c k), c a positive rational,
// from a polynomial in q and k only. The product of the returned factors
// times the remainder equals the input exactly.
struct ShiftedQuadraticFactors {
    std::vector<std::pair<Rational, int>> factors;  // (c, multiplicity)
    MultiPoly remainder;
};
ShiftedQuadraticFactors factor_shifted_quadratics(const MultiPoly& p);

}  // namespace qeskc

#pragma once

#include "qeskc/gfm.hpp"

namespace qeskc {
namespace reference {

// Closed-form reference solutions of the coefficient system for m <= 7,
// used as regression fixtures and by the m = 3 route crosscheck. The m = 6
// denominator uses the 919 k^2 q^2 variant (see gfm::audit_m6_denominator).
gfm::CoeffSolution coeffs(int m);

// m = 3 closed-form tables of the shape-invariance route.
std::vector<RatFunc> m3_B();                  // B_1..B_6
CurvedRF m3_W();
CurvedRF m3_Wprime();
std::pair<RatFunc, RatFunc> m3_energies();    // (E0, E1)

// Tabulated energies for m = 4..7 (denominators normalized to the
// coefficient-table variant for m = 6).
std::pair<RatFunc, RatFunc> energies(int m);

}  // namespace reference
}  // namespace qeskc

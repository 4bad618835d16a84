#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qeskc/curved.hpp"
#include "qeskc/linsolve.hpp"

namespace qeskc {
namespace gfm {

struct BadCount : std::logic_error {
    explicit BadCount(int m, std::size_t got)
        : std::logic_error("coefficient system for m=" + std::to_string(m) + " has " +
                           std::to_string(got) + " equations, expected " + std::to_string(m + 1)) {
    }
};
struct StructureMismatch : std::runtime_error {
    explicit StructureMismatch(const std::string& what) : std::runtime_error(what) {}
};
struct ConsistencyFailure : std::runtime_error {
    explicit ConsistencyFailure(const std::string& what) : std::runtime_error(what) {}
};

// Exact solution (a_0, ..., a_m) of the coefficient system determining the
// generating functions of the m-th extended potential.
struct CoeffSolution {
    int m = 0;
    std::vector<RatFunc> a;  // size m + 1, rational functions in (q, k)
};

struct LinearSystem {
    PolyMatrix A;
    PolyVector rhs;
};

// The m + 1 linear equations on a_0..a_m obtained by matching coefficients
// in f W+' = W+ W- + (E1 - E0). The parity-dependent closing equation is
// omitted for m = 1, where it would reference a_{-1}.
LinearSystem build_system(int m);

// Solve the system exactly and verify the redundant equation
// q(1 - a_0) = sum of even coefficients, which must follow from the rest.
CoeffSolution solve_coeffs(int m);

// Residual of the redundant equation for an arbitrary vector (zero for a
// genuine solution).
RatFunc redundancy_residual(const CoeffSolution& sol);

struct Superpotentials {
    CurvedRF Wplus, Wminus, W, Wprime;
};
// W- = -f/r - q + m k r/f;  W+ = (2L+3)(-f/r + q a0 + ...);
// W = (W+ - W-)/2, W' = (W+ + W-)/2.
Superpotentials build_superpotentials(const CoeffSolution& sol);

// Energy pair expressed through a_0 alone.
struct Energies {
    RatFunc E0, E1;
};
Energies energies(const CoeffSolution& sol);

// A fully determined member of the extended Kepler-Coulomb family on the
// sphere: V = L(L+1)/r^2 - (Q/r) f + k sum_j (B_{2j-1} r/f^{2j-1} + B_{2j}/f^{2j}).
struct PotentialSpec {
    int m = 0;
    RatFunc angular;    // L(L+1)
    RatFunc coulomb_Q;  // 2(L+1)(L+2) q
    std::vector<RatFunc> B;  // B_1..B_{2m}
    RatFunc E0, E1;
};
// Extract the potential from the Riccati form W^2 - f dW/dr; verifies the
// 1/r^2 and f/r coefficients and that nothing falls outside the family shape.
PotentialSpec assemble_potential(const CoeffSolution& sol);

// Rebuild the curved expression V - E0 from a PotentialSpec.
CurvedRF potential_expr(const PotentialSpec& ps);

struct IdentityReport {
    CurvedRF compatibility;  // f dW+/dr - W+ W- - (E1 - E0)
    CurvedRF riccati;        // W^2 - f dW/dr - (V - E0)
    CurvedRF partner;        // (W'^2 - f dW'/dr) - (W^2 + f dW/dr) + (E1 - E0)
    bool all_zero() const {
        return compatibility.is_zero() && riccati.is_zero() && partner.is_zero();
    }
};
IdentityReport verify_identities(const CoeffSolution& sol);

// Symbolic recipe for psi_0 or psi_1:
//   psi ~ prefactor * r^{r_exponent} f^{f_exponent}
//         * exp( arcsin_coeff * arcsin(sqrt(k) r)/sqrt(k)
//                + sum_j inv_f_even[j-1] / f^{2j}
//                + sum_j r_over_f_odd[j-1] * r / f^{2j-1} ).
struct WaveDescriptor {
    RatFunc r_exponent;
    RatFunc f_exponent;
    RatFunc arcsin_coeff;
    std::vector<RatFunc> inv_f_even;   // coefficients of 1/f^{2j}
    std::vector<RatFunc> r_over_f_odd; // coefficients of r/f^{2j-1}
    std::optional<CurvedRF> prefactor; // W+ for psi_1, absent for psi_0
};
struct WavePair {
    WaveDescriptor psi0, psi1;
};
WavePair wavefunctions(const CoeffSolution& sol);

// Structural check of the closed-form coefficient pattern for m > 1:
//  (i)   a_0 numerator splits into shifted quadratics (q^2 + c k) with
//        c = (2j)^2 (odd m) or (2j-1)^2 (even m);
//  (ii)  all a_i share one denominator;
//  (iii) a_i carry the factorial prefactors and powers of k of the pattern;
//  (iv)  every extracted denominator and series constant is positive;
//  (v)   a_m is positive for positive q, k.
struct ConjectureReport {
    int m = 0;
    std::vector<Rational> a0_factors;            // the constants c, ascending
    std::vector<Rational> denominator_b;         // b_1..b_mu
    std::vector<std::vector<Rational>> odd_c;    // c^{(k)}_i per odd index
    bool factors_ok = false;
    bool shared_denominator_ok = false;
    bool prefactors_ok = false;
    bool positivity_ok = false;
    bool a_m_positive_ok = false;
    std::string detail;  // populated on failure
    bool all_ok() const {
        return factors_ok && shared_denominator_ok && prefactors_ok && positivity_ok &&
               a_m_positive_ok;
    }
};
ConjectureReport check_conjecture(int m);

// The two m = 6 reference tables disagree in one denominator coefficient
// (919 k^2 q^2 against 912 k^2 q^2); the exact solution arbitrates.
struct M6DenominatorAudit {
    Rational exact_coefficient;
    bool coefficient_table_matches;  // variant 919
    bool energy_table_matches;       // variant 912
    bool discrepancy_detected() const {
        return coefficient_table_matches != energy_table_matches;
    }
};
M6DenominatorAudit audit_m6_denominator();

}  // namespace gfm
}  // namespace qeskc

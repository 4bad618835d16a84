#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qeskc/gfm.hpp"
#include "qeskc/reference.hpp"
#include "test_util.hpp"

using namespace qeskc;
using namespace qeskc::gfm;

namespace {
const MultiPoly pq = MultiPoly::symbol(Sym::q);
const MultiPoly pk = MultiPoly::symbol(Sym::k);
MultiPoly C(long v) { return MultiPoly(v); }
const RatFunc q = RatFunc::q();
const RatFunc k = RatFunc::k();
const RatFunc L = RatFunc::L();

std::array<Rational, kNumSymbols> point(const Rational& qv, const Rational& kv,
                                        const Rational& Lv) {
    std::array<Rational, kNumSymbols> vals;
    vals.fill(Rational(0));
    vals[0] = qv;
    vals[1] = kv;
    vals[2] = Lv;
    return vals;
}
}  // namespace

TEST_CASE("system assembly for the first members") {
    {
        LinearSystem s = build_system(1);
        REQUIRE(s.A.size() == 2);
        CHECK(s.A[0] == PolyVector{C(2), C(-1)});
        CHECK(s.rhs[0] == C(1));
        CHECK(s.A[1] == PolyVector{pq, -pq});
        CHECK(s.rhs[1].is_zero());
    }
    {
        LinearSystem s = build_system(2);
        REQUIRE(s.A.size() == 3);
        CHECK(s.A[0] == PolyVector{C(3), C(-1), C(0)});
        CHECK(s.A[1] == PolyVector{C(2) * pq, -pq, C(-1)});
        CHECK(s.A[2] == PolyVector{C(0), pk, -pq});
    }
    {
        LinearSystem s = build_system(3);
        REQUIRE(s.A.size() == 4);
        // third row: a2 - q a3 = 0
        CHECK(s.A[2] == PolyVector{C(0), C(0), C(1), -pq});
        // closing row: 2k a1 - q a2 - 2k a3 = 0
        CHECK(s.A[3] == PolyVector{C(0), C(2) * pk, -pq, C(-2) * pk});
    }
    CHECK_THROWS_AS(build_system(0), std::invalid_argument);
}

TEST_CASE("exact coefficients match the closed-form tables, m = 1..7") {
    for (int m = 1; m <= 7; ++m) {
        CoeffSolution sol = solve_coeffs(m);
        CoeffSolution ref = reference::coeffs(m);
        REQUIRE(sol.a.size() == static_cast<std::size_t>(m) + 1);
        for (std::size_t i = 0; i < sol.a.size(); ++i) {
            INFO("m=", m, " i=", i);
            CHECK(sol.a[i] == ref.a[i]);
        }
    }
}

TEST_CASE("m=7 shares the expected denominator") {
    CoeffSolution sol = solve_coeffs(7);
    MultiPoly D = pq.pow(6) + C(98) * pk * pq.pow(4) + C(2464) * pk * pk * pq * pq +
                  C(13392) * pk * pk * pk;
    for (const auto& ai : sol.a) CHECK(ai.den() == D);
}

TEST_CASE("redundant equation vanishes for m = 1..10") {
    for (int m = 1; m <= 10; ++m) {
        CoeffSolution sol = solve_coeffs(m);
        CHECK(redundancy_residual(sol).is_zero());
        CHECK_FALSE(sol.a.back().is_zero());
    }
}

TEST_CASE("superpotential shapes") {
    {
        CoeffSolution sol = solve_coeffs(1);
        Superpotentials sp = build_superpotentials(sol);
        RatFunc tl3 = RatFunc(2) * L + RatFunc(3);
        // W+ = (2L+3)(-f/r + q + k r/f)
        CHECK(sp.Wplus.coefficient_of(-1, 1) == -tl3);
        CHECK(sp.Wplus.coefficient_of(0, 0) == tl3 * q);
        CHECK(sp.Wplus.coefficient_of(1, -1) == tl3 * k);
        // W = -(L+1) f/r + (L+2) q + k (L+1) r/f
        CHECK(sp.W.coefficient_of(-1, 1) == -(L + RatFunc(1)));
        CHECK(sp.W.coefficient_of(0, 0) == (L + RatFunc(2)) * q);
        CHECK(sp.W.coefficient_of(1, -1) == k * (L + RatFunc(1)));
        // W- = -f/r - q + m k r/f, nothing else
        CHECK(sp.Wminus == CurvedRF::term(-1, 1, RatFunc(-1)) + CurvedRF::constant(-q) +
                               CurvedRF::term(1, -1, k));
        CHECK(sp.Wminus.coefficient_of(-1, 0).is_zero());
    }
    {
        // W' for m=3 contains 3 k^2 (2L+3)/(q^2+10k) r/f^3
        CoeffSolution sol = solve_coeffs(3);
        Superpotentials sp = build_superpotentials(sol);
        RatFunc expect(C(3) * pk * pk * (C(2) * MultiPoly::symbol(Sym::L) + C(3)),
                       pq * pq + C(10) * pk);
        CHECK(sp.Wprime.coefficient_of(1, -3) == expect);
        CHECK(sp.Wminus.coefficient_of(-1, 0).is_zero());
    }
}

TEST_CASE("potential extraction") {
    {
        CoeffSolution sol = solve_coeffs(1);
        PotentialSpec ps = assemble_potential(sol);
        CHECK(ps.B[0] == RatFunc(2) * (L + RatFunc(1)) * (L + RatFunc(2)) * q);
        CHECK(ps.B[1] == L * (L + RatFunc(1)));
    }
    {
        CoeffSolution sol = solve_coeffs(2);
        PotentialSpec ps = assemble_potential(sol);
        MultiPoly Lm = MultiPoly::symbol(Sym::L);
        MultiPoly D = pq * pq + C(3) * pk;
        RatFunc B2(C(2) * (C(4) * Lm * Lm + C(10) * Lm + C(7)) * pq.pow(4) +
                       pk * (C(4) * Lm * Lm + C(3)) * pq * pq + C(18) * pk * pk,
                   D * D);
        CHECK(ps.B[1] == B2);
    }
    {
        CoeffSolution sol = solve_coeffs(3);
        PotentialSpec ps = assemble_potential(sol);
        MultiPoly Lm = MultiPoly::symbol(Sym::L);
        MultiPoly D = pq * pq + C(10) * pk;
        RatFunc B6(C(9) * pk * pk * (C(2) * Lm + C(3)) * (C(2) * Lm + C(3)), D * D);
        CHECK(ps.B[5] == B6);
        CHECK(ps.B == reference::m3_B());
    }
}

TEST_CASE("energies through a0") {
    {
        CoeffSolution sol = solve_coeffs(1);
        Energies e = energies(sol);
        CHECK(e.E0 == RatFunc(4) * k * (L + RatFunc(1)) * (L + RatFunc(1)) -
                          (L + RatFunc(2)) * (L + RatFunc(2)) * q * q);
        // kappa = L = Q = 1 means q = 1/12: E0 = 255/16, E1 = 1295/36
        auto at = point(rat(1, 12), rat(1), rat(1));
        CHECK(e.E0.eval_rational(at) == rat(255, 16));
        CHECK(e.E1.eval_rational(at) == rat(1295, 36));
    }
    {
        CoeffSolution sol = solve_coeffs(2);
        Energies e = energies(sol);
        auto at = point(rat(1), rat(1), rat(1));  // kappa = L = calQ = 1
        CHECK(e.E0.eval_rational(at) == 2);
        CHECK(e.E1.eval_rational(at) == 27);
    }
    for (int m = 4; m <= 7; ++m) {
        CoeffSolution sol = solve_coeffs(m);
        Energies e = energies(sol);
        auto [E0, E1] = reference::energies(m);
        INFO("m=", m);
        CHECK(e.E0 == E0);
        CHECK(e.E1 == E1);
    }
}

TEST_CASE("identity residuals vanish and perturbation breaks them") {
    for (int m : {1, 2, 3, 4, 5}) {
        CoeffSolution sol = solve_coeffs(m);
        IdentityReport rep = verify_identities(sol);
        INFO("m=", m);
        CHECK(rep.compatibility.is_zero());
        CHECK(rep.riccati.is_zero());
        CHECK(rep.partner.is_zero());
    }
    // corrupt a0 by one
    CoeffSolution bad = solve_coeffs(3);
    bad.a[0] += RatFunc(1);
    Superpotentials sp = build_superpotentials(bad);
    Energies fake;
    fake.E0 = RatFunc(0);
    CurvedRF compat = sp.Wplus.f_ddr() - sp.Wplus * sp.Wminus;
    RatFunc tl3 = RatFunc(2) * L + RatFunc(3);
    RatFunc gap = tl3 * bad.a[0] * (q * q + RatFunc(16) * k);
    compat -= CurvedRF::constant(gap);
    CHECK_FALSE(compat.is_zero());
}

TEST_CASE("wavefunction descriptors") {
    {
        CoeffSolution sol = solve_coeffs(1);
        auto [psi0, psi1] = wavefunctions(sol);
        CHECK(psi0.r_exponent == L + RatFunc(1));
        CHECK(psi1.r_exponent == L + RatFunc(2));
        CHECK(psi0.f_exponent == L + RatFunc(Rational(1, 2)));
        CHECK(psi1.f_exponent == L + RatFunc(Rational(3, 2)));
        // -(q/2)[(2L+3) a0 + 1] = -(L+2) q: the strength over 2(L+1)
        CHECK(psi0.arcsin_coeff == -(L + RatFunc(2)) * q);
        CHECK(psi1.arcsin_coeff == -(L + RatFunc(1)) * q);
        CHECK(psi0.inv_f_even.empty());
        CHECK(psi0.r_over_f_odd.empty());
        CHECK_FALSE(psi0.prefactor.has_value());
        REQUIRE(psi1.prefactor.has_value());
        CHECK(*psi1.prefactor == build_superpotentials(sol).Wplus);
    }
    {
        // m=3 exponent series: -3k(2L+3)q/(q^2+10k) r/f and
        // -3k(2L+3)/(2(q^2+10k)) 1/f^2
        CoeffSolution sol = solve_coeffs(3);
        auto [psi0, psi1] = wavefunctions(sol);
        MultiPoly Lm = MultiPoly::symbol(Sym::L);
        MultiPoly D = pq * pq + C(10) * pk;
        REQUIRE(psi0.r_over_f_odd.size() == 1);
        REQUIRE(psi0.inv_f_even.size() == 1);
        CHECK(psi0.r_over_f_odd[0] == RatFunc(C(-3) * pk * (C(2) * Lm + C(3)) * pq, D));
        CHECK(psi0.inv_f_even[0] ==
              RatFunc(C(-3) * pk * (C(2) * Lm + C(3)), C(2) * D));
        CHECK(psi1.inv_f_even == psi0.inv_f_even);
        CHECK(psi1.r_over_f_odd == psi0.r_over_f_odd);
    }
    {
        // m=2 f-exponent [(4L+3)q^2 - 9k]/(2(q^2+3k))
        CoeffSolution sol = solve_coeffs(2);
        auto [psi0, psi1] = wavefunctions(sol);
        MultiPoly Lm = MultiPoly::symbol(Sym::L);
        CHECK(psi0.f_exponent ==
              RatFunc((C(4) * Lm + C(3)) * pq * pq - C(9) * pk,
                      C(2) * (pq * pq + C(3) * pk)));
    }
    for (int m = 1; m <= 8; ++m) {
        CoeffSolution sol = solve_coeffs(m);
        auto [psi0, psi1] = wavefunctions(sol);
        INFO("m=", m);
        // the two arcsin coefficients differ by exactly q
        CHECK(psi1.arcsin_coeff - psi0.arcsin_coeff == q);
    }
}

TEST_CASE("structural pattern of the coefficients, m = 2..12") {
    for (int m = 2; m <= 12; ++m) {
        ConjectureReport rep = check_conjecture(m);
        INFO("m=", m, " detail: ", rep.detail);
        CHECK(rep.all_ok());
    }
    {
        ConjectureReport rep = check_conjecture(5);
        CHECK(rep.a0_factors == std::vector<Rational>{4, 16});
    }
    {
        ConjectureReport rep = check_conjecture(6);
        CHECK(rep.a0_factors == std::vector<Rational>{1, 9, 25});
    }
    {
        ConjectureReport rep = check_conjecture(2);
        REQUIRE(rep.denominator_b.size() == 1);
        CHECK(rep.denominator_b[0] == 3);
    }
    CHECK_THROWS_AS(check_conjecture(1), std::invalid_argument);
}

TEST_CASE("the m=6 denominator discrepancy is detected") {
    M6DenominatorAudit audit = audit_m6_denominator();
    CHECK(audit.discrepancy_detected());
    CHECK(audit.exact_coefficient == 919);
    CHECK(audit.coefficient_table_matches);
    CHECK_FALSE(audit.energy_table_matches);
}

TEST_CASE("level spacing is positive for all parameters, m <= 10") {
    for (int m = 1; m <= 10; ++m) {
        CoeffSolution sol = solve_coeffs(m);
        Energies e = energies(sol);
        RatFunc gap = e.E1 - e.E0;
        INFO("m=", m);
        bool num_pos = true, den_pos = true;
        for (const auto& [mo, c] : gap.num().terms()) num_pos = num_pos && (c > 0);
        for (const auto& [mo, c] : gap.den().terms()) den_pos = den_pos && (c > 0);
        CHECK(num_pos);
        CHECK(den_pos);
    }
}

TEST_CASE("rewrite system survives the full construction up to m = 12") {
    for (int m = 1; m <= 12; ++m) {
        CoeffSolution sol = solve_coeffs(m);
        Superpotentials sp = build_superpotentials(sol);
        INFO("m=", m);
        CHECK_NOTHROW((void)(sp.W * sp.W));
        CHECK_NOTHROW((void)(sp.Wplus * sp.Wminus));
        CHECK_NOTHROW((void)sp.W.f_ddr());
    }
}

TEST_CASE("a_m and B_2m stay positive at positive parameters") {
    std::uniform_real_distribution<double> dk(0.25, 4.0), dq(0.25, 4.0), dL(0.0, 3.0);
    for (int m = 1; m <= 7; ++m) {
        CoeffSolution sol = solve_coeffs(m);
        PotentialSpec ps = assemble_potential(sol);
        for (int draw = 0; draw < 5; ++draw) {
            double qv = dq(testutil::rng()), kv = dk(testutil::rng()), Lv = dL(testutil::rng());
            INFO("m=", m, " q=", qv, " k=", kv, " L=", Lv);
            CHECK(sol.a.back().eval_double(qv, kv, Lv) > 0.0);
            CHECK(ps.B.back().eval_double(qv, kv, Lv) > 0.0);
        }
    }
}

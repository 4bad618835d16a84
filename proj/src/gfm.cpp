#include "qeskc/gfm.hpp"

#include <algorithm>

namespace qeskc {
namespace gfm {

namespace {

const MultiPoly kQ = MultiPoly::symbol(Sym::q);
const MultiPoly kK = MultiPoly::symbol(Sym::k);

RatFunc two_L_plus_3() { return RatFunc(2) * RatFunc::L() + RatFunc(3); }

Rational double_factorial(int n) {
    // (-1)!! = 0!! = 1
    Rational r(1);
    for (int v = n; v >= 2; v -= 2) r *= v;
    return r;
}

}  // namespace

LinearSystem build_system(int m) {
    if (m < 1) throw std::invalid_argument("m must be positive");
    const std::size_t dim = static_cast<std::size_t>(m) + 1;
    LinearSystem sys;
    auto new_row = [&]() -> PolyVector& {
        sys.A.emplace_back(dim);
        sys.rhs.emplace_back();
        return sys.A.back();
    };

    {  // constant coefficients: (m+1) a0 - a1 = 1
        auto& row = new_row();
        row[0] = MultiPoly(m + 1);
        row[1] = MultiPoly(-1);
        sys.rhs.back() = MultiPoly(1);
    }
    {  // r/f coefficients: m q a0 - q a1 - sum_{j>=1} a_{2j} = 0
        auto& row = new_row();
        row[0] = kQ * Rational(m);
        row[1] = -kQ;
        for (int j = 1; 2 * j <= m; ++j) row[static_cast<std::size_t>(2 * j)] = MultiPoly(-1);
    }
    // r/f^{2j+1} coefficients, j = 1..floor((m-1)/2):
    // (m-2j) a_{2j} - q a_{2j+1} - sum_{l>j} a_{2l} = 0
    for (int j = 1; j <= (m - 1) / 2; ++j) {
        auto& row = new_row();
        row[static_cast<std::size_t>(2 * j)] = MultiPoly(m - 2 * j);
        row[static_cast<std::size_t>(2 * j + 1)] = -kQ;
        for (int l = j + 1; 2 * l <= m; ++l) row[static_cast<std::size_t>(2 * l)] += MultiPoly(-1);
    }
    // 1/f^{2j} coefficients, j = 1..floor(m/2)-1:
    // k (m+1-2j) a_{2j-1} - q a_{2j} - k (m+1-2j) a_{2j+1} = 0
    for (int j = 1; j <= m / 2 - 1; ++j) {
        auto& row = new_row();
        row[static_cast<std::size_t>(2 * j - 1)] = kK * Rational(m + 1 - 2 * j);
        row[static_cast<std::size_t>(2 * j)] = -kQ;
        row[static_cast<std::size_t>(2 * j + 1)] = kK * Rational(-(m + 1 - 2 * j));
    }
    // top coefficient; for m = 1 this would reference a_{-1} and is omitted
    if (m >= 2) {
        auto& row = new_row();
        if (m % 2 == 1) {  // 2k a_{m-2} - q a_{m-1} - 2k a_m = 0
            row[static_cast<std::size_t>(m - 2)] = kK * Rational(2);
            row[static_cast<std::size_t>(m - 1)] = -kQ;
            row[static_cast<std::size_t>(m)] = kK * Rational(-2);
        } else {  // k a_{m-1} - q a_m = 0
            row[static_cast<std::size_t>(m - 1)] = kK;
            row[static_cast<std::size_t>(m)] = -kQ;
        }
    }

    if (sys.A.size() != dim) throw BadCount(m, sys.A.size());
    return sys;
}

RatFunc redundancy_residual(const CoeffSolution& sol) {
    // q - q a0 - sum_{j>=1} a_{2j}
    RatFunc res = RatFunc::q() - RatFunc::q() * sol.a[0];
    for (int j = 1; 2 * j <= sol.m; ++j) res -= sol.a[static_cast<std::size_t>(2 * j)];
    return res;
}

CoeffSolution solve_coeffs(int m) {
    LinearSystem sys = build_system(m);
    CoeffSolution sol;
    sol.m = m;
    sol.a = solve_linear_exact(std::move(sys.A), std::move(sys.rhs));
    if (!redundancy_residual(sol).is_zero())
        throw ConsistencyFailure("redundant equation violated for m=" + std::to_string(m));
    if (sol.a.back().is_zero())
        throw ConsistencyFailure("a_m vanished for m=" + std::to_string(m));
    return sol;
}

Superpotentials build_superpotentials(const CoeffSolution& sol) {
    const int m = sol.m;
    const RatFunc q = RatFunc::q();
    const RatFunc k = RatFunc::k();

    CurvedRF wminus = CurvedRF::term(-1, 1, RatFunc(-1)) + CurvedRF::constant(-q) +
                      CurvedRF::term(1, -1, RatFunc(m) * k);

    CurvedRF inner = CurvedRF::term(-1, 1, RatFunc(-1)) + CurvedRF::constant(q * sol.a[0]);
    for (int j = 0; 2 * j + 1 <= m; ++j)
        inner += CurvedRF::term(1, -(2 * j + 1), k * sol.a[static_cast<std::size_t>(2 * j + 1)]);
    for (int j = 1; 2 * j <= m; ++j)
        inner += CurvedRF::term(0, -2 * j, sol.a[static_cast<std::size_t>(2 * j)]);
    CurvedRF wplus = inner * two_L_plus_3();

    const RatFunc half(Rational(1, 2));
    Superpotentials sp{wplus, wminus, (wplus - wminus) * half, (wplus + wminus) * half};
    return sp;
}

namespace {

struct Assembled {
    Superpotentials sp;
    CurvedRF v1;  // W^2 - f dW/dr
    Energies e;
    PotentialSpec ps;
};

Assembled assemble(const CoeffSolution& sol) {
    const int m = sol.m;
    const RatFunc q = RatFunc::q();
    const RatFunc k = RatFunc::k();
    const RatFunc L = RatFunc::L();
    const RatFunc quarter(Rational(1, 4));
    const RatFunc mp1sq{Rational((m + 1) * (m + 1))};

    Assembled as{build_superpotentials(sol), {}, {}, {}};
    as.v1 = as.sp.W * as.sp.W - as.sp.W.f_ddr();

    RatFunc plus = two_L_plus_3() * sol.a[0] + RatFunc(1);
    RatFunc minus = two_L_plus_3() * sol.a[0] - RatFunc(1);
    as.e.E0 = quarter * (-(q * q) * plus * plus + mp1sq * k * minus * minus);
    as.e.E1 = quarter * (-(q * q) * minus * minus + mp1sq * k * plus * plus);

    RatFunc gap = two_L_plus_3() * sol.a[0] * (q * q + mp1sq * k);
    if (!(as.e.E1 - as.e.E0 == gap))
        throw ConsistencyFailure("energy gap mismatch for m=" + std::to_string(m));
    if (!(as.v1.coefficient_of(0, 0) == -as.e.E0))
        throw ConsistencyFailure("ground energy disagrees with the Riccati constant term for m=" +
                                 std::to_string(m));

    PotentialSpec& ps = as.ps;
    ps.m = m;
    ps.angular = L * (L + RatFunc(1));
    ps.coulomb_Q = RatFunc(2) * (L + RatFunc(1)) * (L + RatFunc(2)) * q;

    if (!(as.v1.coefficient_of(-2, 0) == ps.angular))
        throw StructureMismatch("1/r^2 coefficient is not L(L+1)");
    if (!(as.v1.coefficient_of(-1, 1) == -ps.coulomb_Q))
        throw StructureMismatch("f/r coefficient is not -2(L+1)(L+2) q");
    if (!as.v1.coefficient_of(-1, 0).is_zero())
        throw StructureMismatch("bare 1/r term survived the reduction");

    ps.E0 = as.e.E0;
    ps.E1 = as.e.E1;
    ps.B.resize(static_cast<std::size_t>(2 * m));
    for (int j = 1; j <= m; ++j) {
        ps.B[static_cast<std::size_t>(2 * j - 2)] = as.v1.coefficient_of(1, -(2 * j - 1)) / k;
        ps.B[static_cast<std::size_t>(2 * j - 1)] = as.v1.coefficient_of(0, -2 * j) / k;
    }

    // nothing may fall outside the family shape
    for (const auto& [key, c] : as.v1.terms()) {
        auto [p, s] = key;
        bool expected = (p == -2 && s == 0) || (p == -1 && s == 1) || (p == 0 && s == 0) ||
                        (p == 1 && s < 0 && -s % 2 == 1 && -s <= 2 * m - 1) ||
                        (p == 0 && s < 0 && -s % 2 == 0 && -s <= 2 * m);
        if (!expected)
            throw StructureMismatch("unexpected monomial r^" + std::to_string(p) + " f^" +
                                    std::to_string(s) + " in the potential");
    }
    return as;
}

}  // namespace

Energies energies(const CoeffSolution& sol) { return assemble(sol).e; }

PotentialSpec assemble_potential(const CoeffSolution& sol) { return assemble(sol).ps; }

CurvedRF potential_expr(const PotentialSpec& ps) {
    const RatFunc k = RatFunc::k();
    CurvedRF v = CurvedRF::term(-2, 0, ps.angular) + CurvedRF::term(-1, 1, -ps.coulomb_Q);
    for (int j = 1; j <= ps.m; ++j) {
        v += CurvedRF::term(1, -(2 * j - 1), k * ps.B[static_cast<std::size_t>(2 * j - 2)]);
        v += CurvedRF::term(0, -2 * j, k * ps.B[static_cast<std::size_t>(2 * j - 1)]);
    }
    return v;
}

IdentityReport verify_identities(const CoeffSolution& sol) {
    Assembled as = assemble(sol);
    const Superpotentials& sp = as.sp;
    RatFunc gap = as.e.E1 - as.e.E0;
    CurvedRF w_ddr = sp.W.f_ddr();

    IdentityReport rep;
    rep.compatibility = sp.Wplus.f_ddr() - sp.Wplus * sp.Wminus - CurvedRF::constant(gap);
    rep.riccati = as.v1 - (potential_expr(as.ps) - CurvedRF::constant(as.ps.E0));
    rep.partner = (sp.Wprime * sp.Wprime - sp.Wprime.f_ddr()) - (as.v1 + w_ddr + w_ddr) +
                  CurvedRF::constant(gap);
    return rep;
}

WavePair wavefunctions(const CoeffSolution& sol) {
    const int m = sol.m;
    const RatFunc q = RatFunc::q();
    const RatFunc L = RatFunc::L();
    const RatFunc tl3 = two_L_plus_3();
    const RatFunc half(Rational(1, 2));

    WavePair wp;
    wp.psi0.r_exponent = L + RatFunc(1);
    wp.psi1.r_exponent = L + RatFunc(2);
    wp.psi0.f_exponent = half * (tl3 * sol.a[1] - RatFunc(m + 1));
    wp.psi1.f_exponent = half * (tl3 * sol.a[1] + RatFunc(m - 1));
    wp.psi0.arcsin_coeff = -half * q * (tl3 * sol.a[0] + RatFunc(1));
    wp.psi1.arcsin_coeff = -half * q * (tl3 * sol.a[0] - RatFunc(1));

    // exponent series: -(2L+3)/4 * a_{2j+1}/j per 1/f^{2j}, and the
    // double-factorial weighted tail sums per r/f^{2j-1}
    std::vector<RatFunc> inv_f_even, r_over_f_odd;
    for (int j = 1; 2 * j + 1 <= m; ++j)
        inv_f_even.push_back(-(RatFunc(Rational(1, 4)) * tl3 *
                               sol.a[static_cast<std::size_t>(2 * j + 1)] / RatFunc(j)));
    for (int j = 1; 2 * j <= m; ++j) {
        RatFunc tail;
        for (int l = j; 2 * l <= m; ++l)
            tail += RatFunc(double_factorial(2 * l - 2) / double_factorial(2 * l - 1)) *
                    sol.a[static_cast<std::size_t>(2 * l)];
        r_over_f_odd.push_back(
            -(half * tl3 * RatFunc(double_factorial(2 * j - 3) / double_factorial(2 * j - 2)) *
              tail));
    }
    wp.psi0.inv_f_even = inv_f_even;
    wp.psi1.inv_f_even = std::move(inv_f_even);
    wp.psi0.r_over_f_odd = r_over_f_odd;
    wp.psi1.r_over_f_odd = std::move(r_over_f_odd);

    wp.psi1.prefactor = build_superpotentials(sol).Wplus;
    return wp;
}

namespace {

bool all_coeffs_positive(const MultiPoly& p) {
    if (p.is_zero()) return false;
    for (const auto& [mo, c] : p.terms())
        if (c <= 0) return false;
    return true;
}

}  // namespace

ConjectureReport check_conjecture(int m) {
    if (m < 2) throw std::invalid_argument("the coefficient pattern is stated for m > 1");
    CoeffSolution sol = solve_coeffs(m);
    ConjectureReport rep;
    rep.m = m;
    const bool odd = (m % 2 == 1);
    const int mu = odd ? (m - 1) / 2 : m / 2;

    // (ii) one shared denominator
    const MultiPoly D = sol.a[0].den();
    rep.shared_denominator_ok = true;
    for (const auto& ai : sol.a)
        if (!(ai.den() == D)) rep.shared_denominator_ok = false;

    // denominator profile D = q^{2mu} + b_1 k q^{2mu-2} + ... + b_mu k^mu
    bool denom_shape_ok = true;
    {
        MultiPoly expect_support;
        for (int i = 0; i <= mu; ++i) {
            Monomial mo;
            mo.e[0] = static_cast<std::uint16_t>(2 * (mu - i));
            mo.e[1] = static_cast<std::uint16_t>(i);
            Rational c = D.coeff(mo);
            if (i == 0) {
                if (c != 1) denom_shape_ok = false;
            } else {
                rep.denominator_b.push_back(c);
            }
            expect_support += MultiPoly::term(c, mo);
        }
        if (!(expect_support == D)) denom_shape_ok = false;
    }

    // (i) a0 numerator factors
    ShiftedQuadraticFactors f = factor_shifted_quadratics(sol.a[0].num());
    rep.factors_ok = denom_shape_ok && (f.remainder == MultiPoly(1));
    for (const auto& [c, mult] : f.factors)
        for (int t = 0; t < mult; ++t) rep.a0_factors.push_back(c);
    std::sort(rep.a0_factors.begin(), rep.a0_factors.end());
    if (static_cast<int>(rep.a0_factors.size()) != mu) rep.factors_ok = false;
    for (int j = 1; j <= mu && rep.factors_ok; ++j) {
        long root = odd ? (2L * j) * (2L * j) : (2L * j - 1) * (2L * j - 1);
        if (rep.a0_factors[static_cast<std::size_t>(j - 1)] != root) rep.factors_ok = false;
    }

    // (iii) factorial prefactors and powers of k
    auto factorial = [](int n) {
        Rational r(1);
        for (int v = 2; v <= n; ++v) r *= v;
        return r;
    };
    rep.prefactors_ok = rep.shared_denominator_ok;
    bool series_positive = true;
    for (int idx = 1; idx <= m && rep.prefactors_ok; ++idx) {
        const MultiPoly N = sol.a[static_cast<std::size_t>(idx)].num();
        try {
            if (idx % 2 == 0) {
                const int j = idx / 2;
                Rational pref = odd ? factorial(2 * mu + 1) / factorial(2 * mu - 2 * j + 1)
                                    : factorial(2 * mu) / factorial(2 * mu - 2 * j);
                MultiPoly expect = MultiPoly(pref) * MultiPoly::symbol(Sym::k, static_cast<unsigned>(j)) *
                                   MultiPoly::symbol(Sym::q);
                for (int t = 1; t <= mu - j; ++t) {
                    long root = odd ? (2L * t) * (2L * t) : (2L * t - 1) * (2L * t - 1);
                    expect *= MultiPoly::symbol(Sym::q, 2) + MultiPoly::symbol(Sym::k) * Rational(root);
                }
                if (!(N == expect)) rep.prefactors_ok = false;
            } else {
                const int j = (idx - 1) / 2;
                Rational pref = odd ? factorial(2 * mu + 1) / factorial(2 * mu - 2 * j)
                                    : factorial(2 * mu) / factorial(2 * mu - 2 * j - 1);
                MultiPoly scale = MultiPoly(pref) * MultiPoly::symbol(Sym::k, static_cast<unsigned>(j));
                if (!odd) scale *= MultiPoly::symbol(Sym::q, 2);
                MultiPoly series = N.exact_div(scale);
                // series = q^{2t} + c_1 k q^{2t-2} + ... with positive c_i
                const int t = odd ? (mu - j) : (mu - j - 1);
                std::vector<Rational> cs;
                MultiPoly support;
                for (int i = 0; i <= t; ++i) {
                    Monomial mo;
                    mo.e[0] = static_cast<std::uint16_t>(2 * (t - i));
                    mo.e[1] = static_cast<std::uint16_t>(i);
                    Rational c = series.coeff(mo);
                    if (i == 0 && c != 1) rep.prefactors_ok = false;
                    if (i > 0) {
                        cs.push_back(c);
                        if (c <= 0) series_positive = false;
                    }
                    support += MultiPoly::term(c, mo);
                }
                if (!(support == series)) rep.prefactors_ok = false;
                rep.odd_c.push_back(std::move(cs));
            }
        } catch (const NotDivisible&) {
            rep.prefactors_ok = false;
            rep.detail = "a_" + std::to_string(idx) + " is not divisible by its expected scale";
        }
    }

    // (iv) positivity of every extracted constant
    rep.positivity_ok = series_positive;
    for (const Rational& b : rep.denominator_b)
        if (b <= 0) rep.positivity_ok = false;

    // (v) a_m > 0 for positive q, k
    rep.a_m_positive_ok =
        all_coeffs_positive(sol.a.back().num()) && all_coeffs_positive(sol.a.back().den());

    if (rep.detail.empty() && !rep.all_ok()) rep.detail = "structural clause failed";
    return rep;
}

M6DenominatorAudit audit_m6_denominator() {
    CoeffSolution sol = solve_coeffs(6);
    Monomial mo;
    mo.e[0] = 2;
    mo.e[1] = 2;
    M6DenominatorAudit audit;
    audit.exact_coefficient = sol.a[0].den().coeff(mo);
    audit.coefficient_table_matches = (audit.exact_coefficient == 919);
    audit.energy_table_matches = (audit.exact_coefficient == 912);
    return audit;
}

}  // namespace gfm
}  // namespace qeskc

#include "qeskc/cdsi.hpp"

#include "qeskc/reference.hpp"

namespace qeskc {
namespace cdsi {

namespace {

const RatFunc rfL = RatFunc::L();
const RatFunc rfQ = RatFunc::Q();
const RatFunc rfk = RatFunc::k();
const RatFunc rfB1 = RatFunc::symbol(Sym::B1);
const RatFunc rfB3 = RatFunc::symbol(Sym::B3);
const RatFunc rfB4 = RatFunc::symbol(Sym::B4);

QuadExt kq() { return QuadExt(rfk); }

CurvedQE v_shape(const QuadExt& angular, const QuadExt& coulomb, const QuadExt& B1,
                 const QuadExt& B2, const QuadExt* B3 = nullptr, const QuadExt* B4 = nullptr) {
    CurvedQE v = CurvedQE::term(-2, 0, angular) + CurvedQE::term(-1, 1, -coulomb) +
                 CurvedQE::term(1, -1, kq() * B1) + CurvedQE::term(0, -2, kq() * B2);
    if (B3) v += CurvedQE::term(1, -3, kq() * (*B3));
    if (B4) v += CurvedQE::term(0, -4, kq() * (*B4));
    return v;
}

void check_riccati(const SuperpotAnsatz& W, const QuadExt& E0, const CurvedQE& v,
                   const char* label) {
    CurvedQE w = W.expr();
    CurvedQE residual = w * w - w.f_ddr() - v + CurvedQE::constant(E0);
    if (!residual.is_zero())
        throw ResidualNonzero(std::string(label) + " Riccati residual is nonzero: " +
                              residual.str());
}

// first-step parameter maps at shifted angular parameter Lv (m = 1) or with
// B3 shifted as well (m = 2); shared by both steps
StepResult step_maps(int m, const RatFunc& Lv, const QuadExt& B3_in, bool second) {
    StepResult r;
    r.W.m = m;
    r.constraints.m = m;
    r.constraints.second_step = second;
    const RatFunc Lp1 = Lv + RatFunc(1);
    if (m == 1) {
        r.W.xi = QuadExt(-Lp1);
        r.W.eta = QuadExt(rfQ / (RatFunc(2) * Lp1));
        r.W.zeta = QuadExt(rfk * Lp1 * rfB1 / rfQ);
        r.W.sigma = QuadExt(0);
        QuadExt t{Lp1 * rfB1 / rfQ};
        r.E0 = QuadExt(rfk * Lp1 * Lp1 - rfQ * rfQ / (RatFunc(4) * Lp1 * Lp1)) +
               QuadExt(rfk) * t * (t + QuadExt(RatFunc(2) * Lp1));
        r.constraints.B2_rhs = t * (t - QuadExt(1));
    } else if (m == 2) {
        const QuadExt s = QuadExt::radical();
        // h = B3_in / (2 s) = B3_in s / (2 k B4)
        const QuadExt h = B3_in * s * QuadExt(RatFunc(1) / (RatFunc(2) * rfk * rfB4));
        r.W.xi = QuadExt(-Lp1);
        r.W.eta = QuadExt(rfQ / (RatFunc(2) * Lp1)) - s;
        r.W.zeta = kq() * (h + QuadExt(1));
        r.W.sigma = s;
        QuadExt hl = h + QuadExt(Lp1 + RatFunc(1));
        r.E0 = kq() * hl * hl - r.W.eta * r.W.eta;
        r.constraints.B1_rhs =
            QuadExt(2) * r.W.eta * (h + QuadExt(1)) - QuadExt(RatFunc(2) * Lp1) * s;
        r.constraints.B2_rhs =
            (QuadExt(2) * r.W.eta * s + kq() * (h + QuadExt(1)) * h) / kq();
    } else {
        throw std::invalid_argument("shape-invariance route implemented for m = 1, 2");
    }
    return r;
}

std::array<std::optional<RatFunc>, kNumSymbols> subst_map_m1() {
    std::array<std::optional<RatFunc>, kNumSymbols> vals;
    vals[static_cast<std::size_t>(Sym::Q)] =
        RatFunc(2) * (rfL + RatFunc(1)) * (rfL + RatFunc(2)) * RatFunc::q();
    return vals;
}

struct M2Point {
    std::array<std::optional<RatFunc>, kNumSymbols> vals;
    RatFunc s_value;
};

M2Point m2_point() {
    const RatFunc q = RatFunc::q();
    RatFunc D = q * q + RatFunc(3) * rfk;
    RatFunc tl3 = RatFunc(2) * rfL + RatFunc(3);
    M2Point pt;
    pt.vals[static_cast<std::size_t>(Sym::Q)] =
        RatFunc(2) * (rfL + RatFunc(1)) * (rfL + RatFunc(2)) * q;
    pt.vals[static_cast<std::size_t>(Sym::B3)] =
        RatFunc(2) * rfk * tl3 * q *
        ((RatFunc(2) * rfL + RatFunc(1)) * q * q - RatFunc(6) * rfk) / (D * D);
    pt.vals[static_cast<std::size_t>(Sym::B4)] = rfk * tl3 * tl3 * q * q / (D * D);
    pt.s_value = rfk * tl3 * q / D;
    return pt;
}

CurvedRF collapse_expr(const CurvedQE& e,
                       const std::array<std::optional<RatFunc>, kNumSymbols>& vals,
                       const RatFunc& s_value) {
    CurvedRF out;
    for (const auto& [key, c] : e.terms())
        out += CurvedRF::term(key.first, key.second, c.collapse(vals, s_value));
    return out;
}

CurvedRF ansatz_expr_collapsed(const SuperpotAnsatz& W,
                               const std::array<std::optional<RatFunc>, kNumSymbols>& vals,
                               const RatFunc& s_value) {
    return collapse_expr(W.expr(), vals, s_value);
}

}  // namespace

CurvedQE SuperpotAnsatz::expr() const {
    CurvedQE w = CurvedQE::term(-1, 1, xi) + CurvedQE::constant(eta) +
                 CurvedQE::term(1, -1, zeta);
    if (!sigma.is_zero()) w += CurvedQE::term(0, -2, sigma);
    return w;
}

StepResult first_step(int m) {
    StepResult r = step_maps(m, rfL, QuadExt(rfB3), false);
    if (m == 1) {
        CurvedQE v = v_shape(QuadExt(rfL * (rfL + RatFunc(1))), QuadExt(rfQ), QuadExt(rfB1),
                             r.constraints.B2_rhs);
        check_riccati(r.W, r.E0, v, "first-step");
    } else {
        QuadExt B3{rfB3}, B4{rfB4};
        CurvedQE v = v_shape(QuadExt(rfL * (rfL + RatFunc(1))), QuadExt(rfQ),
                             r.constraints.B1_rhs, r.constraints.B2_rhs, &B3, &B4);
        check_riccati(r.W, r.E0, v, "first-step");
    }
    return r;
}

StepResult second_step(int m) {
    const QuadExt s = QuadExt::radical();
    QuadExt B3_shift = QuadExt(rfB3) + QuadExt(4) * s;
    StepResult r = step_maps(m, rfL + RatFunc(1), m == 2 ? B3_shift : QuadExt(rfB3), true);

    const RatFunc Lp1 = rfL + RatFunc(1);
    const RatFunc Lp2 = rfL + RatFunc(2);
    QuadExt angular{Lp1 * Lp2};
    if (m == 1) {
        // constraints re-expressed on the original B2 through the partner shift
        QuadExt t{Lp1 * rfB1 / rfQ};
        QuadExt shift = QuadExt(2) * t;
        QuadExt B2_partner = r.constraints.B2_rhs;  // constraint on the partner's own B2
        r.constraints.B2_rhs = B2_partner - shift;
        CurvedQE v = v_shape(angular, QuadExt(rfQ), QuadExt(rfB1), B2_partner);
        check_riccati(r.W, r.E0, v, "second-step");
    } else {
        const QuadExt h = QuadExt(rfB3) * s * QuadExt(RatFunc(1) / (RatFunc(2) * rfk * rfB4));
        QuadExt shift = QuadExt(2) * h + QuadExt(2);  // B2' - B2 = B3/s + 2
        QuadExt B2_partner = r.constraints.B2_rhs;
        r.constraints.B2_rhs = B2_partner - shift;
        QuadExt B4{rfB4};
        CurvedQE v = v_shape(angular, QuadExt(rfQ), r.constraints.B1_rhs, B2_partner,
                             &B3_shift, &B4);
        check_riccati(r.W, r.E0, v, "second-step");
    }
    return r;
}

Resolved compatibility(int m) {
    StepResult s1 = first_step(m);
    StepResult s2 = second_step(m);
    Resolved res;
    res.m = m;

    if (m == 1) {
        auto vals = subst_map_m1();
        const RatFunc Qv = *vals[static_cast<std::size_t>(Sym::Q)];
        vals[static_cast<std::size_t>(Sym::B1)] = Qv;  // B1 = Q, both in terms of q
        const RatFunc zero(0);

        RatFunc b2_first = s1.constraints.B2_rhs.collapse(vals, zero);
        RatFunc b2_second = s2.constraints.B2_rhs.collapse(vals, zero);
        if (!(b2_first == b2_second))
            throw Incompatible("constraint sets disagree at B1 = Q");
        res.B = {Qv, b2_first};
        res.zeta = s1.W.zeta.collapse(vals, zero);
        res.E0 = s1.E0.collapse(vals, zero);
        res.E1 = s2.E0.collapse(vals, zero);
        res.sp.W = ansatz_expr_collapsed(s1.W, vals, zero);
        res.sp.Wprime = ansatz_expr_collapsed(s2.W, vals, zero);
        res.sp.Wplus = res.sp.Wprime + res.sp.W;
        res.sp.Wminus = res.sp.Wprime - res.sp.W;
        return res;
    }
    if (m != 2) throw std::invalid_argument("compatibility implemented for m = 1, 2");

    M2Point pt = m2_point();
    const RatFunc B4v = *pt.vals[static_cast<std::size_t>(Sym::B4)];
    if (!(pt.s_value * pt.s_value == rfk.subst(pt.vals) * B4v))
        throw Incompatible("radical substitution violates s^2 = k B4");

    RatFunc b1_first = s1.constraints.B1_rhs.collapse(pt.vals, pt.s_value);
    RatFunc b1_second = s2.constraints.B1_rhs.collapse(pt.vals, pt.s_value);
    RatFunc b2_first = s1.constraints.B2_rhs.collapse(pt.vals, pt.s_value);
    RatFunc b2_second = s2.constraints.B2_rhs.collapse(pt.vals, pt.s_value);
    if (!(b1_first == b1_second) || !(b2_first == b2_second))
        throw Incompatible("constraint sets disagree at the resolved (B3, B4)");

    res.B = {b1_first, b2_first, *pt.vals[static_cast<std::size_t>(Sym::B3)], B4v};
    res.zeta = s1.W.zeta.collapse(pt.vals, pt.s_value);
    res.E0 = s1.E0.collapse(pt.vals, pt.s_value);
    res.E1 = s2.E0.collapse(pt.vals, pt.s_value);
    res.sp.W = ansatz_expr_collapsed(s1.W, pt.vals, pt.s_value);
    res.sp.Wprime = ansatz_expr_collapsed(s2.W, pt.vals, pt.s_value);
    res.sp.Wplus = res.sp.Wprime + res.sp.W;
    res.sp.Wminus = res.sp.Wprime - res.sp.W;
    return res;
}

CrosscheckReport crosscheck_gfm(int m) {
    CrosscheckReport rep;
    rep.m = m;
    gfm::CoeffSolution sol = gfm::solve_coeffs(m);
    gfm::Superpotentials spg = gfm::build_superpotentials(sol);
    gfm::PotentialSpec pot = gfm::assemble_potential(sol);

    CurvedRF Wc, Wpc;
    std::vector<RatFunc> Bc;
    RatFunc E0c, E1c;
    if (m == 1 || m == 2) {
        Resolved res = compatibility(m);
        Wc = res.sp.W;
        Wpc = res.sp.Wprime;
        E0c = res.E0;
        E1c = res.E1;
        Bc = res.B;
    } else if (m == 3) {
        Wc = reference::m3_W();
        Wpc = reference::m3_Wprime();
        std::tie(E0c, E1c) = reference::m3_energies();
        Bc = reference::m3_B();
    } else {
        throw std::invalid_argument("crosscheck implemented for m = 1, 2, 3");
    }

    rep.W_ok = (Wc == spg.W);
    rep.Wprime_ok = (Wpc == spg.Wprime);
    rep.E0_ok = (E0c == pot.E0);
    rep.E1_ok = (E1c == pot.E1);
    rep.B_ok = (Bc == pot.B);
    if (!rep.all_ok()) {
        rep.detail = "mismatch in";
        if (!rep.W_ok) rep.detail += " W";
        if (!rep.Wprime_ok) rep.detail += " W'";
        if (!rep.E0_ok) rep.detail += " E0";
        if (!rep.E1_ok) rep.detail += " E1";
        if (!rep.B_ok) rep.detail += " B";
    }
    return rep;
}

PartnerCheck partner_relation(int m) {
    StepResult s1 = first_step(m);
    CurvedQE w = s1.W.expr();
    CurvedQE v2 = w * w + w.f_ddr();

    const RatFunc Lp1 = rfL + RatFunc(1);
    const RatFunc Lp2 = rfL + RatFunc(2);
    PartnerCheck pc;
    pc.angular_ok = (v2.coefficient_of(-2, 0) == QuadExt(Lp1 * Lp2));
    pc.coulomb_ok = (v2.coefficient_of(-1, 1) == QuadExt(-rfQ));
    pc.constant_ok = (v2.coefficient_of(0, 0) == -s1.E0);

    if (m == 1) {
        QuadExt t{Lp1 * rfB1 / rfQ};
        // under the first constraint, B2' = B2 + 2(L+1)B1/Q
        QuadExt expect = kq() * (s1.constraints.B2_rhs + QuadExt(2) * t);
        pc.B_ok = (v2.coefficient_of(1, -1) == kq() * QuadExt(rfB1)) &&
                  (v2.coefficient_of(0, -2) == expect);
    } else {
        const QuadExt s = QuadExt::radical();
        const QuadExt h = QuadExt(rfB3) * s * QuadExt(RatFunc(1) / (RatFunc(2) * rfk * rfB4));
        QuadExt b2_expect = kq() * (s1.constraints.B2_rhs + QuadExt(2) * h + QuadExt(2));
        QuadExt b3_expect = kq() * (QuadExt(rfB3) + QuadExt(4) * s);
        pc.B_ok = (v2.coefficient_of(1, -1) == kq() * s1.constraints.B1_rhs) &&
                  (v2.coefficient_of(0, -2) == b2_expect) &&
                  (v2.coefficient_of(1, -3) == b3_expect) &&
                  (v2.coefficient_of(0, -4) == kq() * QuadExt(rfB4));
    }
    return pc;
}

bool kc_shape_invariance() {
    const RatFunc Lp1 = rfL + RatFunc(1);
    const RatFunc Lp2 = rfL + RatFunc(2);
    CurvedQE w = CurvedQE::term(-1, 1, QuadExt(-Lp1)) +
                 CurvedQE::constant(QuadExt(rfQ / (RatFunc(2) * Lp1)));
    QuadExt E0{rfk * Lp1 * Lp1 - rfQ * rfQ / (RatFunc(4) * Lp1 * Lp1)};

    CurvedQE v1 = w * w - w.f_ddr();
    CurvedQE v1_expect = v_shape(QuadExt(rfL * Lp1), QuadExt(rfQ), QuadExt(0), QuadExt(0)) -
                         CurvedQE::constant(E0);
    CurvedQE v2 = w * w + w.f_ddr();
    CurvedQE v2_expect = v_shape(QuadExt(Lp1 * Lp2), QuadExt(rfQ), QuadExt(0), QuadExt(0)) -
                         CurvedQE::constant(E0);
    return (v1 == v1_expect) && (v2 == v2_expect);
}

}  // namespace cdsi
}  // namespace qeskc

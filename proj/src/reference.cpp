#include "qeskc/reference.hpp"

namespace qeskc {
namespace reference {

namespace {

const MultiPoly q = MultiPoly::symbol(Sym::q);
const MultiPoly k = MultiPoly::symbol(Sym::k);
const MultiPoly L = MultiPoly::symbol(Sym::L);
MultiPoly C(long v) { return MultiPoly(v); }

MultiPoly q2() { return q * q; }

RatFunc rf(const MultiPoly& num, const MultiPoly& den) { return RatFunc(num, den); }

}  // namespace

gfm::CoeffSolution coeffs(int m) {
    gfm::CoeffSolution sol;
    sol.m = m;
    switch (m) {
        case 1:
            sol.a = {RatFunc(1), RatFunc(1)};
            return sol;
        case 2: {
            MultiPoly D = q2() + C(3) * k;
            sol.a = {rf(q2() + k, D), rf(C(2) * q2(), D), rf(C(2) * k * q, D)};
            return sol;
        }
        case 3: {
            MultiPoly D = q2() + C(10) * k;
            sol.a = {rf(q2() + C(4) * k, D), rf(C(3) * (q2() + C(2) * k), D),
                     rf(C(6) * k * q, D), rf(C(6) * k, D)};
            return sol;
        }
        case 4: {
            MultiPoly D = q2() * q2() + C(22) * k * q2() + C(45) * k * k;
            sol.a = {rf((q2() + k) * (q2() + C(9) * k), D),
                     rf(C(4) * q2() * (q2() + C(7) * k), D),
                     rf(C(12) * k * q * (q2() + k), D),
                     rf(C(24) * k * q2(), D),
                     rf(C(24) * k * k * q, D)};
            return sol;
        }
        case 5: {
            MultiPoly D = q2() * q2() + C(40) * k * q2() + C(264) * k * k;
            sol.a = {rf((q2() + C(4) * k) * (q2() + C(16) * k), D),
                     rf(C(5) * (q2() * q2() + C(16) * k * q2() + C(24) * k * k), D),
                     rf(C(20) * k * q * (q2() + C(4) * k), D),
                     rf(C(60) * k * (q2() + C(2) * k), D),
                     rf(C(120) * k * k * q, D),
                     rf(C(120) * k * k, D)};
            return sol;
        }
        case 6: {
            MultiPoly D =
                q2() * q2() * q2() + C(65) * k * q2() * q2() + C(919) * k * k * q2() + C(1575) * k * k * k;
            sol.a = {rf((q2() + k) * (q2() + C(9) * k) * (q2() + C(25) * k), D),
                     rf(C(6) * q2() * (q2() * q2() + C(30) * k * q2() + C(149) * k * k), D),
                     rf(C(30) * k * q * (q2() + k) * (q2() + C(9) * k), D),
                     rf(C(120) * k * q2() * (q2() + C(7) * k), D),
                     rf(C(360) * k * k * q * (q2() + k), D),
                     rf(C(720) * k * k * q2(), D),
                     rf(C(720) * k * k * k * q, D)};
            return sol;
        }
        case 7: {
            MultiPoly D = q2() * q2() * q2() + C(98) * k * q2() * q2() + C(2464) * k * k * q2() +
                          C(13392) * k * k * k;
            sol.a = {rf((q2() + C(4) * k) * (q2() + C(16) * k) * (q2() + C(36) * k), D),
                     rf(C(7) * (q2() * q2() * q2() + C(50) * k * q2() * q2() +
                                C(544) * k * k * q2() + C(720) * k * k * k),
                        D),
                     rf(C(42) * k * q * (q2() + C(4) * k) * (q2() + C(16) * k), D),
                     rf(C(210) * k * (q2() * q2() + C(16) * k * q2() + C(24) * k * k), D),
                     rf(C(840) * k * k * q * (q2() + C(4) * k), D),
                     rf(C(2520) * k * k * (q2() + C(2) * k), D),
                     rf(C(5040) * k * k * k * q, D),
                     rf(C(5040) * k * k * k, D)};
            return sol;
        }
        default:
            throw std::invalid_argument("no reference coefficients for m=" + std::to_string(m));
    }
}

std::vector<RatFunc> m3_B() {
    MultiPoly D = q2() + C(10) * k;
    MultiPoly D2 = D * D;
    std::vector<RatFunc> B(6);
    B[0] = rf(C(6) * q *
                  ((L + C(1)) * (L + C(2)) * q2() * q2() +
                   C(4) * k * (L * L + C(3) * L + C(1)) * q2() -
                   C(4) * k * k * (C(3) * L * L + C(9) * L + C(13))),
              D2);
    B[1] = rf(C(3) * ((C(7) * L * L + C(19) * L + C(14)) * q2() * q2() +
                      C(4) * k * (C(3) * L * L + C(5) * L + C(7)) * q2() -
                      C(4) * k * k * (C(13) * L * L + C(29) * L - C(17))),
              D2);
    B[2] = rf(C(6) * k * (C(2) * L + C(3)) * q *
                  (C(4) * (L + C(1)) * q2() + C(5) * k * (C(2) * L - C(1))),
              D2);
    B[3] = rf(C(9) * k * (C(2) * L + C(3)) *
                  (C(4) * (L + C(1)) * q2() + k * (C(2) * L - C(17))),
              D2);
    B[4] = rf(C(18) * k * k * (C(2) * L + C(3)) * (C(2) * L + C(3)) * q, D2);
    B[5] = rf(C(9) * k * k * (C(2) * L + C(3)) * (C(2) * L + C(3)), D2);
    return B;
}

CurvedRF m3_W() {
    MultiPoly D = q2() + C(10) * k;
    CurvedRF w = CurvedRF::term(-1, 1, -(RatFunc::L() + RatFunc(1)));
    w += CurvedRF::constant(rf(q * ((L + C(2)) * q2() + k * (C(4) * L + C(11))), D));
    w += CurvedRF::term(1, -1, rf(C(3) * k * ((L + C(1)) * q2() + C(2) * k * (L - C(1))), D));
    w += CurvedRF::term(0, -2, rf(C(3) * k * (C(2) * L + C(3)) * q, D));
    w += CurvedRF::term(1, -3, rf(C(3) * k * k * (C(2) * L + C(3)), D));
    return w;
}

CurvedRF m3_Wprime() {
    MultiPoly D = q2() + C(10) * k;
    CurvedRF w = CurvedRF::term(-1, 1, -(RatFunc::L() + RatFunc(2)));
    w += CurvedRF::constant(rf(q * ((L + C(1)) * q2() + k * (C(4) * L + C(1))), D));
    w += CurvedRF::term(1, -1, rf(C(3) * k * ((L + C(2)) * q2() + C(2) * k * (L + C(4))), D));
    w += CurvedRF::term(0, -2, rf(C(3) * k * (C(2) * L + C(3)) * q, D));
    w += CurvedRF::term(1, -3, rf(C(3) * k * k * (C(2) * L + C(3)), D));
    return w;
}

std::pair<RatFunc, RatFunc> m3_energies() {
    MultiPoly D = q2() + C(10) * k;
    RatFunc g = rf((L + C(1)) * q2() + k * (C(4) * L + C(1)), D);
    RatFunc h = rf((L + C(2)) * q2() + k * (C(4) * L + C(11)), D);
    RatFunc qq = RatFunc::q();
    RatFunc kk = RatFunc::k();
    return {RatFunc(16) * kk * g * g - qq * qq * h * h,
            RatFunc(16) * kk * h * h - qq * qq * g * g};
}

std::pair<RatFunc, RatFunc> energies(int m) {
    MultiPoly D, P, Pp;
    Rational w;  // (m+1)^2
    switch (m) {
        case 4:
            D = q2() * q2() + C(22) * k * q2() + C(45) * k * k;
            P = (L + C(1)) * q2() * q2() + C(2) * k * (C(5) * L + C(2)) * q2() +
                C(9) * k * k * (L - C(1));
            Pp = (L + C(2)) * q2() * q2() + C(2) * k * (C(5) * L + C(13)) * q2() +
                 C(9) * k * k * (L + C(4));
            w = 25;
            break;
        case 5:
            // The circulated m=5 table carries 32 k^2 (2L-1) and 32 k^2 (2L+7)
            // in these brackets; both disagree with the exact solution by
            // 4 k^2. The values below follow from the verified coefficient
            // table and the constant term of the Riccati form.
            D = q2() * q2() + C(40) * k * q2() + C(264) * k * k;
            P = (L + C(1)) * q2() * q2() + C(10) * k * (C(2) * L + C(1)) * q2() +
                C(4) * k * k * (C(16) * L - C(9));
            Pp = (L + C(2)) * q2() * q2() + C(10) * k * (C(2) * L + C(5)) * q2() +
                 C(4) * k * k * (C(16) * L + C(57));
            w = 36;
            break;
        case 6:
            D = q2() * q2() * q2() + C(65) * k * q2() * q2() + C(919) * k * k * q2() +
                C(1575) * k * k * k;
            P = (L + C(1)) * q2() * q2() * q2() + C(5) * k * (C(7) * L + C(4)) * q2() * q2() +
                k * k * (C(259) * L - C(71)) * q2() + C(225) * k * k * k * (L - C(2));
            Pp = (L + C(2)) * q2() * q2() * q2() + C(5) * k * (C(7) * L + C(17)) * q2() * q2() +
                 k * k * (C(259) * L + C(848)) * q2() + C(225) * k * k * k * (L + C(5));
            w = 49;
            break;
        case 7:
            D = q2() * q2() * q2() + C(98) * k * q2() * q2() + C(2464) * k * k * q2() +
                C(13392) * k * k * k;
            P = (L + C(1)) * q2() * q2() * q2() + C(7) * k * (C(8) * L + C(5)) * q2() * q2() +
                C(56) * k * k * (C(14) * L - C(1)) * q2() + C(72) * k * k * k * (C(32) * L - C(45));
            Pp = (L + C(2)) * q2() * q2() * q2() + C(7) * k * (C(8) * L + C(19)) * q2() * q2() +
                 C(56) * k * k * (C(14) * L + C(43)) * q2() +
                 C(72) * k * k * k * (C(32) * L + C(141));
            w = 64;
            break;
        default:
            throw std::invalid_argument("no reference energies for m=" + std::to_string(m));
    }
    RatFunc g = rf(P, D), h = rf(Pp, D);
    RatFunc qq = RatFunc::q();
    RatFunc kk = RatFunc::k();
    return {RatFunc(w) * kk * g * g - qq * qq * h * h,
            RatFunc(w) * kk * h * h - qq * qq * g * g};
}

}  // namespace reference
}  // namespace qeskc

#pragma once

#include <string>
#include <vector>

#include "qeskc/curved.hpp"
#include "qeskc/gfm.hpp"

namespace qeskc {
namespace cdsi {

struct ResidualNonzero : std::runtime_error {
    explicit ResidualNonzero(const std::string& w) : std::runtime_error(w) {}
};
struct Incompatible : std::runtime_error {
    explicit Incompatible(const std::string& w) : std::runtime_error(w) {}
};
// Element a + b s of the quadratic extension with s^2 = k B4, i.e. s plays
// the role of sqrt(kappa B4) without leaving exact arithmetic.
struct QuadExt {
    RatFunc a, b;

    QuadExt() = default;
    QuadExt(long v) : a(v) {}
    QuadExt(RatFunc re) : a(std::move(re)) {}
    QuadExt(RatFunc re, RatFunc rad) : a(std::move(re)), b(std::move(rad)) {}
    static QuadExt radical() { return QuadExt(RatFunc(0), RatFunc(1)); }
    static RatFunc relation() { return RatFunc::k() * RatFunc::symbol(Sym::B4); }

    bool is_zero() const { return a.is_zero() && b.is_zero(); }
    QuadExt operator-() const { return {-a, -b}; }
    QuadExt& operator+=(const QuadExt& o) {
        a += o.a;
        b += o.b;
        return *this;
    }
    QuadExt& operator-=(const QuadExt& o) {
        a -= o.a;
        b -= o.b;
        return *this;
    }
    friend QuadExt operator+(QuadExt x, const QuadExt& y) { return x += y; }
    friend QuadExt operator-(QuadExt x, const QuadExt& y) { return x -= y; }
    friend QuadExt operator*(const QuadExt& x, const QuadExt& y) {
        return {x.a * y.a + x.b * y.b * relation(), x.a * y.b + x.b * y.a};
    }
    QuadExt& operator*=(const QuadExt& o) { return *this = *this * o; }
    QuadExt inverse() const {
        RatFunc norm = a * a - b * b * relation();
        if (norm.is_zero()) throw std::domain_error("non-invertible quadratic-extension element");
        return {a / norm, -b / norm};
    }
    friend QuadExt operator/(const QuadExt& x, const QuadExt& y) { return x * y.inverse(); }
    friend bool operator==(const QuadExt& x, const QuadExt& y) {
        return x.a == y.a && x.b == y.b;
    }

    // collapse s to a concrete rational function (the positive branch of
    // sqrt(k B4) at resolved parameters), substituting symbols as given
    RatFunc collapse(const std::array<std::optional<RatFunc>, kNumSymbols>& vals,
                     const RatFunc& s_value) const {
        return a.subst(vals) + b.subst(vals) * s_value;
    }

    std::string str() const { return "(" + a.str() + ") + (" + b.str() + ") s"; }
};

using CurvedQE = CurvedExpr<QuadExt>;

// Superpotential ansatz xi f/r + eta + zeta r/f (+ sigma/f^2 when m = 2).
struct SuperpotAnsatz {
    int m = 1;
    QuadExt xi, eta, zeta, sigma;
    CurvedQE expr() const;
};

// Constraints pinning the dependent potential parameters; rhs are exact
// expressions in the free symbols (L, Q, k, B3, B4, s).
struct ConstraintSet {
    int m = 1;
    bool second_step = false;
    QuadExt B2_rhs;
    QuadExt B1_rhs;  // only meaningful for m = 2
};

struct StepResult {
    SuperpotAnsatz W;
    QuadExt E0;
    ConstraintSet constraints;
};

// Closed-form parameter maps of the Riccati ansatz for the first and second
// factorization step, each verified by an identically vanishing residual.
StepResult first_step(int m);
StepResult second_step(int m);

// Parameter values at which both constraint sets hold simultaneously,
// expressed in (q, k, L) after Q = 2(L+1)(L+2) q.
struct Resolved {
    int m = 1;
    std::vector<RatFunc> B;  // B_1..B_{2m}
    RatFunc zeta;            // resolved r/f coefficient of W
    RatFunc E0, E1;
    gfm::Superpotentials sp;  // W, W' as curved expressions in (q, k, L)
};
Resolved compatibility(int m);

// Exact equality of (W, W', E0, E1, B) between this route and the
// generating-function route; m = 3 compares against the tabulated
// closed-form solution.
struct CrosscheckReport {
    int m = 1;
    bool W_ok = false, Wprime_ok = false, E0_ok = false, E1_ok = false, B_ok = false;
    std::string detail;
    bool all_ok() const { return W_ok && Wprime_ok && E0_ok && E1_ok && B_ok; }
};
CrosscheckReport crosscheck_gfm(int m);

// Partner-parameter translation extracted from W^2 + f dW/dr under the
// first-step constraints: L -> L+1 with B-shifts, and additive constant -E0.
struct PartnerCheck {
    bool angular_ok = false, coulomb_ok = false, B_ok = false, constant_ok = false;
    bool all_ok() const { return angular_ok && coulomb_ok && B_ok && constant_ok; }
};
PartnerCheck partner_relation(int m);

// Pure Kepler-Coulomb limit (all B = 0): the partner equals the same
// potential at L+1 and the factorization constant is -E0.
bool kc_shape_invariance();

}  // namespace cdsi

template <>
struct CurvedTraits<cdsi::QuadExt> {
    static cdsi::QuadExt kappa() { return cdsi::QuadExt(RatFunc::k()); }
};

}  // namespace qeskc

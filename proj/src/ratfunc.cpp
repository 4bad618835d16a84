#include "qeskc/ratfunc.hpp"

#include <stdexcept>

namespace qeskc {

RatFunc::RatFunc(MultiPoly num, MultiPoly den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw std::domain_error("rational function with zero denominator");
    normalize();
}

void RatFunc::normalize() {
    if (num_.is_zero()) {
        den_ = MultiPoly(1);
        return;
    }
    if (!(den_ == MultiPoly(1))) {
        MultiPoly g = poly_gcd(num_, den_);
        if (!g.is_constant()) {
            num_ = num_.exact_div(g);
            den_ = den_.exact_div(g);
        }
    }
    // scale so den is integer-primitive with positive leading coefficient
    Rational c = den_.content_signed();
    if (c != 1) {
        Rational inv = Rational(1) / c;
        num_ = num_ * inv;
        den_ = den_ * inv;
    }
}

RatFunc RatFunc::operator-() const {
    RatFunc r(*this);
    r.num_ = -r.num_;
    return r;
}

RatFunc operator+(const RatFunc& a, const RatFunc& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.den_ == b.den_) {
        RatFunc r;
        r.num_ = a.num_ + b.num_;
        r.den_ = a.den_;
        r.normalize();
        return r;
    }
    MultiPoly g = poly_gcd(a.den_, b.den_);
    MultiPoly da = a.den_.exact_div(g);
    MultiPoly db = b.den_.exact_div(g);
    RatFunc r;
    r.num_ = a.num_ * db + b.num_ * da;
    r.den_ = a.den_ * db;
    r.normalize();
    return r;
}

RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }

RatFunc operator*(const RatFunc& a, const RatFunc& b) {
    if (a.is_zero() || b.is_zero()) return RatFunc();
    MultiPoly g1 = poly_gcd(a.num_, b.den_);
    MultiPoly g2 = poly_gcd(b.num_, a.den_);
    RatFunc r;
    r.num_ = a.num_.exact_div(g1) * b.num_.exact_div(g2);
    r.den_ = a.den_.exact_div(g2) * b.den_.exact_div(g1);
    r.normalize();
    return r;
}

RatFunc operator/(const RatFunc& a, const RatFunc& b) {
    if (b.is_zero()) throw std::domain_error("division by zero rational function");
    RatFunc inv;
    inv.num_ = b.den_;
    inv.den_ = b.num_;
    inv.normalize();
    return a * inv;
}

RatFunc poly_subst(const MultiPoly& p,
                   const std::array<std::optional<RatFunc>, kNumSymbols>& vals) {
    RatFunc acc;
    for (const auto& [m, c] : p.terms()) {
        RatFunc t{c};
        for (int i = 0; i < kNumSymbols; ++i) {
            if (!m.e[i]) continue;
            RatFunc base = vals[static_cast<std::size_t>(i)]
                               ? *vals[static_cast<std::size_t>(i)]
                               : RatFunc::symbol(static_cast<Sym>(i));
            for (int j = 0; j < m.e[i]; ++j) t *= base;
        }
        acc += t;
    }
    return acc;
}

RatFunc RatFunc::subst(const std::array<std::optional<RatFunc>, kNumSymbols>& vals) const {
    return poly_subst(num_, vals) / poly_subst(den_, vals);
}

Rational RatFunc::eval_rational(const std::array<Rational, kNumSymbols>& vals) const {
    Rational d = den_.eval_rational(vals);
    if (d == 0) throw std::domain_error("denominator vanishes at evaluation point");
    return num_.eval_rational(vals) / d;
}

double RatFunc::eval_double(double q_val, double k_val, double L_val) const {
    return num_.eval_double(q_val, k_val, L_val) / den_.eval_double(q_val, k_val, L_val);
}

std::pair<MultiPoly, MultiPoly> RatFunc::integer_pair() const {
    // den is already integer-primitive; clear the numerator denominators and
    // rebalance so the two contents are coprime integers.
    Rational cn = num_.content_signed();
    if (cn == 0) return {num_, den_};
    mpz_class den_lcm = cn.get_den();
    MultiPoly n = num_ * Rational(den_lcm);
    MultiPoly d = den_ * Rational(den_lcm);
    Rational g = rational_gcd(n.content_signed(), d.content_signed());
    if (g < 0) g = -g;
    if (g > 1) {
        n = n * (Rational(1) / g);
        d = d * (Rational(1) / g);
    }
    return {n, d};
}

std::string RatFunc::str() const {
    if (is_polynomial()) return num_.str();
    return "(" + num_.str() + ") / (" + den_.str() + ")";
}

}  // namespace qeskc

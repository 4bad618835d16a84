#pragma once

#include <array>
#include <optional>
#include <string>

#include "qeskc/multipoly.hpp"

namespace qeskc {

// Rational function num/den over the polynomial ring, kept canonical:
// gcd(num, den) = 1, den has integer coefficients with content 1 and a
// positive leading coefficient under the fixed monomial order. Equality of
// canonical forms is plain structural equality.
class RatFunc {
  public:
    RatFunc() : num_(), den_(1) {}
    RatFunc(const Rational& c) : num_(c), den_(1) {}
    RatFunc(long c) : num_(c), den_(1) {}
    explicit RatFunc(MultiPoly p) : num_(std::move(p)), den_(1) {}
    RatFunc(MultiPoly num, MultiPoly den);

    static RatFunc symbol(Sym s) { return RatFunc(MultiPoly::symbol(s)); }
    static RatFunc q() { return symbol(Sym::q); }
    static RatFunc k() { return symbol(Sym::k); }
    static RatFunc L() { return symbol(Sym::L); }
    static RatFunc Q() { return symbol(Sym::Q); }

    const MultiPoly& num() const { return num_; }
    const MultiPoly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_ == MultiPoly(1); }

    RatFunc operator-() const;
    RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
    RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
    RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }
    RatFunc& operator/=(const RatFunc& o) { return *this = *this / o; }
    friend RatFunc operator+(const RatFunc& a, const RatFunc& b);
    friend RatFunc operator-(const RatFunc& a, const RatFunc& b);
    friend RatFunc operator*(const RatFunc& a, const RatFunc& b);
    friend RatFunc operator/(const RatFunc& a, const RatFunc& b);
    friend bool operator==(const RatFunc& a, const RatFunc& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }

    // Substitute values for a subset of symbols; absent entries keep the
    // symbol itself.
    RatFunc subst(const std::array<std::optional<RatFunc>, kNumSymbols>& vals) const;

    Rational eval_rational(const std::array<Rational, kNumSymbols>& vals) const;
    // Evaluation on the (q, k, L) subspace used by the numeric layer.
    double eval_double(double q_val, double k_val, double L_val) const;

    // num and den scaled to integer coefficients with coprime contents,
    // for lossless serialization.
    std::pair<MultiPoly, MultiPoly> integer_pair() const;

    std::string str() const;

  private:
    void normalize();
    MultiPoly num_, den_;
};

inline RatFunc operator*(const Rational& c, const RatFunc& f) { return RatFunc(c) * f; }

// Polynomial evaluation with rational-function values for the symbols.
RatFunc poly_subst(const MultiPoly& p,
                   const std::array<std::optional<RatFunc>, kNumSymbols>& vals);

}  // namespace qeskc

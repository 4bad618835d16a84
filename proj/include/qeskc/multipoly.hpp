#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "qeskc/rational.hpp"

namespace qeskc {

// Symbols of the polynomial ring, in monomial-order priority:
// lexicographic with q > k > L > Q > B1 > B2 > B3 > B4.
// q is the reduced Coulomb strength, k the curvature, L the angular
// parameter; Q and B1..B4 only appear in the shape-invariance route.
enum class Sym : int { q = 0, k = 1, L = 2, Q = 3, B1 = 4, B2 = 5, B3 = 6, B4 = 7 };

inline constexpr int kNumSymbols = 8;
inline constexpr const char* kSymNames[kNumSymbols] = {"q", "k", "L", "Q",
                                                       "B1", "B2", "B3", "B4"};

struct Monomial {
    std::array<std::uint16_t, kNumSymbols> e{};

    friend auto operator<=>(const Monomial&, const Monomial&) = default;

    bool divides(const Monomial& other) const {
        for (int i = 0; i < kNumSymbols; ++i)
            if (e[i] > other.e[i]) return false;
        return true;
    }
    Monomial operator*(const Monomial& o) const {
        Monomial r;
        for (int i = 0; i < kNumSymbols; ++i) r.e[i] = static_cast<std::uint16_t>(e[i] + o.e[i]);
        return r;
    }
    // quotient; caller guarantees divisibility
    Monomial operator/(const Monomial& o) const {
        Monomial r;
        for (int i = 0; i < kNumSymbols; ++i) r.e[i] = static_cast<std::uint16_t>(e[i] - o.e[i]);
        return r;
    }
    bool is_one() const {
        for (int i = 0; i < kNumSymbols; ++i)
            if (e[i]) return false;
        return true;
    }
    std::string str() const;
};

struct MonomialGreater {
    bool operator()(const Monomial& a, const Monomial& b) const { return b < a; }
};

struct NotDivisible : std::runtime_error {
    NotDivisible() : std::runtime_error("polynomial division is not exact") {}
};

// Sparse multivariate polynomial over Q with canonical form
// (no zero coefficients stored, terms ordered leading-first).
class MultiPoly {
  public:
    using TermMap = std::map<Monomial, Rational, MonomialGreater>;

    MultiPoly() = default;
    explicit MultiPoly(const Rational& c) {
        if (c != 0) terms_[Monomial{}] = c;
    }
    explicit MultiPoly(long c) : MultiPoly(Rational(c)) {}

    static MultiPoly symbol(Sym s, unsigned pow = 1) {
        MultiPoly p;
        if (pow == 0) return MultiPoly(1);
        Monomial m;
        m.e[static_cast<int>(s)] = static_cast<std::uint16_t>(pow);
        p.terms_[m] = 1;
        return p;
    }
    static MultiPoly term(const Rational& c, const Monomial& m) {
        MultiPoly p;
        if (c != 0) p.terms_[m] = c;
        return p;
    }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
    }
    std::size_t num_terms() const { return terms_.size(); }
    const TermMap& terms() const { return terms_; }

    const Monomial& leading_monomial() const { return terms_.begin()->first; }
    const Rational& leading_coeff() const { return terms_.begin()->second; }

    int degree(Sym s) const {
        int d = 0;
        for (const auto& [m, c] : terms_) d = std::max<int>(d, m.e[static_cast<int>(s)]);
        return d;
    }
    Rational coeff(const Monomial& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? Rational(0) : it->second;
    }
    bool uses(Sym s) const {
        for (const auto& [m, c] : terms_)
            if (m.e[static_cast<int>(s)]) return true;
        return false;
    }

    void add_term(const Monomial& m, const Rational& c) {
        if (c == 0) return;
        auto [it, inserted] = terms_.emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    MultiPoly operator-() const {
        MultiPoly r(*this);
        for (auto& [m, c] : r.terms_) c = -c;
        return r;
    }
    MultiPoly& operator+=(const MultiPoly& o) {
        for (const auto& [m, c] : o.terms_) add_term(m, c);
        return *this;
    }
    MultiPoly& operator-=(const MultiPoly& o) {
        for (const auto& [m, c] : o.terms_) add_term(m, -c);
        return *this;
    }
    friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
    friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
        MultiPoly r;
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
        return r;
    }
    MultiPoly& operator*=(const MultiPoly& o) { return *this = *this * o; }
    MultiPoly operator*(const Rational& c) const {
        MultiPoly r;
        if (c == 0) return r;
        for (const auto& [m, v] : terms_) r.terms_[m] = v * c;
        return r;
    }
    friend MultiPoly operator*(const Rational& c, const MultiPoly& p) { return p * c; }
    MultiPoly pow(unsigned n) const {
        MultiPoly r(1);
        for (unsigned i = 0; i < n; ++i) r *= *this;
        return r;
    }

    friend bool operator==(const MultiPoly& a, const MultiPoly& b) { return a.terms_ == b.terms_; }

    // Exact division; throws NotDivisible when the quotient is not polynomial.
    MultiPoly exact_div(const MultiPoly& d) const;

    // gcd of all coefficients, carrying the sign of the leading one.
    Rational content_signed() const;
    MultiPoly primitive_part() const;

    Rational eval_rational(const std::array<Rational, kNumSymbols>& vals) const;
    double eval_double(double q_val, double k_val, double L_val) const;

    std::string str() const;

  private:
    TermMap terms_;
};

// Greatest common divisor, normalized to integer coefficients with content 1
// and positive leading coefficient. gcd(0,0) = 0 by convention.
MultiPoly poly_gcd(const MultiPoly& a, const MultiPoly& b);

}  // namespace qeskc

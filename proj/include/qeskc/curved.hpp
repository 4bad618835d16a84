#pragma once

#include <deque>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>

#include "qeskc/ratfunc.hpp"

namespace qeskc {

struct NonReducible : std::runtime_error {
    explicit NonReducible(int p, int s)
        : std::runtime_error("monomial r^" + std::to_string(p) + " f^" + std::to_string(s) +
                             " lies outside the closure") {}
};

template <class F>
struct CurvedTraits {
    static F kappa() { return F::k(); }
};

// Finite linear combination of monomials r^p f^s, f = sqrt(1 - kappa r^2),
// reduced to the canonical basis
//   { 1/r^2, f/r, 1/r, r^p f^s with p in {0,1} and s <= 1 }
// by the rewrite system
//   (i)   f^2        -> 1 - kappa r^2            (s >= 2, p <= 1)
//   (ii)  r^2        -> (1 - f^2)/kappa          (p >= 2, s < 0)
//   (iii) 1/(r f^2k)   -> 1/r + kappa (r/f^2 + ... + r/f^2k)
//         1/(r f^2k+1) -> f/r + kappa (r/f + ... + r/f^(2k+1))
//   (iv)  f^2/r^2    -> 1/r^2 - kappa.
// Any monomial left outside the basis is a hard error rather than a silent
// extension of the closure.
template <class F = RatFunc>
class CurvedExpr {
  public:
    using Key = std::pair<int, int>;  // (p, s): r^p f^s
    using TermMap = std::map<Key, F>;

    CurvedExpr() = default;

    static bool admissible(int p, int s) {
        if (p == -2) return s == 0;
        if (p == -1) return s == 0 || s == 1;
        if (p == 0 || p == 1) return s <= 1;
        return false;
    }

    // reduce a raw term map to canonical form
    static CurvedExpr reduced(const TermMap& raw) {
        const F kap = CurvedTraits<F>::kappa();
        CurvedExpr out;
        std::deque<std::pair<Key, F>> work(raw.begin(), raw.end());
        while (!work.empty()) {
            auto [key, c] = std::move(work.front());
            work.pop_front();
            auto [p, s] = key;
            if (c.is_zero()) continue;
            if (admissible(p, s)) {
                out.add_term(p, s, c);
                continue;
            }
            if (p <= -3) throw NonReducible(p, s);
            if (p == -2) {
                if (s == 2) {  // rule (iv)
                    work.push_back({{-2, 0}, c});
                    work.push_back({{0, 0}, -(kap * c)});
                    continue;
                }
                throw NonReducible(p, s);
            }
            if (p >= 2) {
                if (s >= 0) throw NonReducible(p, s);
                // rule (ii)
                work.push_back({{p - 2, s}, c / kap});
                work.push_back({{p - 2, s + 2}, -(c / kap)});
                continue;
            }
            if (s >= 2) {  // rule (i), p in {-1, 0, 1}
                work.push_back({{p, s - 2}, c});
                work.push_back({{p + 2, s - 2}, -(kap * c)});
                continue;
            }
            // remaining case: p == -1 with s < 0, rule (iii)
            if (s % 2 == 0) {
                int kk = -s / 2;
                work.push_back({{-1, 0}, c});
                for (int j = 1; j <= kk; ++j) work.push_back({{1, -2 * j}, kap * c});
            } else {
                int kk = (-s - 1) / 2;
                work.push_back({{-1, 1}, c});
                for (int j = 0; j <= kk; ++j) work.push_back({{1, -2 * j - 1}, kap * c});
            }
        }
        return out;
    }

    static CurvedExpr term(int p, int s, F c) {
        TermMap m;
        m[{p, s}] = std::move(c);
        return reduced(m);
    }
    static CurvedExpr constant(F c) { return term(0, 0, std::move(c)); }

    bool is_zero() const { return terms_.empty(); }
    const TermMap& terms() const { return terms_; }

    F coefficient_of(int p, int s) const {
        if (!admissible(p, s)) throw std::invalid_argument("(p, s) outside the canonical basis");
        auto it = terms_.find({p, s});
        return it == terms_.end() ? F(0) : it->second;
    }

    CurvedExpr operator-() const {
        CurvedExpr r(*this);
        for (auto& [k, c] : r.terms_) c = -c;
        return r;
    }
    CurvedExpr& operator+=(const CurvedExpr& o) {
        for (const auto& [k, c] : o.terms_) add_term(k.first, k.second, c);
        return *this;
    }
    CurvedExpr& operator-=(const CurvedExpr& o) {
        for (const auto& [k, c] : o.terms_) add_term(k.first, k.second, -c);
        return *this;
    }
    friend CurvedExpr operator+(CurvedExpr a, const CurvedExpr& b) { return a += b; }
    friend CurvedExpr operator-(CurvedExpr a, const CurvedExpr& b) { return a -= b; }

    friend CurvedExpr operator*(const CurvedExpr& a, const CurvedExpr& b) {
        TermMap raw;
        for (const auto& [ka, ca] : a.terms_) {
            for (const auto& [kb, cb] : b.terms_) {
                Key k{ka.first + kb.first, ka.second + kb.second};
                F prod = ca * cb;
                auto it = raw.find(k);
                if (it == raw.end())
                    raw.emplace(k, std::move(prod));
                else
                    it->second += prod;
            }
        }
        return reduced(raw);
    }
    CurvedExpr operator*(const F& c) const {
        CurvedExpr r;
        if (c.is_zero()) return r;
        for (const auto& [k, v] : terms_) r.add_term(k.first, k.second, v * c);
        return r;
    }

    // f d/dr, term by term: d(r^p f^s)/dr = p r^(p-1) f^s - kappa s r^(p+1) f^(s-2)
    CurvedExpr f_ddr() const {
        const F kap = CurvedTraits<F>::kappa();
        TermMap raw;
        auto acc = [&raw](int p, int s, F c) {
            auto it = raw.find({p, s});
            if (it == raw.end())
                raw.emplace(Key{p, s}, std::move(c));
            else
                it->second += c;
        };
        for (const auto& [k, c] : terms_) {
            auto [p, s] = k;
            if (p != 0) acc(p - 1, s + 1, F(p) * c);
            if (s != 0) acc(p + 1, s - 1, -(F(s) * (kap * c)));
        }
        return reduced(raw);
    }

    friend bool operator==(const CurvedExpr& a, const CurvedExpr& b) {
        return a.terms_ == b.terms_;
    }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::string s;
        for (const auto& [k, c] : terms_) {
            if (!s.empty()) s += "  +  ";
            s += "[" + c.str() + "] r^" + std::to_string(k.first) + " f^" +
                 std::to_string(k.second);
        }
        return s;
    }

  private:
    void add_term(int p, int s, F c) {
        if (c.is_zero()) return;
        auto it = terms_.find({p, s});
        if (it == terms_.end()) {
            terms_.emplace(Key{p, s}, std::move(c));
        } else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }
    TermMap terms_;
};

using CurvedRF = CurvedExpr<RatFunc>;

}  // namespace qeskc

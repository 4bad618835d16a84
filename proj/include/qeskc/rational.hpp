#pragma once

#include <gmpxx.h>

#include <string>

namespace qeskc {

// Arbitrary-precision rational, canonical form maintained by GMP:
// gcd(|num|, den) = 1 and den > 0.
using Rational = mpq_class;

inline Rational rat(long num, long den = 1) {
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline Rational rat(const std::string& s) {
    Rational r(s);
    r.canonicalize();
    return r;
}

inline bool is_integer(const Rational& r) { return r.get_den() == 1; }

// gcd on Q: gcd(a/b, c/d) = gcd(a*d, c*b) / (b*d), nonnegative.
// Extends integer gcd so that x/gcd(x,y) and y/gcd(x,y) are coprime integers
// after clearing denominators; gcd(0,0) = 0.
inline Rational rational_gcd(const Rational& a, const Rational& b) {
    mpz_class num;
    mpz_gcd(num.get_mpz_t(), mpz_class(a.get_num() * b.get_den()).get_mpz_t(),
            mpz_class(b.get_num() * a.get_den()).get_mpz_t());
    Rational g(num, a.get_den() * b.get_den());
    g.canonicalize();
    return g;
}

inline std::string to_string(const Rational& r) { return r.get_str(); }

}  // namespace qeskc

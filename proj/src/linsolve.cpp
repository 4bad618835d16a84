#include "qeskc/linsolve.hpp"

#include <algorithm>

namespace qeskc {

std::vector<RatFunc> solve_linear_exact(PolyMatrix A, PolyVector rhs) {
    const std::size_t n = A.size();
    if (n == 0) return {};
    for (const auto& row : A)
        if (row.size() != n) throw std::invalid_argument("matrix is not square");
    if (rhs.size() != n) throw std::invalid_argument("rhs size mismatch");

    PolyMatrix orig_A = A;
    PolyVector orig_rhs = rhs;

    // augmented matrix
    for (std::size_t i = 0; i < n; ++i) A[i].push_back(rhs[i]);

    MultiPoly prev_pivot(1);
    for (std::size_t c = 0; c + 1 < n; ++c) {
        // pick the sparsest nonzero pivot in this column
        std::size_t best = n;
        for (std::size_t i = c; i < n; ++i) {
            if (A[i][c].is_zero()) continue;
            if (best == n || A[i][c].num_terms() < A[best][c].num_terms()) best = i;
        }
        if (best == n) throw SingularSystem();
        if (best != c) std::swap(A[best], A[c]);

        const MultiPoly pivot = A[c][c];
        for (std::size_t i = c + 1; i < n; ++i) {
            for (std::size_t j = c + 1; j <= n; ++j)
                A[i][j] = (A[i][j] * pivot - A[i][c] * A[c][j]).exact_div(prev_pivot);
            A[i][c] = MultiPoly();
        }
        prev_pivot = pivot;
    }
    if (A[n - 1][n - 1].is_zero()) throw SingularSystem();

    std::vector<RatFunc> x(n);
    for (std::size_t ii = n; ii-- > 0;) {
        RatFunc acc{A[ii][n]};
        for (std::size_t j = ii + 1; j < n; ++j) acc -= RatFunc(A[ii][j]) * x[j];
        x[ii] = acc / RatFunc(A[ii][ii]);
    }

    for (std::size_t i = 0; i < n; ++i) {
        RatFunc res{-orig_rhs[i]};
        for (std::size_t j = 0; j < n; ++j) res += RatFunc(orig_A[i][j]) * x[j];
        if (!res.is_zero()) throw std::logic_error("nonzero residual after exact solve");
    }
    return x;
}

namespace {

// rational roots of an integer-coefficient univariate polynomial given as
// (degree -> mpz coefficient), via the rational root theorem
std::vector<Rational> rational_roots(const std::vector<mpz_class>& coeffs) {
    int lo = -1, hi = -1;
    for (int i = 0; i < static_cast<int>(coeffs.size()); ++i) {
        if (coeffs[static_cast<std::size_t>(i)] != 0) {
            if (lo < 0) lo = i;
            hi = i;
        }
    }
    std::vector<Rational> roots;
    if (lo < 0 || hi == lo) return roots;
    mpz_class trail = coeffs[static_cast<std::size_t>(lo)];
    mpz_class lead = coeffs[static_cast<std::size_t>(hi)];
    auto divisors = [](mpz_class v) {
        std::vector<mpz_class> ds;
        v = abs(v);
        for (mpz_class d = 1; d * d <= v; ++d) {
            if (v % d == 0) {
                ds.push_back(d);
                ds.push_back(v / d);
            }
        }
        return ds;
    };
    auto value_at = [&coeffs](const Rational& x) {
        Rational acc(0);
        for (int i = static_cast<int>(coeffs.size()); i-- > 0;)
            acc = acc * x + Rational(coeffs[static_cast<std::size_t>(i)]);
        return acc;
    };
    for (const mpz_class& p : divisors(trail)) {
        for (const mpz_class& s : divisors(lead)) {
            for (int sign : {1, -1}) {
                Rational cand(sign * p, s);
                cand.canonicalize();
                if (value_at(cand) == 0) {
                    if (std::find(roots.begin(), roots.end(), cand) == roots.end())
                        roots.push_back(cand);
                }
            }
        }
    }
    return roots;
}

}  // namespace

ShiftedQuadraticFactors factor_shifted_quadratics(const MultiPoly& p) {
    for (int i = 2; i < kNumSymbols; ++i)
        if (p.uses(static_cast<Sym>(i)))
            throw std::invalid_argument("factor extraction expects a polynomial in q, k only");

    ShiftedQuadraticFactors out;
    out.remainder = p;
    if (p.is_zero() || p.is_constant()) return out;

    // Candidate constants c come from specializing k to a positive integer:
    // (q^2 + c k) | p forces u = -c k0 to be a root of both the even and the
    // odd part of p(q, k0) viewed in u = q^2.
    std::vector<Rational> candidates;
    for (long k0 : {1L, 2L, 3L}) {
        std::array<Rational, kNumSymbols> vals;
        vals.fill(Rational(0));
        vals[static_cast<std::size_t>(Sym::k)] = Rational(k0);
        // split into even/odd q-parts, substitute k = k0, view in u = q^2
        std::vector<Rational> even, odd;
        for (const auto& [m, c] : p.terms()) {
            int dq = m.e[0];
            Rational kk(1);
            for (int j = 0; j < m.e[1]; ++j) kk *= Rational(k0);
            auto& dst = (dq % 2 == 0) ? even : odd;
            std::size_t idx = static_cast<std::size_t>(dq / 2);
            if (dst.size() <= idx) dst.resize(idx + 1, Rational(0));
            dst[idx] += c * kk;
        }
        auto to_int = [](const std::vector<Rational>& v) {
            mpz_class l(1);
            for (const auto& r : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), r.get_den().get_mpz_t());
            std::vector<mpz_class> out_i;
            out_i.reserve(v.size());
            for (const auto& r : v) out_i.push_back(mpz_class(r.get_num() * (l / r.get_den())));
            return out_i;
        };
        auto eff_deg = [](const std::vector<Rational>& v) {
            for (int i = static_cast<int>(v.size()); i-- > 0;)
                if (v[static_cast<std::size_t>(i)] != 0) return i;
            return -1;
        };
        // candidate roots come from the first part that is nonzero at this
        // specialization; a nonzero-constant part rules factors out entirely
        const std::vector<Rational>* base = nullptr;
        if (eff_deg(even) >= 0)
            base = &even;
        else if (eff_deg(odd) >= 0)
            base = &odd;
        if (base == nullptr) continue;  // p vanishes at k = k0, try another
        if (eff_deg(*base) < 1) return out;
        for (const Rational& u : rational_roots(to_int(*base))) {
            if (u >= 0) continue;  // want u = -c k0 with c > 0
            Rational c = -u / Rational(k0);
            if (std::find(candidates.begin(), candidates.end(), c) == candidates.end())
                candidates.push_back(c);
        }
        if (!candidates.empty()) break;
    }

    std::sort(candidates.begin(), candidates.end());
    for (const Rational& c : candidates) {
        MultiPoly factor = MultiPoly::symbol(Sym::q, 2) + MultiPoly::symbol(Sym::k) * c;
        int mult = 0;
        while (true) {
            try {
                MultiPoly quot = out.remainder.exact_div(factor);
                out.remainder = quot;
                ++mult;
            } catch (const NotDivisible&) {
                break;
            }
        }
        if (mult > 0) out.factors.emplace_back(c, mult);
    }
    return out;
}

}  // namespace qeskc

#include "qeskc/multipoly.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>

namespace qeskc {

std::string Monomial::str() const {
    std::string s;
    for (int i = 0; i < kNumSymbols; ++i) {
        if (!e[i]) continue;
        if (!s.empty()) s += ' ';
        s += kSymNames[i];
        if (e[i] > 1) s += '^' + std::to_string(e[i]);
    }
    return s.empty() ? "1" : s;
}

MultiPoly MultiPoly::exact_div(const MultiPoly& d) const {
    if (d.is_zero()) throw std::domain_error("division by zero polynomial");
    MultiPoly q;
    MultiPoly r(*this);
    const Monomial& dlm = d.leading_monomial();
    const Rational& dlc = d.leading_coeff();
    while (!r.is_zero()) {
        const Monomial& rlm = r.leading_monomial();
        if (!dlm.divides(rlm)) throw NotDivisible();
        Monomial qm = rlm / dlm;
        Rational qc = r.leading_coeff() / dlc;
        q.add_term(qm, qc);
        r -= d * MultiPoly::term(qc, qm);
    }
    return q;
}

Rational MultiPoly::content_signed() const {
    if (is_zero()) return Rational(0);
    Rational g(0);
    for (const auto& [m, c] : terms_) g = rational_gcd(g, c);
    if (leading_coeff() < 0) g = -g;
    return g;
}

MultiPoly MultiPoly::primitive_part() const {
    if (is_zero()) return MultiPoly();
    return *this * (Rational(1) / content_signed());
}

Rational MultiPoly::eval_rational(const std::array<Rational, kNumSymbols>& vals) const {
    Rational acc(0);
    for (const auto& [m, c] : terms_) {
        Rational t = c;
        for (int i = 0; i < kNumSymbols; ++i)
            for (int j = 0; j < m.e[i]; ++j) t *= vals[i];
        acc += t;
    }
    return acc;
}

double MultiPoly::eval_double(double q_val, double k_val, double L_val) const {
    double acc = 0.0;
    for (const auto& [m, c] : terms_) {
        for (int i = 3; i < kNumSymbols; ++i)
            if (m.e[i]) throw std::domain_error("numeric evaluation restricted to (q, k, L)");
        acc += c.get_d() * std::pow(q_val, m.e[0]) * std::pow(k_val, m.e[1]) *
               std::pow(L_val, m.e[2]);
    }
    return acc;
}

std::string MultiPoly::str() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        Rational a = c;
        if (first) {
            if (a < 0) {
                os << "-";
                a = -a;
            }
        } else {
            os << (a < 0 ? " - " : " + ");
            if (a < 0) a = -a;
        }
        if (m.is_one())
            os << a.get_str();
        else if (a == 1)
            os << m.str();
        else
            os << a.get_str() << " " << m.str();
        first = false;
    }
    return os.str();
}

namespace {

// ---- heuristic gcd: evaluate one variable at a large integer, recurse,
// ---- lift the result back xi-adically, verify by exact division ----------

mpz_class max_abs_num(const MultiPoly& p) {
    mpz_class m = 0;
    for (const auto& [mo, c] : p.terms()) {
        mpz_class a = abs(c.get_num());
        if (a > m) m = a;
    }
    return m;
}

bool integer_coeffs(const MultiPoly& p) {
    for (const auto& [mo, c] : p.terms())
        if (c.get_den() != 1) return false;
    return true;
}

MultiPoly eval_symbol(const MultiPoly& p, int vi, const mpz_class& xi) {
    std::vector<mpz_class> pows{1};
    int d = p.degree(static_cast<Sym>(vi));
    for (int i = 1; i <= d; ++i) pows.push_back(pows.back() * xi);
    MultiPoly out;
    for (const auto& [mo, c] : p.terms()) {
        Monomial rest = mo;
        int e = rest.e[vi];
        rest.e[vi] = 0;
        out.add_term(rest, c * Rational(pows[static_cast<std::size_t>(e)]));
    }
    return out;
}

// symmetric remainder in (-xi/2, xi/2], applied per coefficient
MultiPoly symmetric_mod(const MultiPoly& p, const mpz_class& xi) {
    MultiPoly out;
    for (const auto& [mo, c] : p.terms()) {
        mpz_class r = c.get_num() % xi;
        if (r < 0) r += xi;
        if (2 * r > xi) r -= xi;
        if (r != 0) out.add_term(mo, Rational(r));
    }
    return out;
}

MultiPoly divide_scalar_exact(const MultiPoly& p, const mpz_class& xi) {
    MultiPoly out;
    for (const auto& [mo, c] : p.terms()) out.add_term(mo, Rational(c.get_num() / xi));
    return out;
}

// divisibility over Z: exact polynomial quotient with integer coefficients
bool divides_over_z(const MultiPoly& d, const MultiPoly& p) {
    try {
        return integer_coeffs(p.exact_div(d));
    } catch (const NotDivisible&) {
        return false;
    }
}

// gcd over Z (content included) of integer polynomials, or nullopt when the
// lift keeps failing. Only the top level strips content: deeper levels carry
// the integer image of factors of the evaluated variables.
std::optional<MultiPoly> heuristic_gcd(const MultiPoly& a, const MultiPoly& b, int depth = 0) {
    if (a.is_constant() || b.is_constant()) {
        mpz_class g;
        mpz_gcd(g.get_mpz_t(), a.content_signed().get_num().get_mpz_t(),
                b.content_signed().get_num().get_mpz_t());
        return MultiPoly(Rational(abs(g)));
    }
    // evaluate the lowest-degree variable present in either argument
    int vi = -1, best_deg = 1 << 20;
    for (int i = 0; i < kNumSymbols; ++i) {
        int d = std::max(a.degree(static_cast<Sym>(i)), b.degree(static_cast<Sym>(i)));
        if (d > 0 && d < best_deg) {
            best_deg = d;
            vi = i;
        }
    }
    if (vi < 0) return std::nullopt;

    mpz_class bound = std::max(max_abs_num(a), max_abs_num(b));
    mpz_class xi = 2 * bound + 29;
    for (int attempt = 0; attempt < 4; ++attempt, xi = xi * 73 / 32 + 17) {
        MultiPoly ga = eval_symbol(a, vi, xi);
        MultiPoly gb = eval_symbol(b, vi, xi);
        if (ga.is_zero() || gb.is_zero()) continue;
        std::optional<MultiPoly> gg =
            depth > 8 ? std::nullopt : heuristic_gcd(ga, gb, depth + 1);
        if (!gg) return std::nullopt;
        // xi-adic lift of the evaluated gcd back into the variable
        MultiPoly g;
        MultiPoly carry = *gg;
        for (unsigned i = 0; !carry.is_zero(); ++i) {
            if (i > 400) break;
            MultiPoly digit = symmetric_mod(carry, xi);
            g += digit * MultiPoly::symbol(static_cast<Sym>(vi), i);
            carry = divide_scalar_exact(carry - digit, xi);
        }
        if (g.is_zero()) continue;
        if (depth == 0) g = g.primitive_part();
        if (divides_over_z(g, a) && divides_over_z(g, b)) return g;
    }
    return std::nullopt;
}

// Univariate view of a polynomial with respect to one symbol: the vector of
// coefficient polynomials in the remaining symbols, indexed by degree.
std::vector<MultiPoly> coeffs_in(const MultiPoly& p, Sym v) {
    std::vector<MultiPoly> out(static_cast<std::size_t>(p.degree(v)) + 1);
    const int vi = static_cast<int>(v);
    for (const auto& [m, c] : p.terms()) {
        Monomial rest = m;
        int d = rest.e[vi];
        rest.e[vi] = 0;
        out[static_cast<std::size_t>(d)].add_term(rest, c);
    }
    return out;
}

MultiPoly from_coeffs(const std::vector<MultiPoly>& cs, Sym v) {
    MultiPoly p;
    for (std::size_t d = 0; d < cs.size(); ++d) p += cs[d] * MultiPoly::symbol(v, static_cast<unsigned>(d));
    return p;
}

int deg_in(const std::vector<MultiPoly>& cs) {
    for (int d = static_cast<int>(cs.size()) - 1; d >= 0; --d)
        if (!cs[static_cast<std::size_t>(d)].is_zero()) return d;
    return -1;
}

MultiPoly gcd_inner(const MultiPoly& a, const MultiPoly& b);

// Content of p with respect to v: gcd of its univariate coefficients.
MultiPoly content_wrt(const std::vector<MultiPoly>& cs) {
    MultiPoly g;
    for (const auto& c : cs) {
        if (c.is_zero()) continue;
        g = gcd_inner(g, c);
        if (g.is_constant() && !g.is_zero()) return g;
    }
    return g;
}

// Pseudo-remainder of a by b in the main variable (both as coefficient
// vectors); valid up to units, which primitive PRS re-normalizes away.
std::vector<MultiPoly> pseudo_rem(std::vector<MultiPoly> r, const std::vector<MultiPoly>& b) {
    int db = deg_in(b);
    const MultiPoly& blc = b[static_cast<std::size_t>(db)];
    int dr = deg_in(r);
    while (dr >= db && dr >= 0) {
        MultiPoly rlc = r[static_cast<std::size_t>(dr)];
        for (int i = 0; i <= dr; ++i) {
            std::size_t ii = static_cast<std::size_t>(i);
            MultiPoly t = r[ii] * blc;
            int j = i - (dr - db);
            if (j >= 0 && j <= db) t -= rlc * b[static_cast<std::size_t>(j)];
            r[ii] = std::move(t);
        }
        r[static_cast<std::size_t>(dr)] = MultiPoly();
        dr = deg_in(r);
    }
    return r;
}

// Heuristic evaluation gcd first, primitive polynomial remainder sequence
// in the first symbol used by either argument as the exact fallback.
MultiPoly gcd_inner(const MultiPoly& a, const MultiPoly& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.is_constant() || b.is_constant())
        return MultiPoly(rational_gcd(a.content_signed(), b.content_signed()));

    // the evaluation gcd shines on small generic inputs; the remainder
    // sequence is the better tool for the large structured ones
    long dense_size = 1;
    for (int i = 0; i < kNumSymbols && dense_size <= 1500; ++i)
        dense_size *= 1 + std::max(a.degree(static_cast<Sym>(i)), b.degree(static_cast<Sym>(i)));
    if (dense_size <= 1500) {
        Rational ca = a.content_signed(), cb = b.content_signed();
        MultiPoly pa = a * (Rational(1) / ca);
        MultiPoly pb = b * (Rational(1) / cb);
        // large coefficients make the evaluation point explode; leave those
        // to the remainder sequence
        if (integer_coeffs(pa) && integer_coeffs(pb) &&
            mpz_sizeinbase(std::max(max_abs_num(pa), max_abs_num(pb)).get_mpz_t(), 2) <= 4096) {
            if (std::optional<MultiPoly> hg = heuristic_gcd(pa, pb)) {
                MultiPoly g = *hg;
                // fold in anything the lift may have missed
                while (!g.is_constant()) {
                    std::optional<MultiPoly> extra = heuristic_gcd(
                        pa.exact_div(g).primitive_part(), pb.exact_div(g).primitive_part());
                    if (!extra || extra->is_constant()) break;
                    g = g * *extra;
                }
                return MultiPoly(rational_gcd(ca, cb)) * g;
            }
        }
    }

    Sym v = Sym::q;
    for (int i = 0; i < kNumSymbols; ++i) {
        Sym s = static_cast<Sym>(i);
        if (a.uses(s) || b.uses(s)) {
            v = s;
            break;
        }
    }

    std::vector<MultiPoly> ca = coeffs_in(a, v);
    std::vector<MultiPoly> cb = coeffs_in(b, v);
    MultiPoly cont_a = content_wrt(ca);
    MultiPoly cont_b = content_wrt(cb);
    MultiPoly cont_gcd = gcd_inner(cont_a, cont_b);

    // strip content from both (exact by construction)
    for (auto& c : ca)
        if (!c.is_zero()) c = c.exact_div(cont_a);
    for (auto& c : cb)
        if (!c.is_zero()) c = c.exact_div(cont_b);

    if (deg_in(ca) < deg_in(cb)) std::swap(ca, cb);
    if (deg_in(cb) == 0) {
        // primitive in v and degree zero: unit with respect to v
        return cont_gcd;
    }
    while (true) {
        std::vector<MultiPoly> r = pseudo_rem(ca, cb);
        int dr = deg_in(r);
        if (dr < 0) break;
        MultiPoly pr = from_coeffs(r, v);
        MultiPoly cont_r = content_wrt(r);
        pr = pr.exact_div(cont_r);
        ca = std::move(cb);
        cb = coeffs_in(pr, v);
        if (deg_in(cb) == 0) return cont_gcd;
    }
    return cont_gcd * from_coeffs(cb, v);
}

}  // namespace

MultiPoly poly_gcd(const MultiPoly& a, const MultiPoly& b) {
    MultiPoly g = gcd_inner(a, b);
    if (g.is_zero()) return g;
    return g * (Rational(1) / g.content_signed());
}

}  // namespace qeskc

// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Tolerances and runtime budgets are pinned here, not configurable.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "qeskc/cdsi.hpp"
#include "qeskc/gfm.hpp"
#include "qeskc/numeric.hpp"
#include "qeskc/reference.hpp"

using namespace qeskc;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
    void fail(const std::string& why) {
        pass = false;
        if (!detail.empty()) detail += "; ";
        detail += why;
    }
};

double rel_err(double got, double want) { return std::abs(got - want) / std::abs(want); }

// 1. solve_coeffs reproduces the closed-form tables for m = 1..7 exactly.
Outcome criterion1(double& seconds_budget) {
    seconds_budget = 10.0;
    Outcome o;
    for (int m = 1; m <= 7; ++m) {
        gfm::CoeffSolution sol = gfm::solve_coeffs(m);
        gfm::CoeffSolution ref = reference::coeffs(m);
        for (std::size_t i = 0; i < sol.a.size(); ++i) {
            if (!(sol.a[i] == ref.a[i]))
                o.fail("a_" + std::to_string(i) + " differs at m=" + std::to_string(m));
        }
    }
    return o;
}

// 2. Riccati, compatibility, and partner residuals vanish for m = 1..10
//    with fully symbolic (q, k, L).
Outcome criterion2(double& seconds_budget) {
    seconds_budget = 60.0;
    Outcome o;
    for (int m = 1; m <= 10; ++m) {
        gfm::IdentityReport rep = gfm::verify_identities(gfm::solve_coeffs(m));
        if (!rep.compatibility.is_zero()) o.fail("compatibility m=" + std::to_string(m));
        if (!rep.riccati.is_zero()) o.fail("riccati m=" + std::to_string(m));
        if (!rep.partner.is_zero()) o.fail("partner m=" + std::to_string(m));
    }
    return o;
}

// 3. The redundant equation residual vanishes identically for m = 1..10.
Outcome criterion3(double&) {
    Outcome o;
    for (int m = 1; m <= 10; ++m) {
        if (!gfm::redundancy_residual(gfm::solve_coeffs(m)).is_zero())
            o.fail("m=" + std::to_string(m));
    }
    return o;
}

// 4. Shape-invariance route: resolved parameters for m = 1, 2; tabulated
//    m = 3; exact agreement with the generating-function route for m = 1..3.
Outcome criterion4(double&) {
    Outcome o;
    const RatFunc q = RatFunc::q();
    const RatFunc k = RatFunc::k();
    const RatFunc L = RatFunc::L();
    try {
        cdsi::Resolved r1 = cdsi::compatibility(1);
        if (!(r1.B[0] == RatFunc(2) * (L + RatFunc(1)) * (L + RatFunc(2)) * q))
            o.fail("m=1 B1 != Q");
        if (!(r1.B[1] == L * (L + RatFunc(1)))) o.fail("m=1 B2 != L(L+1)");

        cdsi::Resolved r2 = cdsi::compatibility(2);
        const MultiPoly pq = MultiPoly::symbol(Sym::q);
        const MultiPoly pk = MultiPoly::symbol(Sym::k);
        const MultiPoly pL = MultiPoly::symbol(Sym::L);
        MultiPoly D = pq * pq + MultiPoly(3) * pk;
        MultiPoly tl3 = MultiPoly(2) * pL + MultiPoly(3);
        if (!(r2.B[3] == RatFunc(pk * tl3 * tl3 * pq * pq, D * D))) o.fail("m=2 B4");
        if (!(r2.B[2] == RatFunc(MultiPoly(2) * pk * tl3 * pq *
                                     ((MultiPoly(2) * pL + MultiPoly(1)) * pq * pq -
                                      MultiPoly(6) * pk),
                                 D * D)))
            o.fail("m=2 B3");
        if (!(r2.B[0] ==
              RatFunc(MultiPoly(2) * pq *
                          (MultiPoly(2) * (pL + MultiPoly(1)) * (pL + MultiPoly(2)) * pq.pow(4) -
                           MultiPoly(3) * pk * pq * pq -
                           MultiPoly(6) * pk * pk * (pL * pL + MultiPoly(3) * pL + MultiPoly(3))),
                      D * D)))
            o.fail("m=2 B1");
        if (!(r2.B[1] ==
              RatFunc(MultiPoly(2) *
                              (MultiPoly(4) * pL * pL + MultiPoly(10) * pL + MultiPoly(7)) *
                              pq.pow(4) +
                          pk * (MultiPoly(4) * pL * pL + MultiPoly(3)) * pq * pq +
                          MultiPoly(18) * pk * pk,
                      D * D)))
            o.fail("m=2 B2");

        for (int m = 1; m <= 3; ++m) {
            cdsi::CrosscheckReport rep = cdsi::crosscheck_gfm(m);
            if (!rep.all_ok()) o.fail("crosscheck m=" + std::to_string(m) + ": " + rep.detail);
        }
    } catch (const std::exception& e) {
        o.fail(e.what());
    }
    return o;
}

// 5. Reference-figure numbers: m=1, kappa=L=Q=1 gives E0 = 15.9375 and
//    E1 = 35.97222...; the solver at n=4000, eps=1e-4 is within 1e-3.
Outcome criterion5(double& seconds_budget) {
    seconds_budget = 5.0;
    Outcome o;
    numeric::ModelParams p{1.0, 1.0, 1.0, 1};
    gfm::CoeffSolution sol = gfm::solve_coeffs(1);
    gfm::PotentialSpec ps = gfm::assemble_potential(sol);
    double qv = p.calQ();
    double E0 = ps.E0.eval_double(qv, p.kappa, p.L);
    double E1 = ps.E1.eval_double(qv, p.kappa, p.L);
    if (std::abs(E0 - 15.9375) > 1e-12) o.fail("exact E0 != 15.9375");
    if (std::abs(E1 - (36.0 - 1.0 / 36.0)) > 1e-12) o.fail("exact E1 != 1295/36");
    auto ev = numeric::eigensolve_fd(numeric::potential_fn(ps, p), p,
                                     numeric::GridSpec{4000, 1e-4}, 2);
    if (rel_err(ev[0], E0) >= 1e-3) o.fail("numeric E0 off: " + std::to_string(ev[0]));
    if (rel_err(ev[1], E1) >= 1e-3) o.fail("numeric E1 off: " + std::to_string(ev[1]));
    return o;
}

// 6. Pure-KC oracle: closed-form levels reproduced within 1e-3.
Outcome criterion6(double&) {
    Outcome o;
    numeric::ModelParams p = numeric::ModelParams::from_dl(1.0, 3, 0, 1.0, 0);
    auto ev = numeric::eigensolve_kc(p, numeric::GridSpec{4000, 1e-6}, 3);
    const double expect[3] = {0.75, 3.9375, 8.0 + 35.0 / 36.0};
    for (int j = 0; j < 3; ++j) {
        if (rel_err(ev[static_cast<std::size_t>(j)], expect[j]) >= 1e-3)
            o.fail("level " + std::to_string(j) + " = " +
                   std::to_string(ev[static_cast<std::size_t>(j)]));
    }
    return o;
}

// 7. Wavefunction certification for m <= 3 at three random draws each:
//    residual order >= 2, orthogonality < 1e-6, node counts (0, 1), and the
//    m=1 node location within 1e-6 of the closed form.
Outcome criterion7(double&) {
    Outcome o;
    std::mt19937 gen(424243u);
    std::uniform_real_distribution<double> dk(0.5, 2.0), dq(0.4, 1.2), dL(1.1, 2.2);
    for (int m = 1; m <= 3; ++m) {
        gfm::CoeffSolution sol = gfm::solve_coeffs(m);
        gfm::PotentialSpec ps = gfm::assemble_potential(sol);
        gfm::WavePair wp = gfm::wavefunctions(sol);
        for (int draw = 0; draw < 3; ++draw) {
            numeric::ModelParams p;
            p.kappa = dk(gen);
            p.L = dL(gen);
            p.m = m;
            double qv = dq(gen);
            p.Q = qv * 2.0 * (p.L + 1.0) * (p.L + 2.0);
            std::string tag = " (m=" + std::to_string(m) + " draw " + std::to_string(draw) + ")";

            double E0 = ps.E0.eval_double(qv, p.kappa, p.L);
            double E1 = ps.E1.eval_double(qv, p.kappa, p.L);
            auto V = numeric::potential_fn(ps, p);
            for (const auto& [desc, E] :
                 {std::pair<const gfm::WaveDescriptor*, double>{&wp.psi0, E0},
                  std::pair<const gfm::WaveDescriptor*, double>{&wp.psi1, E1}}) {
                // inset fixed well above the grid spacing: the refinement
                // study must run on one and the same domain
                double r500 = numeric::operator_residual(*desc, E, V, p, {500, 1e-2});
                double r1000 = numeric::operator_residual(*desc, E, V, p, {1000, 1e-2});
                double r2000 = numeric::operator_residual(*desc, E, V, p, {2000, 1e-2});
                double order = 0.5 * (std::log2(r500 / r1000) + std::log2(r1000 / r2000));
                if (!(order >= 1.9)) o.fail("residual order " + std::to_string(order) + tag);
            }

            numeric::OverlapNodes on =
                numeric::overlap_and_nodes(wp.psi0, wp.psi1, p, {200001, 1e-5});
            if (!(std::abs(on.overlap) < 1e-6))
                o.fail("overlap " + std::to_string(on.overlap) + tag);
            if (on.nodes_a != 0) o.fail("psi0 nodes" + tag);
            if (on.nodes_b != 1) o.fail("psi1 nodes" + tag);

            if (m == 1) {
                double r0 = numeric::node_location_m1(p);
                double found =
                    numeric::find_node(wp.psi1, p, 1e-6, p.r_max() * (1.0 - 1e-9));
                if (!(std::abs(found - r0) < 1e-6)) o.fail("node location" + tag);
            }
        }
    }
    return o;
}

// 8. Coefficient structure holds for m = 2..10 with every extracted
//    constant positive (three members beyond the tabulated range).
Outcome criterion8(double& seconds_budget) {
    seconds_budget = 300.0;
    Outcome o;
    for (int m = 2; m <= 10; ++m) {
        gfm::ConjectureReport rep = gfm::check_conjecture(m);
        if (!rep.all_ok()) o.fail("m=" + std::to_string(m) + ": " + rep.detail);
    }
    return o;
}

// 9. The m=6 table discrepancy (919 vs 912) is detected and the exact
//    solver's value reported; detection is asserted, not a resolution.
Outcome criterion9(double&) {
    Outcome o;
    gfm::M6DenominatorAudit audit = gfm::audit_m6_denominator();
    if (!audit.discrepancy_detected()) o.fail("tables agree unexpectedly");
    o.detail = "exact k^2 q^2 coefficient = " + std::string(audit.exact_coefficient.get_str()) +
               (audit.coefficient_table_matches ? " (coefficient-table variant)"
                                                : " (energy-table variant)");
    return o;
}

}  // namespace

int main() {
    using Clock = std::chrono::steady_clock;
    struct Entry {
        const char* name;
        std::function<Outcome(double&)> fn;
    };
    const std::vector<Entry> criteria = {
        {"coefficient tables exact for m=1..7", criterion1},
        {"identity residuals vanish symbolically for m=1..10", criterion2},
        {"redundant equation vanishes for m=1..10", criterion3},
        {"shape-invariance route resolved and consistent for m=1..3", criterion4},
        {"reference-figure eigenvalues reproduced (m=1, kappa=L=Q=1)", criterion5},
        {"pure Kepler-Coulomb spectrum reproduced", criterion6},
        {"wavefunctions certified (residual order, orthogonality, nodes)", criterion7},
        {"coefficient structure verified for m=2..10", criterion8},
        {"m=6 denominator discrepancy detected", criterion9},
    };

    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        double budget = 0.0;  // seconds; 0 = untimed
        auto t0 = Clock::now();
        Outcome o;
        try {
            o = criteria[i].fn(budget);
        } catch (const std::exception& e) {
            o.fail(std::string("exception: ") + e.what());
        }
        double secs = std::chrono::duration<double>(Clock::now() - t0).count();
        if (budget > 0.0 && secs > budget)
            o.fail("runtime " + std::to_string(secs) + "s over budget " +
                   std::to_string(budget) + "s");
        std::printf("%s criterion %zu: %s (%.2fs)%s%s\n", o.pass ? "PASS" : "FAIL", i + 1,
                    criteria[i].name, secs, o.detail.empty() ? "" : " -- ",
                    o.detail.c_str());
        if (!o.pass) ++failures;
    }
    if (failures) std::printf("%d criterion(s) FAILED\n", failures);
    return failures;
}

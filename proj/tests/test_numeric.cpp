#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "qeskc/numeric.hpp"

using namespace qeskc;
using namespace qeskc::numeric;

namespace {

double rel_err(double got, double want) { return std::abs(got - want) / std::abs(want); }

struct Draw {
    ModelParams p;
    gfm::CoeffSolution sol;
    gfm::PotentialSpec ps;
    gfm::WavePair wp;
    double E0, E1;
};

Draw make_draw(int m, double kappa, double L, double calQ) {
    Draw d;
    d.p.kappa = kappa;
    d.p.L = L;
    d.p.m = m;
    d.p.Q = calQ * 2.0 * (L + 1.0) * (L + 2.0);
    d.sol = gfm::solve_coeffs(m);
    d.ps = gfm::assemble_potential(d.sol);
    d.wp = gfm::wavefunctions(d.sol);
    d.E0 = d.ps.E0.eval_double(calQ, kappa, L);
    d.E1 = d.ps.E1.eval_double(calQ, kappa, L);
    return d;
}

std::mt19937 gen(7081u);

// moderate reduced strengths keep the exponential factors tame, so the
// asymptotic finite-difference regime is reached on small study grids
Draw random_draw(int m) {
    std::uniform_real_distribution<double> dk(0.5, 2.0), dq(0.4, 1.2), dL(1.1, 2.2);
    return make_draw(m, dk(gen), dL(gen), dq(gen));
}

}  // namespace

TEST_CASE("box limit: eigenvalues converge to 4 k n^2 at second order") {
    ModelParams p{1.0, 0.0, 1.0, 1};
    auto box = [](double) { return 0.0; };
    for (int n : {500, 1000, 2000}) {
        auto ev = eigensolve_fd(box, p, GridSpec{n, 1e-6}, 3);
        for (int j = 0; j < 3; ++j) {
            double expect = 4.0 * (j + 1) * (j + 1);
            CHECK(rel_err(ev[static_cast<std::size_t>(j)], expect) < 1e-4);
        }
    }
    // order study with a negligible inset, so truncation dominates
    double prev_err = 0.0;
    for (int n : {500, 1000, 2000}) {
        auto ev = eigensolve_fd(box, p, GridSpec{n, 1e-12}, 1);
        double err = std::abs(ev[0] - 4.0);
        if (prev_err > 0.0) {
            double order = std::log2(prev_err / err);
            CHECK(order > 1.7);
            CHECK(order < 2.3);
        }
        prev_err = err;
    }
}

TEST_CASE("closed-form pure-KC levels") {
    ModelParams p = ModelParams::from_dl(1.0, 3, 0, 1.0, 0);
    CHECK(kc_spectrum(p, 0) == doctest::Approx(0.75));
    CHECK(kc_spectrum(p, 1) == doctest::Approx(3.9375));
    CHECK(kc_spectrum(p, 2) == doctest::Approx(8.972222222222).epsilon(1e-10));
    // Q -> 0 limit: free levels k n^2
    ModelParams free = ModelParams::from_dl(1.0, 3, 0, 1e-14, 0);
    CHECK(kc_spectrum(free, 0) == doctest::Approx(1.0));
    CHECK(kc_spectrum(free, 2) == doctest::Approx(9.0));
    // d = 5, l = 1, Q = 2: n = 3, E = -4/36 + 9
    ModelParams p5 = ModelParams::from_dl(1.0, 5, 1, 2.0, 0);
    CHECK(kc_spectrum(p5, 0) == doctest::Approx(8.0 + 8.0 / 9.0).epsilon(1e-12));
}

TEST_CASE("finite differences reproduce the pure-KC spectrum") {
    ModelParams p = ModelParams::from_dl(1.0, 3, 0, 1.0, 0);
    GridSpec g{4000, 1e-6};
    auto ev = eigensolve_kc(p, g, 3);
    for (int j = 0; j < 3; ++j)
        CHECK(rel_err(ev[static_cast<std::size_t>(j)], kc_spectrum(p, j)) < 1e-3);
}

TEST_CASE("finite differences reproduce the first-extension eigenvalues") {
    // kappa = L = Q = 1
    Draw d = make_draw(1, 1.0, 1.0, 1.0 / 12.0);
    CHECK(d.E0 == doctest::Approx(15.9375).epsilon(1e-12));
    CHECK(d.E1 == doctest::Approx(35.972222222222).epsilon(1e-10));
    GridSpec g{4000, 1e-4};
    auto ev = eigensolve_fd(potential_fn(d.ps, d.p), d.p, g, 2);
    CHECK(rel_err(ev[0], d.E0) < 1e-3);
    CHECK(rel_err(ev[1], d.E1) < 1e-3);
}

TEST_CASE("eigensolver tracks exact levels for random members, m <= 7") {
    for (int m = 1; m <= 7; ++m) {
        Draw d = random_draw(m);
        INFO("m=", m, " kappa=", d.p.kappa, " L=", d.p.L, " Q=", d.p.Q);
        GridSpec g{4000, 1e-4};
        auto ev = eigensolve_fd(potential_fn(d.ps, d.p), d.p, g, 2);
        CHECK(rel_err(ev[0], d.E0) < 1e-3);
        CHECK(rel_err(ev[1], d.E1) < 1e-3);
    }
    // refinement shrinks the defect
    for (int m : {2, 5}) {
        Draw d = random_draw(m);
        auto ev = eigensolve_fd(potential_fn(d.ps, d.p), d.p, GridSpec{4000, 1e-4}, 1);
        auto ev2 = eigensolve_fd(potential_fn(d.ps, d.p), d.p, GridSpec{8000, 1e-4}, 1);
        CHECK(std::abs(ev2[0] - d.E0) <= std::abs(ev[0] - d.E0) + 1e-10);
    }
}

TEST_CASE("wavefunction evaluation: limits and domain") {
    Draw d = make_draw(1, 1.0, 1.0, 1.0 / 12.0);
    // psi0 ~ r^{L+1} near zero: the ratio tends to a nonzero constant
    double c1 = eval_wavefunction(d.wp.psi0, d.p, 1e-4) / std::pow(1e-4, d.p.L + 1.0);
    double c2 = eval_wavefunction(d.wp.psi0, d.p, 1e-5) / std::pow(1e-5, d.p.L + 1.0);
    CHECK(c1 != 0.0);
    CHECK(rel_err(c1, c2) < 1e-3);
    // decays to zero toward the equator (a_m > 0)
    double v3 = std::abs(eval_wavefunction(d.wp.psi0, d.p, d.p.r_max() * (1 - 1e-3)));
    double v6 = std::abs(eval_wavefunction(d.wp.psi0, d.p, d.p.r_max() * (1 - 1e-6)));
    double v9 = std::abs(eval_wavefunction(d.wp.psi0, d.p, d.p.r_max() * (1 - 1e-9)));
    CHECK(v6 < v3);
    CHECK(v9 < v6);
    CHECK(v9 < 1e-6);
    CHECK_THROWS_AS(eval_wavefunction(d.wp.psi0, d.p, -0.1), DomainError);
    CHECK_THROWS_AS(eval_wavefunction(d.wp.psi0, d.p, d.p.r_max() + 0.1), DomainError);
}

TEST_CASE("orthogonality, self-overlap, and node counts") {
    for (int m : {1, 2, 3}) {
        Draw d = random_draw(m);
        INFO("m=", m);
        GridSpec g{200001, 1e-5};
        OverlapNodes self = overlap_and_nodes(d.wp.psi0, d.wp.psi0, d.p, g);
        CHECK(self.overlap == doctest::Approx(1.0).epsilon(1e-12));
        OverlapNodes on = overlap_and_nodes(d.wp.psi0, d.wp.psi1, d.p, g);
        CHECK(std::abs(on.overlap) < 1e-6);
        CHECK(on.nodes_a == 0);
        CHECK(on.nodes_b == 1);
    }
}

TEST_CASE("first-extension node location matches the closed form") {
    for (int draw = 0; draw < 3; ++draw) {
        Draw d = random_draw(1);
        double r0 = node_location_m1(d.p);
        double found = find_node(d.wp.psi1, d.p, 1e-6, d.p.r_max() * (1 - 1e-9));
        INFO("kappa=", d.p.kappa, " L=", d.p.L, " Q=", d.p.Q);
        CHECK(std::abs(found - r0) < 1e-6);
    }
    // the reference point kappa = L = Q = 1, node near r = 0.6922
    ModelParams p{1.0, 1.0, 1.0, 1};
    CHECK(node_location_m1(p) ==
          doctest::Approx((1.0 / std::sqrt(2.0)) *
                          std::sqrt(1.0 - 1.0 / std::sqrt(577.0))).epsilon(1e-12));
    Draw ref = make_draw(1, 1.0, 1.0, 1.0 / 12.0);
    double found = find_node(ref.wp.psi1, ref.p, 1e-6, ref.p.r_max() * (1 - 1e-9));
    CHECK(std::abs(found - node_location_m1(p)) < 1e-6);
    CHECK(found == doctest::Approx(0.692).epsilon(1e-3));
}

TEST_CASE("operator residual certifies eigenpairs and rejects shifts") {
    Draw d = make_draw(1, 1.0, 1.0, 1.0 / 12.0);
    auto V = potential_fn(d.ps, d.p);
    // fixed inset well above the spacing keeps the study on one domain
    GridSpec g{1000, 1e-2};
    double res0 = operator_residual(d.wp.psi0, d.E0, V, d.p, g);
    CHECK(res0 < 1e-4);
    // wrong energy leaves an O(1) defect
    double res_shift = operator_residual(d.wp.psi0, d.E0 + 1.0, V, d.p, g);
    CHECK(res_shift > 0.5);
    // m=2 at kappa = L = calQ = 1: E1 = 27
    Draw d2 = make_draw(2, 1.0, 1.0, 1.0);
    CHECK(d2.E1 == doctest::Approx(27.0).epsilon(1e-12));
    double res1 = operator_residual(d2.wp.psi1, d2.E1, potential_fn(d2.ps, d2.p), d2.p, g);
    CHECK(res1 < 1e-3);
}

TEST_CASE("operator residual decreases at second order or better") {
    for (int m : {1, 2, 3}) {
        Draw d = random_draw(m);
        auto V = potential_fn(d.ps, d.p);
        INFO("m=", m, " kappa=", d.p.kappa, " L=", d.p.L, " Q=", d.p.Q);
        for (const auto& [desc, E] :
             {std::pair<const gfm::WaveDescriptor&, double>{d.wp.psi0, d.E0},
              std::pair<const gfm::WaveDescriptor&, double>{d.wp.psi1, d.E1}}) {
            double r500 = operator_residual(desc, E, V, d.p, GridSpec{500, 1e-2});
            double r1000 = operator_residual(desc, E, V, d.p, GridSpec{1000, 1e-2});
            double r2000 = operator_residual(desc, E, V, d.p, GridSpec{2000, 1e-2});
            double order = 0.5 * (std::log2(r500 / r1000) + std::log2(r1000 / r2000));
            INFO("residuals ", r500, " ", r1000, " ", r2000);
            CHECK(order >= 1.9);
        }
    }
}

TEST_CASE("energies rise with the level index across draws") {
    for (int m = 1; m <= 7; ++m) {
        Draw d = random_draw(m);
        CHECK(d.E1 > d.E0);
    }
}

TEST_CASE("grid validation") {
    ModelParams p{1.0, 1.0, 1.0, 1};
    CHECK_THROWS_AS(eigensolve_kc(p, GridSpec{50, 1e-4}, 1), std::invalid_argument);
    CHECK_THROWS_AS(eigensolve_kc(p, GridSpec{500, 0.5}, 1), std::invalid_argument);
    auto bad = [](double r) { return 1.0 / (r - r); };
    CHECK_THROWS_AS(eigensolve_fd(bad, p, GridSpec{500, 1e-4}, 1), NonFiniteV);
}

TEST_CASE("non-normalizable input is rejected") {
    ModelParams p{1.0, 1.0, 1.0, 1};
    gfm::WaveDescriptor blow;  // f^{-900} overflows the norm near the equator
    blow.r_exponent = RatFunc(0);
    blow.f_exponent = RatFunc(-900);
    blow.arcsin_coeff = RatFunc(0);
    CHECK_THROWS_AS(overlap_and_nodes(blow, blow, p, GridSpec{1001, 1e-4}),
                    NormalizationFailure);
}

TEST_CASE("level index must stay positive") {
    ModelParams p{1.0, 0.0, 1.0, 0};
    CHECK_THROWS_AS(kc_spectrum(p, -3), std::invalid_argument);
}

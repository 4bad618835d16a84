#pragma once

#include <functional>
#include <stdexcept>
#include <vector>

#include "qeskc/gfm.hpp"

namespace qeskc {
namespace numeric {

struct NonFiniteV : std::runtime_error {
    NonFiniteV() : std::runtime_error("potential is not finite on the grid") {}
};
struct DomainError : std::domain_error {
    DomainError() : std::domain_error("r outside (0, 1/sqrt(kappa))") {}
};
struct NormalizationFailure : std::runtime_error {
    NormalizationFailure() : std::runtime_error("wavefunction norm is not finite") {}
};

// Numeric instantiation point of a family member. L may be set directly or
// derived from integer (d, l) through L = l + (d-3)/2.
struct ModelParams {
    double kappa = 1.0;
    double L = 0.0;
    double Q = 1.0;  // Coulomb strength; the reduced strength is calQ()
    int m = 0;       // 0 = pure Kepler-Coulomb

    static ModelParams from_dl(double kappa, int d, int l, double Q, int m) {
        if (d < 2 || l < 0) throw std::invalid_argument("require d >= 2, l >= 0");
        return ModelParams{kappa, l + (d - 3) / 2.0, Q, m};
    }
    double calQ() const { return Q / (2.0 * (L + 1.0) * (L + 2.0)); }
    double r_max() const;  // 1/sqrt(kappa)
};

struct GridSpec {
    int n = 4000;          // interior points
    double inset = 1e-4;   // fraction of the x-domain excluded at each end
    void validate() const {
        if (n < 100) throw std::invalid_argument("grid needs n >= 100");
        if (!(inset > 0.0 && inset < 0.1)) throw std::invalid_argument("inset outside (0, 0.1)");
    }
};

// Lowest eigenvalues of the symmetric tridiagonal matrix with the given
// diagonal and constant off-diagonal, by Sturm-count bisection.
std::vector<double> tridiag_lowest(const std::vector<double>& diag, double off, int n_states);

// Lowest n_states eigenvalues of -d^2/dx^2 + V(r(x)) on the inset interval
// of (0, pi/(2 sqrt(kappa))) with Dirichlet ends; r(x) = sin(sqrt(k) x)/sqrt(k).
// The arcsin change of variable makes this exactly the deformed problem for
// phi = f^{1/2} psi. Suited to the extended potentials, whose 1/f^{2m} wall
// closes the domain at the equator.
std::vector<double> eigensolve_fd(const std::function<double(double)>& V_of_r,
                                  const ModelParams& params, const GridSpec& grid, int n_states);

// Pure Kepler-Coulomb oracle. With no wall at the equator the physical
// problem lives on the whole arc chi in (0, pi); solved there with the
// signed f(x) = cos(sqrt(k) x) continuation.
std::vector<double> eigensolve_kc(const ModelParams& params, const GridSpec& grid, int n_states);

// Closed-form pure-KC level: E = -Q^2/(4 n^2) + kappa n^2, n = n_r + L + 1.
double kc_spectrum(const ModelParams& params, int n_r);

// Unnormalized value of a descriptor wavefunction at r in (0, 1/sqrt(kappa)).
double eval_wavefunction(const gfm::WaveDescriptor& desc, const ModelParams& params, double r);

struct OverlapNodes {
    double overlap = 0.0;  // <a|b> / (|a| |b|)
    int nodes_a = 0;
    int nodes_b = 0;
};
OverlapNodes overlap_and_nodes(const gfm::WaveDescriptor& a, const gfm::WaveDescriptor& b,
                               const ModelParams& params, const GridSpec& grid);

// max_x |(-phi'' + (V - E) phi)| / max|phi| with phi = f^{1/2} psi on the x
// grid and phi'' by fourth-order central differences; small values certify
// (psi, E) as an eigenpair.
double operator_residual(const gfm::WaveDescriptor& desc, double E,
                         const std::function<double(double)>& V_of_r, const ModelParams& params,
                         const GridSpec& grid);

// V(r) of a PotentialSpec at numeric parameters.
double potential_value(const gfm::PotentialSpec& ps, const ModelParams& params, double r);
std::function<double(double)> potential_fn(const gfm::PotentialSpec& ps,
                                           const ModelParams& params);

// Zero of psi_1 for the first extension, in closed form.
double node_location_m1(const ModelParams& params);

// Locate a sign change of the descriptor by scan plus bisection.
double find_node(const gfm::WaveDescriptor& desc, const ModelParams& params, double r_lo,
                 double r_hi);

}  // namespace numeric
}  // namespace qeskc

#include "qeskc/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace qeskc {
namespace numeric {

double ModelParams::r_max() const { return 1.0 / std::sqrt(kappa); }

std::vector<double> tridiag_lowest(const std::vector<double>& diag, double off, int n_states) {
    const int n = static_cast<int>(diag.size());
    if (n_states < 1 || n_states > n) throw std::invalid_argument("bad n_states");
    const double off2 = off * off;

    // number of eigenvalues strictly below lambda (Sturm count)
    auto count_below = [&](double lambda) {
        int cnt = 0;
        double qv = 1.0;
        for (int i = 0; i < n; ++i) {
            double num = (i == 0) ? 0.0 : off2;
            double denom = qv;
            if (denom == 0.0) denom = std::abs(off) * 1e-300 + 1e-300;
            qv = diag[static_cast<std::size_t>(i)] - lambda - num / denom;
            if (qv < 0.0) ++cnt;
        }
        return cnt;
    };

    double lo = diag[0], hi = diag[0];
    for (double d : diag) {
        lo = std::min(lo, d - 2.0 * std::abs(off));
        hi = std::max(hi, d + 2.0 * std::abs(off));
    }

    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(n_states));
    for (int j = 0; j < n_states; ++j) {
        double a = lo, b = hi;
        // keep the j-th eigenvalue inside (a, b]
        for (int it = 0; it < 200 && (b - a) > 1e-13 * std::max(1.0, std::abs(a) + std::abs(b));
             ++it) {
            double mid = 0.5 * (a + b);
            if (count_below(mid) >= j + 1)
                b = mid;
            else
                a = mid;
        }
        out.push_back(0.5 * (a + b));
    }
    return out;
}

namespace {

std::vector<double> solve_on_interval(const std::function<double(double)>& V_of_x, double x_lo,
                                      double x_hi, int n, int n_states) {
    const double h = (x_hi - x_lo) / (n + 1);
    std::vector<double> diag(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i) {
        double v = V_of_x(x_lo + i * h);
        if (!std::isfinite(v)) throw NonFiniteV();
        diag[static_cast<std::size_t>(i - 1)] = 2.0 / (h * h) + v;
    }
    return tridiag_lowest(diag, -1.0 / (h * h), n_states);
}

}  // namespace

std::vector<double> eigensolve_fd(const std::function<double(double)>& V_of_r,
                                  const ModelParams& params, const GridSpec& grid, int n_states) {
    grid.validate();
    const double rk = std::sqrt(params.kappa);
    const double X = M_PI / (2.0 * rk);
    auto V_of_x = [&](double x) { return V_of_r(std::sin(rk * x) / rk); };
    return solve_on_interval(V_of_x, grid.inset * X, (1.0 - grid.inset) * X, grid.n, n_states);
}

std::vector<double> eigensolve_kc(const ModelParams& params, const GridSpec& grid, int n_states) {
    grid.validate();
    const double rk = std::sqrt(params.kappa);
    const double X = M_PI / rk;
    const double ang = params.L * (params.L + 1.0);
    auto V_of_x = [&](double x) {
        double chi = rk * x;
        double s = std::sin(chi);
        return params.kappa * ang / (s * s) - params.Q * rk * std::cos(chi) / s;
    };
    return solve_on_interval(V_of_x, grid.inset * X, (1.0 - grid.inset) * X, grid.n, n_states);
}

double kc_spectrum(const ModelParams& params, int n_r) {
    double n = n_r + params.L + 1.0;
    if (n <= 0) throw std::invalid_argument("level index n must be positive");
    return -params.Q * params.Q / (4.0 * n * n) + params.kappa * n * n;
}

double eval_wavefunction(const gfm::WaveDescriptor& desc, const ModelParams& params, double r) {
    if (!(r > 0.0 && r < params.r_max())) throw DomainError();
    const double q = params.calQ();
    const double k = params.kappa;
    const double L = params.L;
    const double rk = std::sqrt(k);
    const double f = std::sqrt(std::max(0.0, 1.0 - k * r * r));

    double log_psi = desc.r_exponent.eval_double(q, k, L) * std::log(r) +
                     desc.f_exponent.eval_double(q, k, L) * std::log(f) +
                     desc.arcsin_coeff.eval_double(q, k, L) * std::asin(rk * r) / rk;
    double f2j = 1.0;
    for (const RatFunc& u : desc.inv_f_even) {
        f2j *= f * f;
        log_psi += u.eval_double(q, k, L) / f2j;
    }
    double f2jm1 = f;
    for (const RatFunc& v : desc.r_over_f_odd) {
        log_psi += v.eval_double(q, k, L) * r / f2jm1;
        f2jm1 *= f * f;
    }

    double pref = 1.0;
    if (desc.prefactor) {
        pref = 0.0;
        for (const auto& [key, c] : desc.prefactor->terms())
            pref += c.eval_double(q, k, L) * std::pow(r, key.first) * std::pow(f, key.second);
    }
    return pref * std::exp(log_psi);
}

OverlapNodes overlap_and_nodes(const gfm::WaveDescriptor& a, const gfm::WaveDescriptor& b,
                               const ModelParams& params, const GridSpec& grid) {
    grid.validate();
    const double rk = std::sqrt(params.kappa);
    const double X = M_PI / (2.0 * rk);
    const double x_lo = grid.inset * X, x_hi = (1.0 - grid.inset) * X;

    // composite Simpson in x; the r measure gives the extra factor f
    int npts = grid.n | 1;  // odd
    const double h = (x_hi - x_lo) / (npts - 1);
    double sab = 0.0, saa = 0.0, sbb = 0.0;
    for (int i = 0; i < npts; ++i) {
        double x = x_lo + i * h;
        double r = std::sin(rk * x) / rk;
        double f = std::cos(rk * x);
        double va = eval_wavefunction(a, params, r);
        double vb = eval_wavefunction(b, params, r);
        double w = (i == 0 || i == npts - 1) ? 1.0 : (i % 2 ? 4.0 : 2.0);
        sab += w * va * vb * f;
        saa += w * va * va * f;
        sbb += w * vb * vb * f;
    }
    if (!(std::isfinite(saa) && std::isfinite(sbb)) || saa <= 0.0 || sbb <= 0.0)
        throw NormalizationFailure();

    OverlapNodes res;
    res.overlap = sab / std::sqrt(saa * sbb);

    // node counting by sign change on a dense r grid with a relative floor
    auto count_nodes = [&](const gfm::WaveDescriptor& d) {
        const int N = 100000;
        const double r_lo = grid.inset * params.r_max();
        const double r_hi = (1.0 - grid.inset) * params.r_max();
        std::vector<double> vals(static_cast<std::size_t>(N));
        double vmax = 0.0;
        for (int i = 0; i < N; ++i) {
            double r = r_lo + (r_hi - r_lo) * i / (N - 1.0);
            vals[static_cast<std::size_t>(i)] = eval_wavefunction(d, params, r);
            vmax = std::max(vmax, std::abs(vals[static_cast<std::size_t>(i)]));
        }
        const double floor = 1e-12 * vmax;
        int nodes = 0;
        double prev = 0.0;
        for (double v : vals) {
            if (std::abs(v) <= floor) continue;
            if (prev != 0.0 && ((prev > 0.0) != (v > 0.0))) ++nodes;
            prev = v;
        }
        return nodes;
    };
    res.nodes_a = count_nodes(a);
    res.nodes_b = count_nodes(b);
    return res;
}

double operator_residual(const gfm::WaveDescriptor& desc, double E,
                         const std::function<double(double)>& V_of_r, const ModelParams& params,
                         const GridSpec& grid) {
    grid.validate();
    const double rk = std::sqrt(params.kappa);
    const double X = M_PI / (2.0 * rk);
    const double x_lo = grid.inset * X, x_hi = (1.0 - grid.inset) * X;
    const int n = grid.n;
    const double h = (x_hi - x_lo) / (n - 1);

    std::vector<double> phi(static_cast<std::size_t>(n));
    std::vector<double> v(static_cast<std::size_t>(n));
    double phimax = 0.0;
    for (int i = 0; i < n; ++i) {
        double x = x_lo + i * h;
        double r = std::sin(rk * x) / rk;
        double f = std::cos(rk * x);
        phi[static_cast<std::size_t>(i)] = std::sqrt(f) * eval_wavefunction(desc, params, r);
        v[static_cast<std::size_t>(i)] = V_of_r(r);
        phimax = std::max(phimax, std::abs(phi[static_cast<std::size_t>(i)]));
    }
    if (phimax == 0.0) throw NormalizationFailure();

    double worst = 0.0;
    for (int i = 2; i < n - 2; ++i) {
        auto p = [&](int j) { return phi[static_cast<std::size_t>(j)]; };
        double d2 = (-p(i - 2) + 16.0 * p(i - 1) - 30.0 * p(i) + 16.0 * p(i + 1) - p(i + 2)) /
                    (12.0 * h * h);
        double res = -d2 + (v[static_cast<std::size_t>(i)] - E) * p(i);
        worst = std::max(worst, std::abs(res));
    }
    return worst / phimax;
}

double potential_value(const gfm::PotentialSpec& ps, const ModelParams& params, double r) {
    if (!(r > 0.0 && r < params.r_max())) throw DomainError();
    const double q = params.calQ();
    const double k = params.kappa;
    const double L = params.L;
    const double f = std::sqrt(std::max(0.0, 1.0 - k * r * r));
    double val = ps.angular.eval_double(q, k, L) / (r * r) -
                 ps.coulomb_Q.eval_double(q, k, L) * f / r;
    double fpow = 1.0;
    for (int j = 1; j <= ps.m; ++j) {
        fpow *= f;  // f^{2j-1}
        val += k * ps.B[static_cast<std::size_t>(2 * j - 2)].eval_double(q, k, L) * r / fpow;
        fpow *= f;  // f^{2j}
        val += k * ps.B[static_cast<std::size_t>(2 * j - 1)].eval_double(q, k, L) / fpow;
    }
    return val;
}

std::function<double(double)> potential_fn(const gfm::PotentialSpec& ps,
                                           const ModelParams& params) {
    return [ps, params](double r) { return potential_value(ps, params, r); };
}

double node_location_m1(const ModelParams& params) {
    const double k = params.kappa;
    const double Q = params.Q;
    const double a = (params.L + 1.0) * (params.L + 2.0);
    return std::sqrt((1.0 - Q / std::sqrt(Q * Q + 16.0 * k * a * a)) / (2.0 * k));
}

double find_node(const gfm::WaveDescriptor& desc, const ModelParams& params, double r_lo,
                 double r_hi) {
    const int N = 20000;
    double prev_r = r_lo;
    double prev_v = eval_wavefunction(desc, params, r_lo);
    for (int i = 1; i < N; ++i) {
        double r = r_lo + (r_hi - r_lo) * i / (N - 1.0);
        double v2 = eval_wavefunction(desc, params, r);
        if (prev_v != 0.0 && v2 != 0.0 && (prev_v > 0.0) != (v2 > 0.0)) {
            double a = prev_r, b = r;
            for (int it = 0; it < 200 && (b - a) > 1e-15; ++it) {
                double mid = 0.5 * (a + b);
                double vm = eval_wavefunction(desc, params, mid);
                if (vm == 0.0) return mid;
                if ((vm > 0.0) == (prev_v > 0.0))
                    a = mid;
                else
                    b = mid;
            }
            return 0.5 * (a + b);
        }
        prev_r = r;
        prev_v = v2;
    }
    throw std::runtime_error("no sign change located in the given range");
}

}  // namespace numeric
}  // namespace qeskc

#include "qeskc/cli.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <future>
#include <sstream>
#include <vector>

#include "qeskc/cdsi.hpp"
#include "qeskc/gfm.hpp"
#include "qeskc/numeric.hpp"

namespace qeskc {
namespace cli {

namespace {

using json = nlohmann::ordered_json;

struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& w) : std::runtime_error(w) {}
};
struct VerificationFailure : std::runtime_error {
    explicit VerificationFailure(const std::string& w) : std::runtime_error(w) {}
};

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

json poly_json(const MultiPoly& p) {
    json j = json::object();
    if (p.is_zero()) {
        j["0"] = "0";
        return j;
    }
    for (const auto& [m, c] : p.terms()) j[m.str()] = c.get_str();
    return j;
}

json ratfunc_json(const RatFunc& f) {
    auto [num, den] = f.integer_pair();
    json j;
    j["num"] = poly_json(num);
    j["den"] = poly_json(den);
    return j;
}

int thread_budget() {
    const char* env = std::getenv("QESKC_THREADS");
    if (!env) return 1;
    int v = std::atoi(env);
    return v > 0 ? v : 1;
}

numeric::ModelParams params_from(const RunConfig& cfg, bool require_strength) {
    numeric::ModelParams p;
    p.m = cfg.m;
    p.kappa = cfg.kappa.value_or(1.0);
    if (p.kappa <= 0.0) throw ConfigError("kappa must be positive");
    if (cfg.L && (cfg.d || cfg.l)) throw ConfigError("give either L or (d, l), not both");
    if (cfg.d.has_value() != cfg.l.has_value()) throw ConfigError("d and l go together");
    if (cfg.L)
        p.L = *cfg.L;
    else if (cfg.d)
        p.L = *cfg.l + (*cfg.d - 3) / 2.0;
    else
        throw ConfigError("angular parameter missing: give --L or --d with --l");
    if (p.L < -0.5) throw ConfigError("L must be >= -1/2");
    if (cfg.Q && cfg.calQ) throw ConfigError("give either Q or calQ, not both");
    if (cfg.Q)
        p.Q = *cfg.Q;
    else if (cfg.calQ)
        p.Q = *cfg.calQ * 2.0 * (p.L + 1.0) * (p.L + 2.0);
    else if (require_strength)
        throw ConfigError("Coulomb strength missing: give --Q or --calQ");
    if (p.Q <= 0.0) throw ConfigError("Q must be positive");
    return p;
}

void emit(const RunConfig& cfg, std::ostream& out, const std::string& text) {
    if (cfg.out_path.empty()) {
        out << text;
        return;
    }
    std::ofstream f(cfg.out_path, std::ios::binary);
    if (!f) throw ConfigError("cannot open output file: " + cfg.out_path);
    f << text;
}

int require_m(const RunConfig& cfg, int lo) {
    if (cfg.m < lo) throw ConfigError("command needs --m >= " + std::to_string(lo));
    return cfg.m;
}

// ---- subcommands -------------------------------------------------------

void cmd_coeffs(const RunConfig& cfg, std::ostream& out) {
    if (cfg.format != "json") throw ConfigError("coeffs emits json only");
    int m = require_m(cfg, 1);
    gfm::CoeffSolution sol = gfm::solve_coeffs(m);
    json j;
    j["command"] = "coeffs";
    j["m"] = m;
    j["a"] = json::array();
    for (const auto& ai : sol.a) j["a"].push_back(ratfunc_json(ai));
    emit(cfg, out, j.dump(2) + "\n");
}

void cmd_potential(const RunConfig& cfg, std::ostream& out) {
    if (cfg.format != "json") throw ConfigError("potential emits json only");
    int m = require_m(cfg, 1);
    gfm::CoeffSolution sol = gfm::solve_coeffs(m);
    gfm::PotentialSpec ps = gfm::assemble_potential(sol);
    json j;
    j["command"] = "potential";
    j["m"] = m;
    j["angular"] = ratfunc_json(ps.angular);
    j["coulomb_Q"] = ratfunc_json(ps.coulomb_Q);
    j["B"] = json::array();
    for (const auto& b : ps.B) j["B"].push_back(ratfunc_json(b));
    j["E0"] = ratfunc_json(ps.E0);
    j["E1"] = ratfunc_json(ps.E1);

    if (cfg.kappa || cfg.Q || cfg.calQ || cfg.L || cfg.d) {
        numeric::ModelParams p = params_from(cfg, true);
        double q = p.calQ();
        json num;
        num["kappa"] = fmt_double(p.kappa);
        num["L"] = fmt_double(p.L);
        num["Q"] = fmt_double(p.Q);
        num["calQ"] = fmt_double(q);
        json bs = json::array();
        for (const auto& b : ps.B) bs.push_back(fmt_double(b.eval_double(q, p.kappa, p.L)));
        num["B"] = bs;
        num["E0"] = fmt_double(ps.E0.eval_double(q, p.kappa, p.L));
        num["E1"] = fmt_double(ps.E1.eval_double(q, p.kappa, p.L));
        double am = sol.a.back().eval_double(q, p.kappa, p.L);
        double b2m = ps.B.back().eval_double(q, p.kappa, p.L);
        num["a_m_positive"] = (am > 0.0);
        num["B_2m_positive"] = (b2m > 0.0);
        if (am > 0.0 && !(b2m > 0.0))
            throw VerificationFailure("B_2m not positive although a_m is");
        j["numeric"] = num;
    }
    emit(cfg, out, j.dump(2) + "\n");
}

std::string verify_one(int m) {
    gfm::CoeffSolution sol = gfm::solve_coeffs(m);
    gfm::IdentityReport rep = gfm::verify_identities(sol);
    RatFunc red = gfm::redundancy_residual(sol);
    std::ostringstream line;
    line << "m=" << m << ": compatibility " << (rep.compatibility.is_zero() ? "OK" : "FAIL")
         << ", riccati " << (rep.riccati.is_zero() ? "OK" : "FAIL") << ", partner "
         << (rep.partner.is_zero() ? "OK" : "FAIL") << ", redundancy "
         << (red.is_zero() ? "OK" : "FAIL");
    if (!rep.all_zero() || !red.is_zero()) line << "  <-- FAILURE";
    return line.str();
}

void cmd_verify(const RunConfig& cfg, std::ostream& out) {
    int lo = cfg.m_min > 0 ? cfg.m_min : 1;
    int hi = cfg.m_max > 0 ? cfg.m_max : (cfg.m > 0 ? cfg.m : 7);
    if (lo > hi) throw ConfigError("empty m range");

    std::vector<std::string> lines(static_cast<std::size_t>(hi - lo + 1));
    int budget = thread_budget();
    if (budget <= 1) {
        for (int m = lo; m <= hi; ++m) lines[static_cast<std::size_t>(m - lo)] = verify_one(m);
    } else {
        std::vector<std::future<std::string>> futs;
        futs.reserve(lines.size());
        for (int m = lo; m <= hi; ++m)
            futs.push_back(std::async(std::launch::async, verify_one, m));
        for (std::size_t i = 0; i < futs.size(); ++i) lines[i] = futs[i].get();
    }
    std::ostringstream all;
    bool failed = false;
    for (const auto& ln : lines) {
        all << ln << "\n";
        if (ln.find("FAIL") != std::string::npos) failed = true;
    }
    if (failed) {
        emit(cfg, out, all.str());
        throw VerificationFailure("identity suite failed");
    }
    all << "all residuals zero for m=" << lo << ".." << hi << "\n";
    emit(cfg, out, all.str());
}

void cmd_conjecture(const RunConfig& cfg, std::ostream& out) {
    if (cfg.format != "json") throw ConfigError("conjecture emits json only");
    int lo = cfg.m_min > 0 ? cfg.m_min : (cfg.m > 0 ? cfg.m : 2);
    int hi = cfg.m_max > 0 ? cfg.m_max : (cfg.m > 0 ? cfg.m : 7);
    if (lo < 2) throw ConfigError("structural check needs m >= 2");
    json j;
    j["command"] = "conjecture";
    j["reports"] = json::array();
    bool ok = true;
    for (int m = lo; m <= hi; ++m) {
        gfm::ConjectureReport rep = gfm::check_conjecture(m);
        json r;
        r["m"] = m;
        r["factors"] = json::array();
        for (const auto& c : rep.a0_factors) r["factors"].push_back(c.get_str());
        r["denominator_b"] = json::array();
        for (const auto& b : rep.denominator_b) r["denominator_b"].push_back(b.get_str());
        r["series_c"] = json::array();
        for (const auto& row : rep.odd_c) {
            json rr = json::array();
            for (const auto& c : row) rr.push_back(c.get_str());
            r["series_c"].push_back(rr);
        }
        r["factors_ok"] = rep.factors_ok;
        r["shared_denominator_ok"] = rep.shared_denominator_ok;
        r["prefactors_ok"] = rep.prefactors_ok;
        r["positivity_ok"] = rep.positivity_ok;
        r["a_m_positive_ok"] = rep.a_m_positive_ok;
        r["pass"] = rep.all_ok();
        if (m == 6) {
            gfm::M6DenominatorAudit audit = gfm::audit_m6_denominator();
            json a;
            a["exact_k2q2_coefficient"] = audit.exact_coefficient.get_str();
            a["coefficient_table_919_matches"] = audit.coefficient_table_matches;
            a["energy_table_912_matches"] = audit.energy_table_matches;
            a["discrepancy_detected"] = audit.discrepancy_detected();
            r["m6_denominator_audit"] = a;
        }
        ok = ok && rep.all_ok();
        j["reports"].push_back(r);
    }
    j["pass"] = ok;
    emit(cfg, out, j.dump(2) + "\n");
    if (!ok) throw VerificationFailure("structural check failed");
}

void cmd_cdsi_check(const RunConfig& cfg, std::ostream& out) {
    int hi = cfg.m_max > 0 ? cfg.m_max : 3;
    if (hi > 3) throw ConfigError("route crosscheck covers m = 1..3");
    std::ostringstream all;
    bool ok = true;
    for (int m = 1; m <= hi; ++m) {
        cdsi::CrosscheckReport rep = cdsi::crosscheck_gfm(m);
        all << "m=" << m << ": " << (rep.all_ok() ? "routes agree" : rep.detail) << "\n";
        ok = ok && rep.all_ok();
    }
    cdsi::PartnerCheck p1 = cdsi::partner_relation(1);
    cdsi::PartnerCheck p2 = cdsi::partner_relation(2);
    bool kc = cdsi::kc_shape_invariance();
    all << "partner translation m=1: " << (p1.all_ok() ? "OK" : "FAIL") << "\n";
    all << "partner translation m=2: " << (p2.all_ok() ? "OK" : "FAIL") << "\n";
    all << "pure-KC shape invariance: " << (kc ? "OK" : "FAIL") << "\n";
    ok = ok && p1.all_ok() && p2.all_ok() && kc;
    emit(cfg, out, all.str());
    if (!ok) throw VerificationFailure("route crosscheck failed");
}

void cmd_eigensolve(const RunConfig& cfg, std::ostream& out) {
    if (cfg.m < 0) throw ConfigError("eigensolve needs --m >= 0");
    numeric::ModelParams p = params_from(cfg, true);
    numeric::GridSpec grid{cfg.grid_n, cfg.grid_inset};
    int states = std::max(1, cfg.states);

    std::vector<double> exact, num;
    if (cfg.m == 0) {
        for (int nr = 0; nr < states; ++nr) exact.push_back(numeric::kc_spectrum(p, nr));
        num = numeric::eigensolve_kc(p, grid, states);
    } else {
        gfm::CoeffSolution sol = gfm::solve_coeffs(cfg.m);
        gfm::PotentialSpec ps = gfm::assemble_potential(sol);
        double q = p.calQ();
        exact = {ps.E0.eval_double(q, p.kappa, p.L), ps.E1.eval_double(q, p.kappa, p.L)};
        states = std::max(states, 2);
        num = numeric::eigensolve_fd(numeric::potential_fn(ps, p), p, grid, states);
    }

    std::size_t rows = std::min(exact.size(), num.size());
    bool ok = true;
    if (cfg.format == "csv") {
        std::ostringstream csv;
        csv << "level,exact,numeric,rel_err\n";
        for (std::size_t i = 0; i < rows; ++i) {
            double rel = std::abs(num[i] - exact[i]) / std::max(1e-300, std::abs(exact[i]));
            ok = ok && rel < 1e-3;
            csv << i << "," << fmt_double(exact[i]) << "," << fmt_double(num[i]) << ","
                << fmt_double(rel) << "\n";
        }
        emit(cfg, out, csv.str());
    } else {
        json j;
        j["command"] = "eigensolve";
        j["m"] = cfg.m;
        j["levels"] = json::array();
        for (std::size_t i = 0; i < rows; ++i) {
            double rel = std::abs(num[i] - exact[i]) / std::max(1e-300, std::abs(exact[i]));
            ok = ok && rel < 1e-3;
            json row;
            row["level"] = i;
            row["exact"] = fmt_double(exact[i]);
            row["numeric"] = fmt_double(num[i]);
            row["rel_err"] = fmt_double(rel);
            j["levels"].push_back(row);
        }
        j["pass"] = ok;
        emit(cfg, out, j.dump(2) + "\n");
    }
    if (!ok) throw VerificationFailure("numeric eigenvalues drift beyond 1e-3");
}

void cmd_plotdata(const RunConfig& cfg, std::ostream& out) {
    if (cfg.format != "csv") throw ConfigError("plotdata emits csv only");
    // the reference figure setting: kappa = L = Q = 1, first extension
    numeric::ModelParams p{1.0, 1.0, 1.0, 1};
    gfm::CoeffSolution sol = gfm::solve_coeffs(1);
    gfm::PotentialSpec ps = gfm::assemble_potential(sol);
    gfm::WavePair wp = gfm::wavefunctions(sol);
    const double q = p.calQ();
    const double eps = cfg.grid_inset;
    const int npts = 1000;

    std::ostringstream pot, wav;
    pot << "r,V_extended,V_KC\n";
    wav << "r,psi0,psi1\n";
    for (int i = 0; i < npts; ++i) {
        double r = p.r_max() * (eps + (1.0 - 2.0 * eps) * i / (npts - 1.0));
        double f = std::sqrt(1.0 - p.kappa * r * r);
        double v_ext = numeric::potential_value(ps, p, r);
        double v_kc = ps.angular.eval_double(q, p.kappa, p.L) / (r * r) -
                      ps.coulomb_Q.eval_double(q, p.kappa, p.L) * f / r;
        pot << fmt_double(r) << "," << fmt_double(v_ext) << "," << fmt_double(v_kc) << "\n";
        wav << fmt_double(r) << ","
            << fmt_double(numeric::eval_wavefunction(wp.psi0, p, r)) << ","
            << fmt_double(numeric::eval_wavefunction(wp.psi1, p, r)) << "\n";
    }

    std::string prefix = cfg.out_path.empty() ? "plot" : cfg.out_path;
    std::string f1 = prefix + "_potential.csv";
    std::string f2 = prefix + "_wavefunctions.csv";
    std::ofstream o1(f1, std::ios::binary), o2(f2, std::ios::binary);
    if (!o1 || !o2) throw ConfigError("cannot open plotdata output files");
    o1 << pot.str();
    o2 << wav.str();
    out << "wrote " << f1 << " and " << f2 << "\n";
}

}  // namespace

int run_command(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        if (cfg.format != "json" && cfg.format != "csv")
            throw ConfigError("format must be json or csv");
        if (cfg.command == "coeffs")
            cmd_coeffs(cfg, out);
        else if (cfg.command == "potential")
            cmd_potential(cfg, out);
        else if (cfg.command == "verify")
            cmd_verify(cfg, out);
        else if (cfg.command == "conjecture")
            cmd_conjecture(cfg, out);
        else if (cfg.command == "cdsi-check")
            cmd_cdsi_check(cfg, out);
        else if (cfg.command == "eigensolve")
            cmd_eigensolve(cfg, out);
        else if (cfg.command == "plotdata")
            cmd_plotdata(cfg, out);
        else
            throw ConfigError("unknown command: " + cfg.command);
        return 0;
    } catch (const ConfigError& e) {
        err << "{\"error\":\"config\",\"message\":" << json(e.what()).dump() << "}\n";
        return 2;
    } catch (const VerificationFailure& e) {
        err << "{\"error\":\"verification\",\"message\":" << json(e.what()).dump() << "}\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        err << "{\"error\":\"config\",\"message\":" << json(e.what()).dump() << "}\n";
        return 2;
    } catch (const std::exception& e) {
        err << "{\"error\":\"internal\",\"message\":" << json(e.what()).dump() << "}\n";
        return 1;
    }
}

}  // namespace cli
}  // namespace qeskc

#pragma once

#include <optional>
#include <ostream>
#include <string>

namespace qeskc {
namespace cli {

struct RunConfig {
    std::string command;  // coeffs | potential | verify | conjecture |
                          // cdsi-check | eigensolve | plotdata
    int m = -1;
    int m_min = -1, m_max = -1;
    std::optional<double> kappa;
    std::optional<double> Q;     // mutually exclusive with calQ
    std::optional<double> calQ;  // calQ = Q / (2(L+1)(L+2))
    std::optional<double> L;     // mutually exclusive with (d, l)
    std::optional<int> d, l;
    int grid_n = 4000;
    double grid_inset = 1e-4;
    int states = 2;
    std::string out_path;  // empty = stdout (plotdata uses it as a prefix)
    std::string format = "json";  // json | csv
};

// Exit codes: 0 success, 1 verification failure, 2 invalid configuration.
// Reports go to `out`; machine-readable errors go to `err` as one JSON line.
int run_command(const RunConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace cli
}  // namespace qeskc

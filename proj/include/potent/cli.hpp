#ifndef POTENT_CLI_HPP
#define POTENT_CLI_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "potent/output.hpp"

namespace potent {

// Exit codes: 0 success, 1 usage/parse error, 2 domain infeasibility,
// 3 numeric non-convergence.

int cmd_plot_gpd(const std::vector<double>& gammas, double sigma, double x_max, int points,
                 const OutputSpec& out);

int cmd_maxent(double q, double mu, double theta, const OutputSpec& out);

int cmd_excess(const std::string& model_spec, const std::vector<double>& u_list, double q,
               bool normalized, double rel_tol, const OutputSpec& out);

int cmd_sweep(const std::string& model_spec, double u_min, double u_max, int points,
              const std::vector<std::string>& metrics, bool normalized, double rel_tol,
              const OutputSpec& out);

int cmd_stability(double gamma, double sigma, double u, const OutputSpec& out);

/// Parses argv and dispatches to the commands above, mapping exceptions to
/// exit codes.
int run_cli(int argc, const char* const* argv);

}  // namespace potent

#endif  // POTENT_CLI_HPP

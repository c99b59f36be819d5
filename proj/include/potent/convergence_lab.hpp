#ifndef POTENT_CONVERGENCE_LAB_HPP
#define POTENT_CONVERGENCE_LAB_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "potent/excess.hpp"
#include "potent/maxent.hpp"
#include "potent/survival_models.hpp"

namespace potent {

struct SweepMetrics {
  bool functionals{true};
  bool entropy_gap{false};
  bool bregman{false};
  bool sup_norm{false};
};

/// A threshold sweep: per u, the excess curve (normalized per tail class by
/// default) is compared against its asymptotic predictions and max-entropy
/// target. The entropy order on the power-tail branch defaults to the
/// matching order 1 - 1/a (or 1 when a <= 1); the light-tail branch always
/// uses q = 1.
struct SweepConfig {
  SurvivalModel model;
  std::vector<double> u_grid;  // strictly increasing, inside the support
  std::optional<double> q{};
  bool normalized{true};
  SweepMetrics metrics{};
  std::vector<double> sup_grid{};  // empty selects the default grid
  double rel_tol{kDefaultRelTol};
};

struct FunctionalValues {
  std::optional<double> qnorm_q;
  std::optional<double> onenorm;
  std::optional<double> moment;
  std::optional<double> shannon;
};

/// One row of a sweep. Divergent integrals appear as +infinity; fields with
/// no defined reference stay unset. entropy_gap and bregman carry their
/// computed signs (positivity is a property under test, not enforced here).
struct FunctionalReport {
  double u;
  double q;
  FunctionalValues computed;
  AsymptoticPrediction predicted;
  std::optional<ConstraintValues> target;  // normalized sweeps with a valid target only
  FunctionalValues rel_err_predicted;
  FunctionalValues rel_err_target;
  std::optional<double> entropy_gap;  // H_q(G*) - H_q(curve)
  std::optional<double> bregman;      // B(curve, G*)
  std::optional<double> sup_norm;     // sup distance to the target GPD survival
};

/// Rows are computed concurrently and returned in u order.
std::vector<FunctionalReport> run_sweep(const SweepConfig& config);

/// The default sup-norm evaluation grid on [0, 100].
std::vector<double> default_sup_grid();

/// splitmix64 output function; used in counter mode for reproducible streams.
std::uint64_t splitmix64(std::uint64_t x);

/// i-th uniform draw in (0, 1] of the stream identified by key.
double uniform_from_counter(std::uint64_t key, std::uint64_t i);

struct EmpiricalReport {
  std::string model;
  double u;
  std::uint64_t n;
  std::uint64_t exceedances;
  std::uint64_t seed;
  double onenorm;
  double onenorm_se;
  double moment;
  double moment_se;
};

/// Inverse-transform sampling cross-check: draws n samples, keeps excesses
/// over u, normalizes them per tail class, and integrates the empirical
/// survival step function in closed form (onenorm = mean z, moment =
/// mean z^2 / 2). Deterministic for a fixed seed. Throws
/// InsufficientDataError below 50 exceedances.
EmpiricalReport monte_carlo_check(const SurvivalModel& model, double u, std::uint64_t n,
                                  std::uint64_t seed);

/// CSV rendering of a report (with the generator documented in the header);
/// byte-identical across runs with equal inputs.
std::string to_csv(const EmpiricalReport& report);

}  // namespace potent

#endif  // POTENT_CONVERGENCE_LAB_HPP

#ifndef POTENT_SURVIVAL_MODELS_HPP
#define POTENT_SURVIVAL_MODELS_HPP

#include <functional>
#include <string>
#include <variant>
#include <vector>

namespace potent {

/// Shape/scale pair of a Generalized Pareto survival law
/// S(x) = (1 + gamma x / sigma)^(-1/gamma), gamma = 0 meaning exp(-x/sigma).
struct GpdParams {
  GpdParams(double gamma, double sigma);
  double gamma;  // shape, >= 0
  double sigma;  // scale, > 0
};

double gpd_survival(const GpdParams& params, double x);
double gpd_density(const GpdParams& params, double x);

/// Inverse of the survival function: x with S(x) = p, for p in (0, 1].
double gpd_quantile(const GpdParams& params, double p);

/// Power tail S(z) = z^-a l(z), with l slowly varying.
/// power_shift is an offset c such that S(x) is (nearly) proportional to
/// (x + c)^-a; the excess normalizer g(u) = u + c stays equivalent to u
/// but is exact for shifted pure-power laws (pareto, gpd).
struct FrechetTail {
  double a;
  std::function<double(double)> slowly_varying;
  double l_limit;
  double power_shift{0.0};
};

/// Stretched-exponential tail S(z) ~ exp(-z^xi l(z)), with l slowly varying.
struct WeibullTail {
  double xi;
  std::function<double(double)> slowly_varying;
  double l_limit;
};

using TailClass = std::variant<FrechetTail, WeibullTail>;

/// A named distribution on [0, inf): survival S with S(0) = 1, density,
/// quantile (inverse survival), and the tail-domain classification.
/// Immutable after construction; all members are pure functions.
struct SurvivalModel {
  std::string name;
  std::function<double(double)> survival;
  std::function<double(double)> density;
  std::function<double(double)> quantile;
  TailClass tail;
};

/// Catalog factory. Supported names and parameters:
///   gpd: gamma >= 0, sigma > 0
///   half_cauchy: none;   S(x) = 1 - (2/pi) atan(x)
///   pareto: a > 0;       S(x) = (1+x)^-a
///   half_gaussian: none; S(x) = erfc(x / sqrt(2))
///   gamma: a > 0, b > 0; S(x) = Gamma(a, bx) / Gamma(a)
SurvivalModel make_model(const std::string& name, const std::vector<double>& params);

/// Parses "name" or "name:p1,p2" into a catalog model.
SurvivalModel parse_model_spec(const std::string& spec);

}  // namespace potent

#endif  // POTENT_SURVIVAL_MODELS_HPP

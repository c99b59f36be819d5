#ifndef POTENT_EXCESS_HPP
#define POTENT_EXCESS_HPP

#include <optional>

#include "potent/maxent.hpp"
#include "potent/quadrature.hpp"
#include "potent/survival_models.hpp"

namespace potent {

/// How the excess variable X - u | X > u is rescaled.
///   none:          the raw excess, survival z -> S(z + u) / S(u).
///   frechet_scale: Y = X / g(u) with g(u) = u + power_shift (equivalent to
///                  u, exact for shifted pure-power laws); survival
///                  z -> S(g(u) z + u) / S(u).
///   weibull_scale: Y = c(u) X with c(u) = u^(xi-1) l(u), l evaluated through
///                  the model's slowly varying handle; survival
///                  z -> S(z / c(u) + u) / S(u).
enum class Normalization { none, frechet_scale, weibull_scale };

struct ExcessSpec {
  SurvivalModel base;
  double u;
  Normalization normalization{Normalization::none};
  std::optional<double> frechet_g{};  // per-call override of g(u)
};

/// The (normalized) excess survival curve. Its value at z = 0 is exactly 1.
/// Throws std::domain_error when the threshold lies outside the support
/// (u <= 0 or S(u) = 0), std::invalid_argument when the normalization does
/// not match the model's tail class.
Curve excess_survival(const ExcessSpec& spec);

/// Asymptotic functional values of an excess survival curve. A field is
/// +infinity when the corresponding integral diverges (e.g. the first
/// moment for tail index a <= 2) and unset when no prediction applies.
struct AsymptoticPrediction {
  std::optional<double> qnorm_q;
  std::optional<double> onenorm;
  std::optional<double> moment;
  std::optional<double> shannon;
};

/// Raw-excess predictions for a power tail of index a:
/// qnorm_q ~ u/(aq-1), onenorm ~ u/(a-1), moment ~ u^2/((a-1)(a-2)).
AsymptoticPrediction predict_frechet(double a, double q, double u);

/// Normalized (u-free) limits: 1/(aq-1), 1/(a-1), 1/((a-1)(a-2)).
AsymptoticPrediction predict_frechet_normalized(double a, double q);

/// Raw-excess predictions for a stretched-exponential tail of index xi,
/// with l evaluated at the threshold:
/// shannon = onenorm ~ u^(1-xi)/(xi l), moment ~ u^(2(1-xi))/(xi l)^2.
AsymptoticPrediction predict_weibull(double xi, double l_at_u, double u);

/// Normalized limits: shannon = onenorm = 1/xi, moment = 1/xi^2.
AsymptoticPrediction predict_weibull_normalized(double xi);

/// The max-entropy solution matched by normalized excesses of a power tail:
/// q = 1 - 1/a with alpha = beta = 1. Requires a > 2 (so q > 1/2).
MaxEntSolution maxent_target_frechet(double a);

/// The max-entropy solution matched by normalized excesses of a
/// stretched-exponential tail: q = 1, alpha = 1, beta = xi.
MaxEntSolution maxent_target_gumbel(double xi);

/// Thresholding a GPD yields a GPD with the same shape and rescaled scale
/// sigma' = sigma + gamma u; the exponential case is invariant.
GpdParams gpd_stability(const GpdParams& params, double u);

}  // namespace potent

#endif  // POTENT_EXCESS_HPP

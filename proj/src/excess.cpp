#include "potent/excess.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace potent {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

Curve excess_survival(const ExcessSpec& spec) {
  if (!(spec.u > 0.0)) throw std::domain_error("excess_survival: threshold must be > 0");
  const double su = spec.base.survival(spec.u);
  if (!(su > 0.0)) {
    throw std::domain_error("excess_survival: threshold outside the model support");
  }

  double scale = 1.0;  // curve is z -> S(scale z + u) / S(u)
  std::optional<DecayHint> hint;
  switch (spec.normalization) {
    case Normalization::none:
      break;
    case Normalization::frechet_scale: {
      const auto* fr = std::get_if<FrechetTail>(&spec.base.tail);
      if (fr == nullptr) {
        throw std::invalid_argument("excess_survival: frechet_scale on a non-power tail");
      }
      scale = spec.frechet_g.value_or(spec.u + fr->power_shift);
      break;
    }
    case Normalization::weibull_scale: {
      const auto* wb = std::get_if<WeibullTail>(&spec.base.tail);
      if (wb == nullptr) {
        throw std::invalid_argument("excess_survival: weibull_scale on a non-Weibull tail");
      }
      const double c = std::pow(spec.u, wb->xi - 1.0) * wb->slowly_varying(spec.u);
      if (!(c > 0.0)) throw std::domain_error("excess_survival: nonpositive scale c(u)");
      scale = 1.0 / c;
      break;
    }
  }

  if (const auto* fr = std::get_if<FrechetTail>(&spec.base.tail)) {
    hint = DecayHint{DecayHint::Kind::power, fr->a};
  } else {
    hint = DecayHint{DecayHint::Kind::exponential, std::get<WeibullTail>(spec.base.tail).xi};
  }

  const auto survival = spec.base.survival;
  const double u = spec.u;
  Curve c;
  c.eval = [survival, u, su, scale](double z) { return survival(scale * z + u) / su; };
  c.decay = hint;
  return c;
}

AsymptoticPrediction predict_frechet(double a, double q, double u) {
  if (!(a > 0.0)) throw std::domain_error("predict_frechet: tail index must be > 0");
  if (!(q > 0.0)) throw std::domain_error("predict_frechet: q must be > 0");
  if (!(u > 0.0)) throw std::domain_error("predict_frechet: u must be > 0");
  AsymptoticPrediction p;
  p.qnorm_q = (a * q > 1.0) ? u / (a * q - 1.0) : kInf;
  p.onenorm = (a > 1.0) ? u / (a - 1.0) : kInf;
  p.moment = (a > 2.0) ? u * u / ((a - 1.0) * (a - 2.0)) : kInf;
  return p;
}

AsymptoticPrediction predict_frechet_normalized(double a, double q) {
  return predict_frechet(a, q, 1.0);
}

AsymptoticPrediction predict_weibull(double xi, double l_at_u, double u) {
  if (!(xi > 0.0)) throw std::domain_error("predict_weibull: tail index must be > 0");
  if (!(l_at_u > 0.0)) throw std::domain_error("predict_weibull: l(u) must be > 0");
  if (!(u > 0.0)) throw std::domain_error("predict_weibull: u must be > 0");
  const double base = std::pow(u, 1.0 - xi) / (xi * l_at_u);
  AsymptoticPrediction p;
  p.qnorm_q = base;  // q = 1 on this branch
  p.onenorm = base;
  p.moment = base * base;
  p.shannon = base;
  return p;
}

AsymptoticPrediction predict_weibull_normalized(double xi) {
  return predict_weibull(xi, 1.0, 1.0);
}

MaxEntSolution maxent_target_frechet(double a) {
  if (!(a > 2.0)) {
    throw std::domain_error("maxent_target_frechet: requires tail index a > 2");
  }
  return MaxEntSolution(1.0 - 1.0 / a, 1.0, 1.0);
}

MaxEntSolution maxent_target_gumbel(double xi) {
  return MaxEntSolution(1.0, 1.0, xi);
}

GpdParams gpd_stability(const GpdParams& params, double u) {
  if (!(u > 0.0)) throw std::domain_error("gpd_stability: threshold must be > 0");
  return GpdParams(params.gamma, params.sigma + params.gamma * u);
}

}  // namespace potent

#include "potent/functionals.hpp"

#include <cmath>
#include <stdexcept>

namespace potent {

namespace {

std::optional<DecayHint> hint_from_tail(const TailClass& tail) {
  if (const auto* fr = std::get_if<FrechetTail>(&tail)) {
    return DecayHint{DecayHint::Kind::power, fr->a};
  }
  const auto& wb = std::get<WeibullTail>(tail);
  return DecayHint{DecayHint::Kind::exponential, wb.xi};
}

std::optional<DecayHint> power_transform(const std::optional<DecayHint>& hint, double q) {
  if (!hint) return {};
  if (hint->kind == DecayHint::Kind::power) {
    return DecayHint{DecayHint::Kind::power, hint->exponent * q};
  }
  return hint;
}

std::optional<DecayHint> moment_transform(const std::optional<DecayHint>& hint) {
  if (!hint) return {};
  if (hint->kind == DecayHint::Kind::power) {
    return DecayHint{DecayHint::Kind::power, hint->exponent - 1.0};
  }
  return hint;
}

}  // namespace

Curve survival_curve(const SurvivalModel& model) {
  return Curve{model.survival, hint_from_tail(model.tail)};
}

double q_norm_q(const Curve& g, double q, double rel_tol) {
  if (!(q > 0.0)) throw std::invalid_argument("q_norm_q: q must be > 0");
  const auto eval = g.eval;
  Curve powered{
      [eval, q](double z) { return std::pow(eval(z), q); },
      power_transform(g.decay, q)};
  return integrate(powered, rel_tol).value;
}

double first_moment(const Curve& g, double rel_tol) {
  const auto eval = g.eval;
  Curve weighted{
      [eval](double z) { return z * eval(z); },
      moment_transform(g.decay)};
  return integrate(weighted, rel_tol).value;
}

double tsallis_entropy(const Curve& g, double q, double rel_tol) {
  if (!(q >= 0.0)) throw std::invalid_argument("tsallis_entropy: q must be >= 0");
  if (std::fabs(q - 1.0) < 1e-12) {
    throw std::invalid_argument("tsallis_entropy: q = 1 is the Shannon case");
  }
  return (q_norm_q(g, q, rel_tol) - 1.0) / (1.0 - q);
}

double shannon_entropy(const Curve& g, double rel_tol) {
  const auto eval = g.eval;
  auto integrand = [eval](double z) {
    const double v = eval(z);
    if (v < 0.0) {
      throw std::invalid_argument("shannon_entropy: curve is negative at a quadrature node");
    }
    return v > 0.0 ? -v * std::log(v) : 0.0;
  };
  // The log factor only perturbs a power tail logarithmically; the same
  // exponent remains a sound truncation guide (covered by the remainder
  // safety factor).
  return integrate_signed(integrand, g.decay, rel_tol).value;
}

double sup_distance(const Curve& a, const Curve& b, std::span<const double> grid) {
  if (grid.empty()) throw std::invalid_argument("sup_distance: empty grid");
  double best = 0.0;
  for (const double z : grid) {
    best = std::max(best, std::fabs(a.eval(z) - b.eval(z)));
  }
  return best;
}

}  // namespace potent

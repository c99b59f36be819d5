#include "potent/maxent.hpp"

#include <cmath>
#include <stdexcept>

#include "potent/errors.hpp"

namespace potent {

namespace {

constexpr double kShannonWindow = 1e-9;

double checked_pow(double base, double exponent) { return std::pow(base, exponent); }

}  // namespace

MaxEntSolution::MaxEntSolution(double q_in, double alpha_in, double beta_in)
    : q(q_in), alpha(alpha_in), beta(beta_in) {
  if (!(q > 0.5 && q <= 1.0 + kShannonWindow)) {
    throw std::domain_error("MaxEntSolution: q must be in (1/2, 1]");
  }
  if (!(alpha > 0.0)) throw std::domain_error("MaxEntSolution: alpha must be > 0");
  if (!(beta > 0.0)) throw std::domain_error("MaxEntSolution: beta must be > 0");
}

bool MaxEntSolution::shannon_branch() const { return std::fabs(q - 1.0) < kShannonWindow; }

double evaluate_solution(const MaxEntSolution& sol, double z) {
  if (!(z >= 0.0)) throw std::invalid_argument("evaluate_solution: z must be >= 0");
  if (sol.shannon_branch()) {
    return sol.alpha * std::exp(-sol.beta * z);
  }
  const double r = 1.0 / (sol.q - 1.0);  // negative
  return checked_pow(sol.alpha, r) * checked_pow(1.0 + sol.beta * z / sol.alpha, r);
}

Curve maxent_curve(const MaxEntSolution& sol) {
  Curve c;
  c.eval = [sol](double z) { return evaluate_solution(sol, z); };
  if (sol.shannon_branch()) {
    c.decay = DecayHint{DecayHint::Kind::exponential, 1.0};
  } else {
    c.decay = DecayHint{DecayHint::Kind::power, 1.0 / (1.0 - sol.q)};
  }
  return c;
}

ConstraintValues forward_constraints(const MaxEntSolution& sol) {
  const double a = sol.alpha;
  const double b = sol.beta;
  if (sol.shannon_branch()) {
    return {a / (b * b), a / b, -(a / b) * std::log(a) + a / b};
  }
  const double q = sol.q;
  const double mu = (q - 1.0) * (q - 1.0) * checked_pow(a, (2.0 * q - 1.0) / (q - 1.0)) /
                    (q * (2.0 * q - 1.0) * b * b);
  const double theta = checked_pow(a, q / (q - 1.0)) * (1.0 - q) / (b * q);
  const double qnorm = checked_pow(a, (2.0 * q - 1.0) / (q - 1.0)) * (1.0 - q) /
                       ((2.0 * q - 1.0) * b);
  return {mu, theta, qnorm};
}

MaxEntSolution inverse_solve(double q, double mu, double theta) {
  if (!(q > 0.5 && q <= 1.0 + kShannonWindow)) {
    throw std::domain_error("inverse_solve: q must be in (1/2, 1]");
  }
  if (!(mu > 0.0) || !(theta > 0.0)) {
    throw std::domain_error("inverse_solve: mu and theta must be > 0");
  }
  if (std::fabs(q - 1.0) < kShannonWindow) {
    const double beta = theta / mu;
    const double alpha = theta * theta / mu;
    return MaxEntSolution(q, alpha, beta);
  }
  const double alpha = checked_pow(q * theta * theta / ((2.0 * q - 1.0) * mu), q - 1.0);
  const double beta = checked_pow(alpha, q / (q - 1.0)) * (1.0 - q) / (q * theta);
  if (!std::isfinite(alpha) || !std::isfinite(beta) || !(alpha > 0.0) || !(beta > 0.0)) {
    throw std::domain_error("inverse_solve: constraints are infeasible for this q");
  }
  return MaxEntSolution(q, alpha, beta);
}

double bregman_divergence(const Curve& g, const MaxEntSolution& sol, double q,
                          double rel_tol) {
  if (!(q > 0.5 && q < 1.0)) {
    throw std::domain_error("bregman_divergence: q must be in (1/2, 1)");
  }
  const auto geval = g.eval;
  auto star = [sol](double z) { return evaluate_solution(sol, z); };
  auto integrand = [geval, star, q](double z) {
    const double gv = geval(z);
    const double sv = star(z);
    if (gv < 0.0) {
      throw std::invalid_argument("bregman_divergence: g is negative at a quadrature node");
    }
    const double gq = std::pow(gv, q);
    const double sq = std::pow(sv, q);
    // pointwise divergence of the generator -x^q
    return -(gq - sq) + q * (gv - sv) * std::pow(sv, q - 1.0);
  };
  // The G*^q term decays like z^(-q/(1-q)); combine with g's own hint.
  double exponent = q / (1.0 - q);
  if (g.decay && g.decay->kind == DecayHint::Kind::power) {
    const double s = g.decay->exponent;
    exponent = std::min({exponent, s * q, s - 1.0});
  }
  std::optional<DecayHint> hint;
  if (!g.decay || g.decay->kind == DecayHint::Kind::power) {
    hint = DecayHint{DecayHint::Kind::power, exponent};
  } else {
    hint = DecayHint{DecayHint::Kind::power, q / (1.0 - q)};
  }
  // The integrand is a difference of O(||G*||_q^q)-sized quantities, so
  // errors below rel_tol on that scale count as converged; otherwise a
  // divergence evaluated at g = G* chases cancellation noise forever.
  double qnorm_scale;
  if (sol.shannon_branch()) {
    qnorm_scale = std::pow(sol.alpha, q) / (q * sol.beta);
  } else {
    const double rq = q / (1.0 - sol.q);
    qnorm_scale = std::pow(sol.alpha, -rq) * (sol.alpha / sol.beta) / (rq - 1.0);
  }
  return integrate_signed(integrand, hint, rel_tol, rel_tol * qnorm_scale).value;
}

GpdParams gpd_from_maxent(const MaxEntSolution& sol) {
  if (std::fabs(sol.alpha - 1.0) > 1e-12) {
    throw std::domain_error("gpd_from_maxent: G* is a survival function only for alpha = 1");
  }
  if (sol.shannon_branch()) return GpdParams(0.0, 1.0 / sol.beta);
  const double gamma = 1.0 - sol.q;
  return GpdParams(gamma, gamma / sol.beta);
}

Curve feasible_perturbation(const MaxEntSolution& sol, double eps, int variant) {
  if (!(eps > 0.0)) throw std::invalid_argument("feasible_perturbation: eps must be > 0");
  const double scale = sol.alpha / sol.beta;
  const double v = 1.0 + 0.07 * static_cast<double>(variant % 17);
  const double c1 = 0.3 * scale * v;
  const double c2 = 1.1 * scale * (1.0 + 0.05 * static_cast<double>(variant % 13));
  const double c3 = 2.7 * scale * (1.0 + 0.04 * static_cast<double>(variant % 11));
  auto bump = [](double c, double w) {
    return [c, w](double z) {
      const double t = (z - c) / w;
      return std::exp(-t * t);
    };
  };
  auto b1 = bump(c1, 0.25 * c1 + 0.1 * scale);
  auto b2 = bump(c2, 0.25 * c2 + 0.1 * scale);
  auto b3 = bump(c3, 0.25 * c3 + 0.1 * scale);

  auto star = [sol](double z) { return evaluate_solution(sol, z); };
  const auto star_hint = maxent_curve(sol).decay;
  auto weighted = [&](const std::function<double(double)>& h, int power) {
    auto f = [star, h, power](double z) {
      return (power == 0 ? 1.0 : z) * star(z) * h(z);
    };
    return integrate_signed(f, star_hint, 1e-10).value;
  };

  // Project out the (theta, mu) components: solve the 2x2 system so that
  // h = b1 - s2 b2 - s3 b3 has zero 1-norm and first-moment weight under G*.
  const double r0 = weighted(b1, 0);
  const double r1 = weighted(b1, 1);
  const double m02 = weighted(b2, 0), m03 = weighted(b3, 0);
  const double m12 = weighted(b2, 1), m13 = weighted(b3, 1);
  const double det = m02 * m13 - m03 * m12;
  if (std::fabs(det) < 1e-300) {
    throw std::runtime_error("feasible_perturbation: degenerate bump system");
  }
  const double s2 = (r0 * m13 - r1 * m03) / det;
  const double s3 = (m02 * r1 - m12 * r0) / det;

  auto h = [b1, b2, b3, s2, s3](double z) { return b1(z) - s2 * b2(z) - s3 * b3(z); };

  // Keep 1 + eps h strictly positive.
  double hmax = 0.0;
  for (int i = 0; i <= 400; ++i) {
    const double z = scale * 6.0 * static_cast<double>(i) / 400.0;
    hmax = std::max(hmax, std::fabs(h(z)));
  }
  const double eps_eff = std::min(eps, 0.4 / std::max(hmax, 1e-12));

  Curve g;
  g.eval = [star, h, eps_eff](double z) { return star(z) * (1.0 + eps_eff * h(z)); };
  g.decay = star_hint;
  return g;
}

}  // namespace potent

#ifndef POTENT_MAXENT_HPP
#define POTENT_MAXENT_HPP

#include "potent/functionals.hpp"
#include "potent/quadrature.hpp"
#include "potent/survival_models.hpp"

namespace potent {

/// Parameters (q, alpha, beta) of the closed-form maximizer of the Tsallis
/// entropy of order q under a first-moment and 1-norm constraint:
///   G*(z) = alpha^(1/(q-1)) (1 + beta z / alpha)^(1/(q-1))   for q < 1,
///   G*(z) = alpha exp(-beta z)                               for q = 1.
/// The order is restricted to (1/2, 1]: below 1/2 the moment constraint is
/// not finite, and q > 1 is out of scope. alpha and beta must be strictly
/// positive for the constraint values to be finite.
struct MaxEntSolution {
  MaxEntSolution(double q, double alpha, double beta);
  double q;
  double alpha;
  double beta;
  bool shannon_branch() const;  // true within 1e-9 of q = 1
};

/// Constraint values attained by G*: first moment mu, 1-norm theta, and the
/// entropy statistic (the q-th power of the q-norm for q < 1, the Shannon
/// entropy for q = 1).
struct ConstraintValues {
  double mu;
  double theta;
  double entropy_stat;
};

double evaluate_solution(const MaxEntSolution& sol, double z);

/// G* as a curve with its decay hint.
Curve maxent_curve(const MaxEntSolution& sol);

/// Closed-form constraint values of G*. For q = 1 the Shannon entropy is the
/// integrated form -(alpha/beta) ln alpha + alpha/beta.
ConstraintValues forward_constraints(const MaxEntSolution& sol);

/// Recovers (alpha, beta) from (q, mu, theta). Throws std::domain_error for
/// q outside (1/2, 1] or nonpositive constraints.
MaxEntSolution inverse_solve(double q, double mu, double theta);

/// Functional Bregman divergence B(g, G*) built on the convex generator
/// -x^q, q in (1/2, 1): the integral of
///   -(g^q - G*^q) + q (g - G*) G*^(q-1).
/// Nonnegative, zero iff g = G*; when g satisfies the same (mu, theta)
/// constraints as G*, it collapses to int G*^q - int g^q.
double bregman_divergence(const Curve& g, const MaxEntSolution& sol, double q,
                          double rel_tol = kDefaultRelTol);

/// GPD parameters of G* viewed as a survival function. Requires alpha = 1
/// (otherwise G*(0) != 1): gamma = 1 - q, sigma = (1 - q) / beta, with the
/// q = 1 case giving the exponential (0, 1/beta).
GpdParams gpd_from_maxent(const MaxEntSolution& sol);

/// A curve g != G* satisfying the same (mu, theta) constraints, built as
/// G* (1 + eps h) where h is a combination of three localized bumps whose
/// moment and 1-norm contributions are cancelled by a linear projection
/// computed by quadrature. `variant` varies the bump placement. eps is
/// reduced internally if needed to keep g nonnegative.
Curve feasible_perturbation(const MaxEntSolution& sol, double eps, int variant);

}  // namespace potent

#endif  // POTENT_MAXENT_HPP

#ifndef POTENT_FUNCTIONALS_HPP
#define POTENT_FUNCTIONALS_HPP

#include <span>

#include "potent/quadrature.hpp"
#include "potent/survival_models.hpp"

namespace potent {

/// Wraps a model's survival function as a curve, with the decay hint taken
/// from the model's tail class.
Curve survival_curve(const SurvivalModel& model);

/// The q-th power of the q-norm, integral of G^q over [0, inf). q > 0.
double q_norm_q(const Curve& g, double q, double rel_tol = kDefaultRelTol);

/// Integral of z G(z) over [0, inf). Throws DivergenceError when the tail
/// makes the moment infinite (power tails with index <= 2).
double first_moment(const Curve& g, double rel_tol = kDefaultRelTol);

/// (int G^q - 1) / (1 - q), for q >= 0, q != 1. Computed through q_norm_q,
/// so the entropy-norm identity holds exactly.
double tsallis_entropy(const Curve& g, double q, double rel_tol = kDefaultRelTol);

/// -int G ln G over [0, inf), with 0 ln 0 = 0. Applied to survival curves as
/// well as densities; the curve need not integrate to 1.
double shannon_entropy(const Curve& g, double rel_tol = kDefaultRelTol);

/// max over the grid of |A(z) - B(z)|.
double sup_distance(const Curve& a, const Curve& b, std::span<const double> grid);

}  // namespace potent

#endif  // POTENT_FUNCTIONALS_HPP

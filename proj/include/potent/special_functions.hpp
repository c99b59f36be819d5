#ifndef POTENT_SPECIAL_FUNCTIONS_HPP
#define POTENT_SPECIAL_FUNCTIONS_HPP

namespace potent {

// Regularized incomplete gamma functions, accurate to better than 1e-12
// relative error over the parameter ranges used by the model catalog.
// Series expansion for x < a + 1, Lentz continued fraction otherwise.

/// Q(a, x) = Gamma(a, x) / Gamma(a), the upper tail. Q(a, 0) = 1.
double regularized_gamma_q(double a, double x);

/// P(a, x) = 1 - Q(a, x), the lower tail.
double regularized_gamma_p(double a, double x);

}  // namespace potent

#endif  // POTENT_SPECIAL_FUNCTIONS_HPP

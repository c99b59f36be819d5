#ifndef POTENT_QUADRATURE_HPP
#define POTENT_QUADRATURE_HPP

#include <functional>
#include <optional>

namespace potent {

inline constexpr double kDefaultRelTol = 1e-9;

/// Known asymptotic decay of an integrand, used to pick a truncation point
/// for the far tail and to reject non-integrable tails early.
struct DecayHint {
  enum class Kind { power, exponential };
  Kind kind;
  /// power: the integrand behaves like z^-exponent for large z.
  /// exponential: the integrand decays at least like exp(-c z^exponent).
  double exponent;
};

/// A nonnegative function on [0, inf). These are typically survival curves,
/// which need not integrate to 1; the entropy and norm functionals below are
/// functionals of such curves, not of probability densities.
struct Curve {
  std::function<double(double)> eval;
  std::optional<DecayHint> decay{};
};

struct QuadratureResult {
  double value;
  double error_estimate;  // <= rel_tol * |value| on success
  long nodes_used;
};

/// Integral of the curve over [0, inf).
///
/// The half line is split at decade boundaries 1, 10, 100, ...; each segment
/// is handled by adaptive 15-point Gauss-Kronrod subdivision, and extension
/// stops once two consecutive segment contributions fall below the tolerance
/// (or earlier, when a decay hint bounds the remainder). Throws
/// DivergenceError when the running value keeps growing across tail
/// extensions (e.g. the first moment of a tail index <= 2 law), and
/// NonConvergenceError when the error estimate stalls above tolerance.
/// Negative curve values found at the quadrature nodes are rejected.
QuadratureResult integrate(const Curve& curve, double rel_tol = kDefaultRelTol);

/// Same integrator without the nonnegativity check, for signed integrands
/// assembled internally (entropy integrands, Bregman differences).
/// abs_floor is an absolute error level that counts as converged; callers
/// integrating a difference of O(S)-sized quantities pass rel_tol * S so
/// that cancellation noise is not chased below machine precision.
QuadratureResult integrate_signed(const std::function<double(double)>& f,
                                  const std::optional<DecayHint>& decay, double rel_tol,
                                  double abs_floor = 0.0);

}  // namespace potent

#endif  // POTENT_QUADRATURE_HPP

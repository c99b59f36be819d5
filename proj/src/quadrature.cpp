#include "potent/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "potent/errors.hpp"

namespace potent {

namespace {

// 15-point Kronrod extension of the 7-point Gauss rule (QUADPACK dqk15).
constexpr double kXgk[8] = {
    0.9914553711208126, 0.9491079123427585, 0.8648644233597691, 0.7415311855993944,
    0.5860872354676911, 0.4058451513773972, 0.2077849550078985, 0.0};
constexpr double kWgk[8] = {
    0.02293532201052922, 0.06309209262997855, 0.1047900103222502, 0.1406532597155259,
    0.1690047266392679,  0.1903505780647854,  0.2044329400752989, 0.2094821410847278};
constexpr double kWg[4] = {
    0.1294849661688697, 0.2797053914892767, 0.3818300505051189, 0.4179591836734694};

constexpr int kMaxDecades = 60;
constexpr long kMaxEvals = 2000000;
constexpr double kFloorScale = 1e-300;

struct PanelResult {
  double value;
  double error;
};

// One Gauss-Kronrod panel on [a, b] with the QUADPACK error heuristic.
PanelResult gk15(const std::function<double(double)>& f, double a, double b, long& evals) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double fv[15];
  const double fc = f(center);
  fv[7] = fc;
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    fv[j] = f(center - dx);
    fv[14 - j] = f(center + dx);
  }
  evals += 15;

  double result_gauss = kWg[3] * fc;
  for (int j = 0; j < 3; ++j) {
    result_gauss += kWg[j] * (fv[2 * j + 1] + fv[13 - 2 * j]);
  }
  double result_kronrod = kWgk[7] * fc;
  for (int j = 0; j < 7; ++j) {
    result_kronrod += kWgk[j] * (fv[j] + fv[14 - j]);
  }
  const double mean = 0.5 * result_kronrod;
  double resasc = kWgk[7] * std::fabs(fc - mean);
  for (int j = 0; j < 7; ++j) {
    resasc += kWgk[j] * (std::fabs(fv[j] - mean) + std::fabs(fv[14 - j] - mean));
  }
  resasc *= half;

  const double raw = std::fabs(result_kronrod - result_gauss) * half;
  double err = raw;
  if (resasc != 0.0 && raw != 0.0) {
    err = resasc * std::min(1.0, std::pow(200.0 * raw / resasc, 1.5));
  }
  return {result_kronrod * half, err};
}

struct SegmentOutcome {
  double value{0.0};
  double error{0.0};
};

// Recursive bisection until the panel error sum fits the absolute budget
// or the evaluation budget runs out.
void adapt(const std::function<double(double)>& f, double a, double b, double budget,
           int depth, long& evals, SegmentOutcome& out) {
  const PanelResult p = gk15(f, a, b, evals);
  if (p.error <= budget || depth >= 48 || evals >= kMaxEvals ||
      (b - a) <= 1e-15 * std::fabs(b)) {
    out.value += p.value;
    out.error += p.error;
    return;
  }
  const double mid = 0.5 * (a + b);
  adapt(f, a, mid, 0.5 * budget, depth + 1, evals, out);
  adapt(f, mid, b, 0.5 * budget, depth + 1, evals, out);
}

double segment_upper(int k) {
  // Segment 0 is [0, 1]; segment k >= 1 ends at 10^k.
  return std::pow(10.0, k);
}

}  // namespace

QuadratureResult integrate_signed(const std::function<double(double)>& f,
                                  const std::optional<DecayHint>& decay, double rel_tol,
                                  double abs_floor) {
  if (!(rel_tol >= 1e-12 && rel_tol <= 1e-2)) {
    throw std::invalid_argument("integrate: rel_tol must be in [1e-12, 1e-2]");
  }
  if (decay && decay->kind == DecayHint::Kind::power && decay->exponent <= 1.0) {
    throw DivergenceError("integrate: power tail with exponent <= 1 is not integrable");
  }
  const double floor = std::max(abs_floor, kFloorScale);

  long evals = 0;

  // Pass 1: single-panel scan over decade segments to locate the truncation
  // point and to watch for divergence.
  std::vector<double> rough;
  std::vector<double> totals;
  double running = 0.0;
  double tail_remainder = 0.0;
  int last = -1;
  for (int k = 0; k <= kMaxDecades; ++k) {
    const double lo = (k == 0) ? 0.0 : segment_upper(k - 1);
    const double hi = segment_upper(k);
    const PanelResult p = gk15(f, lo, hi, evals);
    rough.push_back(p.value);
    running += p.value;
    totals.push_back(running);
    const double scale = std::max(std::fabs(running), std::fabs(p.value));
    const double quarter = std::max(0.25 * rel_tol * scale, 0.25 * floor);

    if (k >= 1) {
      const double s_prev = std::fabs(rough[k - 1]);
      const double s_cur = std::fabs(rough[k]);
      if (s_prev <= quarter && s_cur <= quarter) {
        last = k;
        break;
      }
      // Decay-aware truncation: bound the remainder past hi by the hinted
      // power law. Factor 2 covers slowly varying corrections.
      if (decay && decay->kind == DecayHint::Kind::power && decay->exponent > 1.05) {
        const double fhi = std::fabs(f(hi));
        ++evals;
        const double rem = 2.0 * fhi * hi / (decay->exponent - 1.0);
        if (rem <= quarter) {
          tail_remainder = rem;
          last = k;
          break;
        }
      }
      // Fast divergence: the running value grew by more than a factor 10
      // across the last two extensions and contributions are not shrinking.
      if (k >= 6 && std::fabs(totals[k]) > 10.0 * std::fabs(totals[k - 2]) &&
          s_cur >= s_prev && s_cur > floor) {
        throw DivergenceError("integrate: partial sums grow without bound");
      }
    }
    if (k == kMaxDecades) {
      bool nondecaying = true;
      for (int j = k - 2; j <= k; ++j) {
        if (!(std::fabs(rough[j]) >= 0.95 * std::fabs(rough[j - 1]))) nondecaying = false;
      }
      if (nondecaying && std::fabs(rough[k]) > floor) {
        throw DivergenceError("integrate: tail contributions do not decay");
      }
      throw NonConvergenceError("integrate: tail failed to converge within 60 decades");
    }
  }

  // Pass 2: refine each retained segment against a shared error budget,
  // split proportionally to the rough contributions plus an equal share.
  double abs_rough = 0.0;
  for (int k = 0; k <= last; ++k) abs_rough += std::fabs(rough[k]);
  const double total_scale = std::max(std::fabs(running), abs_rough);
  const double total_budget = std::max(rel_tol * total_scale, floor);

  SegmentOutcome out;
  for (int k = 0; k <= last; ++k) {
    const double lo = (k == 0) ? 0.0 : segment_upper(k - 1);
    const double hi = segment_upper(k);
    const double share = abs_rough > 0.0 ? std::fabs(rough[k]) / abs_rough : 0.0;
    const double budget = 0.5 * total_budget * (share + 1.0 / (last + 1));
    adapt(f, lo, hi, budget, 0, evals, out);
  }
  out.error += tail_remainder;

  const double tol_abs = std::max(rel_tol * std::fabs(out.value), floor);
  if (out.error > tol_abs) {
    throw NonConvergenceError("integrate: error estimate stalled above tolerance");
  }
  return {out.value, out.error, evals};
}

QuadratureResult integrate(const Curve& curve, double rel_tol) {
  const auto& f = curve.eval;
  auto checked = [&f](double z) {
    const double v = f(z);
    if (v < -1e-12) {
      throw std::invalid_argument("integrate: curve is negative at a quadrature node");
    }
    return v;
  };
  return integrate_signed(checked, curve.decay, rel_tol);
}

}  // namespace potent

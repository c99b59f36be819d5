#include "potent/survival_models.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "potent/special_functions.hpp"

namespace potent {

namespace {

// Below this shape the power-law branch of the GPD is numerically
// indistinguishable from the exponential limit; switch to the expanded
// exponent -w + g w^2/2 - g^2 w^3/3 to avoid cancellation in log1p(g w)/g.
constexpr double kGammaSwitch = 1e-8;

void check_nonnegative_x(double x) {
  if (!(x >= 0.0)) throw std::invalid_argument("x must be >= 0");
}

void check_probability(double p) {
  if (!(p > 0.0 && p <= 1.0)) throw std::invalid_argument("p must be in (0, 1]");
}

// Monotone bracket + bisection on the survival function. Absolute
// tolerance 1e-12 in p; used where no closed-form quantile exists.
double solve_quantile(const std::function<double(double)>& survival, double p) {
  check_probability(p);
  if (p == 1.0) return 0.0;
  double lo = 0.0;
  double hi = 1.0;
  int guard = 0;
  while (survival(hi) > p) {
    lo = hi;
    hi *= 2.0;
    if (++guard > 1100) throw std::runtime_error("quantile bracket failed");
  }
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    if (survival(mid) > p) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (hi - lo < 1e-16 * (1.0 + hi)) break;
  }
  return 0.5 * (lo + hi);
}

SurvivalModel make_gpd_model(double gamma, double sigma) {
  const GpdParams params(gamma, sigma);
  SurvivalModel m;
  m.name = "gpd";
  m.survival = [params](double x) { return gpd_survival(params, x); };
  m.density = [params](double x) { return gpd_density(params, x); };
  m.quantile = [params](double p) { return gpd_quantile(params, p); };
  if (gamma >= kGammaSwitch) {
    const double a = 1.0 / gamma;
    const double shift = sigma / gamma;
    m.tail = FrechetTail{
        a,
        [params, a](double z) { return std::exp(a * std::log(z)) * gpd_survival(params, z); },
        std::exp(std::log(shift) * a),  // (sigma/gamma)^(1/gamma); may overflow to inf
        shift};
  } else {
    // Exponential limit: -ln S(z) / z = 1/sigma exactly.
    const double rate = 1.0 / sigma;
    m.tail = WeibullTail{1.0, [rate](double) { return rate; }, rate};
  }
  return m;
}

SurvivalModel make_half_cauchy_model() {
  SurvivalModel m;
  m.name = "half_cauchy";
  // atan2(1, x) = atan(1/x) for x > 0 and pi/2 at x = 0, so S(0) = 1 exactly.
  m.survival = [](double x) {
    check_nonnegative_x(x);
    return (2.0 / std::numbers::pi) * std::atan2(1.0, x);
  };
  m.density = [](double x) {
    check_nonnegative_x(x);
    return 2.0 / (std::numbers::pi * (1.0 + x * x));
  };
  m.quantile = [](double p) {
    check_probability(p);
    return std::tan(std::numbers::pi * 0.5 * (1.0 - p));
  };
  m.tail = FrechetTail{
      1.0,
      [](double z) { return (2.0 / std::numbers::pi) * z * std::atan2(1.0, z); },
      2.0 / std::numbers::pi};
  return m;
}

SurvivalModel make_pareto_model(double a) {
  if (!(a > 0.0)) throw std::invalid_argument("pareto: tail index a must be > 0");
  SurvivalModel m;
  m.name = "pareto";
  m.survival = [a](double x) {
    check_nonnegative_x(x);
    return std::exp(-a * std::log1p(x));
  };
  m.density = [a](double x) {
    check_nonnegative_x(x);
    return a * std::exp(-(a + 1.0) * std::log1p(x));
  };
  m.quantile = [a](double p) {
    check_probability(p);
    return std::expm1(-std::log(p) / a);
  };
  m.tail = FrechetTail{
      a,
      [a](double z) { return std::exp(a * (std::log(z) - std::log1p(z))); },
      1.0,
      1.0};
  return m;
}

SurvivalModel make_half_gaussian_model() {
  SurvivalModel m;
  m.name = "half_gaussian";
  m.survival = [](double x) {
    check_nonnegative_x(x);
    return std::erfc(x / std::numbers::sqrt2);
  };
  m.density = [](double x) {
    check_nonnegative_x(x);
    return std::sqrt(2.0 / std::numbers::pi) * std::exp(-0.5 * x * x);
  };
  auto survival = m.survival;
  m.quantile = [survival](double p) { return solve_quantile(survival, p); };
  // From S(z) ~ exp(-z^2/2) / (sqrt(2 pi) z): the prefactor folds into l.
  m.tail = WeibullTail{
      2.0,
      [](double z) {
        return 0.5 + std::log(std::sqrt(2.0 * std::numbers::pi) * z) / (z * z);
      },
      0.5};
  return m;
}

SurvivalModel make_gamma_model(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) {
    throw std::invalid_argument("gamma: shape and rate must be > 0");
  }
  SurvivalModel m;
  m.name = "gamma";
  m.survival = [a, b](double x) {
    check_nonnegative_x(x);
    return regularized_gamma_q(a, b * x);
  };
  const double log_norm = a * std::log(b) - std::lgamma(a);
  m.density = [a, b, log_norm](double x) {
    check_nonnegative_x(x);
    if (x == 0.0) {
      if (a > 1.0) return 0.0;
      if (a == 1.0) return b;
      return std::numeric_limits<double>::infinity();
    }
    return std::exp(log_norm + (a - 1.0) * std::log(x) - b * x);
  };
  if (a == 1.0) {
    m.quantile = [b](double p) {
      check_probability(p);
      return -std::log(p) / b;
    };
  } else {
    auto survival = m.survival;
    m.quantile = [survival](double p) { return solve_quantile(survival, p); };
  }
  // From S(z) ~ (bz)^(a-1) e^(-bz) / Gamma(a), again with the prefactor folded in.
  const double lgam = std::lgamma(a);
  m.tail = WeibullTail{
      1.0,
      [a, b, lgam](double z) { return b - ((a - 1.0) * std::log(b * z) - lgam) / z; },
      b};
  return m;
}

}  // namespace

GpdParams::GpdParams(double gamma_in, double sigma_in) : gamma(gamma_in), sigma(sigma_in) {
  if (!(sigma > 0.0)) throw std::invalid_argument("GpdParams: sigma must be > 0");
  if (!(gamma >= 0.0)) throw std::invalid_argument("GpdParams: gamma must be >= 0");
}

double gpd_survival(const GpdParams& params, double x) {
  check_nonnegative_x(x);
  const double w = x / params.sigma;
  const double g = params.gamma;
  if (g < kGammaSwitch) {
    return std::exp(-w + g * w * w * (0.5 - g * w / 3.0));
  }
  return std::exp(-std::log1p(g * w) / g);
}

double gpd_density(const GpdParams& params, double x) {
  check_nonnegative_x(x);
  const double w = x / params.sigma;
  const double g = params.gamma;
  if (g < kGammaSwitch) {
    return std::exp(-w + g * w * w * (0.5 - g * w / 3.0)) / (params.sigma * (1.0 + g * w));
  }
  return std::exp(-(1.0 / g + 1.0) * std::log1p(g * w)) / params.sigma;
}

double gpd_quantile(const GpdParams& params, double p) {
  check_probability(p);
  const double g = params.gamma;
  if (g < kGammaSwitch) return -params.sigma * std::log(p);
  // (sigma/g) (p^-g - 1), written via expm1 so the small-g limit is smooth.
  return params.sigma * std::expm1(-g * std::log(p)) / g;
}

SurvivalModel make_model(const std::string& name, const std::vector<double>& params) {
  auto expect = [&](std::size_t count) {
    if (params.size() != count) {
      throw std::invalid_argument("model '" + name + "' expects " + std::to_string(count) +
                                  " parameter(s), got " + std::to_string(params.size()));
    }
  };
  SurvivalModel m;
  if (name == "gpd") {
    expect(2);
    m = make_gpd_model(params[0], params[1]);
  } else if (name == "half_cauchy") {
    expect(0);
    m = make_half_cauchy_model();
  } else if (name == "pareto") {
    expect(1);
    m = make_pareto_model(params[0]);
  } else if (name == "half_gaussian") {
    expect(0);
    m = make_half_gaussian_model();
  } else if (name == "gamma") {
    expect(2);
    m = make_gamma_model(params[0], params[1]);
  } else {
    throw std::invalid_argument("unknown model name: " + name);
  }
  // Canonical spec string, e.g. "gamma:3,2", used in report headers.
  std::string canon = name;
  for (std::size_t i = 0; i < params.size(); ++i) {
    canon += (i == 0 ? ':' : ',');
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", params[i]);
    canon += buf;
  }
  m.name = canon;
  return m;
}

SurvivalModel parse_model_spec(const std::string& spec) {
  const auto colon = spec.find(':');
  const std::string name = spec.substr(0, colon);
  std::vector<double> params;
  if (colon != std::string::npos) {
    std::string rest = spec.substr(colon + 1);
    std::size_t pos = 0;
    while (pos <= rest.size()) {
      const auto comma = rest.find(',', pos);
      const std::string tok =
          rest.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
      std::size_t used = 0;
      double v;
      try {
        v = std::stod(tok, &used);
      } catch (const std::exception&) {
        throw std::invalid_argument("bad model parameter '" + tok + "' in spec: " + spec);
      }
      if (used != tok.size()) {
        throw std::invalid_argument("bad model parameter '" + tok + "' in spec: " + spec);
      }
      params.push_back(v);
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
  }
  return make_model(name, params);
}

}  // namespace potent

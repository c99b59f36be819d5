#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "potent/errors.hpp"
#include "potent/quadrature.hpp"

using potent::Curve;
using potent::DecayHint;
using potent::DivergenceError;
using potent::integrate;

TEST_CASE("integrate handles the basic closed forms") {
  const auto exp_result = integrate({[](double z) { return std::exp(-z); }}, 1e-9);
  CHECK_THAT(exp_result.value, Catch::Matchers::WithinRel(1.0, 1e-9));
  CHECK(exp_result.error_estimate <= 1e-9 * exp_result.value);
  CHECK(exp_result.nodes_used > 0);

  const auto cubic = integrate({[](double z) { return std::pow(1.0 + z, -3.0); }}, 1e-9);
  CHECK_THAT(cubic.value, Catch::Matchers::WithinRel(0.5, 1e-9));
}

TEST_CASE("integrate signals divergence on a harmonic tail") {
  CHECK_THROWS_AS(integrate({[](double z) { return 1.0 / (1.0 + z); }}, 1e-9),
                  DivergenceError);
  // with a power hint the rejection is immediate
  CHECK_THROWS_AS(
      integrate({[](double z) { return 1.0 / (1.0 + z); },
                 DecayHint{DecayHint::Kind::power, 1.0}},
                1e-9),
      DivergenceError);
  // a growing moment-style integrand
  CHECK_THROWS_AS(integrate({[](double z) { return z / std::pow(1.0 + z, 2.5); }}, 1e-9),
                  DivergenceError);
}

TEST_CASE("integrate is exact on the shifted power family") {
  // int (1+cz)^p dz = -1/(c(p+1)) for p < -1
  for (const double c : {0.1, 1.0, 10.0}) {
    for (const double p : {-1.5, -2.0, -4.0, -10.0}) {
      CAPTURE(c, p);
      Curve g{[c, p](double z) { return std::pow(1.0 + c * z, p); },
              DecayHint{DecayHint::Kind::power, -p}};
      const auto r = integrate(g, 1e-9);
      CHECK_THAT(r.value, Catch::Matchers::WithinRel(-1.0 / (c * (p + 1.0)), 1e-9));
    }
  }
}

TEST_CASE("integrate validates its inputs") {
  Curve ok{[](double z) { return std::exp(-z); }};
  CHECK_THROWS_AS(integrate(ok, 1e-13), std::invalid_argument);
  CHECK_THROWS_AS(integrate(ok, 0.5), std::invalid_argument);

  Curve negative{[](double z) { return std::sin(z); }};
  CHECK_THROWS_AS(integrate(negative, 1e-9), std::invalid_argument);
}

TEST_CASE("integrate handles compactly supported curves") {
  Curve box{[](double z) { return z <= 1.0 ? 1.0 : 0.0; }};
  CHECK_THAT(integrate(box, 1e-9).value, Catch::Matchers::WithinRel(1.0, 1e-9));
}

TEST_CASE("integrate copes with scale separation") {
  // mass concentrated around z = 100
  Curve humped{[](double z) { return z * std::exp(-z / 100.0) / 1e4; }};
  const auto r = integrate(humped, 1e-9);
  CHECK_THAT(r.value, Catch::Matchers::WithinRel(1.0, 1e-8));
}

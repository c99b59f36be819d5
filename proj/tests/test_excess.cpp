#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "potent/excess.hpp"
#include "potent/functionals.hpp"
#include "potent/survival_models.hpp"

using namespace potent;

TEST_CASE("excess survival pointwise values") {
  const Curve pareto_excess = excess_survival({make_model("pareto", {3.0}), 1.0});
  CHECK(pareto_excess.eval(0.0) == 1.0);
  CHECK_THAT(pareto_excess.eval(1.0), Catch::Matchers::WithinRel(0.125, 1e-12));

  const Curve gpd_excess = excess_survival({make_model("gpd", {1.0, 1.0}), 1.0});
  CHECK_THAT(gpd_excess.eval(1.0), Catch::Matchers::WithinRel(2.0 / 3.0, 1e-12));

  const Curve cauchy = excess_survival(
      {make_model("half_cauchy", {}), 1000.0, Normalization::frechet_scale});
  CHECK(cauchy.eval(0.0) == 1.0);
  CHECK_THAT(cauchy.eval(1.0), Catch::Matchers::WithinAbs(0.5, 1e-3));
}

TEST_CASE("excess survival validation") {
  CHECK_THROWS_AS(excess_survival({make_model("pareto", {3.0}), -1.0}), std::domain_error);
  CHECK_THROWS_AS(excess_survival({make_model("pareto", {3.0}), 0.0}), std::domain_error);
  // survival underflows to zero near bx ~ 750: threshold outside support
  CHECK_THROWS_AS(excess_survival({make_model("gamma", {3.0, 2.0}), 400.0}),
                  std::domain_error);
  // normalization must match the tail class
  CHECK_THROWS_AS(
      excess_survival({make_model("half_gaussian", {}), 2.0, Normalization::frechet_scale}),
      std::invalid_argument);
  CHECK_THROWS_AS(
      excess_survival({make_model("pareto", {3.0}), 2.0, Normalization::weibull_scale}),
      std::invalid_argument);
}

TEST_CASE("frechet normalization uses the declared power shift") {
  // pareto is a shifted pure power, so the normalized excess is exactly
  // (1+z)^-a at every threshold
  const auto model = make_model("pareto", {3.0});
  for (const double u : {1.0, 3.7, 50.0}) {
    const Curve c = excess_survival({model, u, Normalization::frechet_scale});
    for (const double z : {0.3, 1.0, 4.0}) {
      CAPTURE(u, z);
      CHECK_THAT(c.eval(z), Catch::Matchers::WithinRel(std::pow(1.0 + z, -3.0), 1e-12));
    }
  }
  // a per-call override takes precedence
  const Curve plain = excess_survival(
      {model, 10.0, Normalization::frechet_scale, 10.0});
  CHECK_THAT(plain.eval(1.0),
             Catch::Matchers::WithinRel(model.survival(20.0) / model.survival(10.0), 1e-12));
}

TEST_CASE("pure power tails give exact excess norms") {
  // S(x) = x^-a on x >= 1 realized as the pareto model translated by one:
  // the excess at threshold u is the pareto excess at u - 1, and at u = 1 it
  // is the pareto survival itself. Then int S_Xu^q dz = u/(aq-1) exactly.
  const double a = 3.0, q = 0.75;
  const auto model = make_model("pareto", {a});
  for (const double u : {1.0, 3.5, 10.0, 100.0}) {
    const Curve curve = (u == 1.0) ? survival_curve(model)
                                   : excess_survival({model, u - 1.0});
    CAPTURE(u);
    CHECK_THAT(q_norm_q(curve, q),
               Catch::Matchers::WithinRel(u / (a * q - 1.0), 1e-8));
  }
}

TEST_CASE("predict_frechet") {
  const AsymptoticPrediction p1 = predict_frechet(3.0, 0.75, 1.0);
  CHECK_THAT(*p1.qnorm_q, Catch::Matchers::WithinRel(0.8, 1e-14));
  const AsymptoticPrediction p2 = predict_frechet(3.0, 1.0, 10.0);
  CHECK_THAT(*p2.onenorm, Catch::Matchers::WithinRel(5.0, 1e-14));
  const AsymptoticPrediction p3 = predict_frechet(1.0, 1.0, 5.0);
  CHECK(std::isinf(*p3.moment));
  CHECK(std::isinf(*p3.onenorm));
  CHECK(std::isinf(*p3.qnorm_q));
  CHECK_FALSE(p3.shannon.has_value());
  CHECK_THROWS_AS(predict_frechet(-1.0, 0.75, 1.0), std::domain_error);
  CHECK_THROWS_AS(predict_frechet(3.0, 0.75, 0.0), std::domain_error);
}

TEST_CASE("predict_frechet_normalized") {
  const AsymptoticPrediction p = predict_frechet_normalized(3.0, 2.0 / 3.0);
  CHECK_THAT(*p.qnorm_q, Catch::Matchers::WithinRel(1.0, 1e-12));
  CHECK_THAT(*p.onenorm, Catch::Matchers::WithinRel(0.5, 1e-12));
  CHECK_THAT(*p.moment, Catch::Matchers::WithinRel(0.5, 1e-12));

  const AsymptoticPrediction p2 = predict_frechet_normalized(5.0, 0.8);
  CHECK_THAT(*p2.qnorm_q, Catch::Matchers::WithinRel(1.0 / 3.0, 1e-12));
  CHECK_THAT(*p2.onenorm, Catch::Matchers::WithinRel(0.25, 1e-12));
  CHECK_THAT(*p2.moment, Catch::Matchers::WithinRel(1.0 / 12.0, 1e-12));

  CHECK_THAT(*predict_frechet_normalized(2.5, 1.0).onenorm,
             Catch::Matchers::WithinRel(2.0 / 3.0, 1e-12));
}

TEST_CASE("predict_weibull") {
  const AsymptoticPrediction p = predict_weibull(2.0, 0.5, 10.0);
  CHECK_THAT(*p.shannon, Catch::Matchers::WithinRel(0.1, 1e-14));
  CHECK_THAT(*p.moment, Catch::Matchers::WithinRel(0.01, 1e-14));
  CHECK_THAT(*predict_weibull(1.0, 2.0, 17.3).shannon, Catch::Matchers::WithinRel(0.5, 1e-14));
  CHECK_THROWS_AS(predict_weibull(0.0, 1.0, 1.0), std::domain_error);
}

TEST_CASE("predict_weibull_normalized") {
  const AsymptoticPrediction p = predict_weibull_normalized(2.0);
  CHECK_THAT(*p.shannon, Catch::Matchers::WithinRel(0.5, 1e-14));
  CHECK_THAT(*p.moment, Catch::Matchers::WithinRel(0.25, 1e-14));
  CHECK_THAT(*p.onenorm, Catch::Matchers::WithinRel(0.5, 1e-14));
  const AsymptoticPrediction unit = predict_weibull_normalized(1.0);
  CHECK(*unit.shannon == 1.0);
  CHECK(*unit.moment == 1.0);
  CHECK(*unit.onenorm == 1.0);
  const AsymptoticPrediction p4 = predict_weibull_normalized(4.0);
  CHECK_THAT(*p4.shannon, Catch::Matchers::WithinRel(0.25, 1e-14));
  CHECK_THAT(*p4.moment, Catch::Matchers::WithinRel(0.0625, 1e-14));
}

TEST_CASE("maxent targets") {
  const MaxEntSolution t1 = maxent_target_frechet(3.0);
  CHECK_THAT(t1.q, Catch::Matchers::WithinRel(2.0 / 3.0, 1e-14));
  CHECK(t1.alpha == 1.0);
  CHECK(t1.beta == 1.0);
  CHECK_THAT(maxent_target_frechet(4.0).q, Catch::Matchers::WithinRel(0.75, 1e-14));
  CHECK_THAT(maxent_target_frechet(2.5).q, Catch::Matchers::WithinRel(0.6, 1e-14));
  CHECK_THROWS_AS(maxent_target_frechet(2.0), std::domain_error);
  CHECK_THROWS_AS(maxent_target_frechet(1.0), std::domain_error);

  const MaxEntSolution t2 = maxent_target_gumbel(2.0);
  CHECK(t2.q == 1.0);
  CHECK(t2.alpha == 1.0);
  CHECK(t2.beta == 2.0);
  CHECK(maxent_target_gumbel(1.0).beta == 1.0);
}

TEST_CASE("matching identity between targets and normalized predictions") {
  for (const double a : {2.5, 3.0, 5.0}) {
    CAPTURE(a);
    const MaxEntSolution sol = maxent_target_frechet(a);
    const ConstraintValues cv = forward_constraints(sol);
    const AsymptoticPrediction p = predict_frechet_normalized(a, sol.q);
    CHECK_THAT(cv.mu, Catch::Matchers::WithinRel(*p.moment, 1e-12));
    CHECK_THAT(cv.theta, Catch::Matchers::WithinRel(*p.onenorm, 1e-12));
    CHECK_THAT(cv.entropy_stat, Catch::Matchers::WithinRel(*p.qnorm_q, 1e-12));
  }
  for (const double xi : {0.5, 1.0, 2.0, 4.0}) {
    CAPTURE(xi);
    const ConstraintValues cv = forward_constraints(maxent_target_gumbel(xi));
    const AsymptoticPrediction p = predict_weibull_normalized(xi);
    CHECK_THAT(cv.mu, Catch::Matchers::WithinRel(*p.moment, 1e-12));
    CHECK_THAT(cv.theta, Catch::Matchers::WithinRel(*p.onenorm, 1e-12));
    CHECK_THAT(cv.entropy_stat, Catch::Matchers::WithinRel(*p.shannon, 1e-12));
  }
}

TEST_CASE("gpd stability parameters") {
  const GpdParams a = gpd_stability(GpdParams(1.0, 1.0), 1.0);
  CHECK(a.gamma == 1.0);
  CHECK(a.sigma == 2.0);
  const GpdParams b = gpd_stability(GpdParams(0.0, 3.0), 7.0);
  CHECK(b.gamma == 0.0);
  CHECK(b.sigma == 3.0);
  const GpdParams c = gpd_stability(GpdParams(2.0, 4.0), 3.0);
  CHECK(c.sigma == 10.0);
  CHECK_THROWS_AS(gpd_stability(GpdParams(1.0, 1.0), 0.0), std::domain_error);
}

TEST_CASE("stability closure: excess of a gpd is the image gpd") {
  const std::vector<std::array<double, 3>> triples{{1.0, 1.0, 1.0}, {0.5, 2.0, 3.0},
                                                   {0.0, 1.0, 5.0}};
  for (const auto& [gamma, sigma, u] : triples) {
    const GpdParams base(gamma, sigma);
    const GpdParams image = gpd_stability(base, u);
    const Curve excess = excess_survival({make_model("gpd", {gamma, sigma}), u});
    for (int i = 0; i < 100; ++i) {
      const double z = 0.2 * i * image.sigma;
      CAPTURE(gamma, sigma, u, z);
      CHECK_THAT(excess.eval(z), Catch::Matchers::WithinRel(gpd_survival(image, z), 1e-12));
    }
  }
}

TEST_CASE("stability semigroup is exact") {
  const std::vector<std::array<double, 4>> cases{
      {1.0, 1.0, 1.0, 2.0}, {0.5, 2.0, 3.0, 5.0}, {0.0, 1.0, 5.0, 4.0}, {2.0, 4.0, 3.0, 8.0}};
  for (const auto& [gamma, sigma, u1, u2] : cases) {
    const GpdParams base(gamma, sigma);
    const GpdParams two_step = gpd_stability(gpd_stability(base, u1), u2);
    const GpdParams one_step = gpd_stability(base, u1 + u2);
    CHECK(two_step.gamma == one_step.gamma);
    CHECK(two_step.sigma == one_step.sigma);
  }
}

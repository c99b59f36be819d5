// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Runs at desk scale (well under two minutes).

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "potent/cli.hpp"
#include "potent/convergence_lab.hpp"
#include "potent/excess.hpp"
#include "potent/functionals.hpp"
#include "potent/maxent.hpp"
#include "potent/survival_models.hpp"

using namespace potent;

namespace {

int failures = 0;

void report(int number, const std::string& label, bool pass, const std::string& detail = "") {
  std::printf("%s  criterion %2d: %s%s%s\n", pass ? "PASS" : "FAIL", number, label.c_str(),
              detail.empty() ? "" : " -- ", detail.c_str());
  if (!pass) ++failures;
}

bool rel_close(double a, double b, double tol) {
  return std::fabs(a - b) <= tol * std::fabs(b);
}

struct Check {
  bool ok{true};
  std::string detail;
  void require(bool cond, const std::string& why) {
    if (!cond && ok) {
      ok = false;
      detail = why;
    }
  }
};

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

// --- criterion 1: figure reproduction through the plot command ------------

void criterion_figure() {
  Check c;
  const auto path = std::filesystem::temp_directory_path() / "potent_acceptance_fig.csv";
  const std::vector<std::string> args{
      "potent", "plot-gpd", "--gammas", "0,1,10,100", "--sigma", "1", "--x-max", "5",
      "--points", "50",     "--precision", "17",      "--out",   path.string()};
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  c.require(run_cli(static_cast<int>(argv.size()), argv.data()) == 0, "command failed");

  std::ifstream in(path);
  c.require(static_cast<bool>(in), "missing output file");
  const double gammas[4] = {0.0, 1.0, 10.0, 100.0};
  std::string line;
  int data_rows = 0;
  bool saw_header = false;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!saw_header) {
      saw_header = true;
      continue;
    }
    std::istringstream ls(line);
    std::string cell;
    std::vector<double> row;
    while (std::getline(ls, cell, ',')) row.push_back(std::strtod(cell.c_str(), nullptr));
    c.require(row.size() == 5, "bad row width");
    if (row.size() != 5) break;
    const double x = row[0];
    if (data_rows == 0) {
      c.require(x == 0.0, "grid does not start at 0");
      for (int k = 1; k <= 4; ++k) {
        c.require(std::fabs(row[k] - 1.0) <= 1e-12, "density at origin is not 1");
      }
    }
    for (int k = 1; k <= 4; ++k) {
      const double g = gammas[k - 1];
      const double expect = g == 0.0
                                ? std::exp(-x)
                                : std::pow(1.0 + g * x, -1.0 / g - 1.0);
      c.require(std::fabs(row[k] - expect) <= 1e-12 * std::max(1.0, std::fabs(expect)),
                "density mismatch at x=" + fmt(x));
    }
    ++data_rows;
  }
  c.require(data_rows == 50, "expected 50 grid points, got " + std::to_string(data_rows));
  report(1, "plot-gpd reproduces the density curves pointwise", c.ok, c.detail);
}

// --- criterion 2: constraint values by quadrature --------------------------

void criterion_forward_quadrature() {
  Check c;
  const auto start = std::chrono::steady_clock::now();
  const std::uint64_t key = splitmix64(20240901);
  std::uint64_t counter = 0;
  auto uniform = [&] { return uniform_from_counter(key, counter++); };
  for (int trial = 0; trial < 20; ++trial) {
    const double q = 0.55 + 0.40 * uniform();
    const double alpha = std::exp(std::log(0.25) + std::log(16.0) * uniform());
    const double beta = std::exp(std::log(0.25) + std::log(16.0) * uniform());
    const MaxEntSolution sol(q, alpha, beta);
    const ConstraintValues cv = forward_constraints(sol);
    const Curve curve = maxent_curve(sol);
    const double mu = first_moment(curve);
    const double theta = q_norm_q(curve, 1.0);
    const double qn = q_norm_q(curve, q);
    c.require(rel_close(mu, cv.mu, 1e-8),
              "mu mismatch at q=" + fmt(q) + " alpha=" + fmt(alpha) + " beta=" + fmt(beta));
    c.require(rel_close(theta, cv.theta, 1e-8), "theta mismatch at q=" + fmt(q));
    c.require(rel_close(qn, cv.entropy_stat, 1e-8), "q-norm mismatch at q=" + fmt(q));
  }
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  c.require(elapsed < 5.0, "took " + fmt(elapsed) + "s");
  report(2, "quadrature reproduces the closed-form constraint values", c.ok, c.detail);
}

// --- criterion 3: optimality via the Bregman certificate -------------------

void criterion_optimality() {
  Check c;
  const double q = 0.75;
  const MaxEntSolution sol(q, 1.0, 1.0);
  const double h_star = tsallis_entropy(maxent_curve(sol), q);
  for (int variant = 0; variant < 10; ++variant) {
    const Curve g = feasible_perturbation(sol, 0.05, variant);
    const double h_g = tsallis_entropy(g, q);
    const double b = bregman_divergence(g, sol, q);
    c.require(h_star >= h_g - 1e-12, "entropy not maximal at variant " + std::to_string(variant));
    c.require(b >= -1e-9, "negative divergence at variant " + std::to_string(variant));
    c.require(std::fabs(b - (1.0 - q) * (h_star - h_g)) <= 1e-6,
              "divergence/entropy identity off at variant " + std::to_string(variant) +
                  " by " + fmt(std::fabs(b - (1.0 - q) * (h_star - h_g))));
  }
  report(3, "max-entropy optimality holds over feasible perturbations", c.ok, c.detail);
}

// --- criterion 4: exact excess norms on pure power tails -------------------

void criterion_pure_power() {
  Check c;
  const double a = 3.0, q = 0.75;
  const auto pareto = make_model("pareto", {a});
  for (const double u : {1.0, 10.0, 100.0}) {
    // S(x) = x^-a on x >= 1 is the pareto model translated by one, so its
    // excess at u is the pareto excess at u - 1 (the base survival at u = 1).
    const Curve curve =
        (u == 1.0) ? survival_curve(pareto) : excess_survival({pareto, u - 1.0});
    const double got = q_norm_q(curve, q);
    c.require(rel_close(got, 0.8 * u, 1e-6),
              "q-norm " + fmt(got) + " != " + fmt(0.8 * u) + " at u=" + fmt(u));
  }
  report(4, "pure power tails give the exact q-norm u/(aq-1)", c.ok, c.detail);
}

// --- criteria 5 and 6: matching identities ---------------------------------

void criterion_frechet_matching() {
  Check c;
  for (const double a : {2.5, 3.0, 5.0}) {
    const MaxEntSolution sol = maxent_target_frechet(a);
    const ConstraintValues cv = forward_constraints(sol);
    const AsymptoticPrediction p = predict_frechet_normalized(a, sol.q);
    c.require(rel_close(cv.mu, *p.moment, 1e-12), "mu at a=" + fmt(a));
    c.require(rel_close(cv.theta, *p.onenorm, 1e-12), "theta at a=" + fmt(a));
    c.require(rel_close(cv.entropy_stat, *p.qnorm_q, 1e-12), "q-norm at a=" + fmt(a));
  }
  report(5, "power-tail matching identity (q = 1 - 1/a, alpha = beta = 1)", c.ok, c.detail);
}

void criterion_gumbel_matching() {
  Check c;
  for (const double xi : {0.5, 1.0, 2.0, 4.0}) {
    const ConstraintValues cv = forward_constraints(maxent_target_gumbel(xi));
    c.require(rel_close(cv.mu, 1.0 / (xi * xi), 1e-12), "mu at xi=" + fmt(xi));
    c.require(rel_close(cv.theta, 1.0 / xi, 1e-12), "theta at xi=" + fmt(xi));
    c.require(rel_close(cv.entropy_stat, 1.0 / xi, 1e-12), "H1 at xi=" + fmt(xi));
  }
  report(6, "light-tail matching identity (q = 1, alpha = 1, beta = xi)", c.ok, c.detail);
}

// --- criterion 7: the heavy-tail example converges at rate u^-2 ------------

void criterion_cauchy_example() {
  Check c;
  const auto model = make_model("half_cauchy", {});
  const GpdParams limit(1.0, 1.0);
  Curve target{[limit](double z) { return gpd_survival(limit, z); }};
  const auto grid = default_sup_grid();  // covers [0, 100]
  std::vector<double> sup;
  for (const double u : {10.0, 100.0, 1000.0, 10000.0}) {
    const Curve curve = excess_survival({model, u, Normalization::frechet_scale});
    sup.push_back(sup_distance(curve, target, grid));
  }
  for (std::size_t i = 0; i + 1 < sup.size(); ++i) {
    c.require(sup[i + 1] < sup[i], "sup distance not decreasing");
    const double ratio = sup[i + 1] / sup[i];
    c.require(ratio > 0.005 && ratio < 0.02,
              "decade ratio " + fmt(ratio) + " outside [0.005, 0.02]");
  }
  report(7, "half-cauchy excesses approach (1+x)^-1 at rate u^-2", c.ok, c.detail);
}

// --- criterion 8: light-tail convergence ------------------------------------

void criterion_gumbel_branch() {
  Check c;
  {
    const auto model = make_model("half_gaussian", {});
    double prev = 1e300;
    for (const double u : {2.0, 5.0, 10.0}) {
      const Curve curve = excess_survival({model, u, Normalization::weibull_scale});
      const double gap = std::fabs(shannon_entropy(curve) - 0.5);
      c.require(gap < prev, "half-gaussian entropy gap not decreasing at u=" + fmt(u));
      prev = gap;
    }
  }
  {
    const auto model = make_model("gamma", {3.0, 2.0});
    double prev_t = 1e300, prev_m = 1e300, prev_h = 1e300;
    for (const double u : {5.0, 20.0, 50.0}) {
      const Curve curve = excess_survival({model, u, Normalization::weibull_scale});
      const double dt = std::fabs(q_norm_q(curve, 1.0) - 1.0);
      const double dm = std::fabs(first_moment(curve) - 1.0);
      const double dh = std::fabs(shannon_entropy(curve) - 1.0);
      c.require(dt < prev_t, "gamma theta gap not decreasing at u=" + fmt(u));
      c.require(dm < prev_m, "gamma mu gap not decreasing at u=" + fmt(u));
      c.require(dh < prev_h, "gamma H1 gap not decreasing at u=" + fmt(u));
      prev_t = dt;
      prev_m = dm;
      prev_h = dh;
    }
  }
  report(8, "light-tail excess functionals converge monotonically", c.ok, c.detail);
}

// --- criterion 9: stability of the GPD under thresholding ------------------

void criterion_stability() {
  Check c;
  const std::vector<std::array<double, 3>> triples{{1.0, 1.0, 1.0}, {0.5, 2.0, 3.0},
                                                   {0.0, 1.0, 5.0}};
  for (const auto& [gamma, sigma, u] : triples) {
    const GpdParams base(gamma, sigma);
    const GpdParams image = gpd_stability(base, u);
    const Curve excess = excess_survival({make_model("gpd", {gamma, sigma}), u});
    for (int i = 0; i < 100; ++i) {
      const double z = 0.2 * i * image.sigma;
      const double e = excess.eval(z);
      const double s = gpd_survival(image, z);
      c.require(std::fabs(e - s) <= 1e-12 * std::max(1.0, std::fabs(s)),
                "pointwise gap at gamma=" + fmt(gamma) + " z=" + fmt(z));
    }
    const GpdParams two_step = gpd_stability(gpd_stability(base, u), 2.0 * u);
    const GpdParams one_step = gpd_stability(base, 3.0 * u);
    c.require(two_step.gamma == one_step.gamma && two_step.sigma == one_step.sigma,
              "semigroup identity broken at gamma=" + fmt(gamma));
  }
  report(9, "thresholding a GPD rescales it exactly (with the semigroup law)", c.ok,
         c.detail);
}

// --- criterion 10: inverse solver round trip --------------------------------

void criterion_inverse_round_trip() {
  Check c;
  const std::uint64_t key = splitmix64(77);
  std::uint64_t counter = 0;
  auto uniform = [&] { return uniform_from_counter(key, counter++); };
  for (int trial = 0; trial < 20; ++trial) {
    const double q = (trial % 5 == 0) ? 1.0 : 0.55 + 0.44 * uniform();
    const double alpha = std::exp(std::log(0.2) + std::log(25.0) * uniform());
    const double beta = std::exp(std::log(0.2) + std::log(25.0) * uniform());
    const ConstraintValues cv = forward_constraints(MaxEntSolution(q, alpha, beta));
    const MaxEntSolution back = inverse_solve(q, cv.mu, cv.theta);
    c.require(rel_close(back.alpha, alpha, 1e-10),
              "alpha drift at q=" + fmt(q) + " alpha=" + fmt(alpha));
    c.require(rel_close(back.beta, beta, 1e-10), "beta drift at q=" + fmt(q));
  }
  report(10, "inverse solver inverts the forward constraint map", c.ok, c.detail);
}

// --- criterion 11: Monte Carlo cross-check ----------------------------------

void criterion_monte_carlo() {
  Check c;
  const auto model = make_model("gpd", {0.0, 1.0});
  const EmpiricalReport rep = monte_carlo_check(model, 1.0, 100000, 42);
  c.require(std::fabs(rep.onenorm - 1.0) <= 3.0 * rep.onenorm_se,
            "theta " + fmt(rep.onenorm) + " not within 3 se of 1");
  const std::string again = to_csv(monte_carlo_check(model, 1.0, 100000, 42));
  c.require(to_csv(rep) == again, "reports differ across identical runs");
  report(11, "Monte Carlo estimate matches and is reproducible", c.ok, c.detail);
}

}  // namespace

int main() {
  criterion_figure();
  criterion_forward_quadrature();
  criterion_optimality();
  criterion_pure_power();
  criterion_frechet_matching();
  criterion_gumbel_matching();
  criterion_cauchy_example();
  criterion_gumbel_branch();
  criterion_stability();
  criterion_inverse_round_trip();
  criterion_monte_carlo();
  if (failures != 0) {
    std::printf("%d criterion(s) failed\n", failures);
    return 1;
  }
  std::printf("all acceptance criteria passed\n");
  return 0;
}

#include "potent/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <optional>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "potent/convergence_lab.hpp"
#include "potent/errors.hpp"
#include "potent/excess.hpp"
#include "potent/functionals.hpp"
#include "potent/maxent.hpp"
#include "potent/survival_models.hpp"

namespace potent {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string cell(double v, int precision) { return format_number(v, precision); }

std::string cell(const std::optional<double>& v, int precision) {
  return v ? format_number(*v, precision) : "nan";
}

double json_value(const std::optional<double>& v) {
  return v ? *v : std::numeric_limits<double>::quiet_NaN();
}

const char* const kReportColumns[] = {
    "u",
    "computed_qnorm_q", "computed_onenorm", "computed_moment", "computed_shannon",
    "predicted_qnorm_q", "predicted_onenorm", "predicted_moment", "predicted_shannon",
    "target_mu", "target_theta", "target_entropy_stat",
    "relerr_pred_qnorm_q", "relerr_pred_onenorm", "relerr_pred_moment", "relerr_pred_shannon",
    "relerr_target_qnorm_q", "relerr_target_onenorm", "relerr_target_moment",
    "relerr_target_shannon",
    "entropy_gap", "bregman", "sup_norm"};

std::vector<std::optional<double>> row_values(const FunctionalReport& r) {
  std::vector<std::optional<double>> v;
  v.emplace_back(r.u);
  v.push_back(r.computed.qnorm_q);
  v.push_back(r.computed.onenorm);
  v.push_back(r.computed.moment);
  v.push_back(r.computed.shannon);
  v.push_back(r.predicted.qnorm_q);
  v.push_back(r.predicted.onenorm);
  v.push_back(r.predicted.moment);
  v.push_back(r.predicted.shannon);
  if (r.target) {
    v.emplace_back(r.target->mu);
    v.emplace_back(r.target->theta);
    v.emplace_back(r.target->entropy_stat);
  } else {
    v.emplace_back(std::nullopt);
    v.emplace_back(std::nullopt);
    v.emplace_back(std::nullopt);
  }
  v.push_back(r.rel_err_predicted.qnorm_q);
  v.push_back(r.rel_err_predicted.onenorm);
  v.push_back(r.rel_err_predicted.moment);
  v.push_back(r.rel_err_predicted.shannon);
  v.push_back(r.rel_err_target.qnorm_q);
  v.push_back(r.rel_err_target.onenorm);
  v.push_back(r.rel_err_target.moment);
  v.push_back(r.rel_err_target.shannon);
  v.push_back(r.entropy_gap);
  v.push_back(r.bregman);
  v.push_back(r.sup_norm);
  return v;
}

std::string report_table_csv(const std::vector<FunctionalReport>& rows,
                             const std::string& header_comment, int precision) {
  std::string out = header_comment;
  out += "# computed_* by quadrature on the excess survival curve; predicted_* from the\n";
  out += "# tail asymptotics; target_* from the matching max-entropy solution; divergent\n";
  out += "# values render as inf, undefined ones as nan\n";
  for (std::size_t i = 0; i < std::size(kReportColumns); ++i) {
    out += (i == 0 ? "" : ",");
    out += kReportColumns[i];
  }
  out += '\n';
  for (const auto& r : rows) {
    const auto values = row_values(r);
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (i) out += ',';
      out += cell(values[i], precision);
    }
    out += '\n';
  }
  return out;
}

ordered_json report_table_json(const std::vector<FunctionalReport>& rows) {
  ordered_json doc;
  doc["columns"] = ordered_json::array();
  for (const auto* c : kReportColumns) doc["columns"].push_back(c);
  doc["rows"] = ordered_json::array();
  for (const auto& r : rows) {
    ordered_json row = ordered_json::array();
    for (const auto& v : row_values(r)) row.push_back(json_value(v));
    doc["rows"].push_back(row);
  }
  return doc;
}

int emit_report_table(const std::vector<FunctionalReport>& rows,
                      const std::string& header_comment,
                      const std::vector<std::string>& svg_metrics, const OutputSpec& out) {
  validate_output_spec(out);
  switch (out.format) {
    case OutputFormat::csv:
      write_text_atomic(out.path, report_table_csv(rows, header_comment, out.precision));
      return 0;
    case OutputFormat::json:
      write_text_atomic(out.path, report_table_json(rows).dump(2) + "\n");
      return 0;
    case OutputFormat::svg: {
      std::vector<SvgSeries> series;
      auto add_series = [&](const std::string& label,
                            const std::function<std::optional<double>(const FunctionalReport&)>&
                                pick) {
        SvgSeries s;
        s.label = label;
        for (const auto& r : rows) {
          const auto v = pick(r);
          if (v) s.points.emplace_back(r.u, *v);
        }
        series.push_back(std::move(s));
      };
      for (const auto& m : svg_metrics) {
        if (m == "functionals") {
          add_series("relerr qnorm_q", [](const auto& r) { return r.rel_err_predicted.qnorm_q; });
          add_series("relerr onenorm", [](const auto& r) { return r.rel_err_predicted.onenorm; });
          add_series("relerr moment", [](const auto& r) { return r.rel_err_predicted.moment; });
          add_series("relerr shannon", [](const auto& r) { return r.rel_err_predicted.shannon; });
        } else if (m == "entropy_gap") {
          add_series("entropy_gap", [](const auto& r) { return r.entropy_gap; });
        } else if (m == "bregman") {
          add_series("bregman", [](const auto& r) { return r.bregman; });
        } else if (m == "sup_norm") {
          add_series("sup_norm", [](const auto& r) { return r.sup_norm; });
        }
      }
      write_text_atomic(out.path,
                        render_svg_lines("u", "metric", series, true, true, out.precision));
      return 0;
    }
  }
  return 1;
}

SweepMetrics parse_metrics(const std::vector<std::string>& names) {
  SweepMetrics m{false, false, false, false};
  for (const auto& n : names) {
    if (n == "functionals") {
      m.functionals = true;
    } else if (n == "entropy_gap") {
      m.entropy_gap = true;
    } else if (n == "bregman") {
      m.bregman = true;
    } else if (n == "sup_norm") {
      m.sup_norm = true;
    } else {
      throw std::invalid_argument("unknown sweep metric: " + n);
    }
  }
  return m;
}

}  // namespace

int cmd_plot_gpd(const std::vector<double>& gammas, double sigma, double x_max, int points,
                 const OutputSpec& out) {
  validate_output_spec(out);
  if (gammas.empty()) throw std::invalid_argument("plot-gpd: need at least one gamma");
  if (points < 2) throw std::invalid_argument("plot-gpd: need at least two grid points");
  if (!(x_max > 0.0)) throw std::invalid_argument("plot-gpd: x_max must be > 0");

  std::vector<GpdParams> params;
  params.reserve(gammas.size());
  for (const double g : gammas) params.emplace_back(g, sigma);

  std::vector<double> xs(points);
  for (int i = 0; i < points; ++i) xs[i] = x_max * i / (points - 1);

  switch (out.format) {
    case OutputFormat::csv: {
      std::string csv = "# generalized pareto densities, sigma=" +
                        format_number(sigma, out.precision) + "\n";
      csv += "x";
      for (const double g : gammas) csv += ",f_gamma_" + format_number(g, out.precision);
      csv += '\n';
      for (const double x : xs) {
        csv += format_number(x, out.precision);
        for (const auto& p : params) csv += ',' + format_number(gpd_density(p, x), out.precision);
        csv += '\n';
      }
      write_text_atomic(out.path, csv);
      return 0;
    }
    case OutputFormat::json: {
      ordered_json doc;
      doc["sigma"] = sigma;
      doc["x"] = xs;
      doc["curves"] = ordered_json::array();
      for (std::size_t k = 0; k < params.size(); ++k) {
        ordered_json curve;
        curve["gamma"] = gammas[k];
        std::vector<double> f(xs.size());
        for (std::size_t i = 0; i < xs.size(); ++i) f[i] = gpd_density(params[k], xs[i]);
        curve["density"] = f;
        doc["curves"].push_back(curve);
      }
      write_text_atomic(out.path, doc.dump(2) + "\n");
      return 0;
    }
    case OutputFormat::svg: {
      std::vector<SvgSeries> series;
      for (std::size_t k = 0; k < params.size(); ++k) {
        SvgSeries s;
        s.label = "γ=" + format_number(gammas[k], out.precision);
        for (const double x : xs) s.points.emplace_back(x, gpd_density(params[k], x));
        series.push_back(std::move(s));
      }
      write_text_atomic(out.path,
                        render_svg_lines("x", "f(x)", series, false, false, out.precision));
      return 0;
    }
  }
  return 1;
}

int cmd_maxent(double q, double mu, double theta, const OutputSpec& out) {
  validate_output_spec(out);
  ordered_json doc;
  try {
    const MaxEntSolution sol = inverse_solve(q, mu, theta);
    const ConstraintValues echo = forward_constraints(sol);
    doc["q"] = sol.q;
    doc["alpha"] = sol.alpha;
    doc["beta"] = sol.beta;
    if (std::fabs(sol.alpha - 1.0) <= 1e-9) {
      const GpdParams gpd = gpd_from_maxent(sol);
      doc["gpd"] = {{"gamma", gpd.gamma}, {"sigma", gpd.sigma}};
    } else {
      doc["gpd"] = nullptr;
    }
    doc["constraints"] = {{"mu", echo.mu}, {"theta", echo.theta},
                          {"entropy_stat", echo.entropy_stat}};
  } catch (const std::domain_error& e) {
    ordered_json err;
    err["error"] = e.what();
    err["q"] = q;
    err["mu"] = mu;
    err["theta"] = theta;
    write_text_atomic(out.path, err.dump(2) + "\n");
    return 2;
  }
  if (out.format == OutputFormat::csv) {
    std::string csv = "q,alpha,beta,gpd_gamma,gpd_sigma,mu,theta,entropy_stat\n";
    csv += cell(doc["q"].get<double>(), out.precision);
    csv += ',' + cell(doc["alpha"].get<double>(), out.precision);
    csv += ',' + cell(doc["beta"].get<double>(), out.precision);
    if (doc["gpd"].is_null()) {
      csv += ",nan,nan";
    } else {
      csv += ',' + cell(doc["gpd"]["gamma"].get<double>(), out.precision);
      csv += ',' + cell(doc["gpd"]["sigma"].get<double>(), out.precision);
    }
    csv += ',' + cell(doc["constraints"]["mu"].get<double>(), out.precision);
    csv += ',' + cell(doc["constraints"]["theta"].get<double>(), out.precision);
    csv += ',' + cell(doc["constraints"]["entropy_stat"].get<double>(), out.precision);
    csv += '\n';
    write_text_atomic(out.path, csv);
  } else if (out.format == OutputFormat::json) {
    write_text_atomic(out.path, doc.dump(2) + "\n");
  } else {
    throw std::invalid_argument("maxent: svg output is not supported");
  }
  return 0;
}

int cmd_excess(const std::string& model_spec, const std::vector<double>& u_list, double q,
               bool normalized, double rel_tol, const OutputSpec& out) {
  validate_output_spec(out);
  if (u_list.empty()) throw std::invalid_argument("excess: need at least one threshold");
  for (std::size_t i = 0; i + 1 < u_list.size(); ++i) {
    if (!(u_list[i] < u_list[i + 1])) {
      throw std::invalid_argument("excess: thresholds must be strictly increasing");
    }
  }
  SweepConfig config;
  config.model = parse_model_spec(model_spec);
  config.u_grid = u_list;
  config.q = q;
  config.normalized = normalized;
  config.metrics = SweepMetrics{true, false, false, false};
  config.rel_tol = rel_tol;
  const auto rows = run_sweep(config);
  const std::string header = "# excess functionals: model=" + model_spec +
                             " q=" + format_number(q, out.precision) +
                             " normalized=" + (normalized ? "1" : "0") + "\n";
  if (out.format == OutputFormat::svg) {
    throw std::invalid_argument("excess: svg output is not supported");
  }
  return emit_report_table(rows, header, {}, out);
}

int cmd_sweep(const std::string& model_spec, double u_min, double u_max, int points,
              const std::vector<std::string>& metrics, bool normalized, double rel_tol,
              const OutputSpec& out) {
  validate_output_spec(out);
  if (!(u_min > 0.0) || !(u_min < u_max)) {
    throw std::invalid_argument("sweep: need 0 < u_min < u_max");
  }
  if (points < 2) throw std::invalid_argument("sweep: need at least two grid points");
  SweepConfig config;
  config.model = parse_model_spec(model_spec);
  config.u_grid.resize(points);
  const double log_lo = std::log(u_min);
  const double step = (std::log(u_max) - log_lo) / (points - 1);
  for (int i = 0; i < points; ++i) config.u_grid[i] = std::exp(log_lo + step * i);
  config.u_grid.back() = u_max;
  config.normalized = normalized;
  config.metrics = parse_metrics(metrics);
  config.rel_tol = rel_tol;
  const auto rows = run_sweep(config);
  std::string metric_list;
  for (const auto& m : metrics) {
    if (!metric_list.empty()) metric_list += ',';
    metric_list += m;
  }
  const std::string header = "# threshold sweep: model=" + model_spec + " metrics=" +
                             metric_list + " normalized=" + (normalized ? "1" : "0") + "\n";
  return emit_report_table(rows, header, metrics, out);
}

int cmd_stability(double gamma, double sigma, double u, const OutputSpec& out) {
  validate_output_spec(out);
  const GpdParams base(gamma, sigma);
  const GpdParams image = gpd_stability(base, u);
  const Curve excess = excess_survival({make_model("gpd", {gamma, sigma}), u});

  std::vector<double> zs(20);
  for (int i = 0; i < 20; ++i) zs[i] = image.sigma * 5.0 * i / 19.0;

  if (out.format == OutputFormat::csv) {
    std::string csv = "# gpd stability: gamma=" + format_number(gamma, out.precision) +
                      " sigma=" + format_number(sigma, out.precision) +
                      " u=" + format_number(u, out.precision) +
                      " sigma_prime=" + format_number(image.sigma, out.precision) + "\n";
    csv += "z,excess_survival,stability_survival,abs_error\n";
    for (const double z : zs) {
      const double e = excess.eval(z);
      const double s = gpd_survival(image, z);
      csv += format_number(z, out.precision) + ',' + format_number(e, out.precision) + ',' +
             format_number(s, out.precision) + ',' + format_number(std::fabs(e - s), out.precision) +
             '\n';
    }
    write_text_atomic(out.path, csv);
    return 0;
  }
  if (out.format == OutputFormat::json) {
    ordered_json doc;
    doc["gamma"] = image.gamma;
    doc["sigma"] = sigma;
    doc["u"] = u;
    doc["sigma_prime"] = image.sigma;
    doc["table"] = ordered_json::array();
    for (const double z : zs) {
      const double e = excess.eval(z);
      const double s = gpd_survival(image, z);
      doc["table"].push_back({{"z", z}, {"excess_survival", e}, {"stability_survival", s},
                              {"abs_error", std::fabs(e - s)}});
    }
    write_text_atomic(out.path, doc.dump(2) + "\n");
    return 0;
  }
  throw std::invalid_argument("stability: svg output is not supported");
}

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"potent: peaks-over-threshold entropy toolkit"};
  app.require_subcommand(1);

  std::string out_path = "-";
  std::string format = "csv";
  int precision = 10;
  double rel_tol = kDefaultRelTol;
  std::uint64_t seed = 0;
  app.add_option("--out", out_path, "output path, '-' for stdout")->capture_default_str();
  app.add_option("--format", format, "csv | json | svg")->capture_default_str();
  app.add_option("--precision", precision, "significant digits, 4..17")->capture_default_str();
  app.add_option("--tol", rel_tol, "quadrature relative tolerance")->capture_default_str();
  app.add_option("--seed", seed, "rng seed (reserved for sampling extensions)")
      ->capture_default_str();

  std::vector<double> gammas{0.0, 1.0, 10.0, 100.0};
  double sigma = 1.0;
  double x_max = 5.0;
  int plot_points = 201;
  auto* plot = app.add_subcommand("plot-gpd", "emit GPD density curves");
  plot->fallthrough();
  plot->add_option("--gammas", gammas, "shape values")->delimiter(',')->capture_default_str();
  plot->add_option("--sigma", sigma, "scale")->capture_default_str();
  plot->add_option("--x-max", x_max, "grid end")->capture_default_str();
  plot->add_option("--points", plot_points, "grid size")->capture_default_str();

  double q = 0.0, mu = 0.0, theta = 0.0;
  auto* maxent = app.add_subcommand("maxent", "solve the max-entropy problem for (q, mu, theta)");
  maxent->fallthrough();
  maxent->add_option("--q", q, "entropy order in (1/2, 1]")->required();
  maxent->add_option("--mu", mu, "first moment")->required();
  maxent->add_option("--theta", theta, "1-norm")->required();

  std::string model_spec;
  std::vector<double> u_list;
  double excess_q = 1.0;
  bool excess_normalized = false;
  auto* excess = app.add_subcommand("excess", "excess functionals vs predictions at thresholds");
  excess->fallthrough();
  excess->add_option("model", model_spec, "model spec, e.g. pareto:3")->required();
  excess->add_option("--u", u_list, "thresholds, increasing")->delimiter(',')->required();
  excess->add_option("--q", excess_q, "entropy order")->required();
  excess->add_flag("--normalized", excess_normalized, "normalize the excess per tail class");

  std::string sweep_model;
  double u_min = 1.0, u_max = 100.0;
  int sweep_points = 10;
  std::vector<std::string> metric_names{"functionals", "sup_norm"};
  bool sweep_normalized = true;
  auto* sweep = app.add_subcommand("sweep", "log-spaced threshold sweep of convergence metrics");
  sweep->fallthrough();
  sweep->add_option("model", sweep_model, "model spec")->required();
  sweep->add_option("--u-min", u_min, "smallest threshold")->required();
  sweep->add_option("--u-max", u_max, "largest threshold")->required();
  sweep->add_option("--points", sweep_points, "grid size")->capture_default_str();
  sweep->add_option("--metrics", metric_names,
                    "subset of functionals,entropy_gap,bregman,sup_norm")
      ->delimiter(',')
      ->capture_default_str();
  sweep->add_flag("--normalized,!--no-normalized", sweep_normalized,
                  "normalize the excess per tail class")
      ->capture_default_str();

  double st_gamma = 0.0, st_sigma = 1.0, st_u = 1.0;
  auto* stability = app.add_subcommand("stability", "verify the GPD thresholding identity");
  stability->fallthrough();
  stability->add_option("--gamma", st_gamma, "shape")->required();
  stability->add_option("--sigma", st_sigma, "scale")->required();
  stability->add_option("--u", st_u, "threshold")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  OutputSpec out;
  try {
    out.format = parse_format(format);
    out.path = out_path;
    out.precision = precision;
    validate_output_spec(out);
    (void)seed;

    if (plot->parsed()) return cmd_plot_gpd(gammas, sigma, x_max, plot_points, out);
    if (maxent->parsed()) return cmd_maxent(q, mu, theta, out);
    if (excess->parsed()) {
      return cmd_excess(model_spec, u_list, excess_q, excess_normalized, rel_tol, out);
    }
    if (sweep->parsed()) {
      return cmd_sweep(sweep_model, u_min, u_max, sweep_points, metric_names, sweep_normalized,
                       rel_tol, out);
    }
    if (stability->parsed()) return cmd_stability(st_gamma, st_sigma, st_u, out);
  } catch (const NonConvergenceError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  } catch (const DivergenceError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  } catch (const std::domain_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 1;
}

}  // namespace potent

#include "copreg/cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "copreg/bench.hpp"
#include "copreg/csv.hpp"
#include "copreg/errors.hpp"
#include "copreg/experiments.hpp"
#include "copreg/fitted_model.hpp"
#include "copreg/nadaraya_watson.hpp"

namespace copreg {

namespace {

struct ColumnPick {
  std::string x;  // empty = first column
  std::string y;  // empty = second column
};

ColumnPick parse_columns(const std::string& text) {
  ColumnPick pick;
  if (text.empty()) return pick;
  const auto comma = text.find(',');
  if (comma == std::string::npos) {
    pick.x = text;
  } else {
    pick.x = text.substr(0, comma);
    pick.y = text.substr(comma + 1);
  }
  return pick;
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

// Reads the two named (or first two) numeric columns, applying the
// optional log transforms.
BivariateSample load_sample(const std::string& path, const ColumnPick& pick,
                            bool log_x, bool log_y) {
  const CsvTable t = read_csv_file(path);
  if (t.header.size() < 2)
    throw InvalidInput("CSV '" + path + "' needs at least two columns");
  const std::size_t cx = pick.x.empty() ? 0 : t.column(pick.x);
  const std::size_t cy = pick.y.empty() ? 1 : t.column(pick.y);
  BivariateSample s;
  s.x.reserve(t.rows.size());
  s.y.reserve(t.rows.size());
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    std::ostringstream ctx;
    ctx << path << " row " << (r + 2);
    double x = parse_double(t.rows[r][cx], ctx.str());
    double y = parse_double(t.rows[r][cy], ctx.str());
    if (log_x) {
      if (!(x > 0.0))
        throw InvalidInput("log transform needs positive x at " + ctx.str());
      x = std::log(x);
    }
    if (log_y) {
      if (!(y > 0.0))
        throw InvalidInput("log transform needs positive y at " + ctx.str());
      y = std::log(y);
    }
    s.x.push_back(x);
    s.y.push_back(y);
  }
  return s;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidInput("cannot open '" + path + "' for writing");
  out << content;
}

std::string default_summary_path(const std::string& report_path) {
  const auto dot = report_path.rfind('.');
  const std::string stem =
      dot == std::string::npos ? report_path : report_path.substr(0, dot);
  return stem + "_summary.csv";
}

void write_report(const ExperimentReport& report, const std::string& out_path,
                  const std::string& summary_path) {
  write_text_file(out_path, report.to_json().dump(2) + "\n");
  write_text_file(summary_path.empty() ? default_summary_path(out_path)
                                       : summary_path,
                  report.summary_csv());
}

// --- fit ------------------------------------------------------------------

struct FitArgs {
  std::string input, output, method = "checkerboard", columns, tie = "error";
  double s_exponent = 0.45;
  std::uint64_t seed = 0;
  bool log_x = false, log_y = false;
};

int run_fit(const FitArgs& a) {
  const BivariateSample sample =
      load_sample(a.input, parse_columns(a.columns), a.log_x, a.log_y);
  const FittedModel model =
      FittedModel::fit(sample, fit_method_from_string(a.method), a.s_exponent,
                       tie_policy_from_string(a.tie), a.seed);
  write_text_file(a.output, model.to_json().dump() + "\n");
  std::cout << "n=" << model.sample_size() << " N=" << model.resolution().N
            << " method=" << to_string(model.method())
            << " s=" << model.resolution().s_exponent << "\n";
  return 0;
}

// --- predict ---------------------------------------------------------------

struct PredictArgs {
  std::string model, input, output, columns;
  std::string fields = "mean";
  std::optional<double> tau, alpha;
};

int run_predict(const PredictArgs& a) {
  std::ifstream in(a.model, std::ios::binary);
  if (!in) throw InvalidInput("cannot open model file '" + a.model + "'");
  nlohmann::json mj;
  in >> mj;
  const FittedModel model = FittedModel::from_json(mj);

  const CsvTable t = read_csv_file(a.input);
  const ColumnPick pick = parse_columns(a.columns);
  const std::size_t cx = pick.x.empty() ? 0 : t.column(pick.x);

  const std::vector<std::string> fields = split_list(a.fields);
  if (fields.empty()) throw InvalidInput("no output fields requested");
  bool want_cdf = false;
  for (const auto& f : fields) {
    if (f == "q_lower" || f == "q_upper" || f == "q_mid") {
      if (!a.tau) throw InvalidInput("field '" + f + "' requires --tau");
    } else if (f == "expectile") {
      if (!a.alpha) throw InvalidInput("field 'expectile' requires --alpha");
    } else if (f == "cdf") {
      want_cdf = true;
    } else if (f != "mean" && f != "variance") {
      throw InvalidInput("unknown output field '" + f + "'");
    }
  }
  std::size_t cy = 0;
  if (want_cdf) {
    if (!pick.y.empty()) {
      cy = t.column(pick.y);
    } else if (t.header.size() >= 2) {
      cy = 1;
    } else {
      throw InvalidInput("field 'cdf' needs a y column in the query CSV");
    }
  }

  std::vector<double> xs(t.rows.size());
  std::vector<double> ys(want_cdf ? t.rows.size() : 0);
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    std::ostringstream ctx;
    ctx << a.input << " row " << (r + 2);
    xs[r] = parse_double(t.rows[r][cx], ctx.str());
    if (want_cdf) ys[r] = parse_double(t.rows[r][cy], ctx.str());
  }

  // Means go through the batch path; everything else is per-query.
  std::vector<double> means;
  for (const auto& f : fields)
    if (f == "mean") {
      means = model.mean_batch(xs);
      break;
    }

  std::vector<std::string> header = {"x"};
  for (const auto& f : fields) header.push_back(f);
  std::vector<std::vector<std::string>> rows(xs.size());
  for (std::size_t r = 0; r < xs.size(); ++r) {
    auto& row = rows[r];
    row.push_back(format_double(xs[r]));
    std::optional<QuantileInterval> qi;
    for (const auto& f : fields) {
      if (f == "mean") {
        row.push_back(format_double(means[r]));
      } else if (f == "q_lower" || f == "q_upper" || f == "q_mid") {
        if (!qi) qi = model.quantile(xs[r], *a.tau);
        const double v = f == "q_lower"   ? qi->lower
                         : f == "q_upper" ? qi->upper
                                          : qi->midpoint();
        row.push_back(format_double(v));
      } else if (f == "expectile") {
        row.push_back(format_double(model.expectile(xs[r], *a.alpha)));
      } else if (f == "variance") {
        row.push_back(format_double(model.variance(xs[r])));
      } else {  // cdf
        row.push_back(format_double(model.cdf(xs[r], ys[r])));
      }
    }
  }

  std::ostringstream os;
  write_csv(os, header, rows);
  if (a.output.empty())
    std::cout << os.str();
  else
    write_text_file(a.output, os.str());
  return 0;
}

// --- simulate ----------------------------------------------------------------

const nlohmann::json& require_field(const nlohmann::json& j,
                                    const std::string& key) {
  if (!j.contains(key))
    throw InvalidInput("config error at $." + key + ": missing field");
  return j.at(key);
}

template <class T>
T field_as(const nlohmann::json& j, const std::string& key) {
  try {
    return require_field(j, key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput("config error at $." + key + ": " + e.what());
  }
}

template <class T>
T field_or(const nlohmann::json& j, const std::string& key, T fallback) {
  if (!j.contains(key)) return fallback;
  return field_as<T>(j, key);
}

ExperimentReport run_simulation_config(const nlohmann::json& cfg,
                                       bool parallel) {
  const auto experiment = field_as<std::string>(cfg, "experiment");
  if (experiment == "copula-convergence") {
    ConvergenceConfig c;
    try {
      c.spec = CopulaSpec::make(
          copula_family_from_string(field_as<std::string>(cfg, "family")),
          field_or<double>(cfg, "theta", 0.0));
    } catch (const InvalidInput& e) {
      throw InvalidInput("config error at $.family: " + std::string(e.what()));
    }
    c.method = fit_method_from_string(
        field_or<std::string>(cfg, "method", "checkerboard"));
    c.n_grid = field_as<std::vector<int>>(cfg, "n_grid");
    c.replications = field_as<int>(cfg, "replications");
    c.s_exponent = field_or<double>(cfg, "s_exponent", 0.45);
    c.seed = field_or<std::uint64_t>(cfg, "seed", 0);
    c.parallel = parallel;
    return copula_convergence_experiment(c);
  }
  if (experiment == "regression") {
    RegressionConfig c;
    c.variant = field_as<std::string>(cfg, "variant");
    c.fit_method = fit_method_from_string(
        field_or<std::string>(cfg, "fit_method", "checkerboard"));
    c.n_grid = field_as<std::vector<int>>(cfg, "n_grid");
    c.replications = field_as<int>(cfg, "replications");
    c.m_eval = field_or<int>(cfg, "m_eval", 500);
    for (const auto& name :
         field_as<std::vector<std::string>>(cfg, "methods"))
      c.methods.push_back(regression_method_from_string(name));
    c.tau = field_or<double>(cfg, "tau", 0.5);
    c.alpha = field_or<double>(cfg, "alpha", 0.5);
    c.s_exponent = field_or<double>(cfg, "s_exponent", 0.45);
    c.seed = field_or<std::uint64_t>(cfg, "seed", 0);
    c.parallel = parallel;
    return regression_benchmark(c);
  }
  throw InvalidInput("config error at $.experiment: unknown experiment '" +
                     experiment + "'");
}

struct SimulateArgs {
  std::string config, output, summary;
  bool serial = false;
};

int run_simulate(const SimulateArgs& a) {
  std::ifstream in(a.config, std::ios::binary);
  if (!in) throw InvalidInput("cannot open config file '" + a.config + "'");
  nlohmann::json cfg;
  try {
    in >> cfg;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput("config parse error: " + std::string(e.what()));
  }
  const ExperimentReport report = run_simulation_config(cfg, !a.serial);
  write_report(report, a.output, a.summary);
  std::cout << "records=" << report.records.size() << " -> " << a.output
            << "\n";
  return 0;
}

// --- split-bench -------------------------------------------------------------

struct SplitArgs {
  std::string input, output, summary, columns;
  std::string methods = "cbe,nwe";
  std::string fit_method = "checkerboard";
  std::string tie = "random";
  double train_fraction = 0.8;
  double tau = 0.5;
  double s_exponent = 0.45;
  int replications = 200;
  std::uint64_t seed = 0;
  bool log_x = false, log_y = false, serial = false;
};

int run_split_bench(const SplitArgs& a) {
  const BivariateSample data =
      load_sample(a.input, parse_columns(a.columns), a.log_x, a.log_y);
  SplitConfig cfg;
  cfg.train_fraction = a.train_fraction;
  cfg.replications = a.replications;
  for (const auto& name : split_list(a.methods))
    cfg.methods.push_back(regression_method_from_string(name));
  cfg.fit_method = fit_method_from_string(a.fit_method);
  cfg.tau = a.tau;
  cfg.s_exponent = a.s_exponent;
  cfg.tie_policy = tie_policy_from_string(a.tie);
  cfg.seed = a.seed;
  cfg.parallel = !a.serial;
  const ExperimentReport report = split_benchmark(data, cfg);
  write_report(report, a.output, a.summary);
  std::cout << "records=" << report.records.size() << " -> " << a.output
            << "\n";
  return 0;
}

// --- bench -------------------------------------------------------------------

struct BenchArgs {
  std::string n_grid = "10000";
  std::string m_grid = "1000,10000,100000";
  std::string methods = "cbe,nwe";
  std::string output;
  std::uint64_t seed = 0;
};

int run_bench(const BenchArgs& a) {
  std::vector<int> ns, ms;
  for (const auto& s : split_list(a.n_grid)) ns.push_back(std::stoi(s));
  for (const auto& s : split_list(a.m_grid)) ms.push_back(std::stoi(s));
  const std::vector<std::string> methods = split_list(a.methods);

  const auto rows = scaling_bench(ns, ms, methods, a.seed);
  std::vector<std::vector<std::string>> csv_rows;
  for (const auto& r : rows)
    csv_rows.push_back({std::to_string(r.n), std::to_string(r.m), r.method,
                        format_double(r.seconds)});
  std::ostringstream os;
  write_csv(os, {"n", "m", "method", "seconds"}, csv_rows);
  if (a.output.empty())
    std::cout << os.str();
  else
    write_text_file(a.output, os.str());

  for (int n : ns)
    for (const auto& method : methods) {
      int positives = 0;
      for (const auto& r : rows)
        if (r.n == n && r.method == method && r.m > 0) ++positives;
      if (positives >= 2)
        std::cout << "slope n=" << n << " method=" << method << " "
                  << loglog_slope(rows, n, method) << "\n";
    }
  return 0;
}

}  // namespace

int cli_main(int argc, const char* const* argv) {
  CLI::App app{"Copula-based conditional distribution and regression tool"};
  app.require_subcommand(1);

  FitArgs fit_args;
  auto* fit = app.add_subcommand("fit", "Fit a model to a CSV sample");
  fit->add_option("--input", fit_args.input, "input CSV (header required)")
      ->required();
  fit->add_option("--output", fit_args.output, "model file to write")
      ->required();
  fit->add_option("--method", fit_args.method, "checkerboard|bernstein");
  fit->add_option("--s-exponent", fit_args.s_exponent,
                  "resolution exponent in (0, 0.5)");
  fit->add_option("--tie-policy", fit_args.tie, "error|random");
  fit->add_option("--seed", fit_args.seed, "seed for tie breaking");
  fit->add_option("--columns", fit_args.columns, "x,y column names");
  fit->add_flag("--log-x", fit_args.log_x, "log-transform x");
  fit->add_flag("--log-y", fit_args.log_y, "log-transform y");

  PredictArgs predict_args;
  auto* predict = app.add_subcommand("predict", "Evaluate a fitted model");
  predict->add_option("--model", predict_args.model, "model file")->required();
  predict->add_option("--input", predict_args.input, "query CSV")->required();
  predict->add_option("--output", predict_args.output,
                      "output CSV (default stdout)");
  predict->add_option("--fields", predict_args.fields,
                      "mean,q_lower,q_upper,q_mid,expectile,variance,cdf");
  double tau_opt = 0.0, alpha_opt = 0.0;
  auto* tau_flag = predict->add_option("--tau", tau_opt, "quantile level");
  auto* alpha_flag =
      predict->add_option("--alpha", alpha_opt, "expectile level");
  predict->add_option("--columns", predict_args.columns,
                      "x[,y] column names in the query CSV");

  SimulateArgs sim_args;
  auto* simulate =
      app.add_subcommand("simulate", "Run an experiment from a JSON config");
  simulate->add_option("--config", sim_args.config, "config JSON")->required();
  simulate->add_option("--output", sim_args.output, "report JSON")->required();
  simulate->add_option("--summary", sim_args.summary,
                       "summary CSV (default: <output>_summary.csv)");
  simulate->add_flag("--serial", sim_args.serial,
                     "disable parallel replications");

  SplitArgs split_args;
  auto* split =
      app.add_subcommand("split-bench", "Train/test split evaluation");
  split->add_option("--input", split_args.input, "data CSV")->required();
  split->add_option("--output", split_args.output, "report JSON")->required();
  split->add_option("--summary", split_args.summary, "summary CSV");
  split->add_option("--train-fraction", split_args.train_fraction,
                    "training fraction in (0,1)");
  split->add_option("--replications", split_args.replications,
                    "number of shuffle splits");
  split->add_option("--methods", split_args.methods, "cbe,nwe,cbqe,nwqe");
  split->add_option("--method", split_args.fit_method,
                    "checkerboard|bernstein");
  split->add_option("--tau", split_args.tau, "quantile level for cbqe/nwqe");
  split->add_option("--s-exponent", split_args.s_exponent,
                    "resolution exponent");
  split->add_option("--tie-policy", split_args.tie, "error|random");
  split->add_option("--seed", split_args.seed, "seed");
  split->add_option("--columns", split_args.columns, "x,y column names");
  split->add_flag("--log-x", split_args.log_x, "log-transform x");
  split->add_flag("--log-y", split_args.log_y, "log-transform y");
  split->add_flag("--serial", split_args.serial, "disable parallelism");

  BenchArgs bench_args;
  auto* bench =
      app.add_subcommand("bench", "Timing of batch prediction vs m and n");
  bench->add_option("--n-grid", bench_args.n_grid, "sample sizes");
  bench->add_option("--m-grid", bench_args.m_grid, "query counts");
  bench->add_option("--methods", bench_args.methods, "cbe,nwe");
  bench->add_option("--output", bench_args.output, "CSV (default stdout)");
  bench->add_option("--seed", bench_args.seed, "seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (*fit) return run_fit(fit_args);
    if (*predict) {
      if (*tau_flag) predict_args.tau = tau_opt;
      if (*alpha_flag) predict_args.alpha = alpha_opt;
      return run_predict(predict_args);
    }
    if (*simulate) return run_simulate(sim_args);
    if (*split) return run_split_bench(split_args);
    if (*bench) return run_bench(bench_args);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "unexpected error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace copreg

#include "copreg/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>

#include "copreg/csv.hpp"
#include "copreg/errors.hpp"
#include "copreg/kernel_evaluator.hpp"
#include "copreg/nadaraya_watson.hpp"
#include "copreg/rng.hpp"

namespace copreg {

double quantile_type7(std::vector<double> v, double q) {
  if (v.empty()) throw EmptyPointSet("quantile of an empty vector");
  std::sort(v.begin(), v.end());
  const double h = q * (static_cast<double>(v.size()) - 1.0);
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const auto hi = std::min(lo + 1, v.size() - 1);
  const double frac = h - std::floor(h);
  return v[lo] + frac * (v[hi] - v[lo]);
}

nlohmann::ordered_json ExperimentReport::to_json() const {
  nlohmann::ordered_json j;
  j["config"] = config;
  auto& recs = j["records"] = nlohmann::ordered_json::array();
  for (const auto& r : records) {
    nlohmann::ordered_json rec;
    rec["n"] = r.n;
    rec["rep"] = r.rep;
    rec["method"] = r.method;
    rec["max_error"] = r.max_error;
    rec["mean_error"] = r.mean_error;
    recs.push_back(std::move(rec));
  }
  auto& summary = j["summary"] = nlohmann::ordered_json::array();
  std::map<std::pair<int, std::string>, std::vector<const ReplicationRecord*>>
      groups;
  for (const auto& r : records) groups[{r.n, r.method}].push_back(&r);
  for (const auto& [key, group] : groups) {
    for (const char* metric : {"max_error", "mean_error"}) {
      std::vector<double> vals;
      vals.reserve(group.size());
      for (const auto* r : group)
        vals.push_back(std::string_view(metric) == "max_error" ? r->max_error
                                                               : r->mean_error);
      nlohmann::ordered_json row;
      row["n"] = key.first;
      row["method"] = key.second;
      row["metric"] = metric;
      row["q10"] = quantile_type7(vals, 0.10);
      row["q25"] = quantile_type7(vals, 0.25);
      row["q50"] = quantile_type7(vals, 0.50);
      row["q75"] = quantile_type7(vals, 0.75);
      row["q90"] = quantile_type7(vals, 0.90);
      summary.push_back(std::move(row));
    }
  }
  return j;
}

std::string ExperimentReport::summary_csv() const {
  const auto j = to_json();
  std::vector<std::vector<std::string>> rows;
  for (const auto& row : j["summary"]) {
    rows.push_back({std::to_string(row["n"].get<int>()),
                    row["method"].get<std::string>(),
                    row["metric"].get<std::string>(),
                    format_double(row["q10"].get<double>()),
                    format_double(row["q25"].get<double>()),
                    format_double(row["q50"].get<double>()),
                    format_double(row["q75"].get<double>()),
                    format_double(row["q90"].get<double>())});
  }
  std::ostringstream os;
  write_csv(os, {"n", "method", "metric", "q10", "q25", "q50", "q75", "q90"},
            rows);
  return os.str();
}

double ExperimentReport::median(int n, const std::string& method,
                                const std::string& metric) const {
  std::vector<double> vals;
  for (const auto& r : records)
    if (r.n == n && r.method == method)
      vals.push_back(metric == "max_error" ? r.max_error : r.mean_error);
  if (vals.empty()) throw EmptyPointSet("no records for the requested group");
  return quantile_type7(std::move(vals), 0.5);
}

namespace {

template <class Fn>
void run_tasks(std::size_t count, bool parallel, Fn&& fn) {
  const auto c = static_cast<std::ptrdiff_t>(count);
  if (parallel) {
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t t = 0; t < c; ++t) fn(static_cast<std::size_t>(t));
  } else {
    for (std::ptrdiff_t t = 0; t < c; ++t) fn(static_cast<std::size_t>(t));
  }
}

int eval_points_for(int n) {
  const int root = static_cast<int>(
      std::floor(std::pow(static_cast<double>(n), 0.45) + 1e-9));
  return 2 * root * root;
}

}  // namespace

ExperimentReport copula_convergence_experiment(const ConvergenceConfig& cfg) {
  if (cfg.replications < 1) throw InvalidInput("replications must be >= 1");
  if (cfg.n_grid.empty()) throw InvalidInput("n_grid must not be empty");

  ExperimentReport report;
  report.config["experiment"] = "copula-convergence";
  report.config["family"] = std::string(to_string(cfg.spec.family()));
  report.config["theta"] = cfg.spec.theta();
  report.config["method"] = std::string(to_string(cfg.method));
  report.config["s_exponent"] = cfg.s_exponent;
  report.config["n_grid"] = cfg.n_grid;
  report.config["replications"] = cfg.replications;
  report.config["seed"] = cfg.seed;

  const std::size_t tasks =
      cfg.n_grid.size() * static_cast<std::size_t>(cfg.replications);
  report.records.resize(tasks);

  run_tasks(tasks, cfg.parallel, [&](std::size_t t) {
    const std::size_t n_idx = t / static_cast<std::size_t>(cfg.replications);
    const int rep = static_cast<int>(t % cfg.replications);
    const int n = cfg.n_grid[n_idx];
    const std::uint64_t task_seed = derive_seed(cfg.seed, t);

    const BivariateSample data =
        cfg.spec.sample(static_cast<std::size_t>(n), derive_seed(task_seed, 0));
    const PseudoSample pseudo =
        rank_transform(data, TiePolicy::random, derive_seed(task_seed, 1));
    const Resolution res =
        Resolution::choose(static_cast<std::size_t>(n), cfg.s_exponent);
    const KernelEvaluator fitted =
        cfg.method == FitMethod::checkerboard
            ? KernelEvaluator(CheckerboardModel::from_pseudo(pseudo, res.N))
            : KernelEvaluator(BernsteinModel::from_pseudo(pseudo, res.N));
    const KernelEvaluator truth(cfg.spec);

    Rng point_rng(derive_seed(task_seed, 2));
    const int m = eval_points_for(n);
    double worst = 0.0, total = 0.0;
    for (int k = 0; k < m; ++k) {
      const double x = point_rng.uniform();
      const double y = point_rng.uniform();
      const double d = std::abs(fitted(x, y) - truth(x, y));
      worst = std::max(worst, d);
      total += d;
    }
    report.records[t] = ReplicationRecord{
        n, rep, std::string(to_string(cfg.method)), worst, total / m};
  });
  return report;
}

RegressionMethod regression_method_from_string(std::string_view s) {
  if (s == "cbe") return RegressionMethod::cbe;
  if (s == "nwe") return RegressionMethod::nwe;
  if (s == "cbqe") return RegressionMethod::cbqe;
  if (s == "nwqe") return RegressionMethod::nwqe;
  if (s == "cbee") return RegressionMethod::cbee;
  if (s == "truth") return RegressionMethod::truth;
  throw InvalidInput("unknown regression method '" + std::string(s) + "'");
}

std::string_view to_string(RegressionMethod m) {
  switch (m) {
    case RegressionMethod::cbe:
      return "cbe";
    case RegressionMethod::nwe:
      return "nwe";
    case RegressionMethod::cbqe:
      return "cbqe";
    case RegressionMethod::nwqe:
      return "nwqe";
    case RegressionMethod::cbee:
      return "cbee";
    default:
      return "truth";
  }
}

namespace {

bool uses_fitted(RegressionMethod m) {
  return m == RegressionMethod::cbe || m == RegressionMethod::cbqe ||
         m == RegressionMethod::cbee;
}
bool uses_nw(RegressionMethod m) {
  return m == RegressionMethod::nwe || m == RegressionMethod::nwqe;
}

struct ErrorStats {
  double max = 0.0;
  double mean = 0.0;
};

ErrorStats error_stats(const std::vector<double>& pred,
                       const std::vector<double>& truth) {
  ErrorStats s;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    const double d = std::abs(pred[i] - truth[i]);
    s.max = std::max(s.max, d);
    s.mean += d;
  }
  s.mean /= static_cast<double>(pred.size());
  return s;
}

}  // namespace

ExperimentReport regression_benchmark(const RegressionConfig& cfg) {
  if (cfg.replications < 1) throw InvalidInput("replications must be >= 1");
  if (cfg.n_grid.empty()) throw InvalidInput("n_grid must not be empty");
  if (cfg.methods.empty()) throw InvalidInput("methods must not be empty");
  if (cfg.m_eval < 1) throw InvalidInput("m_eval must be >= 1");
  const GammaBetaSpec spec = GammaBetaSpec::from_tag(cfg.variant);

  ExperimentReport report;
  report.config["experiment"] = "regression";
  report.config["variant"] = cfg.variant;
  report.config["fit_method"] = std::string(to_string(cfg.fit_method));
  report.config["n_grid"] = cfg.n_grid;
  report.config["replications"] = cfg.replications;
  report.config["m_eval"] = cfg.m_eval;
  {
    std::vector<std::string> names;
    for (auto m : cfg.methods) names.emplace_back(to_string(m));
    report.config["methods"] = names;
  }
  report.config["tau"] = cfg.tau;
  report.config["alpha"] = cfg.alpha;
  report.config["s_exponent"] = cfg.s_exponent;
  report.config["seed"] = cfg.seed;

  const std::size_t cells =
      cfg.n_grid.size() * static_cast<std::size_t>(cfg.replications);
  report.records.resize(cells * cfg.methods.size());

  run_tasks(cells, cfg.parallel, [&](std::size_t t) {
    const std::size_t n_idx = t / static_cast<std::size_t>(cfg.replications);
    const int rep = static_cast<int>(t % cfg.replications);
    const int n = cfg.n_grid[n_idx];
    const std::uint64_t task_seed = derive_seed(cfg.seed, t);

    const BivariateSample data =
        spec.sample(static_cast<std::size_t>(n), derive_seed(task_seed, 0));
    Rng eval_rng(derive_seed(task_seed, 1));
    std::vector<double> xs(static_cast<std::size_t>(cfg.m_eval));
    for (auto& x : xs) x = spec.draw_covariate(eval_rng);

    bool need_fit = false, need_nw = false;
    for (auto m : cfg.methods) {
      need_fit = need_fit || uses_fitted(m);
      need_nw = need_nw || uses_nw(m);
    }
    std::optional<FittedModel> fitted;
    if (need_fit)
      fitted = FittedModel::fit(data, cfg.fit_method, cfg.s_exponent,
                                TiePolicy::random, derive_seed(task_seed, 2));
    std::optional<NWModel> nw;
    if (need_nw) nw = NWModel::fit(data);

    for (std::size_t mi = 0; mi < cfg.methods.size(); ++mi) {
      const RegressionMethod method = cfg.methods[mi];
      std::vector<double> pred(xs.size()), truth(xs.size());
      switch (method) {
        case RegressionMethod::cbe:
          pred = fitted->mean_batch_serial(xs);
          for (std::size_t i = 0; i < xs.size(); ++i)
            truth[i] = spec.mean(xs[i]);
          break;
        case RegressionMethod::nwe:
          pred = nw->mean_batch_serial(xs);
          for (std::size_t i = 0; i < xs.size(); ++i)
            truth[i] = spec.mean(xs[i]);
          break;
        case RegressionMethod::cbqe:
          for (std::size_t i = 0; i < xs.size(); ++i) {
            pred[i] = fitted->quantile(xs[i], cfg.tau).midpoint();
            truth[i] = spec.quantile(xs[i], cfg.tau);
          }
          break;
        case RegressionMethod::nwqe:
          for (std::size_t i = 0; i < xs.size(); ++i) {
            pred[i] = nw->quantile(xs[i], cfg.tau);
            truth[i] = spec.quantile(xs[i], cfg.tau);
          }
          break;
        case RegressionMethod::cbee:
          for (std::size_t i = 0; i < xs.size(); ++i) {
            pred[i] = fitted->expectile(xs[i], cfg.alpha);
            truth[i] = spec.expectile(xs[i], cfg.alpha);
          }
          break;
        case RegressionMethod::truth:
          for (std::size_t i = 0; i < xs.size(); ++i) {
            pred[i] = spec.mean(xs[i]);
            truth[i] = spec.mean(xs[i]);
          }
          break;
      }
      const ErrorStats s = error_stats(pred, truth);
      report.records[t * cfg.methods.size() + mi] = ReplicationRecord{
          n, rep, std::string(to_string(method)), s.max, s.mean};
    }
  });
  return report;
}

ExperimentReport split_benchmark(const BivariateSample& data,
                                 const SplitConfig& cfg) {
  data.validate();
  if (!(cfg.train_fraction > 0.0 && cfg.train_fraction < 1.0))
    throw InvalidInput("train fraction must lie in (0,1)");
  if (cfg.replications < 1) throw InvalidInput("replications must be >= 1");
  if (cfg.methods.empty()) throw InvalidInput("methods must not be empty");
  for (auto m : cfg.methods)
    if (m == RegressionMethod::cbee || m == RegressionMethod::truth)
      throw InvalidInput("split benchmark supports cbe, nwe, cbqe, nwqe");

  const std::size_t n = data.size();
  const auto n_train = static_cast<std::size_t>(
      std::llround(cfg.train_fraction * static_cast<double>(n)));
  if (n_train < 4) throw DegenerateSample("training split needs >= 4 points");
  if (n_train >= n) throw DegenerateSample("test split needs >= 1 point");

  ExperimentReport report;
  report.config["experiment"] = "split";
  report.config["n"] = n;
  report.config["train_fraction"] = cfg.train_fraction;
  report.config["fit_method"] = std::string(to_string(cfg.fit_method));
  report.config["replications"] = cfg.replications;
  {
    std::vector<std::string> names;
    for (auto m : cfg.methods) names.emplace_back(to_string(m));
    report.config["methods"] = names;
  }
  report.config["tau"] = cfg.tau;
  report.config["s_exponent"] = cfg.s_exponent;
  report.config["tie_policy"] = std::string(to_string(cfg.tie_policy));
  report.config["seed"] = cfg.seed;

  const auto reps = static_cast<std::size_t>(cfg.replications);
  report.records.resize(reps * cfg.methods.size());

  run_tasks(reps, cfg.parallel, [&](std::size_t t) {
    const std::uint64_t task_seed = derive_seed(cfg.seed, t);
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    Rng shuffle_rng(derive_seed(task_seed, 0));
    shuffle_rng.shuffle(perm.begin(), perm.end());

    BivariateSample train;
    std::vector<double> test_x, test_y;
    for (std::size_t i = 0; i < n; ++i) {
      if (i < n_train) {
        train.x.push_back(data.x[perm[i]]);
        train.y.push_back(data.y[perm[i]]);
      } else {
        test_x.push_back(data.x[perm[i]]);
        test_y.push_back(data.y[perm[i]]);
      }
    }

    bool need_fit = false, need_nw = false;
    for (auto m : cfg.methods) {
      need_fit = need_fit || uses_fitted(m);
      need_nw = need_nw || uses_nw(m);
    }
    std::optional<FittedModel> fitted;
    if (need_fit)
      fitted = FittedModel::fit(train, cfg.fit_method, cfg.s_exponent,
                                cfg.tie_policy, derive_seed(task_seed, 1));
    std::optional<NWModel> nw;
    if (need_nw) nw = NWModel::fit(train);

    for (std::size_t mi = 0; mi < cfg.methods.size(); ++mi) {
      const RegressionMethod method = cfg.methods[mi];
      std::vector<double> pred(test_x.size());
      switch (method) {
        case RegressionMethod::cbe:
          pred = fitted->mean_batch_serial(test_x);
          break;
        case RegressionMethod::nwe:
          pred = nw->mean_batch_serial(test_x);
          break;
        case RegressionMethod::cbqe:
          for (std::size_t i = 0; i < test_x.size(); ++i)
            pred[i] = fitted->quantile(test_x[i], cfg.tau).midpoint();
          break;
        case RegressionMethod::nwqe:
          for (std::size_t i = 0; i < test_x.size(); ++i)
            pred[i] = nw->quantile(test_x[i], cfg.tau);
          break;
        default:
          break;
      }
      const ErrorStats s = error_stats(pred, test_y);
      report.records[t * cfg.methods.size() + mi] =
          ReplicationRecord{static_cast<int>(n_train), static_cast<int>(t),
                            std::string(to_string(method)), s.max, s.mean};
    }
  });
  return report;
}

}  // namespace copreg

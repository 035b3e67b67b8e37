#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "copreg/fitted_model.hpp"
#include "copreg/gamma_beta.hpp"
#include "copreg/parametric.hpp"
#include "copreg/sample.hpp"

#include <json.hpp>

namespace copreg {

struct ReplicationRecord {
  int n;
  int rep;
  std::string method;
  double max_error;
  double mean_error;
};

// Replication-level error statistics plus config echo. Serialization is
// byte-deterministic given (config, seed): records are stored in task
// order regardless of worker scheduling.
struct ExperimentReport {
  nlohmann::ordered_json config;
  std::vector<ReplicationRecord> records;

  nlohmann::ordered_json to_json() const;
  // Summary rows: n, method, metric, q10, q25, q50, q75, q90.
  std::string summary_csv() const;
  double median(int n, const std::string& method,
                const std::string& metric) const;
};

// Linear-interpolation sample quantile (R type 7) on a copy of v.
double quantile_type7(std::vector<double> v, double q);

// Empirical-copula kernel convergence: per replication, draw n pairs
// from the copula, fit the chosen approximation at N = floor(n^s), and
// record the max/mean absolute kernel difference against the closed
// form over m = 2*floor(n^0.45)^2 fresh uniform points.
struct ConvergenceConfig {
  CopulaSpec spec = CopulaSpec::pi();
  FitMethod method = FitMethod::checkerboard;
  std::vector<int> n_grid;
  int replications = 50;
  double s_exponent = 0.45;
  std::uint64_t seed = 0;
  bool parallel = true;
};
ExperimentReport copula_convergence_experiment(const ConvergenceConfig& cfg);

// Regression benchmark methods: checkerboard mean / Nadaraya-Watson
// mean / the two quantile versions / checkerboard expectile, plus the
// truth itself as a zero-error diagnostic.
enum class RegressionMethod { cbe, nwe, cbqe, nwqe, cbee, truth };
RegressionMethod regression_method_from_string(std::string_view s);
std::string_view to_string(RegressionMethod m);

struct RegressionConfig {
  std::string variant = "standard";
  FitMethod fit_method = FitMethod::checkerboard;
  std::vector<int> n_grid;
  int replications = 20;
  int m_eval = 500;
  std::vector<RegressionMethod> methods;
  double tau = 0.5;
  double alpha = 0.5;
  double s_exponent = 0.45;
  std::uint64_t seed = 0;
  bool parallel = true;
};
ExperimentReport regression_benchmark(const RegressionConfig& cfg);

// Shuffle-split evaluation on real data: fit on the training part,
// record max/mean |prediction - observed y| on the held-out part.
struct SplitConfig {
  double train_fraction = 0.8;
  int replications = 200;
  std::vector<RegressionMethod> methods;  // cbe / nwe / cbqe / nwqe
  FitMethod fit_method = FitMethod::checkerboard;
  double tau = 0.5;
  double s_exponent = 0.45;
  TiePolicy tie_policy = TiePolicy::random;
  std::uint64_t seed = 0;
  bool parallel = true;
};
ExperimentReport split_benchmark(const BivariateSample& data,
                                 const SplitConfig& cfg);

}  // namespace copreg

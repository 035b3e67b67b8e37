#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "copreg/bernstein.hpp"
#include "copreg/checkerboard.hpp"
#include "copreg/resolution.hpp"
#include "copreg/sample.hpp"

#include <json.hpp>

namespace copreg {

enum class FitMethod { checkerboard, bernstein };

FitMethod fit_method_from_string(std::string_view s);
std::string_view to_string(FitMethod m);

// Interval-valued tau-quantile [sup{y: F(y) < tau}, inf{y: F(y) > tau}]
// of the estimated conditional law. For tau in (0,1) and a step CDF both
// endpoints are attained order statistics, hence finite; the fields can
// still carry +-infinity so degenerate conventions stay representable.
struct QuantileInterval {
  double lower;
  double upper;
  double tau;
  double clamped_lower;  // lower clamped to [Y^(1), Y^(n)]
  double clamped_upper;

  // Point prediction convention: midpoint of the clamped interval.
  double midpoint() const { return 0.5 * (clamped_lower + clamped_upper); }
};

// User-declared integrability annotation; never enforced, only carried.
struct RegularityNote {
  bool bounded_response = false;
  std::optional<double> bound;
};

// The fitted conditional-distribution estimator: empirical copula
// smoothed by a checkerboard or Bernstein approximation at resolution
// N = floor(n^s), composed with the marginal ECDFs. Immutable after
// construction; every predict member is pure and thread-safe.
class FittedModel {
 public:
  using Payload = std::variant<CheckerboardModel, BernsteinModel>;

  static FittedModel fit(const BivariateSample& sample, FitMethod method,
                         double s_exponent = 0.45,
                         TiePolicy ties = TiePolicy::error,
                         std::uint64_t seed = 0);

  // Assemble from parts (fixtures, deserialization). x_sorted/y_sorted
  // must be ascending and of equal length >= 2.
  FittedModel(FitMethod method, Resolution res, Payload payload,
              std::vector<double> x_sorted, std::vector<double> y_sorted);

  std::size_t sample_size() const { return x_sorted_.size(); }
  FitMethod method() const { return method_; }
  const Resolution& resolution() const { return res_; }
  const Payload& payload() const { return payload_; }
  const std::vector<double>& x_sorted() const { return x_sorted_; }
  const std::vector<double>& y_order_stats() const { return y_sorted_; }
  const RegularityNote& regularity() const { return regularity_; }
  void set_regularity(RegularityNote note) { regularity_ = note; }

  // Marginal ECDFs (right-continuous, values in {0, 1/n, ..., 1}).
  double ecdf_x(double x) const;
  double ecdf_y(double y) const;

  // Estimated conditional CDF K(F_n(x), [0, G_n(y)]).
  double cdf(double x, double y) const;

  // Conditional mean via the order-statistic sums; for the
  // checkerboard method a step function of x with at most N values.
  double mean(double x) const;

  // Batch mean: precomputes the distinct step values (checkerboard,
  // O(N n)) or the degree-N coefficient vector (Bernstein, O(nN + N^2))
  // once per call, then answers each query in O(1) / O(N). Bitwise
  // equal to mapping mean() over xs.
  std::vector<double> mean_batch(std::span<const double> xs) const;
  std::vector<double> mean_batch_serial(std::span<const double> xs) const;

  QuantileInterval quantile(double x, double tau) const;

  // Unique root of the expectile balance equation for the estimated
  // conditional law; bisection on [Y^(1), Y^(n)] to 1e-10 * range.
  double expectile(double x, double alpha) const;

  // Variance of the discrete law sitting on the order statistics with
  // probabilities given by the CDF increments.
  double variance(double x) const;

  nlohmann::ordered_json to_json() const;
  static FittedModel from_json(const nlohmann::json& j);

 private:
  double kernel_at(double u, double w) const;
  // K(u, [0, i/n]) for the x-cell i0 (checkerboard only).
  double mean_for_cell(int i0) const;
  struct BernsteinMeanCoeffs {
    double dplus_total;
    std::vector<double> w;  // index a-1 for a = 1..N
  };
  BernsteinMeanCoeffs bernstein_mean_coeffs() const;
  double bernstein_mean_eval(const BernsteinMeanCoeffs& c, double u) const;
  // w -> K(u, [0, w]) at the ECDF value u = x_count/n, as a reusable
  // closure; the checkerboard x-cell is resolved in exact integer
  // arithmetic.
  std::function<double(double)> conditional_kernel(std::size_t x_count) const;

  template <bool Parallel>
  std::vector<double> mean_batch_impl(std::span<const double> xs) const;

  FitMethod method_;
  Resolution res_;
  Payload payload_;
  std::vector<double> x_sorted_;
  std::vector<double> y_sorted_;
  RegularityNote regularity_;
};

}  // namespace copreg

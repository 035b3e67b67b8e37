#include "copreg/nadaraya_watson.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "copreg/errors.hpp"

namespace copreg {

double silverman_bandwidth(std::span<const double> xs) {
  const std::size_t n = xs.size();
  if (n < 2) throw DegenerateSample("bandwidth needs at least 2 points");
  double mean = 0.0;
  for (double v : xs) mean += v;
  mean /= static_cast<double>(n);
  double ss = 0.0;
  for (double v : xs) ss += (v - mean) * (v - mean);
  if (ss == 0.0)
    throw DegenerateSample("bandwidth undefined for constant covariates");
  const double sd = std::sqrt(ss / static_cast<double>(n - 1));
  return sd * std::pow(static_cast<double>(n), -0.2);
}

NWModel::NWModel(const BivariateSample& sample, double bandwidth)
    : h_(bandwidth) {
  sample.validate();
  if (!(h_ > 0.0)) throw InvalidInput("bandwidth must be positive");
  const std::size_t n = sample.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (sample.x[a] != sample.x[b]) return sample.x[a] < sample.x[b];
    return sample.y[a] < sample.y[b];
  });
  x_.resize(n);
  y_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    x_[i] = sample.x[order[i]];
    y_[i] = sample.y[order[i]];
  }
  by_y_.resize(n);
  std::iota(by_y_.begin(), by_y_.end(), 0u);
  std::sort(by_y_.begin(), by_y_.end(), [&](std::uint32_t a, std::uint32_t b) {
    if (y_[a] != y_[b]) return y_[a] < y_[b];
    return a < b;
  });
  y_sorted_.resize(n);
  for (std::size_t i = 0; i < n; ++i) y_sorted_[i] = y_[by_y_[i]];
}

NWModel NWModel::fit(const BivariateSample& sample) {
  // Sort before the bandwidth pass so the result does not depend on the
  // input order at the last ulp.
  std::vector<double> xs = sample.x;
  std::sort(xs.begin(), xs.end());
  return NWModel(sample, silverman_bandwidth(xs));
}

double NWModel::mean(double x) const {
  // Shift the squared distances by their minimum before exponentiating,
  // so the weight sum never underflows to zero for far-out queries.
  const std::size_t n = x_.size();
  double zmin = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    const double z = (x - x_[i]) / h_;
    zmin = std::min(zmin, z * z);
  }
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double z = (x - x_[i]) / h_;
    const double w = std::exp(-0.5 * (z * z - zmin));
    num += w * y_[i];
    den += w;
  }
  return num / den;
}

double NWModel::quantile(double x, double tau) const {
  if (!(tau > 0.0 && tau < 1.0))
    throw OutOfDomain("quantile level must lie in (0,1)");
  const std::size_t n = x_.size();
  double zmin = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    const double z = (x - x_[i]) / h_;
    zmin = std::min(zmin, z * z);
  }
  std::vector<double> w(n);
  double total = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double z = (x - x_[by_y_[k]]) / h_;
    w[k] = std::exp(-0.5 * (z * z - zmin));
    total += w[k];
  }
  const double target = tau * total;
  double cum = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    cum += w[k];
    if (cum >= target) return y_sorted_[k];
  }
  return y_sorted_.back();  // numeric slack
}

namespace {

template <class Fn>
std::vector<double> map_queries(std::span<const double> xs, bool parallel,
                                Fn&& fn) {
  std::vector<double> out(xs.size());
  const auto count = static_cast<std::ptrdiff_t>(xs.size());
  if (parallel) {
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t q = 0; q < count; ++q)
      out[static_cast<std::size_t>(q)] = fn(xs[static_cast<std::size_t>(q)]);
  } else {
    for (std::ptrdiff_t q = 0; q < count; ++q)
      out[static_cast<std::size_t>(q)] = fn(xs[static_cast<std::size_t>(q)]);
  }
  return out;
}

}  // namespace

std::vector<double> NWModel::mean_batch(std::span<const double> xs) const {
  return map_queries(xs, true, [&](double x) { return mean(x); });
}

std::vector<double> NWModel::mean_batch_serial(
    std::span<const double> xs) const {
  return map_queries(xs, false, [&](double x) { return mean(x); });
}

std::vector<double> NWModel::quantile_batch(std::span<const double> xs,
                                            double tau) const {
  return map_queries(xs, true, [&](double x) { return quantile(x, tau); });
}

std::vector<double> NWModel::quantile_batch_serial(std::span<const double> xs,
                                                   double tau) const {
  return map_queries(xs, false, [&](double x) { return quantile(x, tau); });
}

}  // namespace copreg

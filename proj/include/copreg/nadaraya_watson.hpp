#pragma once

#include <span>
#include <vector>

#include "copreg/sample.hpp"

namespace copreg {

// Silverman's rule of thumb: sample standard deviation (n-1 denominator)
// times n^(-1/5). Throws DegenerateSample for n < 2 or constant input.
double silverman_bandwidth(std::span<const double> xs);

// Gaussian-kernel Nadaraya-Watson regression: weighted mean and weighted
// ECDF quantiles. Training pairs are stored sorted by (x, y), so
// predictions are invariant under permutation of the input. Immutable
// after construction, queries are pure.
class NWModel {
 public:
  NWModel(const BivariateSample& sample, double bandwidth);

  // Fit with the Silverman bandwidth.
  static NWModel fit(const BivariateSample& sample);

  double bandwidth() const { return h_; }
  std::size_t size() const { return x_.size(); }

  double mean(double x) const;

  // Left-continuous generalized inverse of the weighted ECDF at tau,
  // i.e. inf{y : F(y|x) >= tau}. O(n) per query after the one-off
  // y-presort.
  double quantile(double x, double tau) const;

  std::vector<double> mean_batch(std::span<const double> xs) const;
  std::vector<double> mean_batch_serial(std::span<const double> xs) const;
  std::vector<double> quantile_batch(std::span<const double> xs,
                                     double tau) const;
  std::vector<double> quantile_batch_serial(std::span<const double> xs,
                                            double tau) const;

 private:
  std::vector<double> x_, y_;        // sorted by (x, y)
  std::vector<double> y_sorted_;     // y ascending
  std::vector<std::uint32_t> by_y_;  // index into x_ in ascending-y order
  double h_;
};

}  // namespace copreg

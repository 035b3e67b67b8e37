#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>

#include "copreg/rng.hpp"
#include "copreg/sample.hpp"

namespace copreg {

// Gamma-flavoured regression benchmark law with bounded response:
//   X ~ 10 * Beta(a, b),   Y | X = x ~ c * Beta(alpha'(x), beta'(x)),
// where alpha', beta' are moment-matched so that
//   E[Y|X=x] = s(x) * theta(x)   and   V(Y|X=x) = s(x) * theta(x)^2,
// i.e. the mean/variance of a Gamma with shape s(x) and scale theta(x).
// The cap c keeps the response bounded; the named variants pick
// c = ceil(5 * max s*theta) over a 1001-point grid on [0,10].
class GammaBetaSpec {
 public:
  using Fn = std::function<double(double)>;

  // Validates c >= 5 * max(s*theta) on the grid and that the derived
  // Beta parameters stay positive there; throws InfeasibleMoments.
  GammaBetaSpec(Fn shape, Fn scale, double cap, double covariate_a,
                double covariate_b, std::string tag);

  // s(x) = max(0.5, sqrt(x)), theta(x) = clamp(x, 1, 6), X uniform.
  static GammaBetaSpec standard();
  // s(x) = max(1, sqrt(x)) * (1 + sin(10x)/2), same theta, X uniform.
  static GammaBetaSpec sinusoidal();
  // Same conditional law as standard, X ~ 10 * Beta(2, 4).
  static GammaBetaSpec tails();
  static GammaBetaSpec from_tag(std::string_view tag);

  const std::string& tag() const { return tag_; }
  double cap() const { return cap_; }
  double shape(double x) const { return shape_(x); }
  double scale(double x) const { return scale_(x); }

  // Moment-matched Beta parameters (alpha', beta') at x; throws
  // InfeasibleMoments when mu(1-mu) <= v, i.e. the cap is too small.
  std::pair<double, double> beta_params(double x) const;

  double mean(double x) const { return shape_(x) * scale_(x); }
  double variance(double x) const {
    return shape_(x) * scale_(x) * scale_(x);
  }
  // True conditional quantile: bisection on the scaled-Beta CDF.
  double quantile(double x, double tau) const;
  // True conditional expectile via closed-form partial moments.
  double expectile(double x, double alpha) const;
  // Regularized incomplete beta of the conditional law, P(Y <= y | X=x).
  double conditional_cdf(double x, double y) const;

  double draw_covariate(Rng& rng) const;
  double draw_response(Rng& rng, double x) const;
  BivariateSample sample(std::size_t n, std::uint64_t seed) const;

 private:
  Fn shape_, scale_;
  double cap_;
  double cov_a_, cov_b_;
  std::string tag_;
};

}  // namespace copreg

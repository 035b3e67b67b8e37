#include "copreg/gamma_beta.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <boost/math/special_functions/beta.hpp>

#include "copreg/errors.hpp"

namespace copreg {

namespace {

constexpr int kGridPoints = 1001;
constexpr double kDomainHi = 10.0;

double grid_x(int i) {
  return kDomainHi * static_cast<double>(i) / (kGridPoints - 1);
}

}  // namespace

GammaBetaSpec::GammaBetaSpec(Fn shape, Fn scale, double cap,
                             double covariate_a, double covariate_b,
                             std::string tag)
    : shape_(std::move(shape)),
      scale_(std::move(scale)),
      cap_(cap),
      cov_a_(covariate_a),
      cov_b_(covariate_b),
      tag_(std::move(tag)) {
  if (!(cap_ > 0.0)) throw InvalidInput("cap must be positive");
  if (!(cov_a_ > 0.0 && cov_b_ > 0.0))
    throw InvalidInput("covariate Beta parameters must be positive");
  double max_st = 0.0;
  for (int i = 0; i < kGridPoints; ++i) {
    const double x = grid_x(i);
    const double s = shape_(x);
    const double t = scale_(x);
    if (!(s > 0.0 && t > 0.0))
      throw InvalidInput("shape/scale functions must be positive on [0,10]");
    max_st = std::max(max_st, s * t);
  }
  if (cap_ < 5.0 * max_st - 1e-9) {
    std::ostringstream os;
    os << "cap " << cap_ << " is below 5 * max(shape*scale) = "
       << 5.0 * max_st;
    throw InfeasibleMoments(os.str());
  }
  for (int i = 0; i < kGridPoints; ++i) beta_params(grid_x(i));
}

GammaBetaSpec GammaBetaSpec::standard() {
  auto s = [](double x) { return std::max(0.5, std::sqrt(x)); };
  auto t = [](double x) { return std::min(std::max(1.0, x), 6.0); };
  double max_st = 0.0;
  for (int i = 0; i < kGridPoints; ++i)
    max_st = std::max(max_st, s(grid_x(i)) * t(grid_x(i)));
  return GammaBetaSpec(s, t, std::ceil(5.0 * max_st), 1.0, 1.0, "standard");
}

GammaBetaSpec GammaBetaSpec::sinusoidal() {
  auto s = [](double x) {
    return std::max(1.0, std::sqrt(x)) * (1.0 + 0.5 * std::sin(10.0 * x));
  };
  auto t = [](double x) { return std::min(std::max(1.0, x), 6.0); };
  double max_st = 0.0;
  for (int i = 0; i < kGridPoints; ++i)
    max_st = std::max(max_st, s(grid_x(i)) * t(grid_x(i)));
  return GammaBetaSpec(s, t, std::ceil(5.0 * max_st), 1.0, 1.0, "sin");
}

GammaBetaSpec GammaBetaSpec::tails() {
  auto s = [](double x) { return std::max(0.5, std::sqrt(x)); };
  auto t = [](double x) { return std::min(std::max(1.0, x), 6.0); };
  double max_st = 0.0;
  for (int i = 0; i < kGridPoints; ++i)
    max_st = std::max(max_st, s(grid_x(i)) * t(grid_x(i)));
  return GammaBetaSpec(s, t, std::ceil(5.0 * max_st), 2.0, 4.0, "tails");
}

GammaBetaSpec GammaBetaSpec::from_tag(std::string_view tag) {
  if (tag == "standard") return standard();
  if (tag == "sin") return sinusoidal();
  if (tag == "tails") return tails();
  throw InvalidInput("unknown variant '" + std::string(tag) +
                     "' (expected standard, sin or tails)");
}

std::pair<double, double> GammaBetaSpec::beta_params(double x) const {
  const double mu = mean(x) / cap_;
  const double v = variance(x) / (cap_ * cap_);
  const double k = mu * (1.0 - mu) / v - 1.0;
  if (!(k > 0.0)) {
    std::ostringstream os;
    os << "infeasible moments at x = " << x
       << " (mu(1-mu) <= v); increase the cap";
    throw InfeasibleMoments(os.str());
  }
  return {mu * k, (1.0 - mu) * k};
}

double GammaBetaSpec::conditional_cdf(double x, double y) const {
  if (y <= 0.0) return 0.0;
  if (y >= cap_) return 1.0;
  const auto [a, b] = beta_params(x);
  return boost::math::ibeta(a, b, y / cap_);
}

double GammaBetaSpec::quantile(double x, double tau) const {
  if (!(tau > 0.0 && tau < 1.0))
    throw OutOfDomain("quantile level must lie in (0,1)");
  const auto [a, b] = beta_params(x);
  double lo = 0.0, hi = 1.0;
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    (boost::math::ibeta(a, b, mid) < tau ? lo : hi) = mid;
  }
  return cap_ * 0.5 * (lo + hi);
}

double GammaBetaSpec::expectile(double x, double alpha) const {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw OutOfDomain("expectile level must lie in (0,1)");
  const auto [a, b] = beta_params(x);
  const double m = mean(x);
  // E[(Y-t)+] = c * a/(a+b) * (1 - I_{t/c}(a+1, b)) - t * (1 - I_{t/c}(a, b))
  auto upper_partial = [&](double t) {
    const double z = t / cap_;
    return cap_ * (a / (a + b)) * (1.0 - boost::math::ibeta(a + 1.0, b, z)) -
           t * (1.0 - boost::math::ibeta(a, b, z));
  };
  auto g = [&](double t) {
    const double up = upper_partial(t);
    const double down = up - m + t;  // E[(t-Y)+]
    return alpha * up - (1.0 - alpha) * down;
  };
  double lo = 0.0, hi = cap_;
  for (int it = 0; it < 200 && hi - lo > 1e-12 * cap_; ++it) {
    const double mid = 0.5 * (lo + hi);
    (g(mid) > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double GammaBetaSpec::draw_covariate(Rng& rng) const {
  if (cov_a_ == 1.0 && cov_b_ == 1.0) return kDomainHi * rng.uniform();
  return kDomainHi * rng.beta(cov_a_, cov_b_);
}

double GammaBetaSpec::draw_response(Rng& rng, double x) const {
  const auto [a, b] = beta_params(x);
  return cap_ * rng.beta(a, b);
}

BivariateSample GammaBetaSpec::sample(std::size_t n,
                                      std::uint64_t seed) const {
  if (n < 1) throw DegenerateSample("cannot draw an empty sample");
  Rng rng(seed);
  BivariateSample out;
  out.x.reserve(n);
  out.y.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double x = draw_covariate(rng);
    out.x.push_back(x);
    out.y.push_back(draw_response(rng, x));
  }
  return out;
}

}  // namespace copreg

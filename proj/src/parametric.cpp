#include "copreg/parametric.hpp"

#include <algorithm>
#include <cmath>

#include "copreg/errors.hpp"
#include "copreg/rng.hpp"

namespace copreg {

CopulaFamily copula_family_from_string(std::string_view s) {
  if (s == "amh") return CopulaFamily::amh;
  if (s == "clayton") return CopulaFamily::clayton;
  if (s == "m") return CopulaFamily::m;
  if (s == "pi") return CopulaFamily::pi;
  throw InvalidInput("unknown copula family '" + std::string(s) +
                     "' (expected amh, clayton, m or pi)");
}

std::string_view to_string(CopulaFamily f) {
  switch (f) {
    case CopulaFamily::amh:
      return "amh";
    case CopulaFamily::clayton:
      return "clayton";
    case CopulaFamily::m:
      return "m";
    default:
      return "pi";
  }
}

CopulaSpec CopulaSpec::amh(double theta) {
  if (!(theta >= -1.0 && theta < 1.0))
    throw OutOfDomain("AMH parameter must lie in [-1, 1)");
  return CopulaSpec(CopulaFamily::amh, theta);
}

CopulaSpec CopulaSpec::clayton(double theta) {
  if (!(theta >= -1.0) || theta == 0.0)
    throw OutOfDomain("Clayton parameter must lie in [-1, inf) without 0");
  return CopulaSpec(CopulaFamily::clayton, theta);
}

CopulaSpec CopulaSpec::m() { return CopulaSpec(CopulaFamily::m, 0.0); }
CopulaSpec CopulaSpec::pi() { return CopulaSpec(CopulaFamily::pi, 0.0); }

CopulaSpec CopulaSpec::make(CopulaFamily family, double theta) {
  switch (family) {
    case CopulaFamily::amh:
      return amh(theta);
    case CopulaFamily::clayton:
      return clayton(theta);
    case CopulaFamily::m:
      return m();
    default:
      return pi();
  }
}

bool CopulaSpec::has_continuous_kernel() const {
  return family_ == CopulaFamily::amh || family_ == CopulaFamily::pi;
}

namespace {

void check_unit_square(double u, double v) {
  if (!(u >= 0.0 && u <= 1.0 && v >= 0.0 && v <= 1.0))
    throw OutOfDomain("copula evaluated outside the unit square");
}

}  // namespace

double CopulaSpec::cdf(double u, double v) const {
  check_unit_square(u, v);
  switch (family_) {
    case CopulaFamily::amh:
      return u * v / (1.0 - theta_ * (1.0 - u) * (1.0 - v));
    case CopulaFamily::clayton: {
      if (u == 0.0 || v == 0.0) return 0.0;
      const double s =
          std::pow(u, -theta_) + std::pow(v, -theta_) - 1.0;
      if (s <= 0.0) return 0.0;  // only reachable for theta < 0
      return std::pow(s, -1.0 / theta_);
    }
    case CopulaFamily::m:
      return std::min(u, v);
    default:
      return u * v;
  }
}

double CopulaSpec::kernel(double x, double y) const {
  check_unit_square(x, y);
  switch (family_) {
    case CopulaFamily::amh: {
      const double den = 1.0 - theta_ * (1.0 - x) * (1.0 - y);
      return (theta_ * (y - 1.0) * y + y) / (den * den);
    }
    case CopulaFamily::clayton: {
      if (y == 0.0) return 0.0;
      if (x == 0.0) return 1.0;  // limit convention, no continuous version
      if (y == 1.0) return 1.0;
      const double s = std::pow(x, -theta_) + std::pow(y, -theta_) - 1.0;
      if (s <= 0.0) return 0.0;
      return std::pow(x, -theta_ - 1.0) *
             std::pow(s, -(theta_ + 1.0) / theta_);
    }
    case CopulaFamily::m:
      return x <= y ? 1.0 : 0.0;
    default:
      return y;
  }
}

BivariateSample CopulaSpec::sample(std::size_t n, std::uint64_t seed) const {
  if (n < 1) throw DegenerateSample("cannot sample an empty copula sample");
  Rng rng(seed);
  BivariateSample out;
  out.x.reserve(n);
  out.y.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double u = rng.uniform_open();
    const double w = rng.uniform_open();
    double v;
    switch (family_) {
      case CopulaFamily::pi:
        v = w;
        break;
      case CopulaFamily::m:
        v = u;
        break;
      case CopulaFamily::clayton: {
        if (theta_ > 0.0) {
          // Invert K(u, [0,v]) = w in closed form.
          const double g = std::pow(w, -theta_ / (theta_ + 1.0)) - 1.0;
          v = std::pow(std::pow(u, -theta_) * g + 1.0, -1.0 / theta_);
        } else {
          double lo = 0.0, hi = 1.0;
          for (int it = 0; it < 60; ++it) {
            const double mid = 0.5 * (lo + hi);
            (kernel(u, mid) < w ? lo : hi) = mid;
          }
          v = 0.5 * (lo + hi);
        }
        break;
      }
      default: {  // AMH: monotone in v, no closed-form inverse
        double lo = 0.0, hi = 1.0;
        for (int it = 0; it < 60; ++it) {
          const double mid = 0.5 * (lo + hi);
          (kernel(u, mid) < w ? lo : hi) = mid;
        }
        v = 0.5 * (lo + hi);
        break;
      }
    }
    out.x.push_back(u);
    out.y.push_back(v);
  }
  return out;
}

}  // namespace copreg

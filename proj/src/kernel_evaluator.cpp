#include "copreg/kernel_evaluator.hpp"

#include <cmath>
#include <cstddef>

#include "copreg/errors.hpp"

namespace copreg {

double kernel_sup_distance(const KernelEvaluator& k1, const KernelEvaluator& k2,
                           std::span<const Point2> points) {
  if (points.empty())
    throw EmptyPointSet("kernel_sup_distance over an empty point set");
  double worst = 0.0;
  const auto count = static_cast<std::ptrdiff_t>(points.size());
#pragma omp parallel for reduction(max : worst) schedule(static)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    const Point2 p = points[static_cast<std::size_t>(i)];
    const double d = std::abs(k1(p.x, p.y) - k2(p.x, p.y));
    if (d > worst) worst = d;
  }
  return worst;
}

double kernel_sup_distance_serial(const KernelEvaluator& k1,
                                  const KernelEvaluator& k2,
                                  std::span<const Point2> points) {
  if (points.empty())
    throw EmptyPointSet("kernel_sup_distance over an empty point set");
  double worst = 0.0;
  for (const Point2& p : points) {
    const double d = std::abs(k1(p.x, p.y) - k2(p.x, p.y));
    if (d > worst) worst = d;
  }
  return worst;
}

double d_infty_grid(const Cdf2Fn& cdf1, const Cdf2Fn& cdf2, int resolution) {
  if (resolution < 2) throw InvalidInput("d_infty grid resolution must be >= 2");
  double worst = 0.0;
  const int nodes = resolution + 1;
#pragma omp parallel for reduction(max : worst) schedule(static)
  for (int i = 0; i < nodes; ++i) {
    const double u = static_cast<double>(i) / resolution;
    for (int j = 0; j < nodes; ++j) {
      const double v = static_cast<double>(j) / resolution;
      const double d = std::abs(cdf1(u, v) - cdf2(u, v));
      if (d > worst) worst = d;
    }
  }
  return worst;
}

double d_infty_grid_serial(const Cdf2Fn& cdf1, const Cdf2Fn& cdf2,
                           int resolution) {
  if (resolution < 2) throw InvalidInput("d_infty grid resolution must be >= 2");
  double worst = 0.0;
  const int nodes = resolution + 1;
  for (int i = 0; i < nodes; ++i) {
    const double u = static_cast<double>(i) / resolution;
    for (int j = 0; j < nodes; ++j) {
      const double v = static_cast<double>(j) / resolution;
      const double d = std::abs(cdf1(u, v) - cdf2(u, v));
      if (d > worst) worst = d;
    }
  }
  return worst;
}

}  // namespace copreg

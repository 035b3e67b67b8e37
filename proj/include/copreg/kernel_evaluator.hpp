#pragma once

#include <functional>
#include <span>
#include <variant>

#include "copreg/bernstein.hpp"
#include "copreg/checkerboard.hpp"
#include "copreg/parametric.hpp"

namespace copreg {

struct Point2 {
  double x;
  double y;
};

// Value-semantic wrapper over the three conditional-CDF evaluators.
// For fixed x, y -> eval(x,y) is a distribution function on [0,1].
// Payloads are immutable, so evaluators may be shared across threads.
class KernelEvaluator {
 public:
  enum class Kind { checkerboard, bernstein, parametric };

  KernelEvaluator(CheckerboardModel m) : payload_(std::move(m)) {}
  KernelEvaluator(BernsteinModel m) : payload_(std::move(m)) {}
  KernelEvaluator(CopulaSpec s) : payload_(std::move(s)) {}

  Kind kind() const {
    if (std::holds_alternative<CheckerboardModel>(payload_))
      return Kind::checkerboard;
    if (std::holds_alternative<BernsteinModel>(payload_))
      return Kind::bernstein;
    return Kind::parametric;
  }

  double operator()(double x, double y) const {
    return std::visit([&](const auto& p) { return p.kernel(x, y); }, payload_);
  }

 private:
  std::variant<CheckerboardModel, BernsteinModel, CopulaSpec> payload_;
};

// max over points of |k1(x,[0,y]) - k2(x,[0,y])|; OpenMP max-reduction
// over the point list plus the serial reference kept for testing and
// benchmarking.
double kernel_sup_distance(const KernelEvaluator& k1, const KernelEvaluator& k2,
                           std::span<const Point2> points);
double kernel_sup_distance_serial(const KernelEvaluator& k1,
                                  const KernelEvaluator& k2,
                                  std::span<const Point2> points);

// max |cdf1 - cdf2| over the uniform (resolution+1)^2 lattice. A lower
// bound on the true sup metric; exact for checkerboard-vs-checkerboard
// comparisons when the lattice refines both cell grids (the CDFs are
// bilinear between nodes).
using Cdf2Fn = std::function<double(double, double)>;
double d_infty_grid(const Cdf2Fn& cdf1, const Cdf2Fn& cdf2, int resolution);
double d_infty_grid_serial(const Cdf2Fn& cdf1, const Cdf2Fn& cdf2,
                           int resolution);

}  // namespace copreg

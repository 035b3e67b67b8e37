#pragma once

#include <functional>
#include <vector>

#include "copreg/sample.hpp"

namespace copreg {

// Bernstein basis values p_{N,s}(u) = C(N,s) u^s (1-u)^(N-s) for
// s = 0..N. Computed by the multiplicative recurrence outward from the
// modal index with a final renormalization, so no factorials appear and
// the partition of unity holds to ~1e-15 for any practical N.
std::vector<double> bernstein_basis(int N, double u);

// Tail diagnostic: mass the Bernstein weights place on
// indices at distance >= t from u*N, against the Chernoff-Hoeffding
// bound 2*exp(-2 t^2 / N). exact_tail <= bound always holds.
struct ChernoffCheck {
  double bound;
  double exact_tail;
};
ChernoffCheck chernoff_tail_bound_check(int N, double u, double t);

// Degree-N Bernstein approximation of a copula, stored as the grid of
// copula values A(i/N, j/N). Immutable after construction; evaluation
// is pure and thread-safe.
class BernsteinModel {
 public:
  using CdfFn = std::function<double(double, double)>;

  // Takes the (N+1)x(N+1) grid row-major; validates monotonicity,
  // 2-increasingness (within -1e-12) and uniform boundary margins.
  BernsteinModel(int N, std::vector<double> grid);

  static BernsteinModel from_copula(const CdfFn& cdf, int N);

  // Grid of the empirical copula E_n at {0, 1/N, ..., 1}^2, computed in
  // O(n + N^2) as prefix sums of the checkerboard cell masses (the
  // coarse-cell totals of E_n's measure are exactly those masses).
  static BernsteinModel from_pseudo(const PseudoSample& pseudo, int N);

  int degree() const { return N_; }

  double grid(int i, int j) const {
    return grid_[static_cast<std::size_t>(i) * (N_ + 1) + j];
  }

  // Markov kernel K(x, [0,y]) of B_N(A); O(N^2).
  double kernel(double x, double y) const;

  // B_N(A)(u, v); O(N^2).
  double cdf(double u, double v) const;

  // Coefficients c_j(x) with K(x, [0,y]) = sum_j c_j(x) p_{N,j}(y);
  // O(N^2) to build, then O(N) per y. Used by the fitted-model paths
  // that sweep y for a fixed x.
  std::vector<double> conditional_coefficients(double x) const;
  double kernel_from_coefficients(const std::vector<double>& coeffs,
                                  double y) const;

 private:
  int N_;
  std::vector<double> grid_;      // (N+1)^2 row-major
  std::vector<double> row_diff_;  // D(i,j) = A(i/N,j/N) - A((i-1)/N,j/N)
};

}  // namespace copreg

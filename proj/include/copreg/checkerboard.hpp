#pragma once

#include <functional>
#include <vector>

#include "copreg/sample.hpp"

namespace copreg {

// N x N checkerboard approximation: cell masses mu(Q_{i,j}) of a copula,
// every row and column summing to 1/N. Immutable after construction;
// kernel evaluation is O(1) via per-row prefix sums.
class CheckerboardModel {
 public:
  using CdfFn = std::function<double(double, double)>;

  // Takes ownership of row-major masses (size N*N); validates
  // nonnegativity and the doubly stochastic property.
  CheckerboardModel(int N, std::vector<double> masses);

  // Cell masses by rectangle-differencing a copula restricted to the
  // {0, 1/N, ..., 1}^2 grid. Values in [-1e-12, 0) are clamped to 0; a
  // more negative volume raises NotTwoIncreasing. If clamping drifts
  // the row/column sums beyond 1e-12 they are renormalized
  // proportionally (alternating row/column scaling).
  static CheckerboardModel from_copula(const CdfFn& cdf, int N);

  // Cell masses of CB_N(E_n) straight from the rank pairs: each rank
  // square [(r-1)/n, r/n] x [(s-1)/n, s/n] carries mass 1/n spread
  // uniformly, split across coarse cells by its overlap fractions.
  // Equivalent to rectangle-differencing the bilinear empirical copula;
  // O(n + N^2).
  static CheckerboardModel from_pseudo(const PseudoSample& pseudo, int N);

  int resolution() const { return N_; }

  // 1-based cell mass.
  double mass(int i, int j) const {
    return masses_[static_cast<std::size_t>(i - 1) * N_ + (j - 1)];
  }

  // Markov kernel K(x, [0,y]) of the checkerboard copula.
  double kernel(double x, double y) const;

  // The checkerboard copula's CDF (bilinear between grid nodes).
  double cdf(double u, double v) const;

 private:
  void build_prefixes();

  int N_;
  std::vector<double> masses_;    // N x N row-major
  std::vector<double> row_cdf_;   // N x (N+1): prefix sums along j
  std::vector<double> node_cdf_;  // (N+1)^2: copula values at grid nodes
};

}  // namespace copreg

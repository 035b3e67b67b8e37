#pragma once

#include <cstdint>
#include <vector>

#include "copreg/sample.hpp"

namespace copreg {

// Rank-based subcopula grid with its bilinear extension. The explicit
// (n+1)x(n+1) grid costs O(n^2) memory, so this type is meant for
// moderate n (diagnostics, tests); the fitting path builds checkerboard
// masses straight from the ranks instead.
class EmpiricalCopula {
 public:
  explicit EmpiricalCopula(const PseudoSample& pseudo);

  std::size_t sample_size() const { return n_; }

  // #{k : r_k <= i, s_k <= j}; exact integer counts, i,j in 0..n.
  std::uint32_t count(std::size_t i, std::size_t j) const {
    return counts_[i * (n_ + 1) + j];
  }

  // Subcopula node E'_n(i/n, j/n) = count(i,j)/n.
  double node(std::size_t i, std::size_t j) const {
    return static_cast<double>(count(i, j)) / static_cast<double>(n_);
  }

  // Bilinear extension E_n(u, v); throws OutOfDomain outside the unit square.
  double operator()(double u, double v) const;

 private:
  std::size_t n_;
  std::vector<std::uint32_t> counts_;  // cumulative, (n+1)^2 row-major
};

}  // namespace copreg

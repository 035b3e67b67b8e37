#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace copreg {

struct BenchRow {
  int n;
  int m;
  std::string method;
  double seconds;
};

// Wall-times batch mean prediction across an (n, m) grid. "cbe" times
// the checkerboard step-table build plus m lookups (O(m + N n) per
// call), "nwe" the Gaussian Nadaraya-Watson sweep (O(m n)). Serial
// kernels, repeated until each measurement exceeds ~50 ms.
std::vector<BenchRow> scaling_bench(const std::vector<int>& n_grid,
                                    const std::vector<int>& m_grid,
                                    const std::vector<std::string>& methods,
                                    std::uint64_t seed);

// Least-squares slope of log(seconds) against log(m) at fixed n,
// using rows with m > 0.
double loglog_slope(const std::vector<BenchRow>& rows, int n,
                    const std::string& method);

}  // namespace copreg

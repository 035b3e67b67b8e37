#pragma once

#include <cstdint>
#include <vector>

#include "copreg/empirical_copula.hpp"
#include "copreg/kernel_evaluator.hpp"
#include "copreg/rng.hpp"
#include "copreg/sample.hpp"

namespace copreg::test {

inline std::vector<Point2> random_unit_points(std::size_t count,
                                              std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Point2> pts(count);
  for (auto& p : pts) {
    p.x = rng.uniform();
    p.y = rng.uniform();
  }
  return pts;
}

// Independent counting oracle for the subcopula grid: a literal triple
// loop over the definition #{k : r_k <= i, s_k <= j}.
inline double grid_count_oracle(const PseudoSample& ps, std::size_t i,
                                std::size_t j) {
  std::size_t c = 0;
  for (std::size_t k = 0; k < ps.size(); ++k)
    if (static_cast<std::size_t>(ps.rank_x[k]) <= i &&
        static_cast<std::size_t>(ps.rank_y[k]) <= j)
      ++c;
  return static_cast<double>(c) / static_cast<double>(ps.size());
}

inline PseudoSample pseudo_from(std::vector<std::int32_t> rx,
                                std::vector<std::int32_t> ry) {
  PseudoSample p;
  p.rank_x = std::move(rx);
  p.rank_y = std::move(ry);
  return p;
}

// Random permutation pair for property tests.
inline PseudoSample random_pseudo(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  PseudoSample p;
  p.rank_x.resize(n);
  p.rank_y.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    p.rank_x[i] = static_cast<std::int32_t>(i + 1);
    p.rank_y[i] = static_cast<std::int32_t>(i + 1);
  }
  rng.shuffle(p.rank_x.begin(), p.rank_x.end());
  rng.shuffle(p.rank_y.begin(), p.rank_y.end());
  return p;
}

}  // namespace copreg::test

#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "copreg/errors.hpp"

namespace copreg {

// Paired observations (x_i, y_i), i = 1..n. Coordinates must be finite
// and n >= 2; validate() enforces both.
struct BivariateSample {
  std::vector<double> x;
  std::vector<double> y;

  std::size_t size() const { return x.size(); }
  void validate() const;
};

// How rank_transform treats equal coordinate values. Midranks are
// deliberately not offered: they break the permutation structure the
// grid-count construction relies on.
enum class TiePolicy { error, random };

TiePolicy tie_policy_from_string(std::string_view s);
std::string_view to_string(TiePolicy p);

// Componentwise ranks, each column a permutation of 1..n.
struct PseudoSample {
  std::vector<std::int32_t> rank_x;
  std::vector<std::int32_t> rank_y;

  std::size_t size() const { return rank_x.size(); }
};

// Componentwise rank transform. With TiePolicy::error any duplicated
// x-value or y-value raises TiesPresent (naming the 1-based rows);
// with TiePolicy::random ties are broken by a seeded shuffle within
// each tied group, deterministic given `seed`.
PseudoSample rank_transform(const BivariateSample& sample, TiePolicy policy,
                            std::uint64_t seed = 0);

}  // namespace copreg

#include "copreg/sample.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "copreg/rng.hpp"

namespace copreg {

void BivariateSample::validate() const {
  if (x.size() != y.size())
    throw InvalidInput("sample coordinate vectors differ in length");
  if (size() < 2) throw DegenerateSample("sample needs at least 2 points");
  for (std::size_t i = 0; i < size(); ++i) {
    if (!std::isfinite(x[i]) || !std::isfinite(y[i])) {
      std::ostringstream os;
      os << "non-finite coordinate at row " << (i + 1);
      throw InvalidInput(os.str());
    }
  }
}

TiePolicy tie_policy_from_string(std::string_view s) {
  if (s == "error") return TiePolicy::error;
  if (s == "random") return TiePolicy::random;
  throw InvalidInput("unknown tie policy '" + std::string(s) +
                     "' (expected 'error' or 'random')");
}

std::string_view to_string(TiePolicy p) {
  return p == TiePolicy::error ? "error" : "random";
}

namespace {

std::vector<std::int32_t> rank_one_axis(const std::vector<double>& values,
                                        TiePolicy policy, std::uint64_t seed,
                                        char axis) {
  const std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (values[a] != values[b]) return values[a] < values[b];
    return a < b;
  });

  // Collect tied groups; under TiePolicy::random each group's order is
  // shuffled with a per-axis derived stream.
  Rng rng(derive_seed(seed, axis == 'x' ? 1 : 2));
  std::vector<std::size_t> tied_rows;
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i + 1;
    while (j < n && values[order[j]] == values[order[i]]) ++j;
    if (j - i > 1) {
      if (policy == TiePolicy::error) {
        for (std::size_t k = i; k < j; ++k) tied_rows.push_back(order[k] + 1);
      } else {
        rng.shuffle(order.begin() + static_cast<std::ptrdiff_t>(i),
                    order.begin() + static_cast<std::ptrdiff_t>(j));
      }
    }
    i = j;
  }
  if (!tied_rows.empty()) {
    std::sort(tied_rows.begin(), tied_rows.end());
    std::ostringstream os;
    os << "duplicated " << axis << "-values at rows";
    for (std::size_t k = 0; k < tied_rows.size(); ++k)
      os << (k == 0 ? " " : ", ") << tied_rows[k];
    throw TiesPresent(os.str(), axis, std::move(tied_rows));
  }

  std::vector<std::int32_t> ranks(n);
  for (std::size_t r = 0; r < n; ++r)
    ranks[order[r]] = static_cast<std::int32_t>(r + 1);
  return ranks;
}

}  // namespace

PseudoSample rank_transform(const BivariateSample& sample, TiePolicy policy,
                            std::uint64_t seed) {
  sample.validate();
  PseudoSample out;
  out.rank_x = rank_one_axis(sample.x, policy, seed, 'x');
  out.rank_y = rank_one_axis(sample.y, policy, seed, 'y');
  return out;
}

}  // namespace copreg

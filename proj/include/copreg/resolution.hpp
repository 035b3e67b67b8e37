#pragma once

#include <algorithm>
#include <cmath>

#include "copreg/errors.hpp"

namespace copreg {

// Resolution rule N(n) = floor(n^s), s in (0, 1/2), floored at 2 and
// capped at n. The 1e-9 nudge guards pow() landing epsilon below an
// exact integer (e.g. 32^0.2).
struct Resolution {
  double s_exponent;
  int N;

  static Resolution choose(std::size_t n, double s) {
    if (!(s > 0.0 && s < 0.5))
      throw InvalidInput("s exponent must lie in (0, 0.5) exclusive");
    const auto raw = static_cast<long long>(
        std::floor(std::pow(static_cast<double>(n), s) + 1e-9));
    const long long clamped =
        std::clamp<long long>(raw, 2, static_cast<long long>(n));
    return Resolution{s, static_cast<int>(clamped)};
  }
};

// Index of the partition cell containing t: I_1 = [0, 1/N] and
// I_i = ((i-1)/N, i/N] for i >= 2, so 0 maps to cell 1 and 1 to cell N.
inline int cell_index(double t, int N) {
  const int i = static_cast<int>(std::ceil(t * static_cast<double>(N)));
  return std::clamp(i, 1, N);
}

}  // namespace copreg

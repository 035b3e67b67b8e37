#include "copreg/empirical_copula.hpp"

#include <algorithm>
#include <cmath>

#include "copreg/errors.hpp"

namespace copreg {

EmpiricalCopula::EmpiricalCopula(const PseudoSample& pseudo)
    : n_(pseudo.size()), counts_((pseudo.size() + 1) * (pseudo.size() + 1), 0) {
  if (n_ < 2) throw DegenerateSample("pseudo-sample needs at least 2 points");
  const std::size_t w = n_ + 1;
  for (std::size_t k = 0; k < n_; ++k) {
    const auto r = static_cast<std::size_t>(pseudo.rank_x[k]);
    const auto s = static_cast<std::size_t>(pseudo.rank_y[k]);
    counts_[r * w + s] += 1;
  }
  // 2D cumulative sum; row 0 and column 0 stay zero.
  for (std::size_t i = 1; i < w; ++i)
    for (std::size_t j = 1; j < w; ++j)
      counts_[i * w + j] += counts_[(i - 1) * w + j] + counts_[i * w + j - 1] -
                            counts_[(i - 1) * w + j - 1];
}

double EmpiricalCopula::operator()(double u, double v) const {
  if (!(u >= 0.0 && u <= 1.0 && v >= 0.0 && v <= 1.0))
    throw OutOfDomain("empirical copula evaluated outside the unit square");
  const double nd = static_cast<double>(n_);
  const double su = u * nd;
  const double sv = v * nd;
  const std::size_t i = std::min(static_cast<std::size_t>(su), n_ - 1);
  const std::size_t j = std::min(static_cast<std::size_t>(sv), n_ - 1);
  const double fu = su - static_cast<double>(i);
  const double fv = sv - static_cast<double>(j);
  const double c00 = node(i, j);
  const double c10 = node(i + 1, j);
  const double c01 = node(i, j + 1);
  const double c11 = node(i + 1, j + 1);
  return (1.0 - fu) * (1.0 - fv) * c00 + fu * (1.0 - fv) * c10 +
         (1.0 - fu) * fv * c01 + fu * fv * c11;
}

}  // namespace copreg

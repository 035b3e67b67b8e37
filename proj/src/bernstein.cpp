#include "copreg/bernstein.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "copreg/checkerboard.hpp"
#include "copreg/errors.hpp"

namespace copreg {

std::vector<double> bernstein_basis(int N, double u) {
  if (N < 0) throw InvalidInput("bernstein degree must be nonnegative");
  if (!(u >= 0.0 && u <= 1.0))
    throw OutOfDomain("bernstein basis argument outside [0,1]");
  std::vector<double> p(static_cast<std::size_t>(N) + 1, 0.0);
  if (N == 0) {
    p[0] = 1.0;
    return p;
  }
  if (u == 0.0) {
    p[0] = 1.0;
    return p;
  }
  if (u == 1.0) {
    p[static_cast<std::size_t>(N)] = 1.0;
    return p;
  }
  // Recur outward from the modal index; ratios only, renormalize at the
  // end. Keeps everything in range for any N without factorials.
  const int mode = std::clamp(
      static_cast<int>(std::floor(u * (static_cast<double>(N) + 1.0))), 0, N);
  p[static_cast<std::size_t>(mode)] = 1.0;
  const double odds = u / (1.0 - u);
  for (int s = mode; s < N; ++s)
    p[static_cast<std::size_t>(s) + 1] =
        p[static_cast<std::size_t>(s)] * (static_cast<double>(N - s) / (s + 1)) * odds;
  for (int s = mode; s > 0; --s)
    p[static_cast<std::size_t>(s) - 1] =
        p[static_cast<std::size_t>(s)] * (static_cast<double>(s) / (N - s + 1)) / odds;
  double total = 0.0;
  for (double v : p) total += v;
  for (double& v : p) v /= total;
  return p;
}

ChernoffCheck chernoff_tail_bound_check(int N, double u, double t) {
  if (N < 1 || N > 60)
    throw InvalidInput("chernoff check supports 1 <= N <= 60");
  if (!(t >= 0.0)) throw OutOfDomain("chernoff check needs t >= 0");
  if (!(u >= 0.0 && u <= 1.0))
    throw OutOfDomain("chernoff check argument outside [0,1]");
  const std::vector<double> p = bernstein_basis(N, u);
  const double center = u * static_cast<double>(N);
  const auto lo = static_cast<long long>(std::floor(center - t));
  const auto hi = static_cast<long long>(std::ceil(center + t));
  double tail = 0.0;
  for (long long i = 0; i <= N; ++i)
    if (i <= lo || i >= hi) tail += p[static_cast<std::size_t>(i)];
  return ChernoffCheck{2.0 * std::exp(-2.0 * t * t / static_cast<double>(N)),
                       tail};
}

BernsteinModel::BernsteinModel(int N, std::vector<double> grid)
    : N_(N), grid_(std::move(grid)) {
  if (N_ < 1) throw InvalidInput("bernstein degree must be >= 1");
  const std::size_t w = static_cast<std::size_t>(N_) + 1;
  if (grid_.size() != w * w)
    throw InvalidInput("bernstein grid has wrong size");

  constexpr double tol = 1e-9;
  for (std::size_t i = 0; i < w; ++i) {
    const double mi = static_cast<double>(i) / N_;
    if (std::abs(grid_[i * w]) > tol || std::abs(grid_[i]) > tol ||
        std::abs(grid_[i * w + N_] - mi) > tol ||
        std::abs(grid_[static_cast<std::size_t>(N_) * w + i] - mi) > tol)
      throw InvalidInput("bernstein grid margins are not uniform");
  }
  for (std::size_t i = 1; i < w; ++i)
    for (std::size_t j = 1; j < w; ++j) {
      const double vol = grid_[i * w + j] - grid_[(i - 1) * w + j] -
                         grid_[i * w + j - 1] + grid_[(i - 1) * w + j - 1];
      if (vol < -1e-12) {
        std::ostringstream os;
        os << "grid is not 2-increasing: volume " << vol << " at cell (" << i
           << "," << j << ")";
        throw NotTwoIncreasing(os.str());
      }
    }

  row_diff_.assign(static_cast<std::size_t>(N_) * w, 0.0);
  for (std::size_t i = 1; i < w; ++i)
    for (std::size_t j = 0; j < w; ++j)
      row_diff_[(i - 1) * w + j] = grid_[i * w + j] - grid_[(i - 1) * w + j];
}

BernsteinModel BernsteinModel::from_copula(const CdfFn& cdf, int N) {
  if (N < 1) throw InvalidInput("bernstein degree must be >= 1");
  const std::size_t w = static_cast<std::size_t>(N) + 1;
  std::vector<double> grid(w * w);
  for (std::size_t i = 0; i < w; ++i)
    for (std::size_t j = 0; j < w; ++j)
      grid[i * w + j] =
          cdf(static_cast<double>(i) / N, static_cast<double>(j) / N);
  return BernsteinModel(N, std::move(grid));
}

BernsteinModel BernsteinModel::from_pseudo(const PseudoSample& pseudo, int N) {
  const CheckerboardModel cells = CheckerboardModel::from_pseudo(pseudo, N);
  const std::size_t w = static_cast<std::size_t>(N) + 1;
  std::vector<double> grid(w * w, 0.0);
  for (std::size_t i = 1; i < w; ++i)
    for (std::size_t j = 1; j < w; ++j)
      grid[i * w + j] = grid[(i - 1) * w + j] + grid[i * w + j - 1] -
                        grid[(i - 1) * w + j - 1] +
                        cells.mass(static_cast<int>(i), static_cast<int>(j));
  return BernsteinModel(N, std::move(grid));
}

double BernsteinModel::kernel(double x, double y) const {
  return kernel_from_coefficients(conditional_coefficients(x), y);
}

std::vector<double> BernsteinModel::conditional_coefficients(double x) const {
  if (!(x >= 0.0 && x <= 1.0))
    throw OutOfDomain("bernstein kernel evaluated outside the unit square");
  const std::size_t w = static_cast<std::size_t>(N_) + 1;
  const std::vector<double> px = bernstein_basis(N_ - 1, x);
  std::vector<double> c(w, 0.0);
  for (int i = 1; i <= N_; ++i) {
    const double pxi = px[static_cast<std::size_t>(i - 1)];
    if (pxi == 0.0) continue;
    const double* d = &row_diff_[static_cast<std::size_t>(i - 1) * w];
    for (std::size_t j = 1; j < w; ++j) c[j] += pxi * d[j];
  }
  for (std::size_t j = 0; j < w; ++j) c[j] *= static_cast<double>(N_);
  return c;
}

double BernsteinModel::kernel_from_coefficients(
    const std::vector<double>& coeffs, double y) const {
  if (!(y >= 0.0 && y <= 1.0))
    throw OutOfDomain("bernstein kernel evaluated outside the unit square");
  const std::vector<double> py = bernstein_basis(N_, y);
  double k = 0.0;
  for (std::size_t j = 0; j <= static_cast<std::size_t>(N_); ++j)
    k += coeffs[j] * py[j];
  return k;
}

double BernsteinModel::cdf(double u, double v) const {
  if (!(u >= 0.0 && u <= 1.0 && v >= 0.0 && v <= 1.0))
    throw OutOfDomain("bernstein cdf evaluated outside the unit square");
  const std::vector<double> pu = bernstein_basis(N_, u);
  const std::vector<double> pv = bernstein_basis(N_, v);
  const std::size_t w = static_cast<std::size_t>(N_) + 1;
  double acc = 0.0;
  for (std::size_t i = 1; i < w; ++i) {
    if (pu[i] == 0.0) continue;
    double row = 0.0;
    for (std::size_t j = 1; j < w; ++j) row += grid_[i * w + j] * pv[j];
    acc += pu[i] * row;
  }
  return acc;
}

}  // namespace copreg

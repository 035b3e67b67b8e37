#include "copreg/checkerboard.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "copreg/errors.hpp"
#include "copreg/resolution.hpp"

namespace copreg {

namespace {

constexpr double kClampTol = 1e-12;

// Alternating proportional row/column rescaling towards row and column
// sums of exactly 1/N. Only runs when clamping introduced visible drift.
void renormalize(std::vector<double>& m, int N) {
  const double target = 1.0 / static_cast<double>(N);
  for (int iter = 0; iter < 200; ++iter) {
    double worst = 0.0;
    for (int i = 0; i < N; ++i) {
      double s = 0.0;
      for (int j = 0; j < N; ++j) s += m[static_cast<std::size_t>(i) * N + j];
      worst = std::max(worst, std::abs(s - target));
      if (s > 0.0) {
        const double f = target / s;
        for (int j = 0; j < N; ++j) m[static_cast<std::size_t>(i) * N + j] *= f;
      }
    }
    for (int j = 0; j < N; ++j) {
      double s = 0.0;
      for (int i = 0; i < N; ++i) s += m[static_cast<std::size_t>(i) * N + j];
      worst = std::max(worst, std::abs(s - target));
      if (s > 0.0) {
        const double f = target / s;
        for (int i = 0; i < N; ++i) m[static_cast<std::size_t>(i) * N + j] *= f;
      }
    }
    if (worst < 1e-14) break;
  }
}

void check_doubly_stochastic(const std::vector<double>& m, int N, double tol) {
  const double target = 1.0 / static_cast<double>(N);
  for (int i = 0; i < N; ++i) {
    double rs = 0.0, cs = 0.0;
    for (int j = 0; j < N; ++j) {
      rs += m[static_cast<std::size_t>(i) * N + j];
      cs += m[static_cast<std::size_t>(j) * N + i];
    }
    if (std::abs(rs - target) > tol || std::abs(cs - target) > tol) {
      std::ostringstream os;
      os << "checkerboard masses are not doubly stochastic at line " << (i + 1)
         << " (row sum " << rs << ", column sum " << cs << ", expected "
         << target << ")";
      throw InvalidInput(os.str());
    }
  }
}

}  // namespace

CheckerboardModel::CheckerboardModel(int N, std::vector<double> masses)
    : N_(N), masses_(std::move(masses)) {
  if (N_ < 2) throw InvalidInput("checkerboard resolution must be >= 2");
  if (masses_.size() != static_cast<std::size_t>(N_) * N_)
    throw InvalidInput("checkerboard mass matrix has wrong size");
  for (double v : masses_)
    if (!(v >= 0.0))
      throw NotTwoIncreasing("negative checkerboard cell mass");
  check_doubly_stochastic(masses_, N_, 1e-9);
  build_prefixes();
}

CheckerboardModel CheckerboardModel::from_copula(const CdfFn& cdf, int N) {
  if (N < 2) throw InvalidInput("checkerboard resolution must be >= 2");
  const std::size_t w = static_cast<std::size_t>(N) + 1;
  std::vector<double> node(w * w);
  for (std::size_t i = 0; i < w; ++i)
    for (std::size_t j = 0; j < w; ++j)
      node[i * w + j] = cdf(static_cast<double>(i) / N,
                            static_cast<double>(j) / N);

  std::vector<double> m(static_cast<std::size_t>(N) * N);
  bool clamped = false;
  for (int i = 1; i <= N; ++i) {
    for (int j = 1; j <= N; ++j) {
      double v = node[static_cast<std::size_t>(i) * w + j] -
                 node[static_cast<std::size_t>(i - 1) * w + j] -
                 node[static_cast<std::size_t>(i) * w + j - 1] +
                 node[static_cast<std::size_t>(i - 1) * w + j - 1];
      if (v < 0.0) {
        if (v < -kClampTol) {
          std::ostringstream os;
          os << "grid is not 2-increasing: volume " << v << " at cell (" << i
             << "," << j << ")";
          throw NotTwoIncreasing(os.str());
        }
        v = 0.0;
        clamped = true;
      }
      m[static_cast<std::size_t>(i - 1) * N + (j - 1)] = v;
    }
  }

  if (clamped) {
    const double target = 1.0 / static_cast<double>(N);
    double drift = 0.0;
    for (int i = 0; i < N; ++i) {
      double s = 0.0;
      for (int j = 0; j < N; ++j) s += m[static_cast<std::size_t>(i) * N + j];
      drift = std::max(drift, std::abs(s - target));
    }
    if (drift > kClampTol) renormalize(m, N);
  }
  return CheckerboardModel(N, std::move(m));
}

CheckerboardModel CheckerboardModel::from_pseudo(const PseudoSample& pseudo,
                                                 int N) {
  if (N < 2) throw InvalidInput("checkerboard resolution must be >= 2");
  const std::size_t n = pseudo.size();
  if (n < 2) throw DegenerateSample("pseudo-sample needs at least 2 points");
  if (static_cast<std::size_t>(N) > n)
    throw InvalidInput("checkerboard resolution exceeds the sample size");

  const double nd = static_cast<double>(n);
  std::vector<double> m(static_cast<std::size_t>(N) * N, 0.0);

  // Overlap of a rank interval [(r-1)/n, r/n] with the coarse cells, as
  // a fraction of the interval. Since 1/n <= 1/N the interval meets at
  // most two cells; boundaries are resolved in exact integer units of
  // 1/(nN).
  struct Split {
    int cell[2];
    double frac[2];
    int count;
  };
  const auto nn = static_cast<long long>(n);
  auto split = [&](std::int32_t r) {
    Split s{};
    const long long lo_units = (static_cast<long long>(r) - 1) * N;
    const long long hi_units = static_cast<long long>(r) * N;
    const long long q = lo_units / nn;  // mass starts in cell q+1
    const long long cell_hi = (q + 1) * nn;
    if (hi_units <= cell_hi) {
      s.cell[0] = static_cast<int>(q + 1);
      s.frac[0] = 1.0;
      s.count = 1;
    } else {
      s.cell[0] = static_cast<int>(q + 1);
      s.frac[0] = static_cast<double>(cell_hi - lo_units) / N;
      s.cell[1] = static_cast<int>(q + 2);
      s.frac[1] = static_cast<double>(hi_units - cell_hi) / N;
      s.count = 2;
    }
    return s;
  };

  for (std::size_t k = 0; k < n; ++k) {
    const Split sx = split(pseudo.rank_x[k]);
    const Split sy = split(pseudo.rank_y[k]);
    for (int a = 0; a < sx.count; ++a)
      for (int b = 0; b < sy.count; ++b)
        m[static_cast<std::size_t>(sx.cell[a] - 1) * N + (sy.cell[b] - 1)] +=
            sx.frac[a] * sy.frac[b] / nd;
  }
  return CheckerboardModel(N, std::move(m));
}

void CheckerboardModel::build_prefixes() {
  const std::size_t N = static_cast<std::size_t>(N_);
  row_cdf_.assign(N * (N + 1), 0.0);
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 1; j <= N; ++j)
      row_cdf_[i * (N + 1) + j] =
          row_cdf_[i * (N + 1) + j - 1] + masses_[i * N + j - 1];

  node_cdf_.assign((N + 1) * (N + 1), 0.0);
  for (std::size_t i = 1; i <= N; ++i)
    for (std::size_t j = 1; j <= N; ++j)
      node_cdf_[i * (N + 1) + j] = node_cdf_[(i - 1) * (N + 1) + j] +
                                   node_cdf_[i * (N + 1) + j - 1] -
                                   node_cdf_[(i - 1) * (N + 1) + j - 1] +
                                   masses_[(i - 1) * N + (j - 1)];
}

double CheckerboardModel::kernel(double x, double y) const {
  if (!(x >= 0.0 && x <= 1.0 && y >= 0.0 && y <= 1.0))
    throw OutOfDomain("checkerboard kernel evaluated outside the unit square");
  const int i0 = cell_index(x, N_);
  const int j0 = cell_index(y, N_);
  const std::size_t row = static_cast<std::size_t>(i0 - 1) * (N_ + 1);
  const double partial = y * N_ - static_cast<double>(j0 - 1);
  return N_ * (row_cdf_[row + j0 - 1] + partial * mass(i0, j0));
}

double CheckerboardModel::cdf(double u, double v) const {
  if (!(u >= 0.0 && u <= 1.0 && v >= 0.0 && v <= 1.0))
    throw OutOfDomain("checkerboard cdf evaluated outside the unit square");
  const int i0 = cell_index(u, N_);
  const int j0 = cell_index(v, N_);
  const std::size_t w = static_cast<std::size_t>(N_) + 1;
  const double fu = u * N_ - static_cast<double>(i0 - 1);
  const double fv = v * N_ - static_cast<double>(j0 - 1);
  const double base = node_cdf_[static_cast<std::size_t>(i0 - 1) * w + j0 - 1];
  const double du = node_cdf_[static_cast<std::size_t>(i0) * w + j0 - 1] - base;
  const double dv = node_cdf_[static_cast<std::size_t>(i0 - 1) * w + j0] - base;
  return base + fu * du + fv * dv + fu * fv * mass(i0, j0);
}

}  // namespace copreg

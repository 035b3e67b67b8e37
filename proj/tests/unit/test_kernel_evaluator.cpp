#include <doctest.h>

#include <cmath>

#include "copreg/empirical_copula.hpp"
#include "copreg/kernel_evaluator.hpp"
#include "copreg/resolution.hpp"
#include "test_util.hpp"

using namespace copreg;
using namespace copreg::test;

namespace {

Cdf2Fn cdf_of(const CopulaSpec& spec) {
  return [spec](double u, double v) { return spec.cdf(u, v); };
}

}  // namespace

TEST_CASE("every evaluator kind is a CDF in y") {
  const auto cb = KernelEvaluator(
      CheckerboardModel::from_copula(cdf_of(CopulaSpec::amh(0.75)), 7));
  const auto bm = KernelEvaluator(
      BernsteinModel::from_copula(cdf_of(CopulaSpec::amh(0.75)), 7));
  const auto pm = KernelEvaluator(CopulaSpec::clayton(2.0));
  for (const auto* k : {&cb, &bm, &pm}) {
    for (double x : {0.0, 0.13, 0.5, 0.97, 1.0}) {
      double prev = -1.0;
      for (int j = 0; j <= 100; ++j) {
        const double y = j / 100.0;
        const double v = (*k)(x, y);
        CHECK(v >= prev - 1e-12);
        prev = v;
      }
      CHECK(std::abs((*k)(x, 0.0)) <= 1e-10);
      CHECK(std::abs((*k)(x, 1.0) - 1.0) <= 1e-10);
    }
  }
}

TEST_CASE("product fixed point for both approximations") {
  const auto cb = KernelEvaluator(
      CheckerboardModel::from_copula(cdf_of(CopulaSpec::pi()), 11));
  const auto bm = KernelEvaluator(
      BernsteinModel::from_copula(cdf_of(CopulaSpec::pi()), 11));
  const auto pts = random_unit_points(1000, 2024);
  for (const auto& p : pts) {
    CHECK(std::abs(cb(p.x, p.y) - p.y) <= 1e-12);
    CHECK(std::abs(bm(p.x, p.y) - p.y) <= 1e-12);
  }
}

TEST_CASE("sup distance basics") {
  const KernelEvaluator pi_kernel(CopulaSpec::pi());
  const auto pts = random_unit_points(500, 7);
  CHECK(kernel_sup_distance(pi_kernel, pi_kernel, pts) == 0.0);

  const KernelEvaluator m_cb(
      CheckerboardModel::from_copula(cdf_of(CopulaSpec::m()), 4));
  const std::vector<Point2> single{{0.3, 0.3}};
  CHECK(kernel_sup_distance(pi_kernel, m_cb, single) ==
        doctest::Approx(0.1).epsilon(1e-12));

  CHECK_THROWS_AS(kernel_sup_distance(pi_kernel, m_cb, {}), EmptyPointSet);
}

TEST_CASE("minimum copula keeps the checkerboard at least 1/2 away") {
  const KernelEvaluator m_exact(CopulaSpec::m());
  for (int N : {4, 16}) {
    const KernelEvaluator m_cb(
        CheckerboardModel::from_copula(cdf_of(CopulaSpec::m()), N));
    // For any x the checkerboard crosses 1/2 at y_x = (i0 - 1/2)/N while
    // the exact kernel is an indicator.
    double best = 0.0;
    for (int k = 1; k <= 100; ++k) {
      const double x = (k - 0.3) / 100.0;
      const double yx = (cell_index(x, N) - 0.5) / N;
      best = std::max(best, std::abs(m_exact(x, yx) - m_cb(x, yx)));
    }
    CHECK(best >= 0.5 - 1e-9);
  }
}

TEST_CASE("parallel and serial reductions agree exactly") {
  const KernelEvaluator a(
      CheckerboardModel::from_copula(cdf_of(CopulaSpec::amh(0.5)), 9));
  const KernelEvaluator b(CopulaSpec::amh(0.5));
  const auto pts = random_unit_points(20000, 99);
  CHECK(kernel_sup_distance(a, b, pts) == kernel_sup_distance_serial(a, b, pts));
  CHECK(d_infty_grid(cdf_of(CopulaSpec::pi()), cdf_of(CopulaSpec::m()), 333) ==
        d_infty_grid_serial(cdf_of(CopulaSpec::pi()), cdf_of(CopulaSpec::m()),
                            333));
}

TEST_CASE("d_infty basics") {
  CHECK(d_infty_grid(cdf_of(CopulaSpec::pi()), cdf_of(CopulaSpec::pi()), 50) ==
        0.0);
  // max of min(u,v) - uv is 1/4, attained at (1/2, 1/2).
  CHECK(d_infty_grid(cdf_of(CopulaSpec::pi()), cdf_of(CopulaSpec::m()), 100) ==
        doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("empirical copula of an M sample is d_infty-close to M") {
  const auto data = CopulaSpec::m().sample(1000, 515);
  const auto ps = rank_transform(data, TiePolicy::error);
  const EmpiricalCopula ec(ps);
  // Comonotone ranks make E_n the n-cell diagonal staircase; the gap to
  // M is O(1/n), far under the 0.05 budget. At resolution 100 every
  // lattice point is a rank-grid node of E_n (100 divides 1000), where
  // the staircase agrees with min exactly; an offset resolution sees the
  // bilinear sag of 1/(4n).
  const double d_nodes = d_infty_grid_serial(
      [&](double u, double v) { return ec(u, v); }, cdf_of(CopulaSpec::m()),
      100);
  CHECK(d_nodes < 0.05);
  CHECK(d_nodes == 0.0);
  const double d_offset = d_infty_grid_serial(
      [&](double u, double v) { return ec(u, v); }, cdf_of(CopulaSpec::m()),
      97);
  CHECK(d_offset < 0.05);
  CHECK(d_offset > 0.0);
}

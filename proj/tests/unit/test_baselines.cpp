#include <doctest.h>

#include <cmath>

#include "copreg/nadaraya_watson.hpp"
#include "copreg/rng.hpp"

using namespace copreg;

namespace {

BivariateSample make(std::vector<double> x, std::vector<double> y) {
  BivariateSample s;
  s.x = std::move(x);
  s.y = std::move(y);
  return s;
}

BivariateSample random_sample(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  BivariateSample s;
  for (std::size_t i = 0; i < n; ++i) {
    s.x.push_back(rng.uniform(0.0, 10.0));
    s.y.push_back(std::sin(s.x.back()) + rng.normal());
  }
  return s;
}

}  // namespace

TEST_CASE("silverman bandwidth") {
  // 32 points with unit sample standard deviation: h = 32^(-1/5) = 1/2.
  std::vector<double> xs(32);
  for (int i = 0; i < 32; ++i) xs[static_cast<std::size_t>(i)] = i;
  double mean = 0.0;
  for (double v : xs) mean += v;
  mean /= 32.0;
  double ss = 0.0;
  for (double v : xs) ss += (v - mean) * (v - mean);
  const double sd = std::sqrt(ss / 31.0);
  for (auto& v : xs) v /= sd;  // sd becomes exactly 1 up to rounding
  CHECK(silverman_bandwidth(xs) == doctest::Approx(0.5).epsilon(1e-12));

  // Homogeneity: scaling the data scales the bandwidth.
  std::vector<double> scaled = xs;
  for (auto& v : scaled) v *= 3.5;
  CHECK(silverman_bandwidth(scaled) ==
        doctest::Approx(3.5 * silverman_bandwidth(xs)).epsilon(1e-12));

  CHECK_THROWS_AS(silverman_bandwidth(std::vector<double>{2.0, 2.0, 2.0}),
                  DegenerateSample);
  CHECK_THROWS_AS(silverman_bandwidth(std::vector<double>{1.0}),
                  DegenerateSample);
}

TEST_CASE("nw mean basics") {
  const NWModel constant(make({0, 1, 2, 3}, {4, 4, 4, 4}), 0.7);
  for (double x : {-5.0, 0.3, 9.0}) CHECK(constant.mean(x) == 4.0);

  const NWModel sym(make({-1, 1}, {-1, 1}), 0.9);
  CHECK(sym.mean(0.0) == doctest::Approx(0.0).epsilon(1e-14));

  // Far in the tail the nearest point carries all the weight.
  const NWModel spread(make({0.0, 5.0, 10.0}, {1.0, 2.0, 3.0}), 0.1);
  CHECK(spread.mean(-3.0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(spread.quantile(-3.0, 0.2) == 1.0);
  CHECK(spread.quantile(-3.0, 0.9) == 1.0);
}

TEST_CASE("nw mean is translation-equivariant in y") {
  const auto data = random_sample(80, 6);
  auto shifted = data;
  for (auto& y : shifted.y) y += 11.25;
  const NWModel a = NWModel::fit(data);
  const NWModel b = NWModel::fit(shifted);
  Rng rng(7);
  for (int k = 0; k < 50; ++k) {
    const double x = rng.uniform(-1.0, 11.0);
    CHECK(std::abs(b.mean(x) - (a.mean(x) + 11.25)) <= 1e-12);
  }
}

TEST_CASE("nw quantile conventions") {
  // Symmetric two-point data at x = 0: equal weights, the generalized
  // inverse picks the lower response at tau = 1/2.
  const NWModel sym(make({-1, 1}, {-3, 3}), 1.0);
  CHECK(sym.quantile(0.0, 0.5) == -3.0);

  const NWModel constant(make({0, 1, 2}, {4, 4, 4}), 0.5);
  for (double tau : {0.1, 0.5, 0.9}) CHECK(constant.quantile(0.0, tau) == 4.0);

  // Nondecreasing in tau.
  const auto data = random_sample(60, 8);
  const NWModel m = NWModel::fit(data);
  for (double x : {1.0, 5.0, 9.0}) {
    double prev = -1e300;
    for (int k = 1; k <= 19; ++k) {
      const double q = m.quantile(x, k / 20.0);
      CHECK(q >= prev);
      prev = q;
    }
  }
}

TEST_CASE("training-pair permutation does not change predictions") {
  const auto data = random_sample(40, 9);
  BivariateSample perm;
  Rng rng(10);
  std::vector<std::size_t> idx(data.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  rng.shuffle(idx.begin(), idx.end());
  for (std::size_t i : idx) {
    perm.x.push_back(data.x[i]);
    perm.y.push_back(data.y[i]);
  }
  const NWModel a = NWModel::fit(data);
  const NWModel b = NWModel::fit(perm);
  Rng qr(11);
  for (int k = 0; k < 30; ++k) {
    const double x = qr.uniform(0.0, 10.0);
    CHECK(a.mean(x) == b.mean(x));
    CHECK(a.quantile(x, 0.37) == b.quantile(x, 0.37));
  }
}

TEST_CASE("batch predictions match scalars") {
  const auto data = random_sample(50, 12);
  const NWModel m = NWModel::fit(data);
  std::vector<double> xs(64);
  Rng rng(13);
  for (auto& x : xs) x = rng.uniform(0.0, 10.0);
  const auto mb = m.mean_batch(xs);
  const auto ms = m.mean_batch_serial(xs);
  const auto qb = m.quantile_batch(xs, 0.5);
  const auto qs = m.quantile_batch_serial(xs, 0.5);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    CHECK(mb[i] == m.mean(xs[i]));
    CHECK(mb[i] == ms[i]);
    CHECK(qb[i] == m.quantile(xs[i], 0.5));
    CHECK(qb[i] == qs[i]);
  }
}

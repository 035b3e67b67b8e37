#include <doctest.h>

#include <cmath>

#include "copreg/sample.hpp"

using namespace copreg;

namespace {

BivariateSample make(std::vector<double> x, std::vector<double> y) {
  BivariateSample s;
  s.x = std::move(x);
  s.y = std::move(y);
  return s;
}

}  // namespace

TEST_CASE("strictly monotone relabeling") {
  const auto ps =
      rank_transform(make({1.0, 2.0, 3.0}, {10.0, 5.0, 7.0}), TiePolicy::error);
  CHECK(ps.rank_x == std::vector<std::int32_t>{1, 2, 3});
  CHECK(ps.rank_y == std::vector<std::int32_t>{3, 1, 2});
}

TEST_CASE("order reversal") {
  const auto ps = rank_transform(make({5, 1}, {5, 1}), TiePolicy::error);
  CHECK(ps.rank_x == std::vector<std::int32_t>{2, 1});
  CHECK(ps.rank_y == std::vector<std::int32_t>{2, 1});
}

TEST_CASE("x-tie raises under tie_policy=error and names the rows") {
  try {
    rank_transform(make({1, 1}, {1, 2}), TiePolicy::error);
    FAIL("expected TiesPresent");
  } catch (const TiesPresent& e) {
    CHECK(e.axis() == 'x');
    CHECK(e.rows() == std::vector<std::size_t>{1, 2});
    CHECK(std::string(e.what()).find("rows 1, 2") != std::string::npos);
  }
}

TEST_CASE("random tie breaking is a seeded permutation") {
  const auto s = make({1, 1, 1, 2, 3}, {4, 4, 4, 4, 4});
  const auto a = rank_transform(s, TiePolicy::random, 99);
  const auto b = rank_transform(s, TiePolicy::random, 99);
  CHECK(a.rank_x == b.rank_x);
  CHECK(a.rank_y == b.rank_y);

  auto is_perm = [](std::vector<std::int32_t> r) {
    std::sort(r.begin(), r.end());
    for (std::size_t i = 0; i < r.size(); ++i)
      if (r[i] != static_cast<std::int32_t>(i + 1)) return false;
    return true;
  };
  CHECK(is_perm(a.rank_x));
  CHECK(is_perm(a.rank_y));

  // Untied entries keep their relative order.
  CHECK(a.rank_x[3] == 4);
  CHECK(a.rank_x[4] == 5);
}

TEST_CASE("degenerate and invalid samples") {
  CHECK_THROWS_AS(rank_transform(make({1.0}, {2.0}), TiePolicy::error),
                  DegenerateSample);
  CHECK_THROWS_AS(
      rank_transform(make({1.0, std::nan("")}, {2.0, 3.0}), TiePolicy::error),
      InvalidInput);
}

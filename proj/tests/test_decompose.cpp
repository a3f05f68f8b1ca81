#include "doctest.h"
#include "helpers.hpp"
#include "minsum/decompose.hpp"

using namespace minsum;
using testing_support::line;

TEST_CASE("gonzalez traversal") {
  const auto s = line({0, 1, 5});
  auto two = gonzalez_kcenter(s, 2);
  CHECK(two.centers == std::vector<PointId>{0, 2});
  CHECK(two.radius == 1.0);
  auto one = gonzalez_kcenter(s, 1);
  CHECK(one.centers == std::vector<PointId>{0});
  CHECK(one.radius == 5.0);
  CHECK(gonzalez_kcenter(s, 3).radius == 0.0);
  CHECK_THROWS(gonzalez_kcenter(s, 0));
}

TEST_CASE("decompose a line") {
  const auto s = line({0, 1, 10, 11});
  const auto d = decompose(s, 2, 0);
  REQUIRE(d.components.size() == 2);
  CHECK(d.components[0] == std::vector<PointId>{0, 1});
  CHECK(d.components[1] == std::vector<PointId>{2, 3});
  CHECK(d.R == 1.0);
  CHECK(d.L == doctest::Approx(2.0 / (64.0 * 4.0)));
  CHECK(d.beta == 64.0 * 4.0 * kBracketWidening);
  CHECK_FALSE(d.zero_cost);
}

TEST_CASE("degenerate decompositions") {
  CHECK(decompose(line({7}), 1, 0).zero_cost);
  CHECK(decompose(line({0, 1, 10, 11}), 4, 0).zero_cost);
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto s = testing_support::random_space(9, 2, seed);
    CHECK(decompose(s, 1, 0).components.size() == 1);
  }
}

TEST_CASE("outlier radius keeps an optimal cluster together") {
  const auto s = line({0, 1, 100, 101});
  const double rho = greedy_outlier_radius(s, 1, 1);
  CHECK(rho <= 99.0);
  const auto d = decompose(s, 1, 1);
  for (const auto& c : d.components) {
    const bool has0 = std::find(c.begin(), c.end(), 0) != c.end();
    const bool has1 = std::find(c.begin(), c.end(), 1) != c.end();
    CHECK(has0 == has1);
  }
}

TEST_CASE("merging components") {
  const auto s = line({0, 1, 10, 11, 50});
  auto d = decompose(s, 3, 0);
  REQUIRE(d.components.size() == 3);
  merge_into_nearest(s, d, 2);
  REQUIRE(d.components.size() == 2);
  CHECK(d.components[1] == std::vector<PointId>{2, 3, 4});
  CHECK(d.R == 40.0);
}

#include <cmath>

#include "doctest.h"
#include "helpers.hpp"
#include "minsum/metric.hpp"

using namespace minsum;
using testing_support::line;

TEST_CASE("distance on coordinates and matrices") {
  const auto s = line({0, 1, 10, 11});
  CHECK(s.distance(0, 1) == 1.0);
  CHECK(s.distance(2, 2) == 0.0);
  CHECK_THROWS_AS(s.distance(0, 4), std::out_of_range);

  const auto m = MetricSpace::from_matrix(
      {{0, 4, 5, 5}, {4, 0, 3, 6}, {5, 3, 0, 7}, {5, 6, 7, 0}});
  CHECK(m.distance(2, 3) == 7.0);
}

TEST_CASE("matrix validation reports the violating triple") {
  try {
    MetricSpace::from_matrix({{0, 1, 5}, {1, 0, 1}, {5, 1, 0}});
    FAIL("expected a metric error");
  } catch (const MetricError& e) {
    REQUIRE(e.triple().has_value());
    CHECK((*e.triple())[0] == 0);
    CHECK((*e.triple())[1] == 1);
    CHECK((*e.triple())[2] == 2);
  }
  CHECK_THROWS_AS(MetricSpace::from_matrix({{0, 1}, {2, 0}}), MetricError);
  CHECK_THROWS_AS(MetricSpace::from_matrix({{0, 0}, {0, 0}}), MetricError);
  CHECK_THROWS_AS(MetricSpace::from_matrix({{1}}), MetricError);
  CHECK_THROWS_AS(MetricSpace::from_points({{0.0}, {1.0, 2.0}}), MetricError);
  CHECK(MetricSpace::from_matrix({{0}}).size() == 1);
}

TEST_CASE("diameter and summary") {
  const auto s = line({0, 1, 10, 11});
  const std::vector<PointId> all{0, 1, 2, 3}, one{2}, pair{0, 1};
  CHECK(diameter(s, all) == 11.0);
  CHECK(diameter(s, one) == 0.0);
  CHECK(diameter(s, pair) == 1.0);
  CHECK_THROWS(diameter(s, std::vector<PointId>{}));
  CHECK(s.diameter() == 11.0);
  CHECK(s.min_distance() == 1.0);
  CHECK(s.aspect_ratio() == 11.0);
  CHECK(line({3}).aspect_ratio() == 1.0);
}

TEST_CASE("round_up_pow2") {
  CHECK(round_up_pow2(3) == 4.0);
  CHECK(round_up_pow2(0) == 0.0);
  CHECK(round_up_pow2(4) == 4.0);
  CHECK(round_up_pow2(0.3) == 0.5);
  CHECK_THROWS(round_up_pow2(-1));
}

TEST_CASE("ball members") {
  const auto s = line({0, 1, 10, 11});
  CHECK(ball_members(s, 0, 1) == std::vector<PointId>{0, 1});
  CHECK(ball_members(s, 2, 0) == std::vector<PointId>{2});
  CHECK(ball_members(s, 0, 11) == std::vector<PointId>{0, 1, 2, 3});
  const std::vector<PointId> restrict{1, 3};
  CHECK(ball_members(s, 0, 11, restrict) == std::vector<PointId>{1, 3});
}

TEST_CASE("solution costs") {
  const auto s = line({0, 1, 10, 11});
  BallSolution balls{{{0, 1}, {2, 1}}, {}};
  CHECK(solution_cost(s, balls) == 2.0);
  PartitionSolution parts{{{{0, 1}, {}}, {{2, 3}, {}}}, {}};
  CHECK(solution_cost(s, parts, 2.0) == 2.0);
  CHECK(solution_cost(s, BallSolution{}) == 0.0);
  CHECK(verify(s, balls, 2, 0).empty());
  CHECK_FALSE(verify(s, BallSolution{{{0, 1}}, {}}, 2, 0).empty());
  CHECK(verify(s, parts, 2, 0).empty());
  PartitionSolution overlap{{{{0, 1}, {}}, {{1, 2, 3}, {}}}, {}};
  CHECK_FALSE(verify(s, overlap, 2, 0).empty());
}

TEST_CASE("merge diameter bound on random subsets") {
  const auto s = testing_support::random_space(10, 2, 3);
  const std::vector<PointId> a{0, 1, 2}, b{5, 6, 7, 8};
  std::vector<PointId> u(a);
  u.insert(u.end(), b.begin(), b.end());
  CHECK(diameter(s, u) <= diameter(s, a) + set_distance(s, a, b) + diameter(s, b) + 1e-12);
}

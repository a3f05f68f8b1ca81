#include "doctest.h"
#include "helpers.hpp"
#include "minsum/net.hpp"

using namespace minsum;
using testing_support::line;

namespace {

std::vector<PointId> all_points(const MetricSpace& s) {
  std::vector<PointId> ids(s.size());
  for (PointId i = 0; i < s.size(); ++i) ids[i] = i;
  return ids;
}

}  // namespace

TEST_CASE("hierarchy on a line") {
  const auto s = line({0, 1, 10, 11});
  const auto h = build_hierarchy(s, all_points(s));
  CHECK(h.base_scale == 1.0);
  REQUIRE(h.levels.size() >= 5);
  CHECK(h.levels[1].points == std::vector<PointId>{0, 2});
  CHECK(h.levels[2].points == std::vector<PointId>{0, 2});
  CHECK(h.levels[3].points == std::vector<PointId>{0, 2});
  CHECK(h.levels[4].points == std::vector<PointId>{0});
  CHECK(h.representative(3, 1) == 2);
}

TEST_CASE("hierarchy edge cases") {
  const auto one = line({5});
  const auto h1 = build_hierarchy(one, all_points(one));
  CHECK(h1.levels.size() == 1);
  CHECK(h1.levels[0].points == std::vector<PointId>{0});

  const auto tri = MetricSpace::from_matrix({{0, 1, 1}, {1, 0, 1}, {1, 1, 0}});
  const auto h = build_hierarchy(tri, all_points(tri));
  CHECK(h.levels[1].points == std::vector<PointId>{0});
  CHECK_THROWS(build_hierarchy(tri, std::vector<PointId>{}));
}

TEST_CASE("packing and covering on random instances") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto s = testing_support::random_space(12, 2, seed);
    const auto h = build_hierarchy(s, all_points(s));
    for (std::size_t i = 1; i < h.levels.size(); ++i) {
      const auto& lv = h.levels[i];
      for (std::size_t a = 0; a < lv.points.size(); ++a)
        for (std::size_t b = a + 1; b < lv.points.size(); ++b)
          CHECK(s(lv.points[a], lv.points[b]) >= lv.scale);
      const auto& prev = h.levels[i - 1].points;
      for (std::size_t j = 0; j < prev.size(); ++j) CHECK(s(prev[j], lv.parent[j]) < lv.scale);
    }
    for (PointId p = 0; p < s.size(); ++p)
      for (std::size_t i = 0; i < h.levels.size(); ++i)
        CHECK(s(p, h.representative(p, i)) < 2.0 * h.levels[i].scale);
  }
}

TEST_CASE("net for a budget") {
  const auto s = line({0, 1, 10, 11});
  const auto h = build_hierarchy(s, all_points(s));
  const auto v = net_for_budget(s, h, 8, 2, 0.5);
  CHECK(v.spacing == 2.0);
  CHECK(v.points == std::vector<PointId>{0, 2});
  CHECK(v.preimages[0] == std::vector<PointId>{0, 1});
  CHECK(v.preimages[1] == std::vector<PointId>{2, 3});
  CHECK(v.pad == 2.0);

  const auto fine = net_for_budget(s, h, 1, 2, 0.5);
  CHECK(fine.identity);
  CHECK(fine.points.size() == 4);

  const auto coarse = net_for_budget(s, h, 2 * 2 * 11 / 0.5, 2, 0.5);
  CHECK(coarse.points.size() == 1);
  CHECK_THROWS(coarse.index_of(3));
}

TEST_CASE("extension to the component") {
  const auto s = line({0, 1, 10, 11});
  const auto h = build_hierarchy(s, all_points(s));
  const auto v = net_for_budget(s, h, 8, 2, 0.5);
  const auto ext = extend_to_component(s, v, BallSolution{{{0, 0}, {2, 0}}, {}});
  CHECK(ext.balls == std::vector<Ball>{{0, 2}, {2, 2}});
  CHECK(verify(s, ext, 2, 0).empty());

  const auto part = extend_to_component(s, v, PartitionSolution{{{{0}, {}}, {{2}, {}}}, {}});
  CHECK(part.clusters[0].members == std::vector<PointId>{0, 1});
  CHECK(part.clusters[1].members == std::vector<PointId>{2, 3});

  const auto id = identity_view(all_points(s));
  const BallSolution same{{{1, 1}}, {3}};
  CHECK(extend_to_component(s, id, same) == same);
  CHECK_THROWS(extend_to_component(s, v, BallSolution{{{1, 0}}, {}}));
}

TEST_CASE("preimages partition every view") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto s = testing_support::random_space(15, 2, seed);
    const auto h = build_hierarchy(s, all_points(s));
    for (double T = 0.01; T < 64; T *= 2) {
      const auto v = net_for_budget(s, h, T, 2, 0.5);
      std::vector<int> seen(s.size(), 0);
      for (std::size_t i = 0; i < v.points.size(); ++i) {
        CHECK(std::binary_search(v.preimages[i].begin(), v.preimages[i].end(), v.points[i]));
        for (PointId p : v.preimages[i]) {
          ++seen[p];
          CHECK(s(p, v.points[i]) <= v.pad);
        }
      }
      for (int c : seen) CHECK(c == 1);
    }
  }
}

#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "minsum/msd.hpp"
#include "minsum/oracles.hpp"

using namespace minsum;
using testing_support::close;
using testing_support::line;
using testing_support::random_space;

namespace {

double cost_of(const MetricSpace& s, const ClusterList& sol) {
  double c = 0.0;
  for (const auto& cl : sol) c += diameter(s, cl);
  return c;
}

ClusterValidator alternating_balance() {
  return [](std::span<const PointId> c) {
    std::size_t even = 0;
    for (PointId p : c) even += p % 2 == 0;
    return 2 * even == c.size();
  };
}

}  // namespace

TEST_CASE("exact MSD examples") {
  const auto s = line({0, 1, 10, 11});
  const auto two = exact_msd(s, 2);
  REQUIRE(two);
  CHECK(solution_cost(s, *two) == 2.0);
  CHECK(two->clusters.size() == 2);
  CHECK(two->clusters[0].members == std::vector<PointId>{0, 1});
  CHECK(two->clusters[1].members == std::vector<PointId>{2, 3});
  CHECK(solution_cost(s, *exact_msd(s, 1)) == 11.0);
  const auto four = exact_msd(s, 4);
  CHECK(solution_cost(s, *four) == 0.0);
  CHECK(four->clusters.size() == 4);
  CHECK_THROWS(exact_msd(s, 0));
}

TEST_CASE("exact MSD with a validator") {
  const auto s = line({0, 1, 10, 11});
  const auto v = alternating_balance();
  const auto sol = exact_msd(s, 2, &v);
  REQUIRE(sol);
  CHECK(solution_cost(s, *sol) == 2.0);
  const ClusterValidator never = [](std::span<const PointId>) { return false; };
  CHECK_FALSE(exact_msd(s, 2, &never));
}

TEST_CASE("exact MSD matches the oracle") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const std::size_t n = 4 + seed % 5;
    const auto s = random_space(n, 1 + seed % 2, seed);
    for (std::size_t k = 1; k <= 3; ++k) {
      const auto ref = oracle_msd(s, k, 0);
      const auto sol = exact_msd(s, k);
      REQUIRE(sol);
      CHECK(verify(s, *sol, k, 0).empty());
      CHECK(close(solution_cost(s, *sol), ref->cost));
    }
  }
}

TEST_CASE("exact MSD with outliers") {
  const auto s = line({0, 1, 10, 11, 100});
  const auto sol = exact_msd_outliers(s, 2, 1);
  CHECK(solution_cost(s, sol) == 2.0);
  CHECK(sol.outliers == std::vector<PointId>{4});
  CHECK(solution_cost(s, exact_msd_outliers(s, 1, 5)) == 0.0);
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const std::size_t n = 4 + seed % 5;
    const auto r = random_space(n, 2, seed + 100);
    for (std::size_t k = 1; k <= 3; ++k)
      for (std::size_t g = 0; g <= 2; ++g) {
        const auto ref = oracle_msd(r, k, g);
        const auto got = exact_msd_outliers(r, k, g);
        CHECK(verify(r, got, k, g).empty());
        CHECK(close(solution_cost(r, got), ref->cost));
      }
  }
}

TEST_CASE("approximate MSD examples") {
  const auto s = line({0, 1, 10, 11});
  const auto sol = approximate_msd(s, 2, 0.5);
  REQUIRE(sol);
  CHECK(verify(s, *sol, 2, 0).empty());
  const double c = solution_cost(s, *sol);
  CHECK(c >= 2.0);
  CHECK(c <= 3.0);
  CHECK(solution_cost(s, *approximate_msd(s, 4, 0.5)) == 0.0);
  CHECK_THROWS(approximate_msd(s, 2, 0.0));

  const auto v = alternating_balance();
  const auto fair = approximate_msd(s, 2, 0.5, 0, &v);
  REQUIRE(fair);
  CHECK(solution_cost(s, *fair) == 2.0);
  for (const auto& cl : fair->clusters) CHECK(v(cl.members));
}

TEST_CASE("approximate MSD stays within the bound") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const std::size_t n = 6 + seed % 5;
    const auto s = random_space(n, 2, seed + 7);
    for (std::size_t k = 2; k <= 3; ++k)
      for (std::size_t g = 0; g <= 1; ++g) {
        const auto ref = oracle_msd(s, k, g);
        const auto sol = approximate_msd(s, k, 0.5, g);
        REQUIRE(sol);
        CHECK(verify(s, *sol, k, g).empty());
        CHECK(solution_cost(s, *sol) <= 1.5 * ref->cost + 1e-9);
      }
  }
}

TEST_CASE("subroutine base cases") {
  const auto s = line({0, 1, 10, 11});
  const std::vector<PointId> one{2};
  const auto view = identity_view(one);
  const std::vector<double> radii{1.0};
  const auto sol = msd_subroutine(s, view, radii, 10.0, 1);
  REQUIRE(sol);
  CHECK(sol->clusters.size() == 1);
  CHECK(sol->clusters[0].members == std::vector<PointId>{2});
  CHECK_FALSE(msd_subroutine(s, view, radii, 10.0, 0));
}

TEST_CASE("refine") {
  const auto s = line({0, 1, 2});
  TaggedClustering a{{{{0, 1}, 1.0}, {{1, 2}, 2.0}}, {}};
  CHECK(refine_applicable(s, a));
  const auto r = refine(s, a);
  REQUIRE(r.entries.size() == 2);
  CHECK(r.entries[0].members == std::vector<PointId>{0, 1});
  CHECK(r.entries[1].members == std::vector<PointId>{2});
  CHECK_FALSE(refine_applicable(s, r));

  TaggedClustering disjoint{{{{0}, 0.0}, {{1, 2}, 1.0}}, {}};
  CHECK(refine(s, disjoint) == disjoint);
  TaggedClustering enlarged{{{{0, 2}, 1.0}, {{1, 2}, 2.0}}, {}};
  CHECK(refine(s, enlarged) == enlarged);

  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    const auto sp = random_space(8, 2, 50 + trial);
    TaggedClustering t;
    std::uniform_int_distribution<int> count(1, 5), bit(0, 2);
    std::uniform_real_distribution<double> radius(0.0, 1.0);
    for (int e = count(rng); e > 0; --e) {
      TaggedEntry entry;
      for (PointId p = 0; p < 8; ++p)
        if (bit(rng) == 0) entry.members.push_back(p);
      if (entry.members.empty()) entry.members.push_back(0);
      entry.r = radius(rng);
      t.entries.push_back(entry);
    }
    if (bit(rng) == 0) t.outliers.push_back(3);
    CHECK_FALSE(refine_applicable(sp, refine(sp, t)));
  }
}

TEST_CASE("neighborhoods") {
  const auto s = line({0, 1, 2, 3, 100});
  const ClusterList sol{{0, 1}, {2, 3}, {4}};
  CHECK(neighborhood(s, sol, 0) == std::vector<std::size_t>{1});
  CHECK(neighborhood(s, sol, 1) == std::vector<std::size_t>{0});
  CHECK(neighborhood(s, sol, 2).empty());
  CHECK(bound_neighborhoods(s, sol) == sol);
  CHECK(bound_neighborhoods(s, ClusterList{{0, 1, 2, 3, 4}}) == ClusterList{{0, 1, 2, 3, 4}});

  std::vector<std::vector<double>> pts{{-1.0, 0.0}, {1.0, 0.0}};
  for (int arm = 0; arm < 6; ++arm) {
    const double a = arm * 3.14159265358979 / 3.0;
    pts.push_back({1.5 * std::cos(a), 1.5 * std::sin(a)});
    pts.push_back({3.6 * std::cos(a), 3.6 * std::sin(a)});
  }
  const auto star = MetricSpace::from_points(pts);
  ClusterList arms{{0, 1}};
  for (PointId arm = 0; arm < 6; ++arm) arms.push_back({2 + 2 * arm, 3 + 2 * arm});
  CHECK(neighborhood(star, arms, 0).size() > 4);
  const auto merged = bound_neighborhoods(star, arms);
  CHECK(merged.size() == 1);
  CHECK(cost_of(star, merged) <= cost_of(star, arms));
  for (std::size_t i = 0; i < merged.size(); ++i) CHECK(neighborhood(star, merged, i).size() <= 4);
}

TEST_CASE("packing and distance enforcement") {
  const auto s = line({0, 1, 2, 3, 100, 101});
  const auto packed = make_packed(s, ClusterList{{0, 2}, {1, 3}});
  CHECK(packed == ClusterList{{0, 1, 2, 3}});
  CHECK(is_packed(s, packed));
  const ClusterList far{{0, 1}, {4, 5}};
  CHECK(make_packed(s, far) == far);
  CHECK(make_packed(s, ClusterList{{0, 1, 2}}) == ClusterList{{0, 1, 2}});
  CHECK_FALSE(is_packed(s, ClusterList{{0, 2}, {1, 3}}));

  CHECK(enforce_min_cluster_distance(s, ClusterList{{0, 1}, {2, 3}}, 1.0) ==
        ClusterList{{0, 1, 2, 3}});
  CHECK(enforce_min_cluster_distance(s, far, 1.0) == far);
  CHECK(enforce_min_cluster_distance(s, ClusterList{{0, 1}}, 1.0) == ClusterList{{0, 1}});
  CHECK_THROWS(enforce_min_cluster_distance(s, far, -1.0));

  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto r = random_space(10, 2, seed + 300);
    ClusterList sol;
    for (PointId p = 0; p < 10; ++p) sol.push_back({p});
    const auto out = make_packed(r, sol);
    CHECK(is_packed(r, out));
    CHECK(cost_of(r, out) <= cost_of(r, sol) + 1e-12);
  }
}

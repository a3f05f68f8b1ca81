#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "minsum/decompose.hpp"
#include "minsum/oracles.hpp"
#include "minsum/variants.hpp"

using namespace minsum;
using testing_support::close;
using testing_support::line;
using testing_support::random_space;

namespace {

std::vector<std::size_t> usage(const BallSolution& sol, const FairSpec& fair) {
  std::vector<std::size_t> used(fair.caps.size(), 0);
  for (const Ball& b : sol.balls) ++used[fair.colors[b.center]];
  return used;
}

}  // namespace

TEST_CASE("fair MSR examples") {
  const auto s = line({0, 1, 5});
  const FairSpec fair{{0, 0, 1}, {1, 1}};
  const auto sol = fair_msr_approx(s, fair, 0.5);
  REQUIRE(sol);
  CHECK(verify(s, *sol, 2, 0).empty());
  CHECK(solution_cost(s, *sol) <= 1.5);
  CHECK(usage(*sol, fair) == std::vector<std::size_t>{1, 1});

  const FairSpec single{{0, 0, 0}, {2}};
  const auto one = fair_msr_approx(s, single, 0.5);
  REQUIRE(one);
  CHECK(solution_cost(s, *one) <= 1.5);

  const FairSpec blocked{{0, 0, 1}, {2, 0}};
  const auto fallback = fair_msr_approx(s, blocked, 0.5);
  const auto ref = oracle_msr(s, 2, 0, 1.0, &blocked);
  REQUIRE(fallback);
  REQUIRE(ref);
  CHECK(ref->cost == 4.0);
  CHECK(solution_cost(s, *fallback) <= 1.5 * ref->cost);
  CHECK(usage(*fallback, blocked)[1] == 0);

  CHECK_THROWS(fair_msr_approx(s, FairSpec{{0, 0}, {1}}, 0.5));
}

TEST_CASE("fair MSR matches the oracle bound") {
  std::mt19937_64 rng(11);
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    const std::size_t n = 6 + seed % 4;
    const auto s = random_space(n, 2, seed + 900);
    FairSpec fair;
    for (std::size_t i = 0; i < n; ++i) fair.colors.push_back(rng() % 2);
    fair.caps = {1 + seed % 2, 1};
    const auto ref = oracle_msr(s, fair.k(), 0, 1.0, &fair);
    const auto sol = fair_msr_approx(s, fair, 0.5);
    REQUIRE(ref.has_value() == sol.has_value());
    if (!sol) continue;
    CHECK(verify(s, *sol, fair.k(), 0).empty());
    const auto used = usage(*sol, fair);
    for (std::size_t c = 0; c < used.size(); ++c) CHECK(used[c] <= fair.caps[c]);
    CHECK(solution_cost(s, *sol) <= 1.5 * ref->cost + 1e-9);
  }
}

TEST_CASE("bipartite center matching") {
  const std::vector<PointId> pts{0, 1, 2};
  NetView view;
  view.points = {0, 2};
  view.preimages = {{0, 1}, {2}};
  view.pad = 1.0;
  const FairSpec fair{{0, 1, 0}, {1, 1}};
  BallSolution net{{{0, 3.0}, {2, 0.0}}, {}};
  const auto m = bipartite_center_matching(net, view, fair, {1, 1});
  REQUIRE(m);
  CHECK(m->balls[0].center == 1);
  CHECK(m->balls[0].radius == 4.0);
  CHECK(m->balls[1].center == 2);

  const FairSpec only_a{{0, 0, 0}, {1, 1}};
  CHECK_FALSE(bipartite_center_matching(net, view, only_a, {1, 1}));

  const auto empty = bipartite_center_matching(BallSolution{}, view, fair, {0, 0});
  REQUIRE(empty);
  CHECK(empty->balls.empty());

  NetView full;
  full.points = {0};
  full.preimages = {{0, 1, 2}};
  const auto ok = bipartite_center_matching(BallSolution{{{0, 1.0}}, {}}, full, fair, {0, 1});
  REQUIRE(ok);
  CHECK(ok->balls[0].center == 1);
}

TEST_CASE("balanced validator") {
  const auto v = balanced_validator({{0, 0, 1, 1, 1, 1}, 1.0});
  const std::vector<PointId> two_two{0, 1, 2, 3};
  CHECK(v(two_two));
  const auto half = balanced_validator({{0, 1, 1, 1}, 0.5});
  const std::vector<PointId> one_three{0, 1, 2, 3};
  CHECK_FALSE(half(one_three));
  const auto zero = balanced_validator({{0, 0, 0}, 0.0});
  const std::vector<PointId> mono{0, 1, 2};
  CHECK(zero(mono));
  CHECK_THROWS(balanced_validator({{0}, 1.5}));
}

TEST_CASE("alpha MSR") {
  const auto s = line({0, 1, 5});
  const auto sol = alpha_msr_approx(s, 2, 2.0, 0.5);
  CHECK(verify(s, sol, 2, 0).empty());
  CHECK(solution_cost(s, sol, 2.0) <= 1.5);
  CHECK(solution_cost(s, alpha_msr_approx(s, 3, 2.0, 0.5), 2.0) == 0.0);
  CHECK_THROWS(alpha_msr_approx(s, 2, 0.5, 0.5));

  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto r = random_space(8, 2, seed + 40);
    CHECK(alpha_msr_approx(r, 2, 1.0, 0.5) == approximate_msr(r, 2, 0.5));
    const auto ref = oracle_msr(r, 2, 0, 2.0);
    const auto got = alpha_msr_approx(r, 2, 2.0, 0.5);
    CHECK(verify(r, got, 2, 0).empty());
    CHECK(solution_cost(r, got, 2.0) <= 1.5 * ref->cost + 1e-9);
  }
}

TEST_CASE("k-center") {
  const auto s = line({0, 1, 5});
  CHECK(max_radius(k_center_approx(s, 2, 0.1)) <= 1.1);
  CHECK(max_radius(k_center_approx(s, 3, 0.1)) == 0.0);
  CHECK(max_radius(k_center_approx(s, 5, 0.1)) == 0.0);
  const auto t = line({0, 1, 10, 11});
  CHECK(max_radius(k_center_approx(t, 2, 0.5)) <= 1.5);
  CHECK_THROWS(k_center_approx(s, 0, 0.5));

  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto r = random_space(6 + seed % 6, 2, seed + 70);
    for (std::size_t k = 1; k <= 3; ++k)
      for (double eps : {0.5, 0.25}) {
        const auto sol = k_center_approx(r, k, eps);
        CHECK(verify(r, sol, k, 0).empty());
        const double got = max_radius(sol);
        CHECK(got <= (1.0 + eps) * oracle_kcenter(r, k).cost + 1e-9);
        CHECK(got <= gonzalez_kcenter(r, k).radius + 1e-12);
      }
  }
}

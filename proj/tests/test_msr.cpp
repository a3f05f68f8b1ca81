#include "doctest.h"
#include "helpers.hpp"
#include "minsum/msr.hpp"

using namespace minsum;
using testing_support::line;

TEST_CASE("merge_components splits resources") {
  CostTable a({3}), b({3});
  a.cost = {INFINITY, 5, 3, INFINITY};
  b.cost = {INFINITY, 4, 2, INFINITY};
  auto r = merge_components({a, b});
  REQUIRE(r);
  CHECK(r->cost == 7.0);

  CostTable c({2}), d({2});
  c.cost = {INFINITY, 5, 3};
  d.cost = {INFINITY, 4, 2};
  auto r2 = merge_components({c, d});
  REQUIRE(r2);
  CHECK(r2->cost == 9.0);
  CHECK(r2->choice == std::vector<std::size_t>{1, 1});

  auto single = merge_components({a});
  REQUIRE(single);
  CHECK(single->cost == 3.0);

  CostTable e({1}), f({1});
  e.cost = {INFINITY, 1};
  f.cost = {INFINITY, 1};
  CHECK_FALSE(merge_components({e, f}));
}

TEST_CASE("exact MSR examples") {
  const auto s = line({0, 1, 5});
  CHECK(solution_cost(s, exact_msr(s, 2)) == 1.0);
  CHECK(solution_cost(s, exact_msr(s, 3)) == 0.0);
  CHECK(solution_cost(s, exact_msr(s, 5)) == 0.0);
  const auto out = exact_msr(s, 1, 1);
  CHECK(solution_cost(s, out) == 1.0);
  CHECK(out.outliers == std::vector<PointId>{2});
  CHECK(solution_cost(s, exact_msr(s, 2, 0, 2.0), 2.0) == 1.0);
  CHECK(solution_cost(s, exact_msr(s, 1)) == 4.0);
}

TEST_CASE("approximate MSR examples") {
  const auto s = line({0, 1, 10, 11});
  const auto sol = approximate_msr(s, 2, 0.5);
  CHECK(verify(s, sol, 2, 0).empty());
  const double c = solution_cost(s, sol);
  CHECK(c >= 2.0);
  CHECK(c <= 3.0);
  CHECK(solution_cost(s, approximate_msr(s, 4, 0.5)) == 0.0);
  CHECK(solution_cost(line({3}), approximate_msr(line({3}), 1, 0.5)) == 0.0);
  CHECK_THROWS(approximate_msr(s, 2, 0.0));
  CHECK_THROWS(approximate_msr(s, 0, 0.5));
}

TEST_CASE("subroutine base cases") {
  const auto s = line({0, 1, 10, 11});
  const std::vector<PointId> one{2};
  const auto v = identity_view(one);
  const std::vector<double> radii{1.0};
  auto r = msr_subroutine(s, v, radii, 4.0, 1);
  REQUIRE(r);
  CHECK(r->balls == std::vector<Ball>{{2, 0.0}});

  const std::vector<PointId> all{0, 1, 2, 3};
  const auto full = identity_view(all);
  CHECK_FALSE(msr_subroutine(s, full, radii, 4.0, 0));
  const std::vector<double> big{16.0};
  CHECK_FALSE(msr_subroutine(s, full, big, 4.0, 2));
}

TEST_CASE("approximation tracks exact optimum on random instances") {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const auto s = testing_support::random_space(8, 2, seed);
    for (std::size_t k : {1, 2, 3})
      for (std::size_t g : {0, 1}) {
        const double opt = solution_cost(s, exact_msr(s, k, g));
        const auto sol = approximate_msr(s, k, 0.25, g);
        CHECK(verify(s, sol, k, g).empty());
        CHECK(solution_cost(s, sol) <= 1.25 * opt + 1e-9);
        CHECK(solution_cost(s, sol) >= opt - 1e-9);
      }
  }
}

#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "minsum/metric.hpp"

namespace testing_support {

inline minsum::MetricSpace line(std::initializer_list<double> xs) {
  std::vector<std::vector<double>> pts;
  for (double x : xs) pts.push_back({x});
  return minsum::MetricSpace::from_points(pts);
}

inline minsum::MetricSpace random_space(std::size_t n, std::size_t dim, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<std::vector<double>> pts(n, std::vector<double>(dim));
  for (auto& p : pts)
    for (auto& c : p) c = u(rng);
  return minsum::MetricSpace::from_points(pts);
}

inline bool close(double a, double b, double rel = 1e-9) {
  const double scale = std::max({1.0, std::abs(a), std::abs(b)});
  return std::abs(a - b) <= rel * scale;
}

}  // namespace testing_support

#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "minsum/metric.hpp"

namespace minsum {

/// Predicate on a single cluster (sorted member ids).
using ClusterValidator = std::function<bool(std::span<const PointId>)>;

/// Color per point and an upper bound on the number of centers of each color.
/// The total number of balls is the sum of the caps.
struct FairSpec {
  std::vector<std::size_t> colors;
  std::vector<std::size_t> caps;

  std::size_t k() const;
  /// Throws std::invalid_argument unless every one of the n points has a capped color.
  void validate(std::size_t n) const;
};

/// Two-coloring (side 0 or 1 per point) and the balance threshold b in [0, 1].
struct BalanceSpec {
  std::vector<std::size_t> side;
  double b = 0.0;

  void validate(std::size_t n) const;
};

}  // namespace minsum

#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "minsum/decompose.hpp"
#include "minsum/metric.hpp"
#include "minsum/msr.hpp"

namespace minsum::detail {

struct BallProblem {
  std::size_t k = 1;
  std::size_t g = 0;
  double eps = 0.5;
  double alpha = 1.0;
  bool exact = false;
  Problem problem = Problem::msr;
  // fair variant: color per point and per-color center caps
  const std::vector<std::size_t>* colors = nullptr;
  std::vector<std::size_t> caps;
};

/// Decompose, search every component, merge. nullopt when infeasible.
std::optional<BallSolution> solve_balls(const MetricSpace& space, const BallProblem& problem,
                                        const SolveOptions& options);

}  // namespace minsum::detail

#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "minsum/metric.hpp"
#include "minsum/net.hpp"

namespace minsum {

struct ComponentSummary {
  std::vector<PointId> points;
  std::size_t clusters = 0;
  std::size_t outliers = 0;
  double cost = 0.0;
};

struct SolveOptions {
  std::size_t threads = 1;
  /// When set, receives one entry per decomposition component.
  std::vector<ComponentSummary>* components = nullptr;
};

/// Best cost per resource vector. Cells are indexed in mixed radix over
/// (caps[0]+1) x (caps[1]+1) x ...; +inf marks an infeasible cell. A cell
/// means "uses at most" these resources once merged.
struct CostTable {
  std::vector<std::size_t> caps;
  std::vector<double> cost;

  explicit CostTable(std::vector<std::size_t> caps_ = {});
  std::size_t cells() const { return cost.size(); }
  std::size_t index(std::span<const std::size_t> cell) const;
  std::vector<std::size_t> cell(std::size_t index) const;
  double& at(std::span<const std::size_t> c) { return cost[index(c)]; }
};

struct MergeResult {
  double cost = 0.0;
  /// For each table, the cell whose entry is used.
  std::vector<std::size_t> choice;
};

/// Split the shared resource caps across components so the total cost is
/// minimal. All tables must have identical caps. nullopt when infeasible.
std::optional<MergeResult> merge_components(const std::vector<CostTable>& tables);

BallSolution exact_msr(const MetricSpace& space, std::size_t k, std::size_t g = 0,
                       double alpha = 1.0);

BallSolution approximate_msr(const MetricSpace& space, std::size_t k, double eps, std::size_t g = 0,
                             const SolveOptions& options = {});

/// One search over a net view. Returns the cheapest cover of the view's net
/// points with at most q balls within the radius budget, ball radii measured
/// on the net (no extension). nullopt when none exists.
std::optional<BallSolution> msr_subroutine(const MetricSpace& space, const NetView& view,
                                           std::span<const double> radii, double budget,
                                           std::size_t q, std::size_t outliers = 0);

/// Constant dividing the requested eps before it reaches the net machinery.
inline constexpr double kEpsilonDivisor = 8.0;

}  // namespace minsum

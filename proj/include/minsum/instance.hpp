#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "minsum/constraints.hpp"
#include "minsum/metric.hpp"
#include "minsum/msr.hpp"

namespace minsum {

/// Malformed instance or solution document.
class DocumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Instance {
  explicit Instance(MetricSpace s) : space(std::move(s)) {}

  MetricSpace space;
  std::optional<std::vector<std::size_t>> colors;
  std::optional<std::vector<std::size_t>> caps;
  std::optional<BalanceSpec> balance;
  /// Generator provenance, when the instance was generated.
  std::optional<std::string> kind;
  std::optional<std::uint64_t> seed;
  /// Suggested number of clusters.
  std::optional<std::size_t> k;
  /// Grid tiling instances: whether the tiling has a solution.
  std::optional<bool> feasible;

  /// Fairness constraint assembled from colors and caps.
  std::optional<FairSpec> fair() const;
};

Instance parse_instance(std::string_view text);
std::string serialize_instance(const Instance& inst);

Instance gen_random_euclidean(std::size_t n, std::size_t dim, std::uint64_t seed);

using Cell = std::pair<std::size_t, std::size_t>;

/// sets[i * k + j] holds S_{i,j}, entries in [1, n] x [1, n].
struct GridTilingSpec {
  std::size_t k = 1;
  std::size_t n = 1;
  std::vector<std::vector<Cell>> sets;
  double eps = 0.0;  // 0 picks a value small enough for the generated size

  const std::vector<Cell>& at(std::size_t i, std::size_t j) const { return sets[i * k + j]; }
};

inline constexpr std::size_t kGridTilingMaxK = 3;
inline constexpr std::size_t kGridTilingMaxN = 3;

/// Exhaustive search for a valid tiling.
bool grid_tiling_feasible(const GridTilingSpec& spec);

/// Each pair of [n] x [n] enters each set independently with probability `density`.
GridTilingSpec random_grid_tiling(std::size_t k, std::size_t n, double density, std::uint64_t seed);

/// Explicit-matrix instance whose optimal k-ball MSR cost is 2^k - 1 exactly
/// when the tiling is feasible. Every anchor point is present k times, so no
/// ball can isolate an anchor at radius 0. `feasible` and `k` are filled in.
Instance gen_grid_tiling(const GridTilingSpec& spec);

/// Vertices at distance 2 along edges and 1 otherwise, plus k - 3 extra
/// points at distance 2 from everything.
Instance gen_three_coloring_msd(const std::vector<std::pair<std::size_t, std::size_t>>& edges,
                                std::size_t n_vertices, std::size_t k);

struct SolutionDocument {
  std::string variant;  // msr, msd, alpha-msr, k-center
  std::string mode;     // exact, approx, oracle
  std::size_t k = 0;
  std::size_t g = 0;
  double alpha = 1.0;
  std::optional<double> eps;
  bool feasible = true;
  double cost = 0.0;
  std::optional<BallSolution> balls;
  std::optional<PartitionSolution> partition;
  std::vector<ComponentSummary> components;
  std::optional<double> wall_time;
};

SolutionDocument parse_solution(std::string_view text);
std::string serialize_solution(const SolutionDocument& doc);

}  // namespace minsum

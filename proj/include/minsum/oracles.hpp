#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>

#include "minsum/constraints.hpp"
#include "minsum/metric.hpp"

namespace minsum {

/// Raised when an instance exceeds an oracle's size guard.
class InstanceTooLarge : public std::length_error {
 public:
  using std::length_error::length_error;
};

inline constexpr std::size_t kOracleMsrMaxPoints = 12;
inline constexpr std::size_t kOracleMsdMaxPoints = 10;
inline constexpr std::size_t kOracleMsdMaxClusters = 4;
inline constexpr std::size_t kOracleKCenterMaxPoints = 12;

struct OracleBalls {
  double cost = 0.0;
  BallSolution solution;
};

struct OraclePartition {
  double cost = 0.0;
  PartitionSolution solution;
};

/// Brute force over center sets and radii. nullopt when the fairness caps
/// admit no solution.
std::optional<OracleBalls> oracle_msr(const MetricSpace& space, std::size_t k, std::size_t g = 0,
                                      double alpha = 1.0, const FairSpec* fair = nullptr);

/// Brute force over all assignments to at most k clusters plus at most g
/// outliers. nullopt when the validator rejects every partition.
std::optional<OraclePartition> oracle_msd(const MetricSpace& space, std::size_t k,
                                          std::size_t g = 0, double alpha = 1.0,
                                          const ClusterValidator* validator = nullptr);

/// Brute force over center sets; cost is the largest radius.
OracleBalls oracle_kcenter(const MetricSpace& space, std::size_t k);

}  // namespace minsum

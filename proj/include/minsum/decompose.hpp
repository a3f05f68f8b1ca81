#pragma once

#include <cstddef>
#include <vector>

#include "minsum/metric.hpp"

namespace minsum {

enum class Problem { msr, alpha_msr, msd, fair_msr, k_center };

/// Power-of-two factor applied on top of the 64 m^2 bracket width.
inline constexpr double kBracketWidening = 1.0;

struct GonzalezResult {
  std::vector<PointId> centers;
  double radius = 0.0;
};

/// Farthest-first traversal starting from point 0, ties to the lowest id.
GonzalezResult gonzalez_kcenter(const MetricSpace& space, std::size_t m);

/// Smallest pairwise distance rho for which the greedy disk cover (k disks of
/// radius rho, each removing its 3*rho neighbourhood) leaves at most g points.
/// Satisfies rho <= optimal k-center-with-outliers radius.
double greedy_outlier_radius(const MetricSpace& space, std::size_t k, std::size_t g);

struct Decomposition {
  std::vector<std::vector<PointId>> components;  // each ascending, ordered by first member
  double L = 0.0;
  double beta = 0.0;
  double R = 0.0;
  double psi = 0.0;
  double threshold = 0.0;    // linkage threshold U
  double base_radius = 0.0;  // Gonzalez radius, or greedy outlier radius when g > 0
  double lower_bound = 0.0;  // certified lower bound on the optimal cost
  std::size_t slots = 0;     // k + g
  bool zero_cost = false;
};

/// `min_threshold` raises the linkage threshold, e.g. to a known feasible cost
/// of a constrained variant so that no optimal cluster is split.
Decomposition decompose(const MetricSpace& space, std::size_t k, std::size_t g,
                        Problem problem = Problem::msr, double min_threshold = 0.0);

/// Merge component `index` into its nearest component (set distance, ties to
/// the lower index) and refresh the derived bounds.
void merge_into_nearest(const MetricSpace& space, Decomposition& dec, std::size_t index);

}  // namespace minsum

#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "minsum/constraints.hpp"
#include "minsum/metric.hpp"
#include "minsum/msr.hpp"
#include "minsum/net.hpp"

namespace minsum {

using ClusterList = std::vector<std::vector<PointId>>;

/// A cluster together with the candidate diameter it was created with.
struct TaggedEntry {
  std::vector<PointId> members;  // sorted
  double r = 0.0;
  friend bool operator==(const TaggedEntry&, const TaggedEntry&) = default;
};

struct TaggedClustering {
  std::vector<TaggedEntry> entries;
  std::vector<PointId> outliers;  // sorted
  friend bool operator==(const TaggedClustering&, const TaggedClustering&) = default;
};

/// True when some pair of entries (outliers count as entries with r = 0)
/// still allows a subtraction step.
bool refine_applicable(const MetricSpace& space, const TaggedClustering& a);

/// Repeatedly subtract a non-enlarged entry from an intersecting entry with a
/// candidate diameter at least as large, in ascending (r1, r2, i, j) order.
/// Entries emptied by a subtraction are dropped.
TaggedClustering refine(const MetricSpace& space, TaggedClustering a);

/// Indices j != index with d(C, C_j) <= diam(C) <= diam(C_j).
std::vector<std::size_t> neighborhood(const MetricSpace& space, const ClusterList& sol,
                                      std::size_t index);

/// Merge clusters with their neighborhoods until every neighborhood has at
/// most 4 members.
ClusterList bound_neighborhoods(const MetricSpace& space, ClusterList sol);

/// True when no subset of 2..max_subset clusters has union diameter at most
/// the sum of its diameters.
bool is_packed(const MetricSpace& space, const ClusterList& sol, std::size_t max_subset = 5);

/// Merge violating subsets (smallest first, then index order) until packed
/// over all subsets of at most 5 clusters.
ClusterList make_packed(const MetricSpace& space, ClusterList sol);

/// Single-linkage merge of clusters at distance <= 2 * delta.
ClusterList enforce_min_cluster_distance(const MetricSpace& space, ClusterList sol, double delta);

/// Optimal partition into at most k clusters whose clusters all pass the
/// validator. nullopt when no valid partition exists.
std::optional<PartitionSolution> exact_msd(const MetricSpace& space, std::size_t k,
                                           const ClusterValidator* validator = nullptr);

/// Optimal partition into at most k clusters with at most g outliers.
PartitionSolution exact_msd_outliers(const MetricSpace& space, std::size_t k, std::size_t g);

/// One search over a net view; clusters and diameters stay on the net.
std::optional<PartitionSolution> msd_subroutine(const MetricSpace& space, const NetView& view,
                                                std::span<const double> radii, double budget,
                                                std::size_t q, std::size_t outliers = 0);

/// nullopt when the validator admits no partition.
std::optional<PartitionSolution> approximate_msd(const MetricSpace& space, std::size_t k,
                                                 double eps, std::size_t g = 0,
                                                 const ClusterValidator* validator = nullptr,
                                                 const SolveOptions& options = {});

}  // namespace minsum

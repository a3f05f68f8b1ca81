#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "minsum/metric.hpp"

namespace minsum {

struct NetLevel {
  double scale = 0.0;
  std::vector<PointId> points;  // ascending
  /// parent[j] is the representative in this level of the j-th point of the
  /// previous level (identity at level 0).
  std::vector<PointId> parent;
};

/// Nested nets over a subset: levels[0] is the subset itself at the base
/// scale, levels[i] is a (base * 2^i)-net of levels[i-1].
struct NetHierarchy {
  std::vector<PointId> subset;  // ascending
  double base_scale = 1.0;
  std::vector<NetLevel> levels;

  /// Representative of a subset point at level `i`.
  PointId representative(PointId p, std::size_t level) const;
};

NetHierarchy build_hierarchy(const MetricSpace& space, std::span<const PointId> subset);

/// The net used for one budget T. `pad` is the extra radius needed to reach
/// every preimage of a net point from that net point (0, spacing or 2*spacing).
struct NetView {
  double budget = 0.0;
  double spacing = 0.0;
  double pad = 0.0;
  double reach = 0.0;  // max distance from a net point to one of its preimages
  bool identity = true;
  std::vector<PointId> points;                  // ascending
  std::vector<std::vector<PointId>> preimages;  // parallel to points, each ascending

  /// Index of `p` in `points`; throws when `p` is not a net point.
  std::size_t index_of(PointId p) const;
};

/// View whose net is `points` itself, each point its own preimage.
NetView identity_view(std::span<const PointId> points);

NetView net_for_budget(const MetricSpace& space, const NetHierarchy& h, double T, std::size_t k,
                       double eps);

/// Lift a net solution to the full component.
BallSolution extend_to_component(const MetricSpace& space, const NetView& view,
                                 const BallSolution& sol);
PartitionSolution extend_to_component(const MetricSpace& space, const NetView& view,
                                      const PartitionSolution& sol);

}  // namespace minsum

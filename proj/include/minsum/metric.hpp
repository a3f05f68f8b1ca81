#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace minsum {

using PointId = std::uint32_t;

/// Raised when a distance matrix or coordinate list does not describe a metric.
/// For triangle violations `triple()` holds (x, z, y) with d(x,y) > d(x,z) + d(z,y).
class MetricError : public std::invalid_argument {
 public:
  explicit MetricError(const std::string& what,
                       std::optional<std::array<PointId, 3>> triple = std::nullopt);
  const std::optional<std::array<PointId, 3>>& triple() const noexcept { return triple_; }

 private:
  std::optional<std::array<PointId, 3>> triple_;
};

/// Finite metric space over points 0..n-1, backed either by an explicit
/// distance matrix (validated once at construction) or by Euclidean
/// coordinates (distances computed on demand). Immutable after construction.
class MetricSpace {
 public:
  static MetricSpace from_matrix(const std::vector<std::vector<double>>& rows);
  static MetricSpace from_points(const std::vector<std::vector<double>>& coords);

  std::size_t size() const noexcept { return n_; }
  bool is_euclidean() const noexcept { return dim_ > 0; }
  std::size_t dimension() const noexcept { return dim_; }

  /// Bounds-checked distance.
  double distance(PointId a, PointId b) const;
  /// Unchecked distance for hot loops.
  double operator()(PointId a, PointId b) const noexcept {
    if (dim_ == 0) return data_[static_cast<std::size_t>(a) * n_ + b];
    return euclid(a, b);
  }

  double diameter() const noexcept { return diameter_; }
  /// Smallest positive inter-point distance; 0 for a singleton space.
  double min_distance() const noexcept { return min_distance_; }
  /// diam / min positive distance; 1 for a singleton space.
  double aspect_ratio() const noexcept { return aspect_ratio_; }

  /// Coordinates of point `p` (Euclidean spaces only).
  std::span<const double> coordinates(PointId p) const;
  /// Matrix row for `p` (explicit spaces only).
  std::span<const double> row(PointId p) const;

 private:
  MetricSpace() = default;
  double euclid(PointId a, PointId b) const noexcept;
  void compute_summary();

  std::size_t n_ = 0;
  std::size_t dim_ = 0;
  std::vector<double> data_;  // n*n matrix or n*dim coordinates
  double diameter_ = 0.0;
  double min_distance_ = 0.0;
  double aspect_ratio_ = 1.0;
};

struct Ball {
  PointId center = 0;
  double radius = 0.0;
  friend bool operator==(const Ball&, const Ball&) = default;
};

struct BallSolution {
  std::vector<Ball> balls;
  std::vector<PointId> outliers;  // sorted
  friend bool operator==(const BallSolution&, const BallSolution&) = default;
};

struct Cluster {
  std::vector<PointId> members;  // sorted, nonempty
  std::optional<double> tag;     // candidate diameter, when produced by the approximation
  friend bool operator==(const Cluster&, const Cluster&) = default;
};

struct PartitionSolution {
  std::vector<Cluster> clusters;
  std::vector<PointId> outliers;  // sorted
  friend bool operator==(const PartitionSolution&, const PartitionSolution&) = default;
};

/// Max pairwise distance within `subset`; throws on an empty subset.
double diameter(const MetricSpace& space, std::span<const PointId> subset);

/// Min distance between two nonempty sets.
double set_distance(const MetricSpace& space, std::span<const PointId> a,
                    std::span<const PointId> b);

/// 2^ceil(log2 x) for x > 0 (so exact powers of two map to themselves), 0 for x = 0.
double round_up_pow2(double x);

/// {y in restrict (default: all points) : d(center, y) <= radius}, ascending.
std::vector<PointId> ball_members(const MetricSpace& space, PointId center, double radius,
                                  std::optional<std::span<const PointId>> restrict = std::nullopt);

double solution_cost(const MetricSpace& space, const BallSolution& sol, double alpha = 1.0);
double solution_cost(const MetricSpace& space, const PartitionSolution& sol, double alpha = 1.0);

/// Largest radius of a ball solution (k-center objective); 0 when empty.
double max_radius(const BallSolution& sol);

/// Structural checks used by the CLI `check` command and by the test suites.
/// Each returns a list of human readable problems (empty when valid).
std::vector<std::string> verify(const MetricSpace& space, const BallSolution& sol,
                                std::size_t k, std::size_t g);
std::vector<std::string> verify(const MetricSpace& space, const PartitionSolution& sol,
                                std::size_t k, std::size_t g);

/// Sorted, deduplicated copy.
std::vector<PointId> normalized(std::vector<PointId> ids);

}  // namespace minsum

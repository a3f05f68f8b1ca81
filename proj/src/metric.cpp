#include "minsum/metric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace minsum {

MetricError::MetricError(const std::string& what, std::optional<std::array<PointId, 3>> triple)
    : std::invalid_argument(what), triple_(triple) {}

namespace {

// relative to the largest entry
constexpr double kTriangleSlack = 1e-12;

}  // namespace

MetricSpace MetricSpace::from_matrix(const std::vector<std::vector<double>>& rows) {
  MetricSpace s;
  s.n_ = rows.size();
  if (s.n_ == 0) throw MetricError("metric space must contain at least one point");
  s.data_.resize(s.n_ * s.n_);
  for (std::size_t i = 0; i < s.n_; ++i) {
    if (rows[i].size() != s.n_) {
      std::ostringstream os;
      os << "distance matrix row " << i << " has " << rows[i].size() << " entries, expected "
         << s.n_;
      throw MetricError(os.str());
    }
    std::copy(rows[i].begin(), rows[i].end(), s.data_.begin() + i * s.n_);
  }
  const std::size_t n = s.n_;
  auto at = [&](std::size_t i, std::size_t j) { return s.data_[i * n + j]; };
  double maxd = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double v = at(i, j);
      if (!std::isfinite(v) || v < 0.0) {
        std::ostringstream os;
        os << "distance d(" << i << "," << j << ") = " << v << " is not a finite nonnegative real";
        throw MetricError(os.str());
      }
      if (i == j && v != 0.0) {
        std::ostringstream os;
        os << "d(" << i << "," << i << ") = " << v << " must be 0";
        throw MetricError(os.str());
      }
      if (i != j && v == 0.0) {
        std::ostringstream os;
        os << "distinct points " << i << " and " << j << " are at distance 0";
        throw MetricError(os.str());
      }
      if (at(j, i) != v) {
        std::ostringstream os;
        os << "matrix is not symmetric at (" << i << "," << j << ")";
        throw MetricError(os.str());
      }
      maxd = std::max(maxd, v);
    }
  }
  const double slack = kTriangleSlack * maxd;
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = x + 1; y < n; ++y) {
      const double dxy = at(x, y);
      for (std::size_t z = 0; z < n; ++z) {
        if (dxy > at(x, z) + at(z, y) + slack) {
          std::ostringstream os;
          os << "triangle inequality violated: d(" << x << "," << y << ") = " << dxy << " > d("
             << x << "," << z << ") + d(" << z << "," << y << ") = " << at(x, z) + at(z, y);
          throw MetricError(os.str(), std::array<PointId, 3>{static_cast<PointId>(x),
                                                             static_cast<PointId>(z),
                                                             static_cast<PointId>(y)});
        }
      }
    }
  }
  s.compute_summary();
  return s;
}

MetricSpace MetricSpace::from_points(const std::vector<std::vector<double>>& coords) {
  MetricSpace s;
  s.n_ = coords.size();
  if (s.n_ == 0) throw MetricError("metric space must contain at least one point");
  s.dim_ = coords.front().size();
  if (s.dim_ == 0) throw MetricError("points must have dimension at least 1");
  s.data_.reserve(s.n_ * s.dim_);
  for (std::size_t i = 0; i < s.n_; ++i) {
    if (coords[i].size() != s.dim_) {
      std::ostringstream os;
      os << "point " << i << " has dimension " << coords[i].size() << ", expected " << s.dim_;
      throw MetricError(os.str());
    }
    for (double c : coords[i]) {
      if (!std::isfinite(c)) {
        std::ostringstream os;
        os << "point " << i << " has a non-finite coordinate";
        throw MetricError(os.str());
      }
      s.data_.push_back(c);
    }
  }
  for (std::size_t i = 0; i < s.n_; ++i) {
    for (std::size_t j = i + 1; j < s.n_; ++j) {
      if (s.euclid(static_cast<PointId>(i), static_cast<PointId>(j)) == 0.0) {
        std::ostringstream os;
        os << "points " << i << " and " << j << " coincide";
        throw MetricError(os.str());
      }
    }
  }
  s.compute_summary();
  return s;
}

double MetricSpace::euclid(PointId a, PointId b) const noexcept {
  const double* pa = data_.data() + static_cast<std::size_t>(a) * dim_;
  const double* pb = data_.data() + static_cast<std::size_t>(b) * dim_;
  double acc = 0.0;
  for (std::size_t i = 0; i < dim_; ++i) {
    const double d = pa[i] - pb[i];
    acc += d * d;
  }
  return std::sqrt(acc);
}

void MetricSpace::compute_summary() {
  diameter_ = 0.0;
  min_distance_ = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = i + 1; j < n_; ++j) {
      const double d = (*this)(static_cast<PointId>(i), static_cast<PointId>(j));
      diameter_ = std::max(diameter_, d);
      min_distance_ = std::min(min_distance_, d);
    }
  }
  if (n_ < 2) {
    min_distance_ = 0.0;
    aspect_ratio_ = 1.0;
  } else {
    aspect_ratio_ = diameter_ / min_distance_;
  }
}

double MetricSpace::distance(PointId a, PointId b) const {
  if (a >= n_ || b >= n_) {
    std::ostringstream os;
    os << "point index out of range: (" << a << "," << b << ") with n = " << n_;
    throw std::out_of_range(os.str());
  }
  return (*this)(a, b);
}

std::span<const double> MetricSpace::coordinates(PointId p) const {
  if (dim_ == 0) throw std::logic_error("coordinates() on an explicit-matrix space");
  if (p >= n_) throw std::out_of_range("point index out of range");
  return {data_.data() + static_cast<std::size_t>(p) * dim_, dim_};
}

std::span<const double> MetricSpace::row(PointId p) const {
  if (dim_ != 0) throw std::logic_error("row() on a Euclidean space");
  if (p >= n_) throw std::out_of_range("point index out of range");
  return {data_.data() + static_cast<std::size_t>(p) * n_, n_};
}

double diameter(const MetricSpace& space, std::span<const PointId> subset) {
  if (subset.empty()) throw std::invalid_argument("diameter of an empty subset");
  double best = 0.0;
  for (std::size_t i = 0; i < subset.size(); ++i) {
    for (std::size_t j = i + 1; j < subset.size(); ++j) {
      best = std::max(best, space.distance(subset[i], subset[j]));
    }
  }
  return best;
}

double set_distance(const MetricSpace& space, std::span<const PointId> a,
                    std::span<const PointId> b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("set distance with an empty set");
  double best = std::numeric_limits<double>::infinity();
  for (PointId x : a) {
    for (PointId y : b) best = std::min(best, space.distance(x, y));
  }
  return best;
}

double round_up_pow2(double x) {
  if (!(x >= 0.0)) throw std::invalid_argument("round_up_pow2 of a negative value");
  if (x == 0.0) return 0.0;
  int e = 0;
  const double m = std::frexp(x, &e);  // x = m * 2^e, m in [0.5, 1)
  if (m == 0.5) return x;
  return std::ldexp(1.0, e);
}

std::vector<PointId> ball_members(const MetricSpace& space, PointId center, double radius,
                                  std::optional<std::span<const PointId>> restrict) {
  std::vector<PointId> out;
  if (restrict) {
    for (PointId y : *restrict) {
      if (space.distance(center, y) <= radius) out.push_back(y);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
  } else {
    for (PointId y = 0; y < space.size(); ++y) {
      if (space.distance(center, y) <= radius) out.push_back(y);
    }
  }
  return out;
}

double solution_cost(const MetricSpace&, const BallSolution& sol, double alpha) {
  double total = 0.0;
  for (const Ball& b : sol.balls) total += alpha == 1.0 ? b.radius : std::pow(b.radius, alpha);
  return total;
}

double solution_cost(const MetricSpace& space, const PartitionSolution& sol, double alpha) {
  double total = 0.0;
  for (const Cluster& c : sol.clusters) {
    const double d = diameter(space, c.members);
    total += alpha == 1.0 ? d : std::pow(d, alpha);
  }
  return total;
}

double max_radius(const BallSolution& sol) {
  double r = 0.0;
  for (const Ball& b : sol.balls) r = std::max(r, b.radius);
  return r;
}

std::vector<PointId> normalized(std::vector<PointId> ids) {
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  return ids;
}

std::vector<std::string> verify(const MetricSpace& space, const BallSolution& sol, std::size_t k,
                                std::size_t g) {
  std::vector<std::string> problems;
  const std::size_t n = space.size();
  if (sol.balls.size() > k) {
    problems.push_back("solution uses " + std::to_string(sol.balls.size()) + " balls, k = " +
                       std::to_string(k));
  }
  std::vector<char> outlier(n, 0);
  for (PointId p : sol.outliers) {
    if (p >= n) {
      problems.push_back("outlier " + std::to_string(p) + " is not a point of the space");
      continue;
    }
    outlier[p] = 1;
  }
  if (normalized(sol.outliers).size() > g) {
    problems.push_back("solution has " + std::to_string(sol.outliers.size()) +
                       " outliers, g = " + std::to_string(g));
  }
  for (const Ball& b : sol.balls) {
    if (b.center >= n) problems.push_back("ball center " + std::to_string(b.center) + " out of range");
    if (!(b.radius >= 0.0)) problems.push_back("negative ball radius");
  }
  if (!problems.empty()) return problems;
  for (PointId p = 0; p < n; ++p) {
    if (outlier[p]) continue;
    bool covered = false;
    for (const Ball& b : sol.balls) {
      if (space(b.center, p) <= b.radius) {
        covered = true;
        break;
      }
    }
    if (!covered) problems.push_back("point " + std::to_string(p) + " is not covered");
  }
  return problems;
}

std::vector<std::string> verify(const MetricSpace& space, const PartitionSolution& sol,
                                std::size_t k, std::size_t g) {
  std::vector<std::string> problems;
  const std::size_t n = space.size();
  if (sol.clusters.size() > k) {
    problems.push_back("solution uses " + std::to_string(sol.clusters.size()) +
                       " clusters, k = " + std::to_string(k));
  }
  if (sol.outliers.size() > g) {
    problems.push_back("solution has " + std::to_string(sol.outliers.size()) +
                       " outliers, g = " + std::to_string(g));
  }
  std::vector<int> owner(n, -1);
  auto claim = [&](PointId p, int who) {
    if (p >= n) {
      problems.push_back("point " + std::to_string(p) + " is not a point of the space");
      return;
    }
    if (owner[p] != -1) {
      problems.push_back("point " + std::to_string(p) + " appears in more than one cluster/outlier set");
      return;
    }
    owner[p] = who;
  };
  for (std::size_t c = 0; c < sol.clusters.size(); ++c) {
    if (sol.clusters[c].members.empty()) problems.push_back("cluster " + std::to_string(c) + " is empty");
    for (PointId p : sol.clusters[c].members) claim(p, static_cast<int>(c));
  }
  for (PointId p : sol.outliers) claim(p, -2);
  for (PointId p = 0; p < n; ++p) {
    if (owner[p] == -1) problems.push_back("point " + std::to_string(p) + " is not assigned");
  }
  return problems;
}

}  // namespace minsum

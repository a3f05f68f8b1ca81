#include "minsum/oracles.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

namespace minsum {

namespace {

constexpr double kInfinity = std::numeric_limits<double>::infinity();

double raise(double x, double alpha) { return alpha == 1.0 ? x : std::pow(x, alpha); }

void guard(bool ok, const std::string& what) {
  if (!ok) throw InstanceTooLarge(what);
}

class MsrEnumerator {
 public:
  MsrEnumerator(const MetricSpace& space, std::size_t k, std::size_t g, double alpha,
                const FairSpec* fair)
      : space_(space), n_(space.size()), k_(k), g_(g), alpha_(alpha), fair_(fair) {
    radii_.resize(n_);
    covers_.resize(n_);
    for (PointId x = 0; x < n_; ++x) {
      for (PointId y = 0; y < n_; ++y) radii_[x].push_back(space(x, y));
      std::sort(radii_[x].begin(), radii_[x].end());
      radii_[x].erase(std::unique(radii_[x].begin(), radii_[x].end()), radii_[x].end());
      for (double r : radii_[x]) {
        std::uint32_t m = 0;
        for (PointId y = 0; y < n_; ++y)
          if (space(x, y) <= r) m |= std::uint32_t{1} << y;
        covers_[x].push_back(m);
      }
    }
    if (fair_) used_.assign(fair_->caps.size(), 0);
  }

  std::optional<OracleBalls> run() {
    visit(0, 0, 0.0);
    if (!found_) return std::nullopt;
    OracleBalls out;
    out.cost = best_;
    out.solution.balls = best_balls_;
    std::uint32_t covered = 0;
    for (const Ball& b : best_balls_)
      for (PointId y = 0; y < n_; ++y)
        if (space_(b.center, y) <= b.radius) covered |= std::uint32_t{1} << y;
    for (PointId y = 0; y < n_; ++y)
      if (!(covered >> y & 1U)) out.solution.outliers.push_back(y);
    return out;
  }

 private:
  void visit(PointId start, std::uint32_t covered, double cost) {
    const std::size_t missing = n_ - static_cast<std::size_t>(std::popcount(covered));
    if (missing <= g_ && (!found_ || cost < best_)) {
      found_ = true;
      best_ = cost;
      best_balls_ = balls_;
    }
    if (balls_.size() == k_) return;
    for (PointId x = start; x < n_; ++x) {
      if (fair_) {
        const std::size_t c = fair_->colors[x];
        if (used_[c] >= fair_->caps[c]) continue;
        ++used_[c];
      }
      for (std::size_t i = 0; i < radii_[x].size(); ++i) {
        const double next = cost + raise(radii_[x][i], alpha_);
        if (found_ && next >= best_) break;
        balls_.push_back({x, radii_[x][i]});
        visit(x + 1, covered | covers_[x][i], next);
        balls_.pop_back();
      }
      if (fair_) --used_[fair_->colors[x]];
    }
  }

  const MetricSpace& space_;
  std::size_t n_, k_, g_;
  double alpha_;
  const FairSpec* fair_;
  std::vector<std::vector<double>> radii_;
  std::vector<std::vector<std::uint32_t>> covers_;
  std::vector<std::size_t> used_;
  std::vector<Ball> balls_;
  std::vector<Ball> best_balls_;
  double best_ = kInfinity;
  bool found_ = false;
};

class MsdEnumerator {
 public:
  MsdEnumerator(const MetricSpace& space, std::size_t k, std::size_t g, double alpha,
                const ClusterValidator* validator)
      : space_(space), n_(space.size()), k_(k), g_(g), alpha_(alpha), validator_(validator) {}

  std::optional<OraclePartition> run() {
    visit(0);
    if (!found_) return std::nullopt;
    return OraclePartition{best_, best_sol_};
  }

 private:
  void visit(PointId i) {
    if (i == n_) {
      leaf();
      return;
    }
    for (std::size_t b = 0; b < blocks_.size(); ++b) {
      const double saved = diam_[b];
      for (PointId m : blocks_[b]) diam_[b] = std::max(diam_[b], space_(i, m));
      blocks_[b].push_back(i);
      visit(i + 1);
      blocks_[b].pop_back();
      diam_[b] = saved;
    }
    if (blocks_.size() < k_) {
      blocks_.push_back({i});
      diam_.push_back(0.0);
      visit(i + 1);
      diam_.pop_back();
      blocks_.pop_back();
    }
    if (outliers_.size() < g_) {
      outliers_.push_back(i);
      visit(i + 1);
      outliers_.pop_back();
    }
  }

  void leaf() {
    double cost = 0.0;
    for (double d : diam_) cost += raise(d, alpha_);
    if (found_ && cost >= best_) return;
    if (validator_)
      for (const auto& b : blocks_)
        if (!(*validator_)(b)) return;
    found_ = true;
    best_ = cost;
    best_sol_.clusters.clear();
    for (const auto& b : blocks_) best_sol_.clusters.push_back({b, std::nullopt});
    best_sol_.outliers = outliers_;
  }

  const MetricSpace& space_;
  std::size_t n_, k_, g_;
  double alpha_;
  const ClusterValidator* validator_;
  std::vector<std::vector<PointId>> blocks_;
  std::vector<double> diam_;
  std::vector<PointId> outliers_;
  PartitionSolution best_sol_;
  double best_ = kInfinity;
  bool found_ = false;
};

}  // namespace

std::optional<OracleBalls> oracle_msr(const MetricSpace& space, std::size_t k, std::size_t g,
                                      double alpha, const FairSpec* fair) {
  guard(space.size() <= kOracleMsrMaxPoints, "oracle_msr accepts at most 12 points");
  if (k == 0) throw std::invalid_argument("k must be at least 1");
  if (!(alpha >= 1.0)) throw std::invalid_argument("alpha must be at least 1");
  if (fair) fair->validate(space.size());
  return MsrEnumerator(space, k, g, alpha, fair).run();
}

std::optional<OraclePartition> oracle_msd(const MetricSpace& space, std::size_t k, std::size_t g,
                                          double alpha, const ClusterValidator* validator) {
  guard(space.size() <= kOracleMsdMaxPoints, "oracle_msd accepts at most 10 points");
  guard(k <= kOracleMsdMaxClusters, "oracle_msd accepts at most 4 clusters");
  if (k == 0) throw std::invalid_argument("k must be at least 1");
  if (!(alpha >= 1.0)) throw std::invalid_argument("alpha must be at least 1");
  return MsdEnumerator(space, k, g, alpha, validator).run();
}

OracleBalls oracle_kcenter(const MetricSpace& space, std::size_t k) {
  const std::size_t n = space.size();
  guard(n <= kOracleKCenterMaxPoints, "oracle_kcenter accepts at most 12 points");
  if (k == 0) throw std::invalid_argument("k must be at least 1");
  const std::size_t want = std::min(k, n);
  OracleBalls best;
  best.cost = kInfinity;
  for (std::uint32_t set = 0; set < (std::uint32_t{1} << n); ++set) {
    if (static_cast<std::size_t>(std::popcount(set)) != want) continue;
    std::vector<Ball> balls;
    for (PointId x = 0; x < n; ++x)
      if (set >> x & 1U) balls.push_back({x, 0.0});
    for (PointId y = 0; y < n; ++y) {
      std::size_t nearest = 0;
      for (std::size_t c = 1; c < balls.size(); ++c)
        if (space(balls[c].center, y) < space(balls[nearest].center, y)) nearest = c;
      balls[nearest].radius = std::max(balls[nearest].radius, space(balls[nearest].center, y));
    }
    double cost = 0.0;
    for (const Ball& b : balls) cost = std::max(cost, b.radius);
    if (cost < best.cost) {
      best.cost = cost;
      best.solution.balls = balls;
    }
  }
  return best;
}

}  // namespace minsum

#include "minsum/variants.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "minsum/decompose.hpp"
#include "minsum/matching.hpp"
#include "msr_engine.hpp"

namespace minsum {

namespace {

constexpr PointId kNone = std::numeric_limits<PointId>::max();

class CoverSearch {
 public:
  CoverSearch(const MetricSpace& space, std::size_t k, double r, double eps)
      : space_(space), k_(k), reach_((1.0 + eps) * r), covered_(space.size(), 0) {
    for (PointId p = 0; p < space.size(); ++p) {
      bool near = false;
      for (PointId q : net_)
        if (space(p, q) <= eps * r) {
          near = true;
          break;
        }
      if (!near) net_.push_back(p);
    }
  }

  std::optional<std::vector<PointId>> run() {
    if (visit()) return centers_;
    return std::nullopt;
  }

 private:
  bool visit() {
    PointId z = kNone;
    for (PointId p = 0; p < covered_.size(); ++p)
      if (!covered_[p]) {
        z = p;
        break;
      }
    if (z == kNone) return true;
    if (centers_.size() == k_) return false;
    for (PointId c : net_) {
      if (space_(z, c) > reach_) continue;
      std::vector<PointId> added;
      for (PointId p = 0; p < covered_.size(); ++p)
        if (!covered_[p] && space_(c, p) <= reach_) {
          covered_[p] = 1;
          added.push_back(p);
        }
      centers_.push_back(c);
      if (visit()) return true;
      centers_.pop_back();
      for (PointId p : added) covered_[p] = 0;
    }
    return false;
  }

  const MetricSpace& space_;
  std::size_t k_;
  double reach_;
  std::vector<PointId> net_;
  std::vector<char> covered_;
  std::vector<PointId> centers_;
};

BallSolution assign_nearest(const MetricSpace& space, std::vector<PointId> centers) {
  std::sort(centers.begin(), centers.end());
  BallSolution sol;
  for (PointId c : centers) sol.balls.push_back({c, 0.0});
  for (PointId p = 0; p < space.size(); ++p) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < centers.size(); ++i)
      if (space(centers[i], p) < space(centers[best], p)) best = i;
    sol.balls[best].radius = std::max(sol.balls[best].radius, space(centers[best], p));
  }
  return sol;
}

}  // namespace

std::optional<BallSolution> fair_msr_approx(const MetricSpace& space, const FairSpec& fair,
                                            double eps, std::size_t g,
                                            const SolveOptions& options) {
  fair.validate(space.size());
  detail::BallProblem p;
  p.k = fair.k();
  p.g = g;
  p.eps = eps;
  p.problem = Problem::fair_msr;
  p.colors = &fair.colors;
  p.caps = fair.caps;
  return detail::solve_balls(space, p, options);
}

std::optional<BallSolution> bipartite_center_matching(const BallSolution& net_sol,
                                                      const NetView& view, const FairSpec& fair,
                                                      const std::vector<std::size_t>& budgets) {
  if (budgets.size() != fair.caps.size())
    throw std::invalid_argument("one budget per color is required");
  std::vector<std::size_t> slot_color;
  for (std::size_t c = 0; c < budgets.size(); ++c)
    for (std::size_t s = 0; s < budgets[c]; ++s) slot_color.push_back(c);

  std::vector<std::vector<PointId>> lowest;
  for (const Ball& b : net_sol.balls) {
    std::vector<PointId> per_color(budgets.size(), kNone);
    for (PointId p : view.preimages[view.index_of(b.center)]) {
      if (p >= fair.colors.size()) throw std::out_of_range("point has no color");
      const std::size_t c = fair.colors[p];
      if (c < per_color.size()) per_color[c] = std::min(per_color[c], p);
    }
    lowest.push_back(std::move(per_color));
  }
  std::vector<std::vector<std::size_t>> adj(net_sol.balls.size());
  for (std::size_t b = 0; b < adj.size(); ++b)
    for (std::size_t s = 0; s < slot_color.size(); ++s)
      if (lowest[b][slot_color[s]] != kNone) adj[b].push_back(s);
  const auto match = hopcroft_karp(slot_color.size(), adj);
  BallSolution out;
  out.outliers = net_sol.outliers;
  for (std::size_t b = 0; b < match.size(); ++b) {
    if (match[b] == kUnmatched) return std::nullopt;
    out.balls.push_back(
        {lowest[b][slot_color[match[b]]], net_sol.balls[b].radius + view.pad});
  }
  return out;
}

ClusterValidator balanced_validator(const BalanceSpec& spec) {
  if (!(spec.b >= 0.0 && spec.b <= 1.0))
    throw std::invalid_argument("balance threshold must lie in [0, 1]");
  return [side = spec.side, b = spec.b](std::span<const PointId> c) {
    double count[2] = {0.0, 0.0};
    for (PointId p : c) {
      if (p >= side.size()) throw std::out_of_range("point has no balance side");
      count[side[p]] += 1.0;
    }
    if (count[0] == 0.0 && count[1] == 0.0) return true;
    if (count[0] == 0.0 || count[1] == 0.0) return b <= 0.0;
    return std::min(count[0] / count[1], count[1] / count[0]) >= b;
  };
}

BallSolution alpha_msr_approx(const MetricSpace& space, std::size_t k, double alpha, double eps,
                              std::size_t g, const SolveOptions& options) {
  if (!(alpha >= 1.0)) throw std::invalid_argument("alpha must be at least 1");
  if (alpha == 1.0) return approximate_msr(space, k, eps, g, options);
  detail::BallProblem p;
  p.k = k;
  p.g = g;
  p.eps = eps;
  p.alpha = alpha;
  p.problem = Problem::alpha_msr;
  auto sol = detail::solve_balls(space, p, options);
  if (!sol) throw std::logic_error("alpha MSR search found no solution");
  return *sol;
}

BallSolution k_center_approx(const MetricSpace& space, std::size_t k, double eps) {
  if (k == 0) throw std::invalid_argument("k must be at least 1");
  if (!(eps > 0.0 && eps <= 1.0)) throw std::invalid_argument("epsilon must lie in (0, 1]");
  const GonzalezResult gz = gonzalez_kcenter(space, std::min(k, space.size()));
  BallSolution best = assign_nearest(space, gz.centers);
  if (gz.radius == 0.0) return best;

  const double step = 1.0 + eps / 3.0;
  const int steps = static_cast<int>(std::ceil(std::log(4.0) / std::log(step)));
  for (int s = steps; s >= 0; --s) {
    const double r = gz.radius * std::pow(step, -s);
    auto centers = CoverSearch(space, k, r, eps / 3.0).run();
    if (!centers) continue;
    BallSolution sol = assign_nearest(space, *centers);
    if (max_radius(sol) < max_radius(best)) best = std::move(sol);
    break;
  }
  return best;
}

}  // namespace minsum

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <span>
#include <unordered_map>
#include <vector>

#include "minsum/detail/local_metric.hpp"
#include "minsum/detail/mask.hpp"
#include "minsum/net.hpp"
#include "tables.hpp"

namespace minsum::detail {

struct ChosenBall {
  std::size_t center = 0;  // local net index
  double net_radius = 0.0;
  double radius = 0.0;     // farthest assigned preimage from the center
  std::vector<std::size_t> covered;  // local net indices newly covered
};

struct BallLeaf {
  std::vector<ChosenBall> balls;
  std::vector<std::size_t> outliers;  // local net indices
  std::size_t weight = 0;             // total preimage size of the outliers
  double key = 0.0;
};

struct BallSearchParams {
  std::vector<double> radii;  // ascending
  double budget = kInf;
  std::size_t max_balls = 1;
  std::size_t max_weight = 0;
  double alpha = 1.0;
  // fair searches bound the cost of moving each center inside its preimage
  bool recenter_bound = false;
  // exact searches ignore radii/budget and try every center
  bool exhaustive = false;
  // measure radii to covered net points instead of their preimages
  bool net_radii = false;
  // per net point; empty means every net point may be a center
  std::vector<char> allowed_center;
  // per net point; candidates with equal coverage are only merged within a class
  std::vector<std::size_t> center_class;
};

inline double power(double x, double alpha) { return alpha == 1.0 ? x : std::pow(x, alpha); }

// Covering search over the net points of one view. Each node picks the
// lowest uncovered net point z and branches on balls B(x, d(x,y)) containing
// z with x, y inside B(z, 2r') for a radius guess r', plus an outlier branch.
template <class Mask, class Sol>
class BallSearch {
 public:
  using LeafFn = std::function<void(const BallLeaf&)>;

  BallSearch(const MetricSpace& space, const NetView& view, BallSearchParams params,
             Incumbents<Sol>& inc, LeafFn on_leaf)
      : space_(space), view_(view), lm_(space, view.points), p_(std::move(params)), inc_(inc),
        on_leaf_(std::move(on_leaf)) {
    const std::size_t m = lm_.size();
    far_.assign(m * m, 0.0);
    weight_.resize(m);
    reach_.resize(m);
    for (std::size_t w = 0; w < m; ++w) weight_[w] = view.preimages[w].size();
    for (std::size_t x = 0; x < m; ++x) {
      for (std::size_t w = 0; w < m; ++w) {
        double f = 0.0;
        if (p_.net_radii)
          f = lm_.d(x, w);
        else
          for (PointId p : view.preimages[w]) f = std::max(f, space(lm_.global(x), p));
        far_[x * m + w] = f;
      }
      reach_[x] = far_[x * m + x];
    }
  }

  void run() {
    BallLeaf path;
    dfs(lm_.full(), path);
  }

  const LocalMetric<Mask>& local() const { return lm_; }

 private:
  struct Candidate {
    Mask cov;
    std::size_t center;
    double net_radius;
    double radius;
    double term;
    double charge;
  };

  double term_of(std::size_t x, double rho) const {
    return power(p_.recenter_bound ? rho + reach_[x] : rho, p_.alpha);
  }

  void candidates(const Mask& Y, std::size_t z, double budget_left, std::vector<Candidate>& out) {
    const std::size_t m = lm_.size();
    using Slot = std::pair<std::size_t, double>;
    std::unordered_map<Mask, std::vector<Slot>, MaskHash> seen;
    auto klass = [&](std::size_t x) { return p_.center_class.empty() ? 0 : p_.center_class[x]; };
    auto scan = [&](const Mask& B, double charge) {
      std::unordered_map<Mask, std::vector<std::pair<std::size_t, std::size_t>>, MaskHash> local;
      std::vector<Candidate> found;
      B.for_each([&](std::size_t x) {
        if (!p_.allowed_center.empty() && !p_.allowed_center[x]) return;
        const double dxz = lm_.d(x, z);
        const std::size_t cls = klass(x);
        B.for_each([&](std::size_t y) {
          const double rad = lm_.d(x, y);
          if (dxz > rad) return;
          const Mask cov = lm_.ball(x, rad) & Y;
          double rho = 0.0;
          cov.for_each([&](std::size_t w) { rho = std::max(rho, far_[x * m + w]); });
          const double t = term_of(x, rho);
          auto& slots = local[cov];
          auto it = std::find_if(slots.begin(), slots.end(),
                                 [&](const auto& s) { return s.first == cls; });
          if (it == slots.end()) {
            slots.emplace_back(cls, found.size());
            found.push_back({cov, x, rad, rho, t, charge});
          } else if (t < found[it->second].term) {
            found[it->second] = {cov, x, rad, rho, t, charge};
          }
        });
      });
      for (auto& c : found) {
        auto& slots = seen[c.cov];
        const std::size_t cls = klass(c.center);
        auto it = std::find_if(slots.begin(), slots.end(),
                               [&](const Slot& s) { return s.first == cls; });
        if (it != slots.end() && it->second <= c.term) continue;
        if (it == slots.end())
          slots.emplace_back(cls, c.term);
        else
          it->second = c.term;
        out.push_back(std::move(c));
      }
    };
    if (p_.exhaustive) {
      scan(lm_.full(), 0.0);
    } else {
      for (double r : p_.radii) {
        if (r > budget_left) break;
        scan(lm_.ball(z, 2.0 * r), r);
      }
    }
    std::stable_sort(out.begin(), out.end(),
                     [](const Candidate& a, const Candidate& b) { return a.term < b.term; });
  }

  void dfs(const Mask& Y, BallLeaf& path) {
    const std::size_t z = Y.first();
    const std::size_t balls = path.balls.size();
    const double budget_left = p_.budget - spent_;

    if (balls < p_.max_balls) {
      std::vector<Candidate> cands;
      candidates(Y, z, budget_left, cands);
      for (const Candidate& c : cands) {
        const double key = path.key + c.term;
        if (inc_.dominated(key, balls + 1, path.weight)) break;
        const Mask rest = Y - c.cov;
        ChosenBall chosen{c.center, c.net_radius, c.radius, {}};
        c.cov.for_each([&](std::size_t w) { chosen.covered.push_back(w); });
        if (rest.empty()) {
          path.balls.push_back(std::move(chosen));
          const double saved = path.key;
          path.key = key;
          on_leaf_(path);
          path.key = saved;
          path.balls.pop_back();
          continue;
        }
        if (inc_.prune(key, balls + 1, path.weight)) continue;
        path.balls.push_back(std::move(chosen));
        const double saved = path.key;
        path.key = key;
        spent_ += c.charge;
        dfs(rest, path);
        spent_ -= c.charge;
        path.key = saved;
        path.balls.pop_back();
      }
    }

    const std::size_t w = weight_[z];
    if (path.weight + w <= p_.max_weight) {
      Mask rest = Y;
      rest.reset(z);
      path.outliers.push_back(z);
      path.weight += w;
      if (rest.empty())
        on_leaf_(path);
      else if (!inc_.prune(path.key, balls, path.weight))
        dfs(rest, path);
      path.weight -= w;
      path.outliers.pop_back();
    }
  }

  const MetricSpace& space_;
  const NetView& view_;
  LocalMetric<Mask> lm_;
  BallSearchParams p_;
  Incumbents<Sol>& inc_;
  LeafFn on_leaf_;
  std::vector<double> far_;
  std::vector<std::size_t> weight_;
  std::vector<double> reach_;
  double spent_ = 0.0;
};

}  // namespace minsum::detail

#include "minsum/net.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace minsum {

namespace {

std::size_t position(const std::vector<PointId>& sorted, PointId p) {
  auto it = std::lower_bound(sorted.begin(), sorted.end(), p);
  if (it == sorted.end() || *it != p) throw std::invalid_argument("point is not in the net level");
  return static_cast<std::size_t>(it - sorted.begin());
}

}  // namespace

PointId NetHierarchy::representative(PointId p, std::size_t level) const {
  if (level >= levels.size()) level = levels.size() - 1;
  PointId cur = p;
  for (std::size_t i = 1; i <= level; ++i) cur = levels[i].parent[position(levels[i - 1].points, cur)];
  return cur;
}

NetHierarchy build_hierarchy(const MetricSpace& space, std::span<const PointId> subset) {
  if (subset.empty()) throw std::invalid_argument("cannot build a hierarchy over an empty subset");
  NetHierarchy h;
  h.subset = normalized({subset.begin(), subset.end()});
  const auto& pts = h.subset;

  double min_d = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) min_d = std::min(min_d, space(pts[i], pts[j]));
  if (std::isfinite(min_d)) {
    int e = 0;
    std::frexp(min_d, &e);  // min_d in [2^(e-1), 2^e)
    h.base_scale = std::ldexp(1.0, e - 1);
  }

  NetLevel base;
  base.scale = h.base_scale;
  base.points = pts;
  base.parent = pts;
  h.levels.push_back(std::move(base));

  while (h.levels.back().points.size() > 1) {
    const NetLevel& prev = h.levels.back();
    NetLevel next;
    next.scale = prev.scale * 2.0;
    for (PointId p : prev.points) {
      bool blocked = false;
      for (PointId q : next.points) {
        if (space(p, q) < next.scale) {
          blocked = true;
          break;
        }
      }
      if (!blocked) next.points.push_back(p);
    }
    next.parent.reserve(prev.points.size());
    for (PointId p : prev.points) {
      PointId best = next.points.front();
      double bd = std::numeric_limits<double>::infinity();
      for (PointId q : next.points) {
        const double d = space(p, q);
        if (d < bd) {
          bd = d;
          best = q;
        }
      }
      next.parent.push_back(best);
    }
    h.levels.push_back(std::move(next));
  }
  return h;
}

std::size_t NetView::index_of(PointId p) const {
  auto it = std::lower_bound(points.begin(), points.end(), p);
  if (it == points.end() || *it != p)
    throw std::invalid_argument("point " + std::to_string(p) + " is not a net point of this view");
  return static_cast<std::size_t>(it - points.begin());
}

NetView identity_view(std::span<const PointId> points) {
  NetView view;
  view.points = normalized({points.begin(), points.end()});
  for (PointId p : view.points) view.preimages.push_back({p});
  return view;
}

NetView net_for_budget(const MetricSpace& space, const NetHierarchy& h, double T, std::size_t k,
                       double eps) {
  if (!(T > 0.0) || k == 0 || !(eps > 0.0))
    throw std::invalid_argument("net_for_budget needs T > 0, k >= 1 and eps > 0");
  NetView view;
  view.budget = T;
  view.spacing = round_up_pow2(eps * T / static_cast<double>(k));
  if (view.spacing < h.base_scale) {
    NetView id = identity_view(h.subset);
    id.budget = T;
    id.spacing = view.spacing;
    return id;
  }
  const int steps = std::ilogb(view.spacing) - std::ilogb(h.base_scale);
  std::size_t level = static_cast<std::size_t>(std::max(steps, 0));
  if (level >= h.levels.size()) level = h.levels.size() - 1;
  view.identity = level == 0;
  view.points = h.levels[level].points;
  view.preimages.assign(view.points.size(), {});

  // representatives for all subset points at `level`
  std::vector<PointId> rep = h.subset;
  for (std::size_t i = 1; i <= level; ++i) {
    const auto& prev = h.levels[i - 1].points;
    for (PointId& r : rep) r = h.levels[i].parent[position(prev, r)];
  }
  for (std::size_t j = 0; j < h.subset.size(); ++j) {
    const std::size_t slot = view.index_of(rep[j]);
    view.preimages[slot].push_back(h.subset[j]);
    view.reach = std::max(view.reach, space(rep[j], h.subset[j]));
  }
  if (view.reach == 0.0)
    view.pad = 0.0;
  else if (view.reach <= view.spacing)
    view.pad = view.spacing;
  else
    view.pad = 2.0 * view.spacing;
  return view;
}

BallSolution extend_to_component(const MetricSpace& space, const NetView& view,
                                 const BallSolution& sol) {
  BallSolution out;
  for (const Ball& b : sol.balls) {
    view.index_of(b.center);
    out.balls.push_back({b.center, b.radius + view.pad});
  }
  std::vector<PointId> outl;
  for (PointId x : sol.outliers) {
    for (PointId p : view.preimages[view.index_of(x)]) {
      bool covered = false;
      for (const Ball& b : out.balls) {
        if (space(b.center, p) <= b.radius) {
          covered = true;
          break;
        }
      }
      if (!covered) outl.push_back(p);
    }
  }
  out.outliers = normalized(std::move(outl));
  return out;
}

PartitionSolution extend_to_component(const MetricSpace&, const NetView& view,
                                      const PartitionSolution& sol) {
  PartitionSolution out;
  for (const Cluster& c : sol.clusters) {
    Cluster e;
    e.tag = c.tag;
    for (PointId x : c.members) {
      const auto& pre = view.preimages[view.index_of(x)];
      e.members.insert(e.members.end(), pre.begin(), pre.end());
    }
    e.members = normalized(std::move(e.members));
    out.clusters.push_back(std::move(e));
  }
  std::vector<PointId> outl;
  for (PointId x : sol.outliers) {
    const auto& pre = view.preimages[view.index_of(x)];
    outl.insert(outl.end(), pre.begin(), pre.end());
  }
  outl = normalized(std::move(outl));
  std::vector<PointId> kept;
  for (PointId p : outl) {
    bool in_cluster = false;
    for (const Cluster& c : out.clusters)
      if (std::binary_search(c.members.begin(), c.members.end(), p)) in_cluster = true;
    if (!in_cluster) kept.push_back(p);
  }
  out.outliers = std::move(kept);
  return out;
}

}  // namespace minsum

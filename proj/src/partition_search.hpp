#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <tuple>
#include <unordered_set>
#include <vector>

#include "minsum/detail/local_metric.hpp"
#include "minsum/detail/mask.hpp"
#include "minsum/net.hpp"
#include "tables.hpp"

namespace minsum::detail {

template <class Mask>
struct Entry {
  Mask members;
  double r = 0.0;
  double diam = 0.0;
  bool outlier = false;
};

// Subtract non-enlarged entries from intersecting entries whose candidate
// diameter is at least as large. `diam` recomputes the diameter of a mask.
template <class Mask, class Diam>
void refine_entries(std::vector<Entry<Mask>>& entries, Diam&& diam) {
  for (;;) {
    bool found = false;
    std::size_t bi = 0, bj = 0;
    for (std::size_t i = 0; i < entries.size(); ++i) {
      const auto& a = entries[i];
      if (a.diam > a.r) continue;
      for (std::size_t j = 0; j < entries.size(); ++j) {
        if (i == j) continue;
        const auto& b = entries[j];
        if (a.r > b.r || !a.members.intersects(b.members)) continue;
        if (!found || std::tie(a.r, b.r, i, j) <
                          std::tie(entries[bi].r, entries[bj].r, bi, bj)) {
          found = true;
          bi = i;
          bj = j;
        }
      }
    }
    if (!found) return;
    auto& target = entries[bj];
    target.members -= entries[bi].members;
    if (target.members.empty()) {
      entries.erase(entries.begin() + static_cast<std::ptrdiff_t>(bj));
    } else {
      target.diam = diam(target.members);
    }
  }
}

struct PartitionSearchParams {
  std::vector<double> radii;  // ascending
  double budget = kInf;
  std::size_t max_clusters = 1;
  std::size_t max_weight = 0;
  double pad = 0.0;
  // exact searches take every pairwise distance as a candidate diameter
  bool exact = false;
};

template <class Mask>
struct PartitionLeaf {
  const std::vector<Entry<Mask>>* entries = nullptr;
  std::size_t created = 0;
  std::size_t weight = 0;
  double key = 0.0;
};

// Search over tagged clusterings of the net points of one view. Each node
// refines its entries, then either covers the lowest uncovered point or, once
// everything is covered, probes the diameter pair of the smallest enlarged
// entry. New clusters are intersections of at most four balls of a candidate
// diameter around witnesses near the probe point.
template <class Mask>
class PartitionSearch {
 public:
  using LeafFn = std::function<void(const PartitionLeaf<Mask>&)>;
  static constexpr std::size_t kMaxWitnesses = 4;

  PartitionSearch(const MetricSpace& space, const NetView& view, PartitionSearchParams params,
                  Incumbents<PartitionSolution>& inc, LeafFn on_leaf)
      : lm_(space, view.points), p_(std::move(params)), inc_(inc), on_leaf_(std::move(on_leaf)) {
    for (const auto& pre : view.preimages) weight_.push_back(pre.size());
  }

  void run() {
    std::vector<Entry<Mask>> entries;
    dfs(lm_.full(), entries, 0.0, 0, 0);
  }

 private:
  struct Candidate {
    Mask members;
    double r;
    double diam;
    double charge;
  };

  double diam(const Mask& m) const { return lm_.diameter(m); }

  void clusters_at(std::size_t z, double r, double charge, std::vector<Candidate>& out,
                   std::unordered_set<Mask, MaskHash>& seen_r) {
    const Mask near = lm_.ball(z, r);
    std::vector<Mask> frontier;
    std::unordered_set<Mask, MaskHash> seen;
    near.for_each([&](std::size_t w) {
      const Mask c = lm_.ball(w, r);
      if (c.test(z) && seen.insert(c).second) frontier.push_back(c);
    });
    for (std::size_t depth = 1;; ++depth) {
      for (const Mask& c : frontier) {
        if (!seen_r.insert(c).second) continue;
        const double d = diam(c);
        if (d >= r) out.push_back({c, r, d, charge});
      }
      if (depth == kMaxWitnesses) break;
      std::vector<Mask> next;
      for (const Mask& c : frontier)
        (c & near).for_each([&](std::size_t w) {
          const Mask e = c & lm_.ball(w, r);
          if (e.test(z) && seen.insert(e).second) next.push_back(e);
        });
      if (next.empty()) break;
      frontier = std::move(next);
    }
  }

  void candidates(std::size_t z, double budget_left, std::vector<Candidate>& out) {
    std::vector<double> rs;
    auto collect = [&](const Mask& pool, double lo, double hi) {
      rs.clear();
      pool.for_each([&](std::size_t x) {
        pool.for_each([&](std::size_t y) {
          if (y < x) return;
          const double d = lm_.d(x, y);
          if (d > lo && d <= hi && lm_.d(z, x) <= d && lm_.d(z, y) <= d) rs.push_back(d);
        });
      });
      std::sort(rs.begin(), rs.end());
      rs.erase(std::unique(rs.begin(), rs.end()), rs.end());
    };
    if (p_.exact) {
      collect(lm_.full(), -1.0, kInf);
      for (double r : rs) {
        std::unordered_set<Mask, MaskHash> seen_r;
        clusters_at(z, r, 0.0, out, seen_r);
      }
      return;
    }
    for (std::size_t i = p_.radii.size(); i-- > 0;) {
      const double rp = p_.radii[i];
      if (rp > budget_left) continue;
      const double lo = i == 0 ? -1.0 : rp / 2.0;
      const Mask pool = lm_.ball(z, rp);
      collect(pool, lo, rp);
      for (double r : rs) {
        std::unordered_set<Mask, MaskHash> seen_r;
        clusters_at(z, r, rp, out, seen_r);
      }
    }
  }

  void dfs(const Mask& Y, std::vector<Entry<Mask>>& entries, double key, std::size_t created,
           std::size_t weight) {
    refine_entries(entries, [&](const Mask& m) { return diam(m); });
    std::vector<std::size_t> probes;
    if (!Y.empty()) {
      probes.push_back(Y.first());
    } else {
      std::size_t pick = entries.size();
      for (std::size_t i = 0; i < entries.size(); ++i)
        if (entries[i].diam > entries[i].r && (pick == entries.size() || entries[i].r < entries[pick].r))
          pick = i;
      if (pick == entries.size()) {
        on_leaf_({&entries, created, weight, key});
        return;
      }
      const auto pair = lm_.diameter_pair(entries[pick].members);
      probes = {pair.first, pair.second};
    }
    if (inc_.prune(key, created, weight)) return;

    if (created < p_.max_clusters) {
      std::vector<Candidate> cands;
      for (std::size_t z : probes) candidates(z, p_.budget - spent_, cands);
      std::stable_sort(cands.begin(), cands.end(),
                       [](const Candidate& a, const Candidate& b) { return a.r < b.r; });
      std::vector<std::pair<Mask, double>> done;
      for (const Candidate& c : cands) {
        const double child_key = key + c.r + 2.0 * p_.pad;
        if (inc_.dominated(child_key, created + 1, weight)) break;
        bool repeat = false;
        for (const auto& [m, r] : done)
          if (r == c.r && m == c.members) repeat = true;
        if (repeat) continue;
        done.emplace_back(c.members, c.r);
        std::vector<Entry<Mask>> next = entries;
        next.push_back({c.members, c.r, c.diam, false});
        spent_ += c.charge;
        dfs(Y - c.members, next, child_key, created + 1, weight);
        spent_ -= c.charge;
      }
    }

    if (!Y.empty()) {
      const std::size_t z = Y.first();
      if (weight + weight_[z] <= p_.max_weight) {
        std::vector<Entry<Mask>> next = entries;
        Mask single(lm_.size());
        single.set(z);
        next.push_back({single, 0.0, 0.0, true});
        Mask rest = Y;
        rest.reset(z);
        dfs(rest, next, key, created, weight + weight_[z]);
      }
    }
  }

  LocalMetric<Mask> lm_;
  PartitionSearchParams p_;
  Incumbents<PartitionSolution>& inc_;
  LeafFn on_leaf_;
  std::vector<std::size_t> weight_;
  double spent_ = 0.0;
};

}  // namespace minsum::detail

#include "minsum/msd.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numeric>
#include <stdexcept>
#include <unordered_set>

#include "minsum/decompose.hpp"
#include "minsum/detail/local_metric.hpp"
#include "minsum/detail/mask.hpp"
#include "minsum/parallel.hpp"
#include "partition_search.hpp"
#include "tables.hpp"

namespace minsum {

namespace {

using detail::Entry;
using detail::WideMask;

std::vector<Entry<WideMask>> to_entries(const MetricSpace& space, const TaggedClustering& a) {
  const std::size_t n = space.size();
  std::vector<Entry<WideMask>> entries;
  for (const auto& e : a.entries) {
    WideMask m(n);
    for (PointId p : e.members) {
      if (p >= n) throw std::out_of_range("entry member out of range");
      m.set(p);
    }
    entries.push_back({m, e.r, e.members.empty() ? 0.0 : diameter(space, e.members), false});
  }
  for (PointId p : a.outliers) {
    if (p >= n) throw std::out_of_range("outlier out of range");
    WideMask m(n);
    m.set(p);
    entries.push_back({m, 0.0, 0.0, true});
  }
  return entries;
}

std::vector<PointId> members_of(const WideMask& m) {
  std::vector<PointId> out;
  m.for_each([&](std::size_t i) { out.push_back(static_cast<PointId>(i)); });
  return out;
}

double cluster_diameter(const MetricSpace& space, const std::vector<PointId>& c) {
  return c.empty() ? 0.0 : diameter(space, c);
}

void sort_clusters(PartitionSolution& sol) {
  std::sort(sol.clusters.begin(), sol.clusters.end(),
            [](const Cluster& a, const Cluster& b) { return a.members.front() < b.members.front(); });
  sol.outliers = normalized(std::move(sol.outliers));
}

ClusterList merge_indices(ClusterList sol, const std::vector<std::size_t>& idx) {
  std::vector<PointId> merged;
  for (std::size_t i : idx) merged.insert(merged.end(), sol[i].begin(), sol[i].end());
  merged = normalized(std::move(merged));
  const std::size_t first = idx.front();
  for (std::size_t j = idx.size(); j-- > 0;)
    if (idx[j] != first) sol.erase(sol.begin() + static_cast<std::ptrdiff_t>(idx[j]));
  sol[first] = std::move(merged);
  return sol;
}

// First violating subset of 2..max_subset clusters, smallest size first.
std::optional<std::vector<std::size_t>> violating_subset(const MetricSpace& space,
                                                         const ClusterList& sol,
                                                         std::size_t max_subset) {
  std::vector<double> d(sol.size());
  for (std::size_t i = 0; i < sol.size(); ++i) d[i] = cluster_diameter(space, sol[i]);
  for (std::size_t size = 2; size <= std::min(max_subset, sol.size()); ++size) {
    std::vector<std::size_t> idx(size);
    std::iota(idx.begin(), idx.end(), 0);
    for (;;) {
      std::vector<PointId> u;
      double sum = 0.0;
      for (std::size_t i : idx) {
        u.insert(u.end(), sol[i].begin(), sol[i].end());
        sum += d[i];
      }
      if (diameter(space, u) <= sum) return idx;
      std::size_t pos = size;
      while (pos-- > 0) {
        if (idx[pos] < sol.size() - size + pos) break;
      }
      if (pos == static_cast<std::size_t>(-1)) break;
      ++idx[pos];
      for (std::size_t j = pos + 1; j < size; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  return std::nullopt;
}

template <class Mask>
class ExactMsd {
 public:
  static constexpr std::size_t kMaxWitnesses = 4;

  ExactMsd(const MetricSpace& space, std::size_t k, const ClusterValidator* validator)
      : lm_(space, all_points(space.size())), k_(k), validator_(validator) {
    ds_.push_back(0.0);
    for (std::size_t i = 0; i < lm_.size(); ++i)
      for (std::size_t j = i + 1; j < lm_.size(); ++j) ds_.push_back(lm_.d(i, j));
    std::sort(ds_.begin(), ds_.end());
    ds_.erase(std::unique(ds_.begin(), ds_.end()), ds_.end());
  }

  std::optional<PartitionSolution> run() {
    dfs(lm_.full(), 0, 0.0);
    if (!found_) return std::nullopt;
    PartitionSolution sol;
    for (const Mask& m : best_) sol.clusters.push_back({lm_.to_global(m), std::nullopt});
    sort_clusters(sol);
    return sol;
  }

 private:
  static std::vector<PointId> all_points(std::size_t n) {
    std::vector<PointId> ids(n);
    std::iota(ids.begin(), ids.end(), PointId{0});
    return ids;
  }

  bool valid(const Mask& m) const {
    if (!validator_) return true;
    const auto ids = lm_.to_global(m);
    return (*validator_)(ids);
  }

  void record(double cost) {
    if (found_ && cost >= best_cost_) return;
    found_ = true;
    best_cost_ = cost;
    best_ = chosen_;
  }

  void dfs(const Mask& P, std::size_t first_d, double cost) {
    if (P.empty()) {
      record(cost);
      return;
    }
    if (chosen_.size() == k_) return;
    if (chosen_.size() + 1 == k_) {
      const double d = lm_.diameter(P);
      if ((!found_ || cost + d < best_cost_) && valid(P)) {
        chosen_.push_back(P);
        record(cost + d);
        chosen_.pop_back();
      }
      return;
    }
    std::unordered_set<Mask, detail::MaskHash> tried;
    for (std::size_t di = first_d; di < ds_.size(); ++di) {
      const double D = ds_[di];
      if (found_ && cost + D >= best_cost_) break;
      std::vector<Mask> frontier;
      std::unordered_set<Mask, detail::MaskHash> seen;
      P.for_each([&](std::size_t w) {
        const Mask c = lm_.ball(w, D) & P;
        if (seen.insert(c).second) frontier.push_back(c);
      });
      std::vector<Mask> created;
      for (std::size_t depth = 1;; ++depth) {
        created.insert(created.end(), frontier.begin(), frontier.end());
        if (depth == kMaxWitnesses) break;
        std::vector<Mask> next;
        for (const Mask& c : frontier)
          c.for_each([&](std::size_t w) {
            const Mask e = c & lm_.ball(w, D);
            if (seen.insert(e).second) next.push_back(e);
          });
        if (next.empty()) break;
        frontier = std::move(next);
      }
      for (const Mask& c : created) {
        const double d = lm_.diameter(c);
        if (d > D || !tried.insert(c).second) continue;
        if (!valid(c)) continue;
        chosen_.push_back(c);
        dfs(P - c, di, cost + d);
        chosen_.pop_back();
      }
    }
  }

  detail::LocalMetric<Mask> lm_;
  std::size_t k_;
  const ClusterValidator* validator_;
  std::vector<double> ds_;
  std::vector<Mask> chosen_;
  std::vector<Mask> best_;
  double best_cost_ = 0.0;
  bool found_ = false;
};

struct PartitionProblem {
  std::size_t k = 1;
  std::size_t g = 0;
  double eps = 0.5;
  bool exact = false;
  const ClusterValidator* validator = nullptr;
};

using PartTable = detail::Incumbents<PartitionSolution>;

template <class Mask>
void run_partition_view(const MetricSpace& space, const NetView& view,
                        detail::PartitionSearchParams params, const PartitionProblem& p,
                        PartTable& inc) {
  auto on_leaf = [&](const detail::PartitionLeaf<Mask>& leaf) {
    PartitionSolution sol;
    double actual = 0.0;
    for (const auto& e : *leaf.entries) {
      std::vector<PointId> pts;
      e.members.for_each([&](std::size_t w) {
        pts.insert(pts.end(), view.preimages[w].begin(), view.preimages[w].end());
      });
      if (e.outlier) {
        sol.outliers.insert(sol.outliers.end(), pts.begin(), pts.end());
        continue;
      }
      pts = normalized(std::move(pts));
      if (p.validator && !(*p.validator)(pts)) return;
      actual += diameter(space, pts);
      sol.clusters.push_back({std::move(pts), e.r});
    }
    sort_clusters(sol);
    const std::size_t cell[2] = {sol.clusters.size(), sol.outliers.size()};
    inc.record(inc.cell_index(cell), leaf.key, actual, sol);
  };
  detail::PartitionSearch<Mask>(space, view, std::move(params), inc, on_leaf).run();
}

int floor_log2(double x) { return std::ilogb(x); }

int ceil_log2(double x) {
  const int e = std::ilogb(x);
  return std::ldexp(1.0, e) < x ? e + 1 : e;
}

template <class Mask>
void search_partition_component(const MetricSpace& space, const std::vector<PointId>& comp,
                                const PartitionProblem& p, int lo, int hi, PartTable& inc) {
  detail::PartitionSearchParams base;
  base.max_clusters = p.k;
  base.max_weight = p.g;
  if (p.exact) {
    base.exact = true;
    run_partition_view<Mask>(space, identity_view(comp), base, p, inc);
    return;
  }
  const NetHierarchy h = build_hierarchy(space, comp);
  const double comp_diam = diameter(space, comp);
  const double eps_int = p.eps / kEpsilonDivisor;
  for (int s = hi; s >= lo; --s) {
    const double T = std::ldexp(1.0, s);
    const NetView view = net_for_budget(space, h, T, p.k, eps_int);
    detail::PartitionSearchParams params = base;
    const double top = round_up_pow2(std::min(comp_diam, T));
    for (double r = view.spacing; r <= top; r *= 2.0) params.radii.push_back(r);
    if (params.radii.empty()) params.radii.push_back(view.spacing);
    params.budget = 3.0 * T;
    params.pad = view.pad;
    run_partition_view<Mask>(space, view, std::move(params), p, inc);
  }
}

std::optional<PartitionSolution> solve_partitions(const MetricSpace& space,
                                                  const PartitionProblem& p,
                                                  const SolveOptions& options) {
  if (p.k == 0) throw std::invalid_argument("k must be at least 1");
  if (!p.exact && !(p.eps > 0.0 && p.eps <= 1.0))
    throw std::invalid_argument("epsilon must lie in (0, 1]");
  const std::size_t n = space.size();
  const double min_threshold = p.validator ? space.diameter() : 0.0;
  const Decomposition dec = decompose(space, p.k, p.g, Problem::msd, min_threshold);

  if (!p.validator && dec.zero_cost && n <= p.k + p.g) {
    PartitionSolution sol;
    for (PointId q = 0; q < n; ++q) {
      if (q < p.k)
        sol.clusters.push_back({{q}, 0.0});
      else
        sol.outliers.push_back(q);
    }
    if (options.components)
      for (const auto& comp : dec.components) {
        ComponentSummary s;
        s.points = comp;
        for (PointId q : comp) (q < p.k ? s.clusters : s.outliers)++;
        options.components->push_back(std::move(s));
      }
    return sol;
  }

  int lo = 0, hi = 0;
  if (dec.L > 0.0) {
    const double kk = static_cast<double>(std::max<std::size_t>(p.k - 1, 1));
    lo = floor_log2(dec.L);
    hi = ceil_log2(2.0 * round_up_pow2(std::min(dec.beta * dec.L, kk * dec.R)));
    hi = std::max(hi, lo);
  }

  const std::vector<std::size_t> dims{p.k, p.g};
  const std::size_t count = dec.components.size();
  std::vector<std::unique_ptr<PartTable>> incs(count);
  parallel_for(count, options.threads, [&](std::size_t i) {
    incs[i] = std::make_unique<PartTable>(dims);
    const auto& comp = dec.components[i];
    if (comp.size() <= detail::SmallMask::kCapacity)
      search_partition_component<detail::SmallMask>(space, comp, p, lo, hi, *incs[i]);
    else
      search_partition_component<WideMask>(space, comp, p, lo, hi, *incs[i]);
  });

  std::vector<CostTable> tables;
  for (const auto& inc : incs) tables.push_back(inc->table());
  const auto merged = merge_components(tables);
  if (!merged) return std::nullopt;

  PartitionSolution sol;
  for (std::size_t i = 0; i < count; ++i) {
    const PartitionSolution& part = incs[i]->solution(merged->choice[i]);
    sol.clusters.insert(sol.clusters.end(), part.clusters.begin(), part.clusters.end());
    sol.outliers.insert(sol.outliers.end(), part.outliers.begin(), part.outliers.end());
    if (options.components) {
      ComponentSummary s;
      s.points = dec.components[i];
      s.clusters = part.clusters.size();
      s.outliers = part.outliers.size();
      s.cost = incs[i]->actual(merged->choice[i]);
      options.components->push_back(std::move(s));
    }
  }
  sort_clusters(sol);
  return sol;
}

}  // namespace

bool refine_applicable(const MetricSpace& space, const TaggedClustering& a) {
  const auto entries = to_entries(space, a);
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (entries[i].diam > entries[i].r) continue;
    for (std::size_t j = 0; j < entries.size(); ++j)
      if (i != j && entries[i].r <= entries[j].r &&
          entries[i].members.intersects(entries[j].members))
        return true;
  }
  return false;
}

TaggedClustering refine(const MetricSpace& space, TaggedClustering a) {
  auto entries = to_entries(space, a);
  detail::refine_entries(entries, [&](const WideMask& m) {
    return cluster_diameter(space, members_of(m));
  });
  TaggedClustering out;
  for (const auto& e : entries) {
    if (e.outlier) {
      e.members.for_each([&](std::size_t i) { out.outliers.push_back(static_cast<PointId>(i)); });
    } else {
      out.entries.push_back({members_of(e.members), e.r});
    }
  }
  out.outliers = normalized(std::move(out.outliers));
  return out;
}

std::vector<std::size_t> neighborhood(const MetricSpace& space, const ClusterList& sol,
                                      std::size_t index) {
  if (index >= sol.size()) throw std::out_of_range("cluster index out of range");
  const double d = cluster_diameter(space, sol[index]);
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < sol.size(); ++j) {
    if (j == index) continue;
    if (set_distance(space, sol[index], sol[j]) <= d && d <= cluster_diameter(space, sol[j]))
      out.push_back(j);
  }
  return out;
}

ClusterList bound_neighborhoods(const MetricSpace& space, ClusterList sol) {
  for (;;) {
    bool changed = false;
    for (std::size_t i = 0; i < sol.size(); ++i) {
      auto nb = neighborhood(space, sol, i);
      if (nb.size() <= 4) continue;
      nb.push_back(i);
      std::sort(nb.begin(), nb.end());
      sol = merge_indices(std::move(sol), nb);
      changed = true;
      break;
    }
    if (!changed) return sol;
  }
}

bool is_packed(const MetricSpace& space, const ClusterList& sol, std::size_t max_subset) {
  return !violating_subset(space, sol, max_subset).has_value();
}

ClusterList make_packed(const MetricSpace& space, ClusterList sol) {
  while (auto idx = violating_subset(space, sol, 5)) sol = merge_indices(std::move(sol), *idx);
  return sol;
}

ClusterList enforce_min_cluster_distance(const MetricSpace& space, ClusterList sol, double delta) {
  if (delta < 0.0) throw std::invalid_argument("delta must be nonnegative");
  const std::size_t m = sol.size();
  std::vector<std::size_t> parent(m);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j)
      if (set_distance(space, sol[i], sol[j]) <= 2.0 * delta) {
        const std::size_t a = find(i), b = find(j);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
      }
  ClusterList out;
  std::vector<std::size_t> slot(m, m);
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t r = find(i);
    if (slot[r] == m) {
      slot[r] = out.size();
      out.emplace_back();
    }
    auto& dst = out[slot[r]];
    dst.insert(dst.end(), sol[i].begin(), sol[i].end());
  }
  for (auto& c : out) c = normalized(std::move(c));
  return out;
}

std::optional<PartitionSolution> exact_msd(const MetricSpace& space, std::size_t k,
                                           const ClusterValidator* validator) {
  if (k == 0) throw std::invalid_argument("k must be at least 1");
  if (space.size() <= detail::SmallMask::kCapacity)
    return ExactMsd<detail::SmallMask>(space, k, validator).run();
  return ExactMsd<WideMask>(space, k, validator).run();
}

PartitionSolution exact_msd_outliers(const MetricSpace& space, std::size_t k, std::size_t g) {
  PartitionProblem p;
  p.k = k;
  p.g = g;
  p.exact = true;
  auto sol = solve_partitions(space, p, {});
  if (!sol) throw std::logic_error("exact MSD search found no solution");
  return *sol;
}

std::optional<PartitionSolution> msd_subroutine(const MetricSpace& space, const NetView& view,
                                                std::span<const double> radii, double budget,
                                                std::size_t q, std::size_t outliers) {
  if (view.points.empty()) return PartitionSolution{};
  PartTable inc({q, outliers});
  detail::PartitionSearchParams params;
  params.radii.assign(radii.begin(), radii.end());
  std::sort(params.radii.begin(), params.radii.end());
  params.budget = budget;
  params.max_clusters = q;
  params.max_weight = outliers;
  auto run = [&](auto tag) {
    using Mask = decltype(tag);
    auto on_leaf = [&](const detail::PartitionLeaf<Mask>& leaf) {
      PartitionSolution sol;
      double actual = 0.0;
      for (const auto& e : *leaf.entries) {
        std::vector<PointId> pts;
        e.members.for_each([&](std::size_t w) { pts.push_back(view.points[w]); });
        if (e.outlier) {
          sol.outliers.insert(sol.outliers.end(), pts.begin(), pts.end());
          continue;
        }
        actual += diameter(space, pts);
        sol.clusters.push_back({std::move(pts), e.r});
      }
      sort_clusters(sol);
      const std::size_t cell[2] = {sol.clusters.size(), leaf.weight};
      inc.record(inc.cell_index(cell), leaf.key, actual, sol);
    };
    detail::PartitionSearch<Mask>(space, view, params, inc, on_leaf).run();
  };
  if (view.points.size() <= detail::SmallMask::kCapacity)
    run(detail::SmallMask{});
  else
    run(WideMask(0));
  std::size_t best = 0;
  for (std::size_t i = 1; i < inc.layout().cells(); ++i)
    if (inc.actual(i) < inc.actual(best)) best = i;
  if (!(inc.actual(best) < detail::kInf)) return std::nullopt;
  return inc.solution(best);
}

std::optional<PartitionSolution> approximate_msd(const MetricSpace& space, std::size_t k,
                                                 double eps, std::size_t g,
                                                 const ClusterValidator* validator,
                                                 const SolveOptions& options) {
  PartitionProblem p;
  p.k = k;
  p.g = g;
  p.eps = eps;
  p.validator = validator;
  return solve_partitions(space, p, options);
}

}  // namespace minsum

#include "minsum/decompose.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace minsum {

namespace {

struct UnionFind {
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (b < a) std::swap(a, b);
    parent[b] = a;
  }
  std::vector<std::size_t> parent;
};

void refresh_bounds(const MetricSpace& space, Decomposition& dec, std::size_t m) {
  std::sort(dec.components.begin(), dec.components.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  double total = 0.0;
  dec.R = 0.0;
  for (const auto& c : dec.components) {
    const double d = diameter(space, c);
    total += d;
    dec.R = std::max(dec.R, d);
  }
  const double mm = static_cast<double>(m) * static_cast<double>(m);
  dec.psi = 64.0 * mm;
  dec.beta = 64.0 * mm * kBracketWidening;
  dec.L = total / (64.0 * mm);
}

bool greedy_cover_ok(const MetricSpace& space, std::size_t k, std::size_t g, double rho) {
  const std::size_t n = space.size();
  std::vector<char> covered(n, 0);
  std::size_t left = n;
  for (std::size_t step = 0; step < k && left > g; ++step) {
    std::size_t best = 0, best_cnt = 0;
    for (PointId x = 0; x < n; ++x) {
      std::size_t cnt = 0;
      for (PointId y = 0; y < n; ++y)
        if (!covered[y] && space(x, y) <= rho) ++cnt;
      if (cnt > best_cnt) {
        best_cnt = cnt;
        best = x;
      }
    }
    if (best_cnt == 0) break;
    for (PointId y = 0; y < n; ++y) {
      if (!covered[y] && space(static_cast<PointId>(best), y) <= 3.0 * rho) {
        covered[y] = 1;
        --left;
      }
    }
  }
  return left <= g;
}

}  // namespace

GonzalezResult gonzalez_kcenter(const MetricSpace& space, std::size_t m) {
  if (m == 0) throw std::invalid_argument("gonzalez_kcenter needs m >= 1");
  const std::size_t n = space.size();
  GonzalezResult res;
  std::vector<double> dist(n, std::numeric_limits<double>::infinity());
  PointId next = 0;
  for (std::size_t step = 0; step < std::min(m, n); ++step) {
    res.centers.push_back(next);
    for (PointId y = 0; y < n; ++y) dist[y] = std::min(dist[y], space(next, y));
    double far = -1.0;
    for (PointId y = 0; y < n; ++y) {
      if (dist[y] > far) {
        far = dist[y];
        next = y;
      }
    }
    res.radius = far;
  }
  return res;
}

double greedy_outlier_radius(const MetricSpace& space, std::size_t k, std::size_t g) {
  const std::size_t n = space.size();
  if (n <= k + g) return 0.0;
  std::vector<double> cand;
  for (PointId i = 0; i < n; ++i)
    for (PointId j = i + 1; j < n; ++j) cand.push_back(space(i, j));
  std::sort(cand.begin(), cand.end());
  cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
  std::size_t lo = 0, hi = cand.size() - 1;  // cand[hi] is always feasible
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    if (greedy_cover_ok(space, k, g, cand[mid]))
      hi = mid;
    else
      lo = mid + 1;
  }
  return cand[hi];
}

Decomposition decompose(const MetricSpace& space, std::size_t k, std::size_t g, Problem problem,
                        double min_threshold) {
  if (k == 0) throw std::invalid_argument("decompose needs k >= 1");
  const std::size_t n = space.size();
  const std::size_t m = k + g;
  Decomposition dec;
  dec.slots = m;
  const double span_factor = problem == Problem::msd ? 2.0 : 1.0;
  if (g == 0) {
    dec.base_radius = gonzalez_kcenter(space, k).radius;
    dec.lower_bound = dec.base_radius / 2.0;
    dec.threshold = span_factor * static_cast<double>(k) * dec.base_radius;
  } else {
    dec.base_radius = greedy_outlier_radius(space, k, g);
    dec.lower_bound = dec.base_radius;
    dec.threshold = span_factor * 3.0 * static_cast<double>(k) * dec.base_radius;
  }
  dec.zero_cost = n <= m || dec.base_radius == 0.0;
  dec.threshold = std::max(dec.threshold, min_threshold);

  UnionFind uf(n);
  for (PointId i = 0; i < n; ++i)
    for (PointId j = i + 1; j < n; ++j)
      if (space(i, j) <= dec.threshold) uf.unite(i, j);
  std::vector<std::vector<PointId>> groups(n);
  for (PointId i = 0; i < n; ++i) groups[uf.find(i)].push_back(i);
  for (auto& grp : groups)
    if (!grp.empty()) dec.components.push_back(std::move(grp));
  refresh_bounds(space, dec, m);
  if (dec.L == 0.0) dec.zero_cost = true;
  return dec;
}

void merge_into_nearest(const MetricSpace& space, Decomposition& dec, std::size_t index) {
  if (index >= dec.components.size()) throw std::out_of_range("component index out of range");
  if (dec.components.size() < 2) return;
  std::size_t best = index;
  double bd = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < dec.components.size(); ++j) {
    if (j == index) continue;
    const double d = set_distance(space, dec.components[index], dec.components[j]);
    if (d < bd) {
      bd = d;
      best = j;
    }
  }
  auto& dst = dec.components[best];
  dst.insert(dst.end(), dec.components[index].begin(), dec.components[index].end());
  dst = normalized(std::move(dst));
  dec.components.erase(dec.components.begin() + static_cast<std::ptrdiff_t>(index));
  refresh_bounds(space, dec, dec.slots);
}

}  // namespace minsum

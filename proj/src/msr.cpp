#include "minsum/msr.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <stdexcept>

#include "ball_search.hpp"
#include "minsum/decompose.hpp"
#include "minsum/detail/mask.hpp"
#include "minsum/matching.hpp"
#include "minsum/parallel.hpp"
#include "msr_engine.hpp"
#include "tables.hpp"

namespace minsum {

CostTable::CostTable(std::vector<std::size_t> caps_) : caps(std::move(caps_)) {
  std::size_t n = 1;
  for (std::size_t c : caps) n *= c + 1;
  cost.assign(n, std::numeric_limits<double>::infinity());
}

std::size_t CostTable::index(std::span<const std::size_t> c) const {
  if (c.size() != caps.size()) throw std::invalid_argument("cell rank does not match the table");
  std::size_t idx = 0;
  for (std::size_t j = 0; j < caps.size(); ++j) {
    if (c[j] > caps[j]) throw std::out_of_range("cell exceeds the table caps");
    idx = idx * (caps[j] + 1) + c[j];
  }
  return idx;
}

std::vector<std::size_t> CostTable::cell(std::size_t idx) const {
  if (idx >= cost.size()) throw std::out_of_range("cell index out of range");
  std::vector<std::size_t> c(caps.size());
  for (std::size_t j = caps.size(); j-- > 0;) {
    c[j] = idx % (caps[j] + 1);
    idx /= caps[j] + 1;
  }
  return c;
}

std::optional<MergeResult> merge_components(const std::vector<CostTable>& tables) {
  if (tables.empty()) return MergeResult{0.0, {}};
  const CostTable& first = tables.front();
  for (const CostTable& t : tables)
    if (t.caps != first.caps || t.cost.size() != first.cost.size())
      throw std::invalid_argument("merge_components needs tables with identical caps");

  const std::size_t cells = first.cells();
  std::vector<std::vector<std::size_t>> coords(cells);
  for (std::size_t i = 0; i < cells; ++i) coords[i] = first.cell(i);
  auto leq = [&](std::size_t a, std::size_t b) {
    for (std::size_t j = 0; j < coords[a].size(); ++j)
      if (coords[a][j] > coords[b][j]) return false;
    return true;
  };

  const std::size_t count = tables.size();
  std::vector<std::vector<double>> cum(count, std::vector<double>(cells, detail::kInf));
  std::vector<std::vector<std::size_t>> arg(count, std::vector<std::size_t>(cells, 0));
  for (std::size_t t = 0; t < count; ++t)
    for (std::size_t x = 0; x < cells; ++x)
      for (std::size_t y = 0; y <= x; ++y)
        if (leq(y, x) && tables[t].cost[y] < cum[t][x]) {
          cum[t][x] = tables[t].cost[y];
          arg[t][x] = y;
        }

  std::vector<double> acc = cum[0];
  std::vector<std::vector<std::size_t>> back(count, std::vector<std::size_t>(cells, 0));
  for (std::size_t t = 1; t < count; ++t) {
    std::vector<double> next(cells, detail::kInf);
    for (std::size_t x = 0; x < cells; ++x)
      for (std::size_t y = 0; y <= x; ++y) {
        if (!leq(y, x)) continue;
        const double v = acc[y] + cum[t][x - y];
        if (v < next[x]) {
          next[x] = v;
          back[t][x] = y;
        }
      }
    acc = std::move(next);
  }

  std::size_t x = cells - 1;
  if (!(acc[x] < detail::kInf)) return std::nullopt;
  MergeResult res;
  res.cost = acc[x];
  res.choice.assign(count, 0);
  for (std::size_t t = count; t-- > 1;) {
    const std::size_t y = back[t][x];
    res.choice[t] = arg[t][x - y];
    x = y;
  }
  res.choice[0] = arg[0][x];
  return res;
}

namespace detail {

namespace {

using Table = Incumbents<BallSolution>;

int floor_log2(double x) { return std::ilogb(x); }

int ceil_log2(double x) {
  const int e = std::ilogb(x);
  return std::ldexp(1.0, e) < x ? e + 1 : e;
}

std::vector<PointId> uncovered(const MetricSpace& space, const std::vector<Ball>& balls,
                               const NetView& view, const std::vector<std::size_t>& outlier_nets) {
  std::vector<PointId> out;
  for (std::size_t w : outlier_nets)
    for (PointId p : view.preimages[w]) {
      bool hit = false;
      for (const Ball& b : balls)
        if (space(b.center, p) <= b.radius) {
          hit = true;
          break;
        }
      if (!hit) out.push_back(p);
    }
  return normalized(std::move(out));
}

struct FairData {
  const std::vector<std::size_t>* color_of = nullptr;
  std::vector<std::size_t> caps;
};

class LeafRecorder {
 public:
  LeafRecorder(const MetricSpace& space, const NetView& view, double alpha, const FairData* fair,
               Table& inc)
      : space_(space), view_(view), alpha_(alpha), fair_(fair), inc_(inc) {
    if (!fair_) return;
    const std::size_t colors = fair_->caps.size();
    lowest_.assign(view.points.size(), std::vector<PointId>(colors, kNone));
    for (std::size_t x = 0; x < view.points.size(); ++x)
      for (PointId p : view.preimages[x]) {
        PointId& slot = lowest_[x][(*fair_->color_of)[p]];
        slot = std::min(slot, p);
      }
  }

  std::vector<char> allowed_centers() const {
    std::vector<char> allowed(view_.points.size(), 1);
    if (!fair_) return allowed;
    for (std::size_t x = 0; x < allowed.size(); ++x) {
      allowed[x] = 0;
      for (std::size_t j = 0; j < fair_->caps.size(); ++j)
        if (fair_->caps[j] > 0 && lowest_[x][j] != kNone) allowed[x] = 1;
    }
    return allowed;
  }

  std::vector<std::size_t> center_classes() const {
    std::vector<std::size_t> cls(view_.points.size(), 0);
    if (!fair_) return cls;
    std::map<std::vector<char>, std::size_t> ids;
    for (std::size_t x = 0; x < cls.size(); ++x) {
      std::vector<char> present(fair_->caps.size(), 0);
      for (std::size_t j = 0; j < present.size(); ++j)
        present[j] = fair_->caps[j] > 0 && lowest_[x][j] != kNone;
      cls[x] = ids.emplace(std::move(present), ids.size()).first->second;
    }
    return cls;
  }

  void operator()(const BallLeaf& leaf) {
    if (fair_)
      fair(leaf);
    else
      plain(leaf);
  }

 private:
  static constexpr PointId kNone = std::numeric_limits<PointId>::max();

  void plain(const BallLeaf& leaf) {
    BallSolution sol;
    double actual = 0.0;
    for (const ChosenBall& b : leaf.balls) {
      sol.balls.push_back({view_.points[b.center], b.radius});
      actual += power(b.radius, alpha_);
    }
    sol.outliers = uncovered(space_, sol.balls, view_, leaf.outliers);
    const std::size_t cell[2] = {leaf.balls.size(), sol.outliers.size()};
    inc_.record(inc_.cell_index(cell), leaf.key, actual, sol);
  }

  void fair(const BallLeaf& leaf) {
    const std::size_t c = leaf.balls.size();
    const std::size_t colors = fair_->caps.size();
    for (std::size_t cell_idx : inc_.slice(c, 0)) {
      const auto& usage = inc_.coords(cell_idx);
      std::vector<std::size_t> slot_color;
      for (std::size_t j = 0; j < colors; ++j)
        for (std::size_t s = 0; s < usage[j]; ++s) slot_color.push_back(j);
      std::vector<std::vector<std::size_t>> adj(c);
      for (std::size_t b = 0; b < c; ++b)
        for (std::size_t s = 0; s < slot_color.size(); ++s)
          if (lowest_[leaf.balls[b].center][slot_color[s]] != kNone) adj[b].push_back(s);
      const auto match = hopcroft_karp(slot_color.size(), adj);
      if (std::find(match.begin(), match.end(), kUnmatched) != match.end()) continue;

      BallSolution sol;
      double actual = 0.0;
      for (std::size_t b = 0; b < c; ++b) {
        const ChosenBall& ball = leaf.balls[b];
        const PointId y = lowest_[ball.center][slot_color[match[b]]];
        double r = 0.0;
        for (std::size_t w : ball.covered)
          for (PointId p : view_.preimages[w]) r = std::max(r, space_(y, p));
        sol.balls.push_back({y, r});
        actual += power(r, alpha_);
      }
      sol.outliers = uncovered(space_, sol.balls, view_, leaf.outliers);
      std::vector<std::size_t> cell(usage.begin(), usage.end());
      cell.back() = sol.outliers.size();
      inc_.record(inc_.cell_index(cell), leaf.key, actual, sol);
    }
  }

  const MetricSpace& space_;
  const NetView& view_;
  double alpha_;
  const FairData* fair_;
  Table& inc_;
  std::vector<std::vector<PointId>> lowest_;  // per net point, lowest preimage of each color
};

template <class Mask>
void run_view(const MetricSpace& space, const NetView& view, BallSearchParams params,
              const FairData* fair, Table& inc) {
  LeafRecorder recorder(space, view, params.alpha, fair, inc);
  if (fair) {
    params.allowed_center = recorder.allowed_centers();
    params.center_class = recorder.center_classes();
    params.recenter_bound = true;
  }
  BallSearch<Mask, BallSolution> search(space, view, std::move(params), inc,
                                        [&](const BallLeaf& leaf) { recorder(leaf); });
  search.run();
}

struct BudgetRange {
  int lo = 0;
  int hi = 0;
};

template <class Mask>
void search_component(const MetricSpace& space, const std::vector<PointId>& comp,
                      const BallProblem& p, const BudgetRange& range, const FairData* fair,
                      Table& inc) {
  BallSearchParams base;
  base.max_balls = p.k;
  base.max_weight = p.g;
  base.alpha = p.alpha;
  if (p.exact) {
    base.exhaustive = true;
    run_view<Mask>(space, identity_view(comp), base, fair, inc);
    return;
  }
  const NetHierarchy h = build_hierarchy(space, comp);
  const double comp_diam = diameter(space, comp);
  const double eps_int = p.eps / (kEpsilonDivisor * p.alpha);
  for (int s = range.hi; s >= range.lo; --s) {
    const double T = std::ldexp(1.0, s);
    const NetView view = net_for_budget(space, h, T, p.k, eps_int);
    BallSearchParams params = base;
    const double top = round_up_pow2(std::min(comp_diam, T));
    for (double r = view.spacing; r <= top; r *= 2.0) params.radii.push_back(r);
    if (params.radii.empty()) params.radii.push_back(view.spacing);
    params.budget = 4.0 * T;
    run_view<Mask>(space, view, std::move(params), fair, inc);
  }
}

BallSolution zero_cost_solution(std::size_t n, std::size_t k) {
  BallSolution sol;
  for (PointId p = 0; p < n; ++p) {
    if (p < k)
      sol.balls.push_back({p, 0.0});
    else
      sol.outliers.push_back(p);
  }
  return sol;
}

}  // namespace

std::optional<BallSolution> solve_balls(const MetricSpace& space, const BallProblem& p,
                                        const SolveOptions& options) {
  if (p.k == 0) throw std::invalid_argument("k must be at least 1");
  if (!(p.alpha >= 1.0)) throw std::invalid_argument("alpha must be at least 1");
  if (!p.exact && !(p.eps > 0.0 && p.eps <= 1.0))
    throw std::invalid_argument("epsilon must lie in (0, 1]");
  const std::size_t n = space.size();

  FairData fair_data;
  const FairData* fair = nullptr;
  double min_threshold = 0.0;
  if (p.colors) {
    fair_data.color_of = p.colors;
    fair_data.caps = p.caps;
    fair = &fair_data;
    if (p.colors->size() != n) throw std::invalid_argument("one color per point is required");
    double best = kInf;
    for (PointId x = 0; x < n; ++x) {
      const std::size_t c = (*p.colors)[x];
      if (c >= p.caps.size()) throw std::invalid_argument("point color has no cap");
      if (p.caps[c] == 0) continue;
      double ecc = 0.0;
      for (PointId y = 0; y < n; ++y) ecc = std::max(ecc, space(x, y));
      best = std::min(best, ecc);
    }
    if (!(best < kInf)) return std::nullopt;
    min_threshold = best;
  }

  Decomposition dec = decompose(space, p.k, p.g, p.problem, min_threshold);
  if (!fair && dec.zero_cost && n <= p.k + p.g) {
    BallSolution sol = zero_cost_solution(n, p.k);
    if (options.components)
      for (const auto& comp : dec.components) {
        ComponentSummary s;
        s.points = comp;
        for (PointId q : comp) (q < p.k ? s.clusters : s.outliers)++;
        options.components->push_back(std::move(s));
      }
    return sol;
  }

  BudgetRange range;
  if (dec.L > 0.0) {
    range.lo = floor_log2(dec.L);
    range.hi = ceil_log2(std::max(dec.beta * dec.L, static_cast<double>(p.k) * dec.R));
  }

  std::vector<std::size_t> dims = fair ? p.caps : std::vector<std::size_t>{p.k};
  dims.push_back(p.g);
  const std::size_t count = dec.components.size();
  std::vector<std::unique_ptr<Table>> incs(count);
  parallel_for(count, options.threads, [&](std::size_t i) {
    incs[i] = std::make_unique<Table>(dims);
    const auto& comp = dec.components[i];
    if (comp.size() <= SmallMask::kCapacity)
      search_component<SmallMask>(space, comp, p, range, fair, *incs[i]);
    else
      search_component<WideMask>(space, comp, p, range, fair, *incs[i]);
  });

  std::vector<CostTable> tables;
  for (const auto& inc : incs) tables.push_back(inc->table());
  const auto merged = merge_components(tables);
  if (!merged) return std::nullopt;

  BallSolution sol;
  for (std::size_t i = 0; i < count; ++i) {
    const BallSolution& part = incs[i]->solution(merged->choice[i]);
    sol.balls.insert(sol.balls.end(), part.balls.begin(), part.balls.end());
    sol.outliers.insert(sol.outliers.end(), part.outliers.begin(), part.outliers.end());
    if (options.components) {
      ComponentSummary s;
      s.points = dec.components[i];
      s.clusters = part.balls.size();
      s.outliers = part.outliers.size();
      s.cost = incs[i]->actual(merged->choice[i]);
      options.components->push_back(std::move(s));
    }
  }
  std::sort(sol.balls.begin(), sol.balls.end(), [](const Ball& a, const Ball& b) {
    return a.center != b.center ? a.center < b.center : a.radius < b.radius;
  });
  sol.outliers = normalized(std::move(sol.outliers));
  return sol;
}

}  // namespace detail

BallSolution exact_msr(const MetricSpace& space, std::size_t k, std::size_t g, double alpha) {
  detail::BallProblem p;
  p.k = k;
  p.g = g;
  p.alpha = alpha;
  p.exact = true;
  p.problem = alpha == 1.0 ? Problem::msr : Problem::alpha_msr;
  auto sol = detail::solve_balls(space, p, {});
  if (!sol) throw std::logic_error("exact MSR search found no solution");
  return *sol;
}

BallSolution approximate_msr(const MetricSpace& space, std::size_t k, double eps, std::size_t g,
                             const SolveOptions& options) {
  detail::BallProblem p;
  p.k = k;
  p.g = g;
  p.eps = eps;
  auto sol = detail::solve_balls(space, p, options);
  if (!sol) throw std::logic_error("approximate MSR search found no solution");
  return *sol;
}

std::optional<BallSolution> msr_subroutine(const MetricSpace& space, const NetView& view,
                                           std::span<const double> radii, double budget,
                                           std::size_t q, std::size_t outliers) {
  if (view.points.empty()) return BallSolution{};
  detail::Table inc({q, outliers});
  detail::BallSearchParams params;
  params.radii.assign(radii.begin(), radii.end());
  std::sort(params.radii.begin(), params.radii.end());
  params.budget = budget;
  params.max_balls = q;
  params.max_weight = outliers;
  params.net_radii = true;
  auto on_leaf = [&](const detail::BallLeaf& leaf) {
    BallSolution sol;
    double actual = 0.0;
    for (const auto& b : leaf.balls) {
      sol.balls.push_back({view.points[b.center], b.radius});
      actual += b.radius;
    }
    for (std::size_t w : leaf.outliers) sol.outliers.push_back(view.points[w]);
    sol.outliers = normalized(std::move(sol.outliers));
    const std::size_t cell[2] = {leaf.balls.size(), leaf.weight};
    inc.record(inc.cell_index(cell), leaf.key, actual, sol);
  };
  if (view.points.size() <= detail::SmallMask::kCapacity)
    detail::BallSearch<detail::SmallMask, BallSolution>(space, view, params, inc, on_leaf).run();
  else
    detail::BallSearch<detail::WideMask, BallSolution>(space, view, params, inc, on_leaf).run();
  std::size_t best = 0;
  for (std::size_t i = 1; i < inc.layout().cells(); ++i)
    if (inc.actual(i) < inc.actual(best)) best = i;
  if (!(inc.actual(best) < detail::kInf)) return std::nullopt;
  return inc.solution(best);
}

}  // namespace minsum

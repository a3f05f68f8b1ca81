#include "minsum/instance.hpp"

#include <algorithm>
#include <limits>
#include <random>
#include <set>

#include "json.hpp"

namespace minsum {

namespace {

using json = nlohmann::ordered_json;

json parse_document(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw DocumentError(std::string("malformed document: ") + e.what());
  }
}

template <class T>
T field(const json& doc, const char* name) {
  if (!doc.contains(name)) throw DocumentError(std::string("missing field '") + name + "'");
  try {
    return doc.at(name).get<T>();
  } catch (const json::exception& e) {
    throw DocumentError(std::string("bad field '") + name + "': " + e.what());
  }
}

template <class T>
std::optional<T> optional_field(const json& doc, const char* name) {
  if (!doc.contains(name) || doc.at(name).is_null()) return std::nullopt;
  return field<T>(doc, name);
}

std::vector<std::vector<double>> rows_of(const MetricSpace& space) {
  std::vector<std::vector<double>> rows;
  for (PointId p = 0; p < space.size(); ++p) {
    const auto r = space.is_euclidean() ? space.coordinates(p) : space.row(p);
    rows.emplace_back(r.begin(), r.end());
  }
  return rows;
}

MetricSpace from_shortest_paths(std::vector<std::vector<double>> d) {
  const std::size_t n = d.size();
  for (std::size_t m = 0; m < n; ++m)
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y) d[x][y] = std::min(d[x][y], d[x][m] + d[m][y]);
  for (const auto& row : d)
    for (double v : row)
      if (v == std::numeric_limits<double>::infinity())
        throw std::invalid_argument("distance constraints leave the space disconnected");
  return MetricSpace::from_matrix(d);
}

double power2(std::size_t e) { return static_cast<double>(std::size_t{1} << e); }

}  // namespace

std::optional<FairSpec> Instance::fair() const {
  if (!colors || !caps) return std::nullopt;
  return FairSpec{*colors, *caps};
}

Instance parse_instance(std::string_view text) {
  const json doc = parse_document(text);
  if (!doc.is_object()) throw DocumentError("instance document must be an object");
  const bool has_points = doc.contains("points");
  const bool has_matrix = doc.contains("matrix");
  if (has_points == has_matrix)
    throw DocumentError("instance needs exactly one of 'points' or 'matrix'");
  const auto rows = field<std::vector<std::vector<double>>>(doc, has_points ? "points" : "matrix");
  Instance inst{has_points ? MetricSpace::from_points(rows) : MetricSpace::from_matrix(rows)};
  const std::size_t n = inst.space.size();
  inst.colors = optional_field<std::vector<std::size_t>>(doc, "colors");
  inst.caps = optional_field<std::vector<std::size_t>>(doc, "caps");
  if (inst.colors && inst.colors->size() != n)
    throw DocumentError("'colors' must list one color per point");
  if (doc.contains("balance")) {
    const json& b = doc.at("balance");
    BalanceSpec spec{field<std::vector<std::size_t>>(b, "sides"), field<double>(b, "b")};
    spec.validate(n);
    inst.balance = std::move(spec);
  }
  if (doc.contains("meta")) {
    const json& m = doc.at("meta");
    inst.kind = optional_field<std::string>(m, "kind");
    inst.seed = optional_field<std::uint64_t>(m, "seed");
    inst.k = optional_field<std::size_t>(m, "k");
    inst.feasible = optional_field<bool>(m, "feasible");
  }
  return inst;
}

std::string serialize_instance(const Instance& inst) {
  json doc;
  doc[inst.space.is_euclidean() ? "points" : "matrix"] = rows_of(inst.space);
  if (inst.colors) doc["colors"] = *inst.colors;
  if (inst.caps) doc["caps"] = *inst.caps;
  if (inst.balance) doc["balance"] = {{"b", inst.balance->b}, {"sides", inst.balance->side}};
  if (inst.kind || inst.seed || inst.k || inst.feasible) {
    json meta = json::object();
    if (inst.kind) meta["kind"] = *inst.kind;
    if (inst.seed) meta["seed"] = *inst.seed;
    if (inst.k) meta["k"] = *inst.k;
    if (inst.feasible) meta["feasible"] = *inst.feasible;
    doc["meta"] = std::move(meta);
  }
  return doc.dump(2) + "\n";
}

Instance gen_random_euclidean(std::size_t n, std::size_t dim, std::uint64_t seed) {
  if (n == 0 || dim == 0) throw std::invalid_argument("n and dim must be at least 1");
  std::mt19937_64 rng(seed);
  std::vector<std::vector<double>> pts(n, std::vector<double>(dim));
  for (auto& p : pts)
    for (auto& c : p) c = std::generate_canonical<double, 53>(rng);
  Instance inst{MetricSpace::from_points(pts)};
  inst.kind = "euclid";
  inst.seed = seed;
  return inst;
}

bool grid_tiling_feasible(const GridTilingSpec& spec) {
  const std::size_t k = spec.k, n = spec.n;
  std::vector<std::set<Cell>> sets;
  for (const auto& s : spec.sets) sets.emplace_back(s.begin(), s.end());
  std::vector<std::size_t> x(k, 1), y(k, 1);
  auto valid = [&] {
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j)
        if (!sets[i * k + j].count({x[j], y[i]})) return false;
    return true;
  };
  std::vector<std::size_t*> digits;
  for (std::size_t i = 0; i < k; ++i) {
    digits.push_back(&x[i]);
    digits.push_back(&y[i]);
  }
  for (;;) {
    if (valid()) return true;
    std::size_t pos = 0;
    while (pos < digits.size() && *digits[pos] == n) *digits[pos++] = 1;
    if (pos == digits.size()) return false;
    ++*digits[pos];
  }
}

GridTilingSpec random_grid_tiling(std::size_t k, std::size_t n, double density,
                                  std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  GridTilingSpec spec;
  spec.k = k;
  spec.n = n;
  spec.sets.resize(k * k);
  for (auto& s : spec.sets)
    for (std::size_t a = 1; a <= n; ++a)
      for (std::size_t b = 1; b <= n; ++b)
        if (std::generate_canonical<double, 53>(rng) < density) s.push_back({a, b});
  return spec;
}

Instance gen_grid_tiling(const GridTilingSpec& spec) {
  const std::size_t k = spec.k, n = spec.n;
  if (k == 0 || n == 0) throw std::invalid_argument("grid tiling needs k, n >= 1");
  if (k > kGridTilingMaxK || n > kGridTilingMaxN)
    throw std::invalid_argument("grid tiling generator accepts k <= 3 and n <= 3");
  if (spec.sets.size() != k * k) throw std::invalid_argument("grid tiling needs k*k sets");
  for (const auto& s : spec.sets)
    for (const auto& [a, b] : s)
      if (a < 1 || a > n || b < 1 || b > n)
        throw std::invalid_argument("grid tiling pair out of range");
  for (std::size_t i = 0; i < k; ++i)
    if (spec.at(i, i).empty()) throw std::invalid_argument("diagonal grid tiling sets must be nonempty");

  // layout: k copies of a_i followed by T_i for every i, then the pair points
  std::vector<std::size_t> anchor(k), first(k);
  std::size_t count = 0;
  for (std::size_t i = 0; i < k; ++i) {
    anchor[i] = count;
    count += k;
    first[i] = count;
    count += spec.at(i, i).size();
  }
  struct PairPoint {
    std::size_t i, j, si, sj;
  };
  std::vector<PairPoint> pairs;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j)
      for (std::size_t si = 0; si < spec.at(i, i).size(); ++si)
        for (std::size_t sj = 0; sj < spec.at(j, j).size(); ++sj) pairs.push_back({i, j, si, sj});
  const std::size_t pair_base = count;
  count += pairs.size();

  std::size_t longest = pairs.size();
  for (std::size_t i = 0; i < k; ++i) longest = std::max(longest, spec.at(i, i).size());
  const double eps = spec.eps > 0.0 ? spec.eps : 1.0 / (8.0 * static_cast<double>(longest + 1));
  if (!(eps < 0.25)) throw std::invalid_argument("grid tiling eps must be below 1/4");

  const double inf = std::numeric_limits<double>::infinity();
  std::vector<std::vector<double>> d(count, std::vector<double>(count, inf));
  for (std::size_t p = 0; p < count; ++p) d[p][p] = 0.0;
  auto set = [&](std::size_t p, std::size_t q, double v) { d[p][q] = d[q][p] = v; };
  auto dist = [&](std::size_t i) { return power2(i); };

  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t m = spec.at(i, i).size();
    for (std::size_t s = 0; s < m; ++s) {
      for (std::size_t c = 0; c < k; ++c) set(anchor[i] + c, first[i] + s, dist(i));
      for (std::size_t t = s + 1; t < m; ++t)
        set(first[i] + s, first[i] + t, 2.0 * eps * static_cast<double>(t - s));
    }
  }
  for (std::size_t p = 0; p < pairs.size(); ++p)
    for (std::size_t q = p + 1; q < pairs.size(); ++q)
      set(pair_base + p, pair_base + q, 2.0 * eps * static_cast<double>(q - p));

  std::vector<std::set<Cell>> sets;
  for (const auto& s : spec.sets) sets.emplace_back(s.begin(), s.end());
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    const auto [i, j, si, sj] = pairs[p];
    const auto [a, b] = spec.at(i, i)[si];
    const auto [a2, b2] = spec.at(j, j)[sj];
    const bool feasible = sets[i * k + j].count({a2, b}) && sets[j * k + i].count({a, b2});
    const double extra = feasible ? 0.0 : eps;
    const std::size_t point = pair_base + p;
    for (std::size_t s = 0; s < spec.at(i, i).size(); ++s)
      set(point, first[i] + s, s == si ? dist(i) + extra : dist(i));
    for (std::size_t s = 0; s < spec.at(j, j).size(); ++s)
      set(point, first[j] + s, s == sj ? dist(j) + extra : dist(j));
  }

  Instance inst{from_shortest_paths(std::move(d))};
  inst.kind = "grid-tiling";
  inst.k = k;
  inst.feasible = grid_tiling_feasible(spec);
  return inst;
}

Instance gen_three_coloring_msd(const std::vector<std::pair<std::size_t, std::size_t>>& edges,
                                std::size_t n_vertices, std::size_t k) {
  if (k < 3) throw std::invalid_argument("three-coloring instances need k >= 3");
  if (n_vertices == 0) throw std::invalid_argument("graph needs at least one vertex");
  const std::size_t n = n_vertices + (k - 3);
  std::vector<std::vector<double>> d(n, std::vector<double>(n, 1.0));
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = 0; q < n; ++q)
      if (p == q)
        d[p][q] = 0.0;
      else if (p >= n_vertices || q >= n_vertices)
        d[p][q] = 2.0;
  for (const auto& [u, v] : edges) {
    if (u >= n_vertices || v >= n_vertices || u == v)
      throw std::invalid_argument("edge endpoints must be distinct vertices");
    d[u][v] = d[v][u] = 2.0;
  }
  Instance inst{MetricSpace::from_matrix(d)};
  inst.kind = "three-coloring";
  inst.k = k;
  return inst;
}

SolutionDocument parse_solution(std::string_view text) {
  const json doc = parse_document(text);
  if (!doc.is_object()) throw DocumentError("solution document must be an object");
  SolutionDocument out;
  out.variant = field<std::string>(doc, "variant");
  out.mode = field<std::string>(doc, "mode");
  const json params = doc.contains("parameters") ? doc.at("parameters") : json::object();
  out.k = field<std::size_t>(params, "k");
  out.g = optional_field<std::size_t>(params, "g").value_or(0);
  out.alpha = optional_field<double>(params, "alpha").value_or(1.0);
  out.eps = optional_field<double>(params, "epsilon");
  out.feasible = optional_field<bool>(doc, "feasible").value_or(true);
  out.cost = optional_field<double>(doc, "cost").value_or(0.0);
  const auto outliers = optional_field<std::vector<PointId>>(doc, "outliers");
  if (doc.contains("balls")) {
    BallSolution sol;
    for (const json& b : doc.at("balls"))
      sol.balls.push_back({field<PointId>(b, "center"), field<double>(b, "radius")});
    if (outliers) sol.outliers = *outliers;
    out.balls = std::move(sol);
  }
  if (doc.contains("clusters")) {
    PartitionSolution sol;
    for (const json& c : doc.at("clusters"))
      sol.clusters.push_back({field<std::vector<PointId>>(c, "members"),
                              optional_field<double>(c, "tag")});
    if (outliers) sol.outliers = *outliers;
    out.partition = std::move(sol);
  }
  if (doc.contains("components"))
    for (const json& c : doc.at("components"))
      out.components.push_back({field<std::vector<PointId>>(c, "points"),
                                field<std::size_t>(c, "clusters"),
                                field<std::size_t>(c, "outliers"), field<double>(c, "cost")});
  out.wall_time = optional_field<double>(doc, "wall_time_seconds");
  return out;
}

std::string serialize_solution(const SolutionDocument& doc) {
  json out;
  out["variant"] = doc.variant;
  out["mode"] = doc.mode;
  json params = {{"k", doc.k}, {"g", doc.g}, {"alpha", doc.alpha}};
  if (doc.eps) params["epsilon"] = *doc.eps;
  out["parameters"] = std::move(params);
  out["feasible"] = doc.feasible;
  if (doc.feasible) out["cost"] = doc.cost;
  if (doc.balls) {
    json balls = json::array();
    for (const Ball& b : doc.balls->balls) balls.push_back({{"center", b.center}, {"radius", b.radius}});
    out["balls"] = std::move(balls);
    out["outliers"] = doc.balls->outliers;
  }
  if (doc.partition) {
    json clusters = json::array();
    for (const Cluster& c : doc.partition->clusters) {
      json entry = {{"members", c.members}};
      if (c.tag) entry["tag"] = *c.tag;
      clusters.push_back(std::move(entry));
    }
    out["clusters"] = std::move(clusters);
    out["outliers"] = doc.partition->outliers;
  }
  if (!doc.components.empty()) {
    json comps = json::array();
    for (const ComponentSummary& c : doc.components)
      comps.push_back({{"points", c.points},
                       {"clusters", c.clusters},
                       {"outliers", c.outliers},
                       {"cost", c.cost}});
    out["components"] = std::move(comps);
  }
  if (doc.wall_time) out["wall_time_seconds"] = *doc.wall_time;
  return out.dump(2) + "\n";
}

}  // namespace minsum

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "minsum/instance.hpp"
#include "minsum/msd.hpp"
#include "minsum/msr.hpp"
#include "minsum/oracles.hpp"
#include "minsum/variants.hpp"

namespace fs = std::filesystem;
using namespace minsum;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitUsage = 2;
constexpr int kExitInfeasible = 3;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SolveFlags {
  std::string variant = "msr";
  std::string mode = "approx";
  std::size_t k = 1;
  std::size_t g = 0;
  double alpha = 1.0;
  double eps = 0.5;
  bool fair = false;
  bool balance = false;
  std::size_t threads = 1;
  bool omit_timing = false;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  const fs::path target(path);
  const fs::path tmp = target.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw UsageError("cannot write " + path);
    out << text;
  }
  fs::rename(tmp, target);
}

FairSpec fair_of(const Instance& inst) {
  auto fair = inst.fair();
  if (!fair) throw UsageError("--fair needs 'colors' and 'caps' in the instance");
  return *fair;
}

ClusterValidator validator_of(const Instance& inst) {
  if (!inst.balance) throw UsageError("--balance needs a 'balance' entry in the instance");
  return balanced_validator(*inst.balance);
}

void add_balls(SolutionDocument& doc, const MetricSpace& space, const BallSolution& sol) {
  doc.cost = doc.variant == "k-center" ? max_radius(sol) : solution_cost(space, sol, doc.alpha);
  doc.balls = sol;
}

void add_partition(SolutionDocument& doc, const MetricSpace& space, const PartitionSolution& sol) {
  doc.cost = solution_cost(space, sol, doc.alpha);
  doc.partition = sol;
}

SolutionDocument solve(const Instance& inst, const SolveFlags& f, bool oracle) {
  const MetricSpace& space = inst.space;
  SolutionDocument doc;
  doc.variant = f.variant;
  doc.mode = oracle ? "oracle" : f.mode;
  doc.k = f.fair ? fair_of(inst).k() : f.k;
  doc.g = f.g;
  doc.alpha = f.variant == "alpha-msr" || (oracle && f.variant == "msd") ? f.alpha : 1.0;
  if (!oracle && f.mode == "approx") doc.eps = f.eps;
  if (f.variant != "alpha-msr" && f.alpha != 1.0 && !(oracle && f.variant == "msd"))
    throw UsageError("--alpha applies to alpha-msr (and msd oracles)");
  if (f.fair && f.variant != "msr" && f.variant != "alpha-msr")
    throw UsageError("--fair applies to msr variants");
  if (f.balance && f.variant != "msd") throw UsageError("--balance applies to msd");

  SolveOptions options;
  options.threads = f.threads;
  options.components = &doc.components;
  const auto start = std::chrono::steady_clock::now();

  if (oracle) {
    std::optional<FairSpec> fair;
    if (f.fair) fair = fair_of(inst);
    std::optional<ClusterValidator> validator;
    if (f.balance) validator = validator_of(inst);
    if (f.variant == "msr" || f.variant == "alpha-msr") {
      auto r = oracle_msr(space, doc.k, f.g, doc.alpha, fair ? &*fair : nullptr);
      if (r) add_balls(doc, space, r->solution); else doc.feasible = false;
    } else if (f.variant == "msd") {
      auto r = oracle_msd(space, f.k, f.g, doc.alpha, validator ? &*validator : nullptr);
      if (r) add_partition(doc, space, r->solution); else doc.feasible = false;
    } else {
      if (f.g > 0) throw UsageError("k-center oracles take no outliers");
      add_balls(doc, space, oracle_kcenter(space, f.k).solution);
    }
    doc.components.clear();
  } else if (f.variant == "msr" || f.variant == "alpha-msr") {
    if (f.fair) {
      if (f.mode != "approx") throw UsageError("fair solving needs --mode approx");
      const FairSpec fair = fair_of(inst);
      auto r = fair_msr_approx(space, fair, f.eps, f.g, options);
      if (r) add_balls(doc, space, *r); else doc.feasible = false;
    } else if (f.mode == "exact") {
      add_balls(doc, space, exact_msr(space, f.k, f.g, doc.alpha));
    } else {
      add_balls(doc, space, alpha_msr_approx(space, f.k, doc.alpha, f.eps, f.g, options));
    }
  } else if (f.variant == "msd") {
    std::optional<ClusterValidator> validator;
    if (f.balance) validator = validator_of(inst);
    const ClusterValidator* v = validator ? &*validator : nullptr;
    if (f.mode == "exact") {
      if (f.g == 0) {
        auto r = exact_msd(space, f.k, v);
        if (r) add_partition(doc, space, *r); else doc.feasible = false;
      } else {
        if (v) throw UsageError("exact msd with outliers takes no --balance");
        add_partition(doc, space, exact_msd_outliers(space, f.k, f.g));
      }
    } else {
      auto r = approximate_msd(space, f.k, f.eps, f.g, v, options);
      if (r) add_partition(doc, space, *r); else doc.feasible = false;
    }
  } else {
    if (f.mode != "approx") throw UsageError("k-center solving needs --mode approx");
    if (f.g > 0) throw UsageError("k-center takes no outliers");
    add_balls(doc, space, k_center_approx(space, f.k, f.eps));
  }
  if (!doc.feasible) doc.components.clear();
  if (!f.omit_timing)
    doc.wall_time =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return doc;
}

void add_solve_flags(CLI::App* app, SolveFlags& f) {
  app->add_option("--variant", f.variant, "Objective")
      ->check(CLI::IsMember({"msr", "msd", "alpha-msr", "k-center"}));
  app->add_option("--k", f.k, "Number of balls or clusters")->check(CLI::PositiveNumber);
  app->add_option("--g", f.g, "Number of outliers");
  app->add_option("--alpha", f.alpha, "Exponent for alpha-msr")->check(CLI::Range(1.0, 1e9));
  app->add_flag("--fair", f.fair, "Use the instance colors and caps");
  app->add_flag("--balance", f.balance, "Require balanced clusters (msd)");
  app->add_flag("--omit-timing", f.omit_timing, "Leave wall time out of the document");
}

std::vector<std::pair<std::size_t, std::size_t>> parse_edges(const std::string& text) {
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    const auto dash = item.find('-');
    if (dash == std::string::npos) throw UsageError("edges look like 0-1,1-2");
    try {
      edges.emplace_back(std::stoul(item.substr(0, dash)), std::stoul(item.substr(dash + 1)));
    } catch (const std::logic_error&) {
      throw UsageError("bad edge '" + item + "'");
    }
  }
  return edges;
}

std::vector<std::string> check(const Instance& inst, const SolutionDocument& doc, bool fair,
                               bool balance) {
  std::vector<std::string> problems;
  const MetricSpace& space = inst.space;
  if (!doc.feasible) return problems;
  double cost = 0.0;
  if (doc.balls) {
    problems = verify(space, *doc.balls, doc.k, doc.g);
    cost = doc.variant == "k-center" ? max_radius(*doc.balls)
                                     : solution_cost(space, *doc.balls, doc.alpha);
    if (fair) {
      const FairSpec spec = fair_of(inst);
      std::vector<std::size_t> used(spec.caps.size(), 0);
      for (const Ball& b : doc.balls->balls)
        if (b.center < space.size()) ++used[spec.colors.at(b.center)];
      for (std::size_t c = 0; c < used.size(); ++c)
        if (used[c] > spec.caps[c])
          problems.push_back("color " + std::to_string(c) + " has " + std::to_string(used[c]) +
                             " centers, cap " + std::to_string(spec.caps[c]));
    }
  } else if (doc.partition) {
    problems = verify(space, *doc.partition, doc.k, doc.g);
    if (problems.empty()) cost = solution_cost(space, *doc.partition, doc.alpha);
    if (balance) {
      const auto v = validator_of(inst);
      for (std::size_t c = 0; c < doc.partition->clusters.size(); ++c)
        if (!v(doc.partition->clusters[c].members))
          problems.push_back("cluster " + std::to_string(c) + " is not balanced");
    }
  } else {
    problems.push_back("document has neither balls nor clusters");
  }
  if (problems.empty() && std::abs(cost - doc.cost) > 1e-9 * std::max(1.0, std::abs(cost))) {
    std::ostringstream os;
    os << std::setprecision(17) << "recorded cost " << doc.cost << " differs from recomputed "
       << cost;
    problems.push_back(os.str());
  }
  return problems;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Min-sum-radii and min-sum-diameters clustering"};
  app.require_subcommand(1);

  SolveFlags flags;
  std::string input, output;

  auto* solve_cmd = app.add_subcommand("solve", "Solve an instance");
  add_solve_flags(solve_cmd, flags);
  solve_cmd->add_option("--mode", flags.mode)->check(CLI::IsMember({"exact", "approx"}));
  solve_cmd->add_option("--epsilon", flags.eps)->check(CLI::Range(0.0, 1.0));
  solve_cmd->add_option("--threads", flags.threads)->check(CLI::PositiveNumber);
  solve_cmd->add_option("--input", input)->required();
  solve_cmd->add_option("--output", output);

  auto* oracle_cmd = app.add_subcommand("oracle", "Brute-force optimum of a small instance");
  add_solve_flags(oracle_cmd, flags);
  oracle_cmd->add_option("--input", input)->required();
  oracle_cmd->add_option("--output", output);

  std::string kind = "euclid", edges;
  std::size_t gen_n = 8, dim = 2, gen_k = 3, vertices = 0;
  double density = 0.5, tiling_eps = 0.0;
  std::uint64_t seed = 0;
  auto* gen_cmd = app.add_subcommand("gen", "Generate an instance");
  gen_cmd->add_option("--kind", kind)->check(CLI::IsMember({"euclid", "grid-tiling", "three-coloring"}));
  gen_cmd->add_option("--n", gen_n, "Points (euclid) or grid size (grid-tiling)");
  gen_cmd->add_option("--dim", dim);
  gen_cmd->add_option("--k", gen_k);
  gen_cmd->add_option("--density", density, "Grid tiling set density")->check(CLI::Range(0.0, 1.0));
  gen_cmd->add_option("--tiling-eps", tiling_eps);
  gen_cmd->add_option("--edges", edges, "Graph edges such as 0-1,1-2");
  gen_cmd->add_option("--vertices", vertices);
  gen_cmd->add_option("--seed", seed);
  gen_cmd->add_option("--output", output);

  std::string solution_path;
  bool check_fair = false, check_balance = false;
  auto* check_cmd = app.add_subcommand("check", "Validate a solution against an instance");
  check_cmd->add_option("--input", input)->required();
  check_cmd->add_option("--solution", solution_path)->required();
  check_cmd->add_flag("--fair", check_fair);
  check_cmd->add_flag("--balance", check_balance);

  std::string dir;
  auto* bench_cmd = app.add_subcommand("bench", "Solve every instance of a directory");
  add_solve_flags(bench_cmd, flags);
  bench_cmd->add_option("--mode", flags.mode)->check(CLI::IsMember({"exact", "approx"}));
  bench_cmd->add_option("--epsilon", flags.eps)->check(CLI::Range(0.0, 1.0));
  bench_cmd->add_option("--threads", flags.threads)->check(CLI::PositiveNumber);
  bench_cmd->add_option("--dir", dir)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*solve_cmd || *oracle_cmd) {
      const bool oracle = static_cast<bool>(*oracle_cmd);
      if (!oracle && !(flags.eps > 0.0)) throw UsageError("--epsilon must lie in (0, 1]");
      const Instance inst = parse_instance(read_file(input));
      const SolutionDocument doc = solve(inst, flags, oracle);
      write_output(output, serialize_solution(doc));
      return doc.feasible ? kExitOk : kExitInfeasible;
    }
    if (*gen_cmd) {
      Instance inst = [&] {
        if (kind == "euclid") return gen_random_euclidean(gen_n, dim, seed);
        if (kind == "grid-tiling") {
          GridTilingSpec spec = random_grid_tiling(gen_k, gen_n, density, seed);
          for (std::size_t i = 0; i < spec.k; ++i)
            if (spec.sets[i * spec.k + i].empty()) spec.sets[i * spec.k + i].push_back({1, 1});
          spec.eps = tiling_eps;
          Instance out = gen_grid_tiling(spec);
          out.seed = seed;
          return out;
        }
        return gen_three_coloring_msd(parse_edges(edges), vertices, gen_k);
      }();
      write_output(output, serialize_instance(inst));
      return kExitOk;
    }
    if (*check_cmd) {
      const Instance inst = parse_instance(read_file(input));
      const SolutionDocument doc = parse_solution(read_file(solution_path));
      const auto problems = check(inst, doc, check_fair, check_balance);
      for (const auto& p : problems) std::cerr << "check: " << p << "\n";
      if (!problems.empty()) return kExitInternal;
      std::cout << "ok\n";
      return kExitOk;
    }
    if (*bench_cmd) {
      std::vector<fs::path> files;
      for (const auto& entry : fs::directory_iterator(dir))
        if (entry.is_regular_file() && entry.path().extension() == ".json")
          files.push_back(entry.path());
      std::sort(files.begin(), files.end());
      std::cout << std::left << std::setw(32) << "instance" << std::setw(8) << "points"
                << std::setw(24) << "cost" << "seconds\n";
      flags.omit_timing = false;
      for (const auto& file : files) {
        const Instance inst = parse_instance(read_file(file.string()));
        const SolutionDocument doc = solve(inst, flags, false);
        std::ostringstream cost;
        if (doc.feasible)
          cost << std::setprecision(12) << doc.cost;
        else
          cost << "infeasible";
        std::cout << std::setw(32) << file.filename().string() << std::setw(8)
                  << inst.space.size() << std::setw(24) << cost.str() << std::fixed
                  << std::setprecision(4) << *doc.wall_time << std::defaultfloat << "\n";
      }
      return kExitOk;
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const InstanceTooLarge& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitUsage;
}

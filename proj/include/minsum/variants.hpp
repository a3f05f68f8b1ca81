#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "minsum/constraints.hpp"
#include "minsum/metric.hpp"
#include "minsum/msr.hpp"
#include "minsum/net.hpp"

namespace minsum {

/// At most caps[c] centers of color c. nullopt when no fair cover exists.
std::optional<BallSolution> fair_msr_approx(const MetricSpace& space, const FairSpec& fair,
                                            double eps, std::size_t g = 0,
                                            const SolveOptions& options = {});

/// Recenter every ball of a net solution onto a preimage point so that at most
/// budgets[c] balls use color c. The new center is the lowest id of the matched
/// color in the preimage of the old one; the radius grows by the view's pad.
/// nullopt when no such assignment exists.
std::optional<BallSolution> bipartite_center_matching(const BallSolution& net_sol,
                                                      const NetView& view, const FairSpec& fair,
                                                      const std::vector<std::size_t>& budgets);

/// True for clusters whose side ratio min(|C1|/|C0|, |C0|/|C1|) is at least b.
ClusterValidator balanced_validator(const BalanceSpec& spec);

/// Minimises the sum of radius^alpha.
BallSolution alpha_msr_approx(const MetricSpace& space, std::size_t k, double alpha, double eps,
                              std::size_t g = 0, const SolveOptions& options = {});

/// Max radius at most (1 + eps) times the optimal k-center radius, and never
/// above the farthest-first radius.
BallSolution k_center_approx(const MetricSpace& space, std::size_t k, double eps);

}  // namespace minsum

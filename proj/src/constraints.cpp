#include "minsum/constraints.hpp"

#include <numeric>
#include <stdexcept>

namespace minsum {

std::size_t FairSpec::k() const { return std::accumulate(caps.begin(), caps.end(), std::size_t{0}); }

void FairSpec::validate(std::size_t n) const {
  if (colors.size() != n) throw std::invalid_argument("fairness needs one color per point");
  if (caps.empty()) throw std::invalid_argument("fairness needs at least one color cap");
  for (std::size_t c : colors)
    if (c >= caps.size()) throw std::invalid_argument("point color " + std::to_string(c) + " has no cap");
  if (k() == 0) throw std::invalid_argument("fairness caps must allow at least one center");
}

void BalanceSpec::validate(std::size_t n) const {
  if (side.size() != n) throw std::invalid_argument("balance needs one side per point");
  for (std::size_t s : side)
    if (s > 1) throw std::invalid_argument("balance sides must be 0 or 1");
  if (!(b >= 0.0 && b <= 1.0)) throw std::invalid_argument("balance threshold must lie in [0, 1]");
}

}  // namespace minsum

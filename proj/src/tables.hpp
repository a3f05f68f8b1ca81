#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <vector>

#include "minsum/msr.hpp"

namespace minsum::detail {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Incumbent bookkeeping for a branch-and-bound search whose leaves land in
// resource cells (per-color ball counts plus outlier weight). `key` is the
// bound the search prunes on; `actual` is the true cost of the leaf solution
// and never exceeds its key.
template <class Solution>
class Incumbents {
 public:
  // dims: ball-count caps per color, followed by the outlier cap
  explicit Incumbents(std::vector<std::size_t> dims) : layout_(std::move(dims)) {
    key_le_.assign(layout_.cells(), kInf);
    actual_.assign(layout_.cells(), kInf);
    sols_.resize(layout_.cells());
    colors_ = layout_.caps.size() - 1;
    slices_.resize((total_balls() + 1) * (outlier_cap() + 1));
    for (std::size_t i = 0; i < layout_.cells(); ++i) {
      coords_.push_back(layout_.cell(i));
      std::size_t s = 0;
      for (std::size_t j = 0; j < colors_; ++j) s += coords_[i][j];
      slices_[s * (outlier_cap() + 1) + coords_[i].back()].push_back(i);
    }
  }

  std::size_t colors() const { return colors_; }
  std::size_t outlier_cap() const { return layout_.caps.back(); }
  std::size_t total_balls() const {
    std::size_t s = 0;
    for (std::size_t j = 0; j < colors_; ++j) s += layout_.caps[j];
    return s;
  }
  const CostTable& layout() const { return layout_; }

  void record(std::size_t cell_index, double key, double actual, const Solution& sol) {
    if (actual < actual_[cell_index]) {
      actual_[cell_index] = actual;
      sols_[cell_index] = sol;
    }
    if (key < key_le_[cell_index]) {
      const auto& base = coords_[cell_index];
      for (std::size_t i = 0; i < layout_.cells(); ++i) {
        if (key >= key_le_[i]) continue;
        const auto& c = coords_[i];
        bool dominates = true;
        for (std::size_t j = 0; j < c.size(); ++j)
          if (c[j] < base[j]) {
            dominates = false;
            break;
          }
        if (dominates) key_le_[i] = key;
      }
    }
  }

  // True when no leaf in a cell at or above (balls, o) can be improved by `key`.
  bool dominated(double key, std::size_t balls, std::size_t o) const {
    if (balls > total_balls() || o > outlier_cap()) return true;
    double bound = -kInf;
    for (std::size_t idx : slices_[balls * (outlier_cap() + 1) + o]) bound = std::max(bound, key_le_[idx]);
    return key >= bound;
  }

  // True when no leaf below a node with `balls` balls, outlier weight `o`
  // and partial key `key` can improve any reachable cell.
  bool prune(double key, std::size_t balls, std::size_t o) const {
    double bound = -kInf;
    bool reachable = false;
    auto consider = [&](std::size_t count, std::size_t weight) {
      if (count > total_balls() || weight > outlier_cap()) return;
      for (std::size_t idx : slices_[count * (outlier_cap() + 1) + weight]) {
        reachable = true;
        bound = std::max(bound, key_le_[idx]);
      }
    };
    consider(balls + 1, o);
    consider(balls, o + 1);
    return !reachable || key >= bound;
  }

  double actual(std::size_t cell_index) const { return actual_[cell_index]; }
  const Solution& solution(std::size_t cell_index) const { return sols_[cell_index]; }

  CostTable table() const {
    CostTable t(layout_.caps);
    t.cost = actual_;
    return t;
  }

  std::size_t cell_index(std::span<const std::size_t> c) const { return layout_.index(c); }
  const std::vector<std::size_t>& slice(std::size_t count, std::size_t weight) const {
    return slices_[count * (outlier_cap() + 1) + weight];
  }
  const std::vector<std::size_t>& coords(std::size_t cell_index) const { return coords_[cell_index]; }

 private:
  CostTable layout_;
  std::size_t colors_ = 1;
  std::vector<double> key_le_;
  std::vector<double> actual_;
  std::vector<Solution> sols_;
  std::vector<std::vector<std::size_t>> coords_;
  std::vector<std::vector<std::size_t>> slices_;  // cells by (ball count, outlier weight)
};

}  // namespace minsum::detail

#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <span>
#include <vector>

#include "minsum/metric.hpp"

namespace minsum::detail {

// Dense distance cache over a subset of points (usually the net points of a
// view), indexed locally 0..m-1 in ascending global id order. Balls are
// answered from per-point sorted neighbour lists with prefix masks.
template <class Mask>
class LocalMetric {
 public:
  LocalMetric(const MetricSpace& space, std::span<const PointId> ids)
      : ids_(ids.begin(), ids.end()), m_(ids_.size()), d_(m_ * m_) {
    for (std::size_t i = 0; i < m_; ++i)
      for (std::size_t j = i + 1; j < m_; ++j)
        d_[i * m_ + j] = d_[j * m_ + i] = space(ids_[i], ids_[j]);
    order_.resize(m_ * m_);
    sorted_.resize(m_ * m_);
    prefix_.assign(m_ * m_, Mask(m_));
    for (std::size_t i = 0; i < m_; ++i) {
      std::size_t* o = order_.data() + i * m_;
      std::iota(o, o + m_, std::size_t{0});
      std::stable_sort(o, o + m_, [&](std::size_t a, std::size_t b) { return d(i, a) < d(i, b); });
      Mask acc(m_);
      for (std::size_t j = 0; j < m_; ++j) {
        acc.set(o[j]);
        prefix_[i * m_ + j] = acc;
        sorted_[i * m_ + j] = d(i, o[j]);
      }
    }
  }

  std::size_t size() const { return m_; }
  PointId global(std::size_t i) const { return ids_[i]; }
  const std::vector<PointId>& ids() const { return ids_; }
  double d(std::size_t i, std::size_t j) const { return d_[i * m_ + j]; }

  Mask ball(std::size_t center, double r) const {
    const double* s = sorted_.data() + center * m_;
    const std::size_t cnt = static_cast<std::size_t>(std::upper_bound(s, s + m_, r) - s);
    if (cnt == 0) return Mask(m_);
    return prefix_[center * m_ + cnt - 1];
  }

  Mask full() const { return Mask::full(m_); }

  double diameter(const Mask& s) const {
    double best = 0.0;
    std::vector<std::size_t> pts;
    s.for_each([&](std::size_t i) { pts.push_back(i); });
    for (std::size_t a = 0; a < pts.size(); ++a)
      for (std::size_t b = a + 1; b < pts.size(); ++b) best = std::max(best, d(pts[a], pts[b]));
    return best;
  }

  // Lexicographically smallest pair realizing the diameter of `s`.
  std::pair<std::size_t, std::size_t> diameter_pair(const Mask& s) const {
    std::vector<std::size_t> pts;
    s.for_each([&](std::size_t i) { pts.push_back(i); });
    std::pair<std::size_t, std::size_t> best{pts.front(), pts.front()};
    double bd = -1.0;
    for (std::size_t a = 0; a < pts.size(); ++a)
      for (std::size_t b = a + 1; b < pts.size(); ++b)
        if (d(pts[a], pts[b]) > bd) {
          bd = d(pts[a], pts[b]);
          best = {pts[a], pts[b]};
        }
    return best;
  }

  std::vector<PointId> to_global(const Mask& s) const {
    std::vector<PointId> out;
    s.for_each([&](std::size_t i) { out.push_back(ids_[i]); });
    return out;
  }

 private:
  std::vector<PointId> ids_;
  std::size_t m_;
  std::vector<double> d_;
  std::vector<std::size_t> order_;
  std::vector<double> sorted_;
  std::vector<Mask> prefix_;
};

}  // namespace minsum::detail

#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

namespace minsum::detail {

// Point sets over a local index space 0..m-1. SmallMask handles m <= 64 in a
// single word; WideMask is the general fallback with the same interface.

class SmallMask {
 public:
  static constexpr std::size_t kCapacity = 64;

  SmallMask() = default;
  explicit SmallMask(std::size_t /*m*/) {}

  static SmallMask full(std::size_t m) {
    SmallMask r;
    r.w_ = m >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << m) - 1);
    return r;
  }

  void set(std::size_t i) { w_ |= std::uint64_t{1} << i; }
  void reset(std::size_t i) { w_ &= ~(std::uint64_t{1} << i); }
  bool test(std::size_t i) const { return (w_ >> i) & 1U; }
  bool empty() const { return w_ == 0; }
  std::size_t count() const { return static_cast<std::size_t>(std::popcount(w_)); }
  std::size_t first() const { return static_cast<std::size_t>(std::countr_zero(w_)); }
  bool intersects(const SmallMask& o) const { return (w_ & o.w_) != 0; }
  bool subset_of(const SmallMask& o) const { return (w_ & ~o.w_) == 0; }

  SmallMask& operator&=(const SmallMask& o) { w_ &= o.w_; return *this; }
  SmallMask& operator|=(const SmallMask& o) { w_ |= o.w_; return *this; }
  SmallMask& operator-=(const SmallMask& o) { w_ &= ~o.w_; return *this; }
  friend SmallMask operator&(SmallMask a, const SmallMask& b) { return a &= b; }
  friend SmallMask operator|(SmallMask a, const SmallMask& b) { return a |= b; }
  friend SmallMask operator-(SmallMask a, const SmallMask& b) { return a -= b; }
  friend bool operator==(const SmallMask&, const SmallMask&) = default;
  friend bool operator<(const SmallMask& a, const SmallMask& b) { return a.w_ < b.w_; }

  template <class F>
  void for_each(F&& f) const {
    for (std::uint64_t w = w_; w != 0; w &= w - 1) f(static_cast<std::size_t>(std::countr_zero(w)));
  }

  std::size_t hash() const { return std::hash<std::uint64_t>{}(w_ * 0x9E3779B97F4A7C15ULL); }

 private:
  std::uint64_t w_ = 0;
};

class WideMask {
 public:
  static constexpr std::size_t kCapacity = static_cast<std::size_t>(-1);

  WideMask() = default;
  explicit WideMask(std::size_t m) : w_((m + 63) / 64, 0) {}

  static WideMask full(std::size_t m) {
    WideMask r(m);
    for (std::size_t i = 0; i < m; ++i) r.set(i);
    return r;
  }

  void set(std::size_t i) { w_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void reset(std::size_t i) { w_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
  bool test(std::size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1U; }
  bool empty() const {
    for (auto w : w_) if (w) return false;
    return true;
  }
  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : w_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }
  std::size_t first() const {
    for (std::size_t i = 0; i < w_.size(); ++i)
      if (w_[i]) return i * 64 + static_cast<std::size_t>(std::countr_zero(w_[i]));
    return w_.size() * 64;
  }
  bool intersects(const WideMask& o) const {
    for (std::size_t i = 0; i < w_.size(); ++i) if (w_[i] & o.w_[i]) return true;
    return false;
  }
  bool subset_of(const WideMask& o) const {
    for (std::size_t i = 0; i < w_.size(); ++i) if (w_[i] & ~o.w_[i]) return false;
    return true;
  }

  WideMask& operator&=(const WideMask& o) {
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] &= o.w_[i];
    return *this;
  }
  WideMask& operator|=(const WideMask& o) {
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] |= o.w_[i];
    return *this;
  }
  WideMask& operator-=(const WideMask& o) {
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] &= ~o.w_[i];
    return *this;
  }
  friend WideMask operator&(WideMask a, const WideMask& b) { return a &= b; }
  friend WideMask operator|(WideMask a, const WideMask& b) { return a |= b; }
  friend WideMask operator-(WideMask a, const WideMask& b) { return a -= b; }
  friend bool operator==(const WideMask&, const WideMask&) = default;
  friend bool operator<(const WideMask& a, const WideMask& b) { return a.w_ < b.w_; }

  template <class F>
  void for_each(F&& f) const {
    for (std::size_t i = 0; i < w_.size(); ++i)
      for (std::uint64_t w = w_[i]; w != 0; w &= w - 1)
        f(i * 64 + static_cast<std::size_t>(std::countr_zero(w)));
  }

  std::size_t hash() const {
    std::size_t h = 1469598103934665603ULL;
    for (auto w : w_) h = (h ^ std::hash<std::uint64_t>{}(w)) * 1099511628211ULL;
    return h;
  }

 private:
  std::vector<std::uint64_t> w_;
};

struct MaskHash {
  template <class M>
  std::size_t operator()(const M& m) const { return m.hash(); }
};

}  // namespace minsum::detail

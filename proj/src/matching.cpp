#include "minsum/matching.hpp"

#include <limits>
#include <queue>
#include <stdexcept>

namespace minsum {

namespace {

class HopcroftKarp {
 public:
  HopcroftKarp(std::size_t right, const std::vector<std::vector<std::size_t>>& adj)
      : adj_(adj), left_(adj.size()), match_l_(left_, kUnmatched), match_r_(right, kUnmatched),
        dist_(left_) {
    for (const auto& row : adj)
      for (std::size_t v : row)
        if (v >= right) throw std::out_of_range("matching: right vertex out of range");
  }

  std::vector<std::size_t> run() {
    while (bfs())
      for (std::size_t u = 0; u < left_; ++u)
        if (match_l_[u] == kUnmatched) dfs(u);
    return match_l_;
  }

 private:
  static constexpr std::size_t kFar = std::numeric_limits<std::size_t>::max();

  bool bfs() {
    std::queue<std::size_t> q;
    for (std::size_t u = 0; u < left_; ++u) {
      if (match_l_[u] == kUnmatched) {
        dist_[u] = 0;
        q.push(u);
      } else {
        dist_[u] = kFar;
      }
    }
    bool found = false;
    while (!q.empty()) {
      const std::size_t u = q.front();
      q.pop();
      for (std::size_t v : adj_[u]) {
        const std::size_t w = match_r_[v];
        if (w == kUnmatched) {
          found = true;
        } else if (dist_[w] == kFar) {
          dist_[w] = dist_[u] + 1;
          q.push(w);
        }
      }
    }
    return found;
  }

  bool dfs(std::size_t u) {
    for (std::size_t v : adj_[u]) {
      const std::size_t w = match_r_[v];
      if (w == kUnmatched || (dist_[w] == dist_[u] + 1 && dfs(w))) {
        match_l_[u] = v;
        match_r_[v] = u;
        return true;
      }
    }
    dist_[u] = kFar;
    return false;
  }

  const std::vector<std::vector<std::size_t>>& adj_;
  std::size_t left_;
  std::vector<std::size_t> match_l_;
  std::vector<std::size_t> match_r_;
  std::vector<std::size_t> dist_;
};

}  // namespace

std::vector<std::size_t> hopcroft_karp(std::size_t right,
                                       const std::vector<std::vector<std::size_t>>& adj) {
  return HopcroftKarp(right, adj).run();
}

}  // namespace minsum

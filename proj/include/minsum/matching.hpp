#pragma once

#include <cstddef>
#include <vector>

namespace minsum {

inline constexpr std::size_t kUnmatched = static_cast<std::size_t>(-1);

/// Maximum cardinality bipartite matching (Hopcroft-Karp). `adj[u]` lists the
/// right vertices adjacent to left vertex u, each < `right`. Returns the
/// partner of every left vertex, kUnmatched when free. Adjacency lists are
/// scanned in order, so the result is deterministic.
std::vector<std::size_t> hopcroft_karp(std::size_t right,
                                       const std::vector<std::vector<std::size_t>>& adj);

}  // namespace minsum

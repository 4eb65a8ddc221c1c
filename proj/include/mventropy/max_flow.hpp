#pragma once

#include <cstdint>
#include <vector>

namespace mventropy {

/// Dinic's algorithm with 64-bit integer capacities.
class MaxFlow {
 public:
  static constexpr std::int64_t kInfinite = INT64_MAX / 4;

  explicit MaxFlow(std::size_t nodes);

  void add_edge(std::size_t from, std::size_t to, std::int64_t capacity);
  std::int64_t run(std::size_t source, std::size_t sink);

  /// Nodes reachable from the source in the residual graph after run():
  /// the source side of a minimum cut.
  std::vector<bool> source_side(std::size_t source) const;

 private:
  struct Edge {
    std::size_t to;
    std::int64_t cap;
  };

  bool bfs(std::size_t s, std::size_t t);
  std::int64_t dfs(std::size_t v, std::size_t t, std::int64_t pushed);

  std::vector<Edge> edges_;
  std::vector<std::vector<std::size_t>> adj_;
  std::vector<int> level_;
  std::vector<std::size_t> next_;
};

}  // namespace mventropy
